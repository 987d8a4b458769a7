"""Concrete fields: Q, F_p (p odd) and towers of square roots over them.

An element of a tower of height ``h`` is stored as a nested pair: at height 0
it is a :class:`fractions.Fraction` (over Q) or an ``int`` reduced mod p, and
at height ``h`` it is a tuple ``(u, v)`` of height ``h-1`` elements meaning
``u + v*sqrt(d_h)``. This "raw" representation is canonical, so structural
equality is field equality. :class:`FieldElem` wraps a raw value together
with its tower and gives it operators.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from fractions import Fraction
from functools import cached_property
from typing import Any, Union

from .config import settings
from .errors import (
    DivisionByZero,
    NoTopStep,
    NotANonSquare,
    TowerMismatch,
    TowerTooTall,
    ZeroArgument,
)
from .localsymbols import is_prime, sqrt_mod_prime, square_class_Q, squarefree_mul

Raw = Any  # Fraction | int | tuple[Raw, Raw]


# --------------------------------------------------------------------------
# base fields


@dataclasses.dataclass(frozen=True)
class BaseField:
    """``p == 0`` means Q; otherwise the prime field F_p with p odd."""

    p: int = 0

    def __post_init__(self) -> None:
        if self.p != 0 and (self.p == 2 or not is_prime(self.p)):
            raise ValueError(f"F_{self.p}: characteristic must be an odd prime")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def coerce(self, value: int | Fraction) -> Raw:
        if self.p == 0:
            return Fraction(value)
        value = Fraction(value)
        return value.numerator * pow(value.denominator, -1, self.p) % self.p

    def zero(self) -> Raw:
        return Fraction(0) if self.p == 0 else 0

    def one(self) -> Raw:
        return Fraction(1) if self.p == 0 else 1

    def add(self, a: Raw, b: Raw) -> Raw:
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a: Raw, b: Raw) -> Raw:
        return a - b if self.p == 0 else (a - b) % self.p

    def neg(self, a: Raw) -> Raw:
        return -a if self.p == 0 else (-a) % self.p

    def mul(self, a: Raw, b: Raw) -> Raw:
        return a * b if self.p == 0 else (a * b) % self.p

    def inv(self, a: Raw) -> Raw:
        if a == 0:
            raise DivisionByZero("division by zero")
        return 1 / a if self.p == 0 else pow(a, -1, self.p)

    def is_zero(self, a: Raw) -> bool:
        return a == 0

    def sqrt(self, a: Raw) -> Raw | None:
        if self.p:
            return sqrt_mod_prime(a, self.p)
        if a < 0:
            return None
        num, den = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
        if num is None or den is None:
            return None
        return Fraction(num, den)

    def is_square(self, a: Raw) -> bool:
        if a == 0:
            raise ZeroArgument("is_square(0)")
        if self.p:
            return pow(a, (self.p - 1) // 2, self.p) == 1
        return a > 0 and _isqrt_exact(a.numerator) is not None and _isqrt_exact(a.denominator) is not None

    def fmt(self, a: Raw) -> str:
        if self.p:
            return str(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def _isqrt_exact(n: int) -> int | None:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


QQ = BaseField(0)


# --------------------------------------------------------------------------
# towers


@dataclasses.dataclass(frozen=True)
class FieldTower:
    """``base`` with ``sqrt(d_1), ..., sqrt(d_h)`` adjoined in order.

    ``steps[i]`` is a raw element of the tower of height ``i``. Each must be a
    non-square there; this is checked on construction.
    """

    base: BaseField = QQ
    steps: tuple[Raw, ...] = ()

    def __post_init__(self) -> None:
        if len(self.steps) > settings.max_tower_height:
            raise TowerTooTall(
                f"tower height {len(self.steps)} exceeds limit {settings.max_tower_height}"
            )
        if self.steps:
            d = self.steps[-1]
            lower = self.lower
            if lower.is_zero(d):
                raise NotANonSquare("cannot adjoin sqrt(0)")
            if lower.is_square(d):
                raise NotANonSquare(f"{lower.fmt(d)} is a square in {lower}")

    # -- structure ---------------------------------------------------------

    @classmethod
    def rationals(cls) -> FieldTower:
        return cls(QQ)

    @classmethod
    def prime_field(cls, p: int) -> FieldTower:
        return cls(BaseField(p))

    @property
    def height(self) -> int:
        return len(self.steps)

    @property
    def degree(self) -> int:
        return 2 ** len(self.steps)

    @property
    def is_finite(self) -> bool:
        return self.base.p != 0

    @property
    def characteristic(self) -> int:
        return self.base.p

    @cached_property
    def lower(self) -> FieldTower:
        if not self.steps:
            raise NoTopStep(f"{self} has no quadratic step")
        return FieldTower(self.base, self.steps[:-1])

    def prefix(self, height: int) -> FieldTower:
        return FieldTower(self.base, self.steps[:height])

    def is_prefix_of(self, other: FieldTower) -> bool:
        return self.base == other.base and other.steps[: self.height] == self.steps

    def adjoin(self, d: FieldElem | Raw | int | Fraction) -> FieldTower:
        return FieldTower(self.base, self.steps + (self._raw(d),))

    def __str__(self) -> str:
        out = str(self.base)
        for i, d in enumerate(self.steps):
            out += f"[sqrt {self.prefix(i).fmt(d)}]"
        return out

    def __repr__(self) -> str:
        return f"FieldTower({str(self)!r})"

    # -- raw arithmetic ----------------------------------------------------

    def _raw(self, x: Any) -> Raw:
        if isinstance(x, FieldElem):
            if x.tower != self:
                if x.tower.is_prefix_of(self):
                    return self.lift_from(x.tower, x.raw)
                raise TowerMismatch(f"{x.tower} vs {self}")
            return x.raw
        if isinstance(x, (int, Fraction)):
            return self.from_base(x)
        return x

    def zero(self) -> Raw:
        if not self.steps:
            return self.base.zero()
        z = self.lower.zero()
        return (z, z)

    def one(self) -> Raw:
        if not self.steps:
            return self.base.one()
        return (self.lower.one(), self.lower.zero())

    def from_base(self, c: int | Fraction) -> Raw:
        x = self.base.coerce(c)
        zero = self.base.zero()
        for i in range(self.height):
            x = (x, self.prefix(i).zero() if i else zero)
        return x

    def gen(self) -> Raw:
        """The adjoined square root of the top step."""
        lower = self.lower
        return (lower.zero(), lower.one())

    def lift_from(self, sub: FieldTower, x: Raw) -> Raw:
        if not sub.is_prefix_of(self):
            raise TowerMismatch(f"{sub} is not a subfield of {self}")
        for h in range(sub.height, self.height):
            x = (x, self.prefix(h).zero())
        return x

    def lift(self, x: Raw) -> Raw:
        """Embed a raw element of ``self.lower``."""
        return (x, self.lower.zero())

    def add(self, a: Raw, b: Raw) -> Raw:
        if not self.steps:
            return self.base.add(a, b)
        lo = self.lower
        return (lo.add(a[0], b[0]), lo.add(a[1], b[1]))

    def sub(self, a: Raw, b: Raw) -> Raw:
        if not self.steps:
            return self.base.sub(a, b)
        lo = self.lower
        return (lo.sub(a[0], b[0]), lo.sub(a[1], b[1]))

    def neg(self, a: Raw) -> Raw:
        if not self.steps:
            return self.base.neg(a)
        lo = self.lower
        return (lo.neg(a[0]), lo.neg(a[1]))

    def mul(self, a: Raw, b: Raw) -> Raw:
        if not self.steps:
            return self.base.mul(a, b)
        lo = self.lower
        d = self.steps[-1]
        u1, v1 = a
        u2, v2 = b
        u = lo.add(lo.mul(u1, u2), lo.mul(d, lo.mul(v1, v2)))
        v = lo.add(lo.mul(u1, v2), lo.mul(v1, u2))
        return (u, v)

    def square(self, a: Raw) -> Raw:
        return self.mul(a, a)

    def is_zero(self, a: Raw) -> bool:
        if not self.steps:
            return a == 0
        lo = self.lower
        return lo.is_zero(a[0]) and lo.is_zero(a[1])

    def is_one(self, a: Raw) -> bool:
        return a == self.one()

    def conj(self, a: Raw) -> Raw:
        if not self.steps:
            raise NoTopStep(f"{self} has no quadratic step to conjugate")
        return (a[0], self.lower.neg(a[1]))

    def norm(self, a: Raw) -> Raw:
        """``a * conj(a)``, as an element of ``self.lower``."""
        lo = self.lower
        u, v = a
        return lo.sub(lo.mul(u, u), lo.mul(self.steps[-1], lo.mul(v, v)))

    def trace(self, a: Raw) -> Raw:
        lo = self.lower
        return lo.add(a[0], a[0])

    def inv(self, a: Raw) -> Raw:
        if self.is_zero(a):
            raise DivisionByZero("division by zero")
        if not self.steps:
            return self.base.inv(a)
        lo = self.lower
        n_inv = lo.inv(self.norm(a))
        return (lo.mul(a[0], n_inv), lo.neg(lo.mul(a[1], n_inv)))

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def pow(self, a: Raw, n: int) -> Raw:
        if n < 0:
            a, n = self.inv(a), -n
        out = self.one()
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    # -- squares -----------------------------------------------------------

    def sqrt(self, a: Raw) -> Raw | None:
        """A square root of ``a`` in this tower, or None."""
        if not self.steps:
            return self.base.sqrt(a)
        if self.is_zero(a):
            return self.zero()
        lo = self.lower
        d = self.steps[-1]
        u, v = a
        if lo.is_zero(v):
            r = lo.sqrt(u)
            if r is not None:
                return (r, lo.zero())
            r = lo.sqrt(lo.div(u, d))
            if r is not None:
                return (lo.zero(), r)
            return None
        n = lo.sqrt(self.norm(a))
        if n is None:
            return None
        half = lo.inv(lo.from_base(2))
        for w in (lo.add(u, n), lo.sub(u, n)):
            w = lo.mul(w, half)
            if lo.is_zero(w):
                continue
            s = lo.sqrt(w)
            if s is None:
                continue
            t = lo.div(v, lo.add(s, s))
            root = (s, t)
            if self.mul(root, root) == a:
                return root
        return None

    def is_square(self, a: Raw) -> bool:
        if self.is_zero(a):
            raise ZeroArgument("is_square(0)")
        if not self.steps:
            return self.base.is_square(a)
        if self.is_finite:
            # in a finite field x is a square iff its norm is
            return self.lower.is_square(self.norm(a))
        return self.sqrt(a) is not None

    # -- signs at real embeddings -------------------------------------------

    def sign_at(self, a: Raw, signs: tuple[int, ...]) -> int:
        if not self.steps:
            return (a > 0) - (a < 0)
        lo = self.lower
        u, v = a
        su = lo.sign_at(u, signs[:-1])
        sv = lo.sign_at(v, signs[:-1]) * signs[-1]
        if sv == 0 or su == sv:
            return su
        if su == 0:
            return sv
        sn = lo.sign_at(self.norm(a), signs[:-1])
        return su if sn > 0 else sv

    @cached_property
    def embedding_signs(self) -> tuple[tuple[int, ...], ...]:
        if self.is_finite:
            return ()
        if not self.steps:
            return ((),)
        lo = self.lower
        out = []
        for s in lo.embedding_signs:
            if lo.sign_at(self.steps[-1], s) > 0:
                out.extend((s + (1,), s + (-1,)))
        return tuple(out)

    # -- square classes ----------------------------------------------------

    @cached_property
    def square_classes(self) -> SquareClasses:
        # shared by equal towers, so registry keys agree however the tower was built
        sc = _SQUARE_CLASSES.get(self)
        if sc is None:
            sc = _SQUARE_CLASSES[self] = SquareClasses(self)
        return sc

    # -- formatting --------------------------------------------------------

    def monomials(self, a: Raw) -> list[tuple[Raw, tuple[int, ...]]]:
        """Expand into ``(base coefficient, exponent vector)`` pairs."""
        if not self.steps:
            return [(a, ())] if a != 0 else []
        lo = self.lower
        out = [(c, e + (0,)) for c, e in lo.monomials(a[0])]
        out += [(c, e + (1,)) for c, e in lo.monomials(a[1])]
        return out

    def sqrt_name(self, level: int) -> str:
        return "sqrt" if self.height == 1 else f"sqrt{level}"

    def fmt(self, a: Raw) -> str:
        terms = self.monomials(a)
        if not terms:
            return "0"
        parts = []
        for c, exps in sorted(terms, key=lambda t: (sum(t[1]), t[1][::-1])):
            names = [self.sqrt_name(i + 1) for i, e in enumerate(exps) if e]
            negative = c < 0 if not self.is_finite else False
            mag = self.base.fmt(-c if negative else c)
            if names:
                body = "*".join(names if mag == "1" else [mag] + names)
            else:
                body = mag
            parts.append(("-" if negative else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- convenience -------------------------------------------------------

    def elem(self, value: Any) -> FieldElem:
        if isinstance(value, str):
            from .parse import parse_element

            return parse_element(value, self)
        return FieldElem(self, self._raw(value))

    def all_elements(self) -> itertools.chain:
        """Every element of a finite tower (use only for tiny fields)."""
        if not self.is_finite:
            raise ValueError("infinite field")
        return (self.from_digits(n) for n in range(self.base.p ** self.degree))

    def from_digits(self, n: int) -> Raw:
        """Raw element whose base-p digits of ``n`` are its coordinates."""
        if not self.steps:
            return n % self.base.p
        lo = self.lower
        size = self.base.p ** lo.degree
        return (lo.from_digits(n % size), lo.from_digits(n // size))


_SQUARE_CLASSES: dict[FieldTower, SquareClasses] = {}


def _square_root_part(g: int, bound: int = 1000) -> int:
    """Largest s with s^2 | g among s built from primes below ``bound``."""
    s = 1
    p = 2
    while p < bound and p * p <= g:
        while g % (p * p) == 0:
            g //= p * p
            s *= p
        if g % p == 0:
            g //= p
        p += 1 if p == 2 else 2
    return s


# split primes used to refine registry buckets over quadratic fields
SPLIT_PRIMES = 4


def _hensel_sqrt(d: int, r: int, p: int, k: int) -> int:
    """Lift a root r of x^2 = d mod p to a root mod p^k (p odd, p not dividing d)."""
    q = p
    for _ in range(k - 1):
        q *= p
        r = (r - (r * r - d) * pow(2 * r, -1, q)) % q
    return r


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def _local_classes_Q(n: Fraction) -> tuple:
    """Sign of n and its square classes in Q_l for a few small primes l."""
    out: list = [n > 0]
    for p in _SMALL_PRIMES:
        num, den, v = abs(n.numerator), n.denominator, 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v += 1
        u = num * den
        out.append((v % 2, u % 8 if p == 2 else pow(u, (p - 1) // 2, p)))
    return tuple(out)


def _flatten(raw: Raw) -> list:
    if isinstance(raw, tuple):
        return [c for part in raw for c in _flatten(part)]
    return [raw]


class ClassRep:
    """Registry key: a representative element, compared and hashed by identity.

    Each registry hands out one object per square class, so identity is
    class equality and dict lookups avoid hashing tuples of fractions.
    """

    __slots__ = ("raw", "order")

    def __init__(self, raw: Raw) -> None:
        self.raw = raw
        # float coordinates decide almost every comparison cheaply; the exact
        # element breaks ties, so this is still a total order
        self.order = (tuple(float(c) for c in _flatten(raw)), raw)

    def __repr__(self) -> str:
        return f"ClassRep({self.raw!r})"


class SquareClasses:
    """Canonical keys for the square classes of a tower's multiplicative group.

    Over Q the key is the squarefree integer; over finite towers it is 0 for
    squares and 1 otherwise; over number-field towers it is a :class:`ClassRep`
    for the first element registered in the class, found by square-root tests.
    """

    def __init__(self, tower: FieldTower) -> None:
        self.tower = tower
        self._cache: dict[Raw, Any] = {}
        self._reps: dict[tuple, list[ClassRep]] = {}
        self._products: dict[tuple, Any] = {}
        self._signs: dict[Any, tuple[int, ...]] = {}
        if tower.is_finite:
            self.kind = "finite"
        elif tower.height == 0:
            self.kind = "rational"
        else:
            self.kind = "registry"

    @cached_property
    def nonsquare(self) -> Raw:
        t = self.tower
        for n in itertools.count(1):
            x = t.from_digits(n)
            if not t.is_zero(x) and not t.is_square(x):
                return x
        raise AssertionError("unreachable")

    def key(self, a: Raw) -> Any:
        t = self.tower
        if t.is_zero(a):
            raise ZeroArgument("square class of 0")
        if self.kind == "rational":
            return square_class_Q(a)
        if self.kind == "finite":
            return 0 if t.is_square(a) else 1
        hit = self._cache.get(a)
        if hit is not None:
            return hit
        b = self._primitive(a)
        bucket = self._reps.setdefault(self._fingerprint(b), [])
        for r in bucket:
            if t.sqrt(t.div(b, r.raw)) is not None:
                self._cache[a] = r
                return r
        rep = ClassRep(b)
        bucket.append(rep)
        self._cache[a] = self._cache[b] = rep
        return rep

    def _fingerprint(self, a: Raw) -> tuple:
        # class invariants: local square classes of the norm down to Q, the
        # signs at the real embeddings and local classes at split primes;
        # only reps sharing all of them need a root test. Nothing here
        # factors, so huge coordinates stay cheap.
        t, n = self.tower, a
        while t.steps:
            n, t = t.norm(n), t.lower
        signs = tuple(self.tower.sign_at(a, s) for s in self.tower.embedding_signs)
        return _local_classes_Q(Fraction(n)), signs, self._split_prime_classes(a)

    @cached_property
    def _split_primes(self) -> tuple[tuple[int, int], ...]:
        """(p, sqrt d mod p) for a few odd primes split in Q(sqrt d), d an integer."""
        t = self.tower
        if t.height != 1 or t.is_finite:
            return ()
        d = Fraction(t.steps[0])
        if d.denominator != 1:
            return ()
        out = []
        p = 3
        while len(out) < SPLIT_PRIMES and p < 1000:
            if is_prime(p) and d.numerator % p:
                r = sqrt_mod_prime(d.numerator, p)
                if r is not None:
                    out.append((p, r))
            p += 2
        return tuple(out)

    def _split_prime_classes(self, a: Raw) -> tuple:
        # exact local square classes of an integral x + y sqrt d at both
        # places over each split prime; sqrt d is lifted past v_p(N(a))
        if not self._split_primes:
            return ()
        x, y = int(a[0]), int(a[1])
        d = int(Fraction(self.tower.steps[0]))
        n = x * x - d * y * y
        out = []
        for p, r in self._split_primes:
            k = 1
            m = abs(n)
            while m % p == 0:
                m //= p
                k += 1
            q = p**k
            root = _hensel_sqrt(d, r, p, k)
            for s in (root, q - root):
                z = (x + y * s) % q
                v = 0
                while z % p == 0:
                    z //= p
                    v += 1
                out.append((v % 2, pow(z, (p - 1) // 2, p) == 1))
        return tuple(out)

    def _primitive(self, a: Raw) -> Raw:
        """Rescale by a rational square to integral coordinates with little square content."""
        t = self.tower
        coords = [Fraction(c) for c, _ in t.monomials(a)]
        den = math.lcm(*(c.denominator for c in coords))
        g = math.gcd(*(int(c * den * den) for c in coords))
        s = _square_root_part(g)
        return t.mul(a, t.from_base(Fraction(den * den, s * s)))

    def raw(self, key: Any) -> Raw:
        if self.kind == "rational":
            return Fraction(key)
        if self.kind == "finite":
            return self.tower.one() if key == 0 else self.nonsquare
        return key.raw

    @cached_property
    def one(self) -> Any:
        return self.key(self.tower.one())

    def mul(self, k1: Any, k2: Any) -> Any:
        if self.kind == "rational":
            return squarefree_mul(k1, k2)
        if self.kind == "finite":
            return k1 ^ k2
        pair = (k1, k2)
        hit = self._products.get(pair)
        if hit is None:
            hit = self.key(self.tower.mul(k1.raw, k2.raw))
            self._products[pair] = self._products[(k2, k1)] = hit
        return hit

    def signs(self, key: Any) -> tuple[int, ...]:
        """Signs of the class at the real embeddings, in ``embedding_signs`` order."""
        hit = self._signs.get(key)
        if hit is None:
            t = self.tower
            raw = self.raw(key)
            hit = self._signs[key] = tuple(t.sign_at(raw, e) for e in t.embedding_signs)
        return hit

    def sort_key(self, key: Any) -> Any:
        if self.kind == "rational":
            return (abs(key), key)
        if self.kind == "finite":
            return key
        return key.order


# --------------------------------------------------------------------------
# elements


@dataclasses.dataclass(frozen=True)
class FieldElem:
    tower: FieldTower
    raw: Raw

    def _other(self, other: Any) -> Raw:
        if isinstance(other, FieldElem):
            if other.tower != self.tower:
                raise TowerMismatch(f"{other.tower} vs {self.tower}")
            return other.raw
        if isinstance(other, (int, Fraction)):
            return self.tower.from_base(other)
        return NotImplemented

    def _wrap(self, raw: Raw) -> FieldElem:
        return FieldElem(self.tower, raw)

    def __add__(self, other: Any) -> FieldElem:
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.tower.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other: Any) -> FieldElem:
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.tower.sub(self.raw, o))

    def __rsub__(self, other: Any) -> FieldElem:
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.tower.sub(o, self.raw))

    def __mul__(self, other: Any) -> FieldElem:
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.tower.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> FieldElem:
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.tower.div(self.raw, o))

    def __rtruediv__(self, other: Any) -> FieldElem:
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.tower.div(o, self.raw))

    def __neg__(self) -> FieldElem:
        return self._wrap(self.tower.neg(self.raw))

    def __pow__(self, n: int) -> FieldElem:
        return self._wrap(self.tower.pow(self.raw, n))

    def is_zero(self) -> bool:
        return self.tower.is_zero(self.raw)

    def __str__(self) -> str:
        return self.tower.fmt(self.raw)

    def __repr__(self) -> str:
        return f"FieldElem({self.tower}, {self})"


def elem_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    if a.tower != b.tower:
        raise TowerMismatch(f"{a.tower} vs {b.tower}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_square(a: FieldElem) -> bool:
    return a.tower.is_square(a.raw)


def conj_step(a: FieldElem) -> FieldElem:
    return FieldElem(a.tower, a.tower.conj(a.raw))


def norm_elem(a: FieldElem) -> FieldElem:
    t = a.tower
    return FieldElem(t.lower, t.norm(a.raw))


def trace_elem(a: FieldElem) -> FieldElem:
    t = a.tower
    return FieldElem(t.lower, t.trace(a.raw))


@dataclasses.dataclass(frozen=True)
class RealEmbedding:
    """One sign per adjoined square root; ``+1`` picks the positive root."""

    tower: FieldTower
    signs: tuple[int, ...]

    def __str__(self) -> str:
        if not self.signs:
            return "real"
        return "(" + ",".join("+" if s > 0 else "-" for s in self.signs) + ")"


def real_embeddings(t: FieldTower) -> list[RealEmbedding]:
    return [RealEmbedding(t, s) for s in t.embedding_signs]


def sign_at(a: FieldElem, e: RealEmbedding) -> int:
    if a.is_zero():
        raise ZeroArgument("sign of 0")
    if a.tower != e.tower:
        raise TowerMismatch(f"{a.tower} vs {e.tower}")
    return a.tower.sign_at(a.raw, e.signs)


Q = FieldTower(QQ)

ElemLike = Union[FieldElem, int, Fraction]
