"""The Grothendieck-Witt ring of a supported field.

A :class:`GWElem` is stored as a finite formal sum ``sum n_a <a>`` over square
classes ``a`` with integer multiplicities. Bucketing entries by square class
is exact (``<a>`` depends only on the class of ``a``) and keeps products of
long forms small; the diagonal ``plus``/``minus`` forms are derived views.
"""

from __future__ import annotations

import dataclasses
from collections import Counter
from collections.abc import Iterable, Mapping
from functools import cached_property
from typing import Any

from .config import settings
from .errors import (
    NotAUnit,
    NotInFiltration,
    NotTorsion,
    TowerMismatch,
    UndecidedEquality,
)
from .fields import FieldElem, FieldTower, Raw
from .forms import (
    DiagForm,
    FormInvariants,
    counts_disc,
    counts_hasse,
    counts_places,
    counts_signatures,
    fmt_class,
    hasse_list,
    isometric_counts,
    rational_normal_form,
)
from .tribool import TriBool


# below this many classes the hand-written shape of an element over Q is kept
REDUCE_Q_ABOVE = 6


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


@dataclasses.dataclass(frozen=True, eq=False)
class GWElem:
    tower: FieldTower
    coeffs: tuple[tuple[Any, int], ...] = ()

    # -- construction --------------------------------------------------------

    @classmethod
    def from_counts(cls, tower: FieldTower, counts: Mapping[Any, int]) -> GWElem:
        sq = tower.square_classes
        items = sorted(((k, n) for k, n in counts.items() if n), key=lambda kv: sq.sort_key(kv[0]))
        return cls(tower, tuple(items))

    @classmethod
    def zero(cls, tower: FieldTower) -> GWElem:
        return cls(tower)

    @classmethod
    def const(cls, tower: FieldTower, n: int) -> GWElem:
        return cls.from_counts(tower, {tower.square_classes.one: n})

    @classmethod
    def one(cls, tower: FieldTower) -> GWElem:
        return cls.const(tower, 1)

    @classmethod
    def hyperbolic(cls, tower: FieldTower) -> GWElem:
        return cls.form(tower, [1, -1])

    @classmethod
    def sq(cls, tower: FieldTower, a: Any) -> GWElem:
        """The rank-one class ``<a>``."""
        key = tower.square_classes.key(tower._raw(_as_value(tower, a)))
        return cls(tower, ((key, 1),))

    @classmethod
    def form(cls, tower: FieldTower, entries: Iterable[Any]) -> GWElem:
        sq = tower.square_classes
        c = Counter(sq.key(tower._raw(_as_value(tower, e))) for e in entries)
        return cls.from_counts(tower, c)

    @classmethod
    def from_forms(cls, plus: DiagForm, minus: DiagForm | None = None) -> GWElem:
        c = Counter(plus.class_counts())
        if minus is not None:
            if minus.tower != plus.tower:
                raise TowerMismatch(f"{plus.tower} vs {minus.tower}")
            c.subtract(minus.class_counts())
        return cls.from_counts(plus.tower, c)

    # -- views ---------------------------------------------------------------

    @cached_property
    def counts(self) -> dict[Any, int]:
        return dict(self.coeffs)

    @property
    def plus(self) -> DiagForm:
        return self._part(1)

    @property
    def minus(self) -> DiagForm:
        return self._part(-1)

    def _part(self, sign: int) -> DiagForm:
        sq = self.tower.square_classes
        entries = []
        for k, n in self.coeffs:
            if n * sign > 0:
                entries += [FieldElem(self.tower, sq.raw(k))] * abs(n)
        return DiagForm(self.tower, tuple(entries))

    def entries(self) -> list[tuple[Raw, int]]:
        """``(representative, multiplicity)`` pairs."""
        sq = self.tower.square_classes
        return [(sq.raw(k), n) for k, n in self.coeffs]

    def _pos_neg(self) -> tuple[dict, dict]:
        pos = {k: n for k, n in self.coeffs if n > 0}
        neg = {k: -n for k, n in self.coeffs if n < 0}
        return pos, neg

    def witt_counts(self) -> Counter:
        """Class multiplicities of the form ``plus _|_ -minus``."""
        sq = self.tower.square_classes
        minus_one = sq.key(self.tower.from_base(-1))
        c: Counter = Counter()
        for k, n in self.coeffs:
            if n > 0:
                c[k] += n
            else:
                c[sq.mul(k, minus_one)] -= n
        return c

    # -- ring structure --------------------------------------------------------

    def _coerce(self, other: Any) -> GWElem:
        if isinstance(other, GWElem):
            if other.tower != self.tower:
                raise TowerMismatch(f"{other.tower} vs {self.tower}")
            return other
        if isinstance(other, int):
            return GWElem.const(self.tower, other)
        return NotImplemented

    def __add__(self, other: Any) -> GWElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        c = Counter(self.counts)
        c.update(o.counts)
        return GWElem.from_counts(self.tower, c)

    __radd__ = __add__

    def __neg__(self) -> GWElem:
        return GWElem(self.tower, tuple((k, -n) for k, n in self.coeffs))

    def __sub__(self, other: Any) -> GWElem:
        o = self._coerce(other)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, other: Any) -> GWElem:
        o = self._coerce(other)
        return o if o is NotImplemented else o + (-self)

    def __mul__(self, other: Any) -> GWElem:
        if isinstance(other, int):
            return GWElem(self.tower, tuple((k, n * other) for k, n in self.coeffs if n * other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        sq = self.tower.square_classes
        c: Counter = Counter()
        for k1, n1 in self.coeffs:
            for k2, n2 in o.coeffs:
                c[sq.mul(k1, k2)] += n1 * n2
        return GWElem.from_counts(self.tower, c).reduced()

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GWElem:
        if n < 0:
            return unit_inverse(self) ** (-n)
        out = GWElem.one(self.tower)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def reduced(self) -> GWElem:
        """An equal element with small coefficients.

        Uses <a> + <-a> = 1 + <-1> and 4<a> = 4 for a totally positive (a sum
        of four squares); over finite fields the result is the normal form
        n + e<g> with e in {0, 1}, and over Q long elements are replaced by
        their residue normal form. Products are reduced automatically, sums
        are kept as entered.
        """
        t = self.tower
        sq = t.square_classes
        one = sq.one
        c: Counter = Counter(self.counts)
        if t.is_finite:
            ng = c.pop(1, 0)
            c[0] += ng - ng % 2
            c[1] = ng % 2
            return GWElem.from_counts(t, c)
        minus_one = sq.key(t.from_base(-1))
        real = bool(t.embedding_signs)
        for k in list(c):
            if k in (one, minus_one) or not c[k]:
                continue
            if real and all(s < 0 for s in sq.signs(k)):
                n = c.pop(k)
                c[one] += n
                c[minus_one] += n
                c[sq.mul(k, minus_one)] -= n
        for k in list(c):
            if k == one or not c[k]:
                continue
            if all(s > 0 for s in sq.signs(k)):
                n = c[k]
                r = (n + 1) % 4 - 1
                c[k] = r
                c[one] += n - r
        if sq.kind == "rational" and len(c) > REDUCE_Q_ABOVE:
            nf = rational_normal_form(c)
            if len(nf) < len(c):
                c = nf
        return GWElem.from_counts(t, c)

    # -- equality --------------------------------------------------------------

    def equals(self, other: Any) -> TriBool:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare GWElem with {type(other).__name__}")
        return (self - o).is_zero()

    def is_zero(self) -> TriBool:
        if not self.coeffs:
            return TriBool.TRUE
        # the reduction relations hold in every supported field; applying
        # them first keeps the witness search small
        pos, neg = self.reduced()._pos_neg()
        return isometric_counts(self.tower, pos, neg)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (GWElem, int)):
            return NotImplemented
        if isinstance(other, GWElem) and other.tower != self.tower:
            return False
        verdict = self.equals(other)
        if not verdict.known:
            raise UndecidedEquality(f"cannot decide {self} == {other} over {self.tower}")
        return verdict is TriBool.TRUE

    def __hash__(self) -> int:
        return hash((self.tower, self.dim, self.disc_key))

    # -- invariants ------------------------------------------------------------

    @property
    def dim(self) -> int:
        return sum(n for _, n in self.coeffs)

    @cached_property
    def disc_key(self) -> Any:
        return counts_disc(self.tower, self.witt_counts())

    def disc(self) -> str:
        return fmt_class(self.tower, self.disc_key)

    def signatures(self) -> list[int]:
        return counts_signatures(self.tower, self.counts)

    def invariants(self) -> FormInvariants:
        from .fields import real_embeddings

        t = self.tower
        hasse: tuple = ()
        w = self.witt_counts()
        if not t.is_finite and t.height == 0:
            hasse = hasse_list(w)
        return FormInvariants(
            dim=self.dim,
            disc=self.disc(),
            hasse=hasse,
            signatures=tuple(zip(real_embeddings(t), self.signatures())),
        )

    # -- field maps --------------------------------------------------------------

    def map_classes(self, fn: Any, target: FieldTower) -> GWElem:
        """Apply a field embedding ``fn`` (raw -> raw in ``target``) to every entry."""
        sq_src, sq_dst = self.tower.square_classes, target.square_classes
        c: Counter = Counter()
        for k, n in self.coeffs:
            c[sq_dst.key(fn(sq_src.raw(k)))] += n
        return GWElem.from_counts(target, c)

    def base_change(self, target: FieldTower) -> GWElem:
        if target == self.tower:
            return self
        return self.map_classes(lambda r: target.lift_from(self.tower, r), target)

    def conj(self) -> GWElem:
        return self.map_classes(self.tower.conj, self.tower)

    # -- printing ----------------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        sq = self.tower.square_classes
        parts = []
        for k, n in self.coeffs:
            if k == sq.one:
                body, mag = str(abs(n)), 1
            else:
                body, mag = f"<{self.tower.fmt(sq.raw(k))}>", abs(n)
            if mag != 1:
                body = f"{mag}*{body}"
            parts.append(("-" if n < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"GWElem({self.tower}, {self})"


def _as_value(tower: FieldTower, a: Any) -> Any:
    if isinstance(a, str):
        return tower.elem(a)
    return a


# --------------------------------------------------------------------------
# module-level operations


def gw_arith(x: GWElem, y: GWElem | None, op: str) -> GWElem:
    if op == "neg":
        return -x
    if y is None:
        raise ValueError(f"{op} needs two arguments")
    if x.tower != y.tower:
        raise TowerMismatch(f"{x.tower} vs {y.tower}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def gw_equal(x: GWElem, y: GWElem) -> TriBool:
    if x.tower != y.tower:
        raise TowerMismatch(f"{x.tower} vs {y.tower}")
    return x.equals(y)


def dim(x: GWElem) -> int:
    return x.dim


def disc(x: GWElem) -> str:
    return x.disc()


def signatures(x: GWElem) -> list[int]:
    return x.signatures()


def in_In(x: GWElem, n: int) -> TriBool:
    """Membership in the n-th power of the fundamental ideal (the kernel of dim)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0 or not x.coeffs:
        return TriBool.TRUE
    if x.dim != 0:
        return TriBool.FALSE
    if n == 1:
        return TriBool.TRUE
    t = x.tower
    if x.disc_key != t.square_classes.one:
        return TriBool.FALSE
    if n == 2:
        return TriBool.TRUE
    if t.is_finite:
        return x.is_zero()
    sigs = x.signatures()
    if any(s % (1 << n) for s in sigs):
        return TriBool.FALSE
    if t.height > 0:
        return TriBool.TRUE if x.is_zero() is TriBool.TRUE else TriBool.UNKNOWN
    # over Q: pad the Witt form with hyperbolic planes to dimension 0 mod 8;
    # it then lies in I^3 iff its Hasse invariant is trivial everywhere
    w = x.witt_counts()
    pad = (-sum(w.values())) % 8 // 2
    w[1] += pad
    w[-1] += pad
    return TriBool.of(all(counts_hasse(w, pl.p) == 1 for pl in counts_places(w)))


def is_torsion(x: GWElem) -> TriBool:
    return TriBool.of(x.dim == 0 and all(s == 0 for s in x.signatures()))


def torsion_exponent(x: GWElem) -> int:
    """Least r with 2^r x = 0."""
    if is_torsion(x) is not TriBool.TRUE:
        raise NotTorsion(f"{x} is not torsion")
    for r in range(settings.max_torsion_exponent + 1):
        verdict = (x * (1 << r)).is_zero()
        if verdict is TriBool.TRUE:
            return r
        if verdict is TriBool.UNKNOWN:
            raise UndecidedEquality(f"cannot decide whether 2^{r} * ({x}) vanishes over {x.tower}")
    raise NotTorsion(f"torsion exponent of {x} exceeds {settings.max_torsion_exponent}")


def _unit_normal_form(x: GWElem) -> tuple[int, GWElem, GWElem]:
    """Write x = s * <e> * (1 + w) with s = +-1 and w in I^2."""
    s = x.dim
    z = x * s
    e = (z - 1).disc_key
    twist = GWElem(x.tower, ((e, 1),))
    w = twist * z - 1
    return s, twist, w


def is_unit(x: GWElem) -> TriBool:
    if x.dim not in (1, -1):
        return TriBool.FALSE
    _, _, w = _unit_normal_form(x)
    return is_torsion(w)


def unit_inverse(x: GWElem) -> GWElem:
    if is_unit(x) is not TriBool.TRUE:
        raise NotAUnit(f"{x} is not a unit")
    s, twist, w = _unit_normal_form(x)
    # w is a torsion element of I^2, so w^2 is torsion in I^3, which vanishes
    # over every supported field: (1 + w)^-1 = 1 - w
    series = 1 - w
    return twist * series * s


def in_Fn(x: GWElem, n: int) -> TriBool:
    u = is_unit(x)
    if n == 0 or u is not TriBool.TRUE:
        return u
    return in_In(x - 1, n)


def alpha_n(x: GWElem, n: int) -> GWElem:
    """The representative x - 1 of the class of x in I^n / I^2n."""
    if in_Fn(x, n) is not TriBool.TRUE:
        raise NotInFiltration(f"{x} is not in F_{n}")
    return x - 1


def lambda2(x: GWElem) -> GWElem:
    """Second exterior power, extended to differences via lambda_t(x - y) = lambda_t(x)/lambda_t(y)."""
    sq = x.tower.square_classes
    c: Counter = Counter()
    items = x.coeffs
    for i, (a, na) in enumerate(items):
        c[sq.one] += _binom2(na)
        for b, nb in items[i + 1 :]:
            c[sq.mul(a, b)] += na * nb
    return GWElem.from_counts(x.tower, c)
