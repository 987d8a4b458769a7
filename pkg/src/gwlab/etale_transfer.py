"""Finite etale algebras, Scharlau transfers and Rost norms.

An algebra is a product of towers over a common base tower ``k``; a component
equal to ``k`` itself is a split factor. Transfers and norms along a tower are
computed one quadratic step at a time. A single norm step runs Wittkop's
recursion N(x + y) = N(x) + N(y) + tr(x * conj(y)) over the class list of its
argument.
"""

from __future__ import annotations

import dataclasses
import random
from collections.abc import Callable, Sequence
from typing import Any

from .errors import (
    BadTraceForm,
    NoTopStep,
    OddDegree,
    TowerMismatch,
    UndecidedEquality,
)
from .fields import FieldTower, Raw
from .gw import GWElem, lambda2
from .tribool import TriBool


@dataclasses.dataclass(frozen=True)
class EtaleAlgebra:
    base: FieldTower
    components: tuple[FieldTower, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("an etale algebra needs at least one component")
        for c in self.components:
            if not self.base.is_prefix_of(c):
                raise TowerMismatch(f"{c} is not an extension of {self.base}")

    @classmethod
    def split(cls, base: FieldTower, copies: int = 2) -> EtaleAlgebra:
        return cls(base, (base,) * copies)

    @classmethod
    def quadratic(cls, base: FieldTower, d: Any) -> EtaleAlgebra:
        """``k(sqrt d)``, or ``k x k`` when d is a square."""
        raw = base._raw(d)
        if base.is_square(raw):
            return cls.split(base)
        return cls(base, (base.adjoin(raw),))

    @property
    def degree(self) -> int:
        return sum(2 ** (c.height - self.base.height) for c in self.components)

    def __str__(self) -> str:
        return " x ".join(str(c) for c in self.components)


@dataclasses.dataclass(frozen=True)
class GWOverA:
    algebra: EtaleAlgebra
    parts: tuple[GWElem, ...]

    def __post_init__(self) -> None:
        if len(self.parts) != len(self.algebra.components):
            raise TowerMismatch("one part per component is required")
        for p, c in zip(self.parts, self.algebra.components):
            if p.tower != c:
                raise TowerMismatch(f"{p.tower} vs {c}")

    @classmethod
    def const(cls, algebra: EtaleAlgebra, n: int) -> GWOverA:
        return cls(algebra, tuple(GWElem.const(c, n) for c in algebra.components))

    def _zip(self, other: Any, op: Callable[[GWElem, Any], GWElem]) -> GWOverA:
        if isinstance(other, int):
            return GWOverA(self.algebra, tuple(op(p, other) for p in self.parts))
        if not isinstance(other, GWOverA):
            return NotImplemented
        if other.algebra != self.algebra:
            raise TowerMismatch(f"{self.algebra} vs {other.algebra}")
        return GWOverA(self.algebra, tuple(op(p, q) for p, q in zip(self.parts, other.parts)))

    def __add__(self, other: Any) -> GWOverA:
        return self._zip(other, lambda p, q: p + q)

    __radd__ = __add__

    def __sub__(self, other: Any) -> GWOverA:
        return self._zip(other, lambda p, q: p - q)

    def __mul__(self, other: Any) -> GWOverA:
        return self._zip(other, lambda p, q: p * q)

    __rmul__ = __mul__

    def __neg__(self) -> GWOverA:
        return GWOverA(self.algebra, tuple(-p for p in self.parts))

    def equals(self, other: GWOverA) -> TriBool:
        out = TriBool.TRUE
        for p, q in zip(self.parts, other.parts):
            out = out & p.equals(q)
        return out

    def __str__(self) -> str:
        if len(self.parts) == 1:
            return str(self.parts[0])
        return "(" + ", ".join(str(p) for p in self.parts) + ")"


# --------------------------------------------------------------------------
# restriction, transfer, conjugation


def restrict(x: GWElem, algebra: EtaleAlgebra) -> GWOverA:
    if x.tower != algebra.base:
        raise TowerMismatch(f"{x.tower} vs {algebra.base}")
    return GWOverA(algebra, tuple(x.base_change(c) for c in algebra.components))


def transfer_step(x: GWElem) -> GWElem:
    """Scharlau transfer along the top quadratic step of ``x.tower``.

    For c = u + v sqrt(d), the trace form of <c> has Gram matrix
    [[2u, 2vd], [2vd, 2ud]], which is <2u, 2u d N(c)> if u != 0 and
    hyperbolic otherwise.
    """
    t = x.tower
    if not t.steps:
        raise NoTopStep(f"{t} has no quadratic step")
    lo = t.lower
    out: dict[Any, int] = {}
    for raw, n in x.entries():
        _transfer_class(t, raw, n, out)
    return GWElem.from_counts(lo, out)


def _transfer_class(t: FieldTower, raw: Raw, n: int, out: dict[Any, int]) -> None:
    """Add n * tr<raw> into the class counts ``out`` over ``t.lower``."""
    lo = t.lower
    sq = lo.square_classes
    u = raw[0]
    if lo.is_zero(u):
        pair = (sq.one, sq.key(lo.from_base(-1)))
    else:
        two_u = lo.add(u, u)
        pair = (sq.key(two_u), sq.key(lo.mul(lo.mul(two_u, t.steps[-1]), t.norm(raw))))
    for k in pair:
        out[k] = out.get(k, 0) + n


def transfer_down(x: GWElem, base: FieldTower) -> GWElem:
    if not base.is_prefix_of(x.tower):
        raise TowerMismatch(f"{base} is not a subfield of {x.tower}")
    while x.tower != base:
        x = transfer_step(x)
    return x


def scharlau_transfer(x: GWOverA) -> GWElem:
    base = x.algebra.base
    out = GWElem.zero(base)
    for p in x.parts:
        out = out + transfer_down(p, base)
    return out


def trace_form(algebra: EtaleAlgebra) -> GWElem:
    return scharlau_transfer(GWOverA.const(algebra, 1))


def conj_gw(x: GWElem | GWOverA) -> GWElem | GWOverA:
    """The canonical involution: top-step conjugation, or the swap on k x k."""
    if isinstance(x, GWElem):
        return x.conj()
    comps = x.algebra.components
    base = x.algebra.base
    if len(comps) == 2 and comps[0] == comps[1] == base:
        return GWOverA(x.algebra, (x.parts[1], x.parts[0]))
    if len(comps) == 1 and comps[0].height == base.height + 1:
        return GWOverA(x.algebra, (x.parts[0].conj(),))
    raise NoTopStep(f"{x.algebra} is not a degree 2 algebra over {base}")


# --------------------------------------------------------------------------
# Rost norms


def _terms(x: GWElem, expand: bool) -> list[tuple[Raw, int]]:
    terms = x.entries()
    if expand:
        terms = [(r, 1 if n > 0 else -1) for r, n in terms for _ in range(abs(n))]
    return terms


def norm_step(
    x: GWElem,
    *,
    expand: bool = False,
    rng: random.Random | None = None,
) -> GWElem:
    """Rost norm along the top quadratic step, by Wittkop's recursion.

    The argument is split into summands n<a>; with ``expand`` each summand is
    +-<a>. ``rng`` shuffles the summands before folding.
    """
    t = x.tower
    if not t.steps:
        raise NoTopStep(f"{t} has no quadratic step")
    lo = t.lower
    terms = _terms(x, expand)
    if rng is not None:
        rng.shuffle(terms)
    norm_minus_one = transfer_step(GWElem.one(t)) - 1
    # N(0) = 0, so the fold starts from zero. The cross term tr(acc * conj y)
    # only matters after transfer, so it is summed class by class straight
    # into counts over the lower field without classifying products upstairs.
    acc: list[tuple[Raw, int]] = []
    total = GWElem.zero(lo)
    for raw, n in terms:
        ny = _norm_multiple(t, raw, abs(n))
        if n < 0:
            ny = norm_minus_one * ny
        cross: dict[Any, int] = {}
        bar = t.conj(raw)
        for r, m in acc:
            _transfer_class(t, t.mul(r, bar), m * n, cross)
        total = total + ny + GWElem.from_counts(lo, cross)
        acc.append((raw, n))
    return total


def _norm_multiple(t: FieldTower, raw: Raw, n: int) -> GWElem:
    """N(n<a>) = n<N a> + C(n,2) tr(<a conj a>), from the recursion applied n times."""
    lo = t.lower
    na = GWElem.sq(lo, t.norm(raw))
    if n == 1:
        return na
    cross = transfer_step(GWElem.sq(t, t.mul(raw, t.conj(raw))))
    return na * n + cross * (n * (n - 1) // 2)


def norm_down(x: GWElem, base: FieldTower, **kw: Any) -> GWElem:
    if not base.is_prefix_of(x.tower):
        raise TowerMismatch(f"{base} is not a subfield of {x.tower}")
    while x.tower != base:
        x = norm_step(x, **kw)
    return x


def rost_norm(x: GWOverA, *, expand: bool = False, rng: random.Random | None = None) -> GWElem:
    """Multiplicative transfer: product over components of the tower norms."""
    base = x.algebra.base
    out = GWElem.one(base)
    for p in x.parts:
        out = out * norm_down(p, base, expand=expand, rng=rng)
    return out


def norm_restricted(x: Any, trE: Any) -> Any:
    """N_{E/L}(x|_E) = x^2 - 2 lambda2(x) + lambda2(x) tr(E), without building E.

    Works for any ring element with a ``lambda2`` (GWElem, or group-ring
    elements whose ``trE`` carries variables). The result already has
    dimension dim(x)^2, so no hyperbolic correction is needed.
    """
    if trE.dim != 2:
        raise BadTraceForm(f"trace form of a quadratic algebra has dim 2, got {trE.dim}")
    l2 = x.lambda2() if hasattr(x, "lambda2") else lambda2(x)
    return x * x - l2 * 2 + l2 * trE


def check_distributivity(algebra: EtaleAlgebra, x: GWOverA, y: GWOverA) -> bool:
    """N(x + y) = N(x) + N(y) + tr(x * conj y) for a degree 2 algebra."""
    if algebra.degree != 2:
        raise OddDegree(f"{algebra} has degree {algebra.degree}")
    lhs = rost_norm(x + y, expand=True)
    rhs = rost_norm(x) + rost_norm(y) + scharlau_transfer(x * conj_gw(y))
    verdict = lhs.equals(rhs)
    if not verdict.known:
        raise UndecidedEquality(f"cannot decide distributivity over {algebra.base}")
    return verdict is TriBool.TRUE


# --------------------------------------------------------------------------
# base change of a quadratic algebra


def base_change_quadratic(
    algebra: EtaleAlgebra, target: FieldTower
) -> tuple[EtaleAlgebra, Callable[[GWOverA], GWOverA]]:
    """A (x)_k B for degree 2 ``algebra`` over k and an extension tower B of k.

    Returns the algebra over B and the map GW(A) -> GW(A (x) B).
    """
    k = algebra.base
    if not k.is_prefix_of(target):
        raise TowerMismatch(f"{target} does not extend {k}")
    if algebra.degree != 2:
        raise OddDegree(f"{algebra} has degree {algebra.degree}")
    comps = algebra.components
    if len(comps) == 2:
        new = EtaleAlgebra.split(target)
        return new, lambda x: GWOverA(new, tuple(p.base_change(target) for p in x.parts))
    src = comps[0]
    d = target.lift_from(k, src.steps[-1])
    s = target.sqrt(d)
    if s is None:
        ext = target.adjoin(d)
        new = EtaleAlgebra(target, (ext,))

        def embed(r: Raw) -> Raw:
            return (target.lift_from(k, r[0]), target.lift_from(k, r[1]))

        return new, lambda x: GWOverA(new, (x.parts[0].map_classes(embed, ext),))
    new = EtaleAlgebra.split(target)

    def at(sign: int) -> Callable[[Raw], Raw]:
        root = s if sign > 0 else target.neg(s)
        return lambda r: target.add(
            target.lift_from(k, r[0]), target.mul(target.lift_from(k, r[1]), root)
        )

    return new, lambda x: GWOverA(
        new, (x.parts[0].map_classes(at(1), target), x.parts[0].map_classes(at(-1), target))
    )


def trace_gram(tower: FieldTower, base: FieldTower, c: Raw) -> list[list[Raw]]:
    """Gram matrix of (x, y) -> Tr(c x y) on the monomial basis of ``tower`` over ``base``."""
    basis = _monomial_basis(tower, base)

    def tr(z: Raw) -> Raw:
        t = tower
        while t != base:
            z = t.trace(z)
            t = t.lower
        return z

    return [[tr(tower.mul(c, tower.mul(a, b))) for b in basis] for a in basis]


def _monomial_basis(tower: FieldTower, base: FieldTower) -> list[Raw]:
    if tower == base:
        return [tower.one()]
    lo = tower.lower
    below = _monomial_basis(lo, base)
    return [tower.lift(b) for b in below] + [tower.mul(tower.lift(b), tower.gen()) for b in below]
