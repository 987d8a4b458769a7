"""Group-ring model GW(k)[<t_1>, ..., <t_m>] / (<t_i>^2 = 1).

An element is a sparse map from bitmasks (bit i-1 set means the monomial
contains <t_i>) to constant coefficients in GW(k). This ring sits inside
GW(k(t_1, ..., t_m)) and is closed under everything the logarithm needs:
powers of constant units by elements of the model, norms and transfers of
constant quadratic extensions, residues and specialisation.
"""

from __future__ import annotations

import dataclasses
import random
from collections import Counter
from collections.abc import Mapping
from typing import Any

from .config import settings
from .errors import (
    ArityMismatch,
    ExtractionMismatch,
    IndexOutOfRange,
    NoTopStep,
    NotInF2,
    OddDegree,
    TowerMismatch,
    UndecidedEquality,
)
from .etale_transfer import EtaleAlgebra, norm_restricted, transfer_down, transfer_step
from .expmod import exp
from .fields import FieldTower
from .gw import GWElem, in_Fn, in_In, is_torsion, torsion_exponent, unit_inverse
from .tribool import TriBool


def _bits(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


@dataclasses.dataclass(frozen=True, eq=False)
class GRElem:
    tower: FieldTower
    m: int
    coeffs: tuple[tuple[int, GWElem], ...] = ()

    def __post_init__(self) -> None:
        if self.m < 0 or self.m > settings.max_vars:
            raise ArityMismatch(f"variable count {self.m} outside 0..{settings.max_vars}")

    @classmethod
    def from_map(cls, tower: FieldTower, m: int, coeffs: Mapping[int, GWElem]) -> GRElem:
        items = tuple(sorted((k, v) for k, v in coeffs.items() if v.coeffs))
        return cls(tower, m, items)

    @classmethod
    def const(cls, c: GWElem | int, m: int, tower: FieldTower | None = None) -> GRElem:
        if isinstance(c, int):
            if tower is None:
                raise ValueError("a tower is needed to embed an integer")
            c = GWElem.const(tower, c)
        return cls.from_map(c.tower, m, {0: c})

    @classmethod
    def monomial(cls, tower: FieldTower, m: int, mask: int, c: GWElem | None = None) -> GRElem:
        if mask >> m:
            raise IndexOutOfRange(f"monomial mask {mask:b} uses more than {m} variables")
        return cls.from_map(tower, m, {mask: c if c is not None else GWElem.one(tower)})

    @classmethod
    def var(cls, tower: FieldTower, m: int, i: int) -> GRElem:
        """The class <t_i>."""
        if not 1 <= i <= m:
            raise IndexOutOfRange(f"t{i} with {m} variables")
        return cls.monomial(tower, m, 1 << (i - 1))

    @property
    def coeff_map(self) -> dict[int, GWElem]:
        return dict(self.coeffs)

    def coeff(self, mask: int) -> GWElem:
        return self.coeff_map.get(mask, GWElem.zero(self.tower))

    @property
    def dim(self) -> int:
        return sum(c.dim for _, c in self.coeffs)

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other: Any) -> GRElem:
        if isinstance(other, GRElem):
            if other.tower != self.tower:
                raise TowerMismatch(f"{other.tower} vs {self.tower}")
            if other.m != self.m:
                raise ArityMismatch(f"{other.m} vs {self.m} variables")
            return other
        if isinstance(other, GWElem):
            if other.tower != self.tower:
                raise TowerMismatch(f"{other.tower} vs {self.tower}")
            return GRElem.const(other, self.m)
        if isinstance(other, int):
            return GRElem.const(other, self.m, self.tower)
        return NotImplemented

    def __add__(self, other: Any) -> GRElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = self.coeff_map
        for k, v in o.coeffs:
            out[k] = out[k] + v if k in out else v
        return GRElem.from_map(self.tower, self.m, out)

    __radd__ = __add__

    def __neg__(self) -> GRElem:
        return GRElem(self.tower, self.m, tuple((k, -v) for k, v in self.coeffs))

    def __sub__(self, other: Any) -> GRElem:
        o = self._coerce(other)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, other: Any) -> GRElem:
        o = self._coerce(other)
        return o if o is NotImplemented else o + (-self)

    def __mul__(self, other: Any) -> GRElem:
        if isinstance(other, int):
            return GRElem.from_map(self.tower, self.m, {k: v * other for k, v in self.coeffs})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # collect class counts per monomial and reduce once at the end
        sq = self.tower.square_classes
        acc: dict[int, Counter] = {}
        for k1, v1 in self.coeffs:
            for k2, v2 in o.coeffs:
                c = acc.setdefault(k1 ^ k2, Counter())
                for a, n1 in v1.coeffs:
                    for b, n2 in v2.coeffs:
                        c[sq.mul(a, b)] += n1 * n2
        out = {k: GWElem.from_counts(self.tower, c).reduced() for k, c in acc.items()}
        return GRElem.from_map(self.tower, self.m, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GRElem:
        if n < 0:
            raise ValueError("negative powers are not supported in the group ring")
        out = GRElem.const(1, self.m, self.tower)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def equals(self, other: Any) -> TriBool:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare GRElem with {type(other).__name__}")
        diff = self - o
        out = TriBool.TRUE
        for _, c in diff.coeffs:
            out = out & c.is_zero()
            if out is TriBool.FALSE:
                break
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (GRElem, GWElem, int)):
            return NotImplemented
        verdict = self.equals(other)
        if not verdict.known:
            raise UndecidedEquality(f"cannot decide {self} == {other}")
        return verdict is TriBool.TRUE

    __hash__ = None  # type: ignore[assignment]

    def map_coeffs(self, fn: Any, tower: FieldTower | None = None) -> GRElem:
        t = tower or self.tower
        return GRElem.from_map(t, self.m, {k: fn(v) for k, v in self.coeffs})

    def conj(self) -> GRElem:
        return self.map_coeffs(lambda c: c.conj())

    # -- printing ----------------------------------------------------------------

    def __str__(self) -> str:
        parts: list[tuple[str, str]] = []
        sq = self.tower.square_classes
        for mask, c in self.coeffs:
            names = [f"t{i}" for i in _bits(mask)]
            for key, n in c.coeffs:
                raw = sq.raw(key)
                if not names:
                    body = str(abs(n)) if key == sq.one else f"<{self.tower.fmt(raw)}>"
                    mag = 1 if key == sq.one else abs(n)
                else:
                    body = "<" + _entry(self.tower, raw, names) + ">"
                    mag = abs(n)
                if mag != 1:
                    body = f"{mag}*{body}"
                parts.append(("-" if n < 0 else "+", body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"GRElem({self.tower}, m={self.m}, {self})"


def _entry(tower: FieldTower, raw: Any, names: list[str]) -> str:
    vars_ = "*".join(names)
    if tower.is_one(raw):
        return vars_
    if tower.is_one(tower.neg(raw)):
        return "-" + vars_
    s = tower.fmt(raw)
    if " " in s:
        s = f"({s})"
    return f"{s}*{vars_}"


def gr_arith(x: GRElem, y: GRElem | None, op: str) -> GRElem:
    if op == "neg":
        return -x
    if y is None:
        raise ValueError(f"{op} needs two arguments")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def P(m: int, tower: FieldTower | None = None) -> GRElem:
    """(<t_1> - 1)(<t_2> - 1)...(<t_m> - 1)."""
    t = tower if tower is not None else FieldTower()
    if m < 0:
        raise ArityMismatch("m must be non-negative")
    coeffs = {}
    for mask in range(1 << m):
        sign = -1 if (m - bin(mask).count("1")) % 2 else 1
        coeffs[mask] = GWElem.const(t, sign)
    return GRElem.from_map(t, m, coeffs)


def embed(x: GWElem, m: int) -> GRElem:
    return GRElem.const(x, m)


def _drop_bit(mask: int, i: int) -> int:
    low = mask & ((1 << (i - 1)) - 1)
    return low | (mask >> i) << (i - 1)


def _split(x: GRElem, i: int) -> tuple[dict[int, GWElem], dict[int, GWElem]]:
    if not 1 <= i <= x.m:
        raise IndexOutOfRange(f"variable t{i} with {x.m} variables")
    even: dict[int, GWElem] = {}
    odd: dict[int, GWElem] = {}
    bit = 1 << (i - 1)
    for mask, c in x.coeffs:
        (odd if mask & bit else even)[_drop_bit(mask, i)] = c
    return even, odd


def second_residue(x: GRElem, i: int) -> GRElem:
    """Writing x = a + <t_i> b with a, b free of t_i, return b."""
    _, odd = _split(x, i)
    return GRElem.from_map(x.tower, x.m - 1, odd)


def specialize_one(x: GRElem, i: int) -> GRElem:
    """Set t_i = 1: a + <t_i> b  ->  a + b."""
    even, odd = _split(x, i)
    for k, v in odd.items():
        even[k] = even[k] + v if k in even else v
    return GRElem.from_map(x.tower, x.m - 1, even)


# --------------------------------------------------------------------------
# transfers and norms along constant quadratic extensions


def _component_args(x: GRElem | tuple[GRElem, ...], algebra: EtaleAlgebra) -> tuple[GRElem, ...]:
    parts = x if isinstance(x, tuple) else (x,)
    if len(parts) != len(algebra.components):
        raise TowerMismatch("one group-ring element per component is required")
    for p, c in zip(parts, algebra.components):
        if p.tower != c:
            raise TowerMismatch(f"{p.tower} vs {c}")
    return parts


def gr_restrict(x: GRElem, algebra: EtaleAlgebra) -> tuple[GRElem, ...]:
    return tuple(x.map_coeffs(lambda c, t=t: c.base_change(t), t) for t in algebra.components)


def gr_transfer(x: GRElem | tuple[GRElem, ...], algebra: EtaleAlgebra) -> GRElem:
    parts = _component_args(x, algebra)
    base = algebra.base
    out = GRElem.const(0, parts[0].m, base)
    for p in parts:
        out = out + p.map_coeffs(lambda c: transfer_down(c, base), base)
    return out


def _gr_norm_step(x: GRElem) -> GRElem:
    """Wittkop fold over the summands n<a t^e>; N(<a t^e>) = <N a> since N(<t>) = <t^2> = 1."""
    t = x.tower
    if not t.steps:
        raise NoTopStep(f"{t} has no quadratic step")
    lo = t.lower
    sq = t.square_classes
    norm_minus_one = transfer_step(GWElem.one(t)) - 1
    acc = GRElem.const(0, x.m, t)
    total = GRElem.const(0, x.m, lo)
    for mask, c in x.coeffs:
        for key, n in c.coeffs:
            raw = sq.raw(key)
            k = abs(n)
            ny = GWElem.sq(lo, t.norm(raw)) * k
            if k > 1:
                ny = ny + transfer_step(GWElem.sq(t, t.mul(raw, t.conj(raw)))) * (k * (k - 1) // 2)
            if n < 0:
                ny = norm_minus_one * ny
            y = GRElem.monomial(t, x.m, mask, GWElem(t, ((key, n),)))
            cross = (acc * y.conj()).map_coeffs(transfer_step, lo)
            total = total + GRElem.const(ny, x.m) + cross
            acc = acc + y
    return total


def gr_norm(x: GRElem | tuple[GRElem, ...], algebra: EtaleAlgebra) -> GRElem:
    if algebra.degree != 2:
        raise OddDegree(f"{algebra} has degree {algebra.degree}; only quadratic norms are modelled")
    parts = _component_args(x, algebra)
    if len(parts) == 2:
        return parts[0] * parts[1]
    return _gr_norm_step(parts[0])


# --------------------------------------------------------------------------
# exponentiation and logarithm


def _power_by_monomial(u: GWElem, m: int, mask: int) -> GRElem:
    """u^<t^e> = N_{E1}(u) N_{E2}(u)^{-1} u with E1 = k(t)(sqrt 2t^e), E2 = k(t)(sqrt 2).

    Both norms are of restricted elements, so the lambda2-formula evaluates
    them inside the model: tr(E1) = <2> + <t^e>, tr(E2) = <2> + 1.
    """
    k = u.tower
    two = GWElem.sq(k, 2)
    tr_e1 = GRElem.const(two, m) + GRElem.monomial(k, m, mask)
    tr_e2 = two + 1
    n1 = norm_restricted(u, tr_e1)
    n2 = norm_restricted(u, tr_e2)
    return n1 * (unit_inverse(n2) * u)


def gr_exp(x: GWElem, y: GRElem, rng: random.Random | None = None) -> GRElem:
    """x^y in the model for a constant unit x."""
    if x.tower != y.tower:
        raise TowerMismatch(f"{x.tower} vs {y.tower}")
    out = GRElem.const(1, y.m, x.tower)
    for mask, c in y.coeffs:
        u = exp(x, c, rng)
        if mask == 0:
            out = out * u
        else:
            out = out * _power_by_monomial(u, y.m, mask)
    return out


def top_coefficient(g: GRElem) -> GWElem:
    """Iterate second residues over all variables."""
    for i in range(g.m, 0, -1):
        g = second_residue(g, i)
    return g.coeff(0)


def _require_F2(x: GWElem) -> None:
    if in_Fn(x, 2) is not TriBool.TRUE:
        raise NotInF2(f"{x} is not in F_2")


def log_m(x: GWElem, m: int) -> GWElem:
    """The unique y with x^{P_m} = 1 + P_m y, certified by recomputing both sides."""
    _require_F2(x)
    if m < 1:
        raise ArityMismatch("log_m needs m >= 1")
    pm = P(m, x.tower)
    g = gr_exp(x, pm)
    y = top_coefficient(g)
    if g.equals(pm * y + 1) is TriBool.FALSE:
        raise ExtractionMismatch(f"x^P_{m} is not of the form 1 + P_{m} y for x = {x}")
    return y


def stability_index(x: GWElem) -> int:
    """r with 2^r (x - 1) = 0; falls back to 1 where equality is undecidable.

    For x in F_2, x - 1 lies in I^2_tor and 2(x - 1) in I^3_tor, which vanishes
    over every supported field.
    """
    try:
        return torsion_exponent(x - 1)
    except UndecidedEquality:
        return 1


def log(x: GWElem) -> GWElem:
    _require_F2(x)
    m = 3 * stability_index(x) + 1
    y = log_m(x, m)
    if y.equals(log_m(x, m + 1)) is TriBool.FALSE:
        raise ExtractionMismatch(f"log_m({x}) did not stabilise at m = {m}")
    if in_In(y, 2) is TriBool.FALSE or is_torsion(y) is TriBool.FALSE:
        raise ExtractionMismatch(f"log({x}) = {y} is not a torsion element of I^2")
    return y
