"""Exponentiation of units by Grothendieck-Witt classes.

Every y in GW(k) is an integer combination of trace forms plus 0 or 1:
``y = sum sign * tr(A) + c``. The exponential is then determined by
``x^{tr(A)} = N_{A/k}(x|_A)``:

    x^y = x^c * prod N_{A/k}(x|_A)^sign
"""

from __future__ import annotations

import random
from collections import Counter
from typing import Any

from .errors import NotAUnit, TowerMismatch
from .etale_transfer import EtaleAlgebra, norm_restricted, restrict, rost_norm, trace_form
from .fields import FieldTower, Raw
from .gw import GWElem, is_unit, unit_inverse
from .localsymbols import square_class_Q
from .tribool import TriBool

Decomposition = tuple[list[tuple[EtaleAlgebra, int]], int]


def _two_route(k: FieldTower, n: int, algs: Counter, rng: random.Random | None) -> int:
    """Add n<2> to ``algs``; returns the integer that must be added alongside."""
    if k.is_square(k.from_base(2)):
        return n
    if rng is not None and rng.random() < 0.3:
        # <2> = 2 - <2> since 2(<2> - 1) = 0
        return 2 * n + _two_route(k, -n, algs, None)
    s = _random_unit(k, rng)
    algs[_adjoin(k, k.mul(k.from_base(2), k.square(s)), rng is None)] += n
    return -n


def _adjoin(k: FieldTower, d: Raw, canonical: bool) -> FieldTower:
    if canonical and not k.is_finite and not k.steps:
        d = k.from_base(square_class_Q(d))
    return k.adjoin(d)


def _random_unit(k: FieldTower, rng: random.Random | None) -> Raw:
    if rng is None:
        return k.one()
    while True:
        s = k.from_base(rng.randint(1, 6))
        if k.steps and rng.random() < 0.5:
            s = k.add(s, k.mul(k.from_base(rng.randint(-2, 2)), k.gen()))
        if not k.is_zero(s):
            return s


def _rewrite_pairs(y: GWElem, rng: random.Random, rounds: int = 3) -> list[tuple[Raw, int]]:
    """Random isometric rewrites <a, b> -> <c, abc>, c = a s^2 + b t^2, inside each sign part."""
    k = y.tower
    pos = [r for r, n in y.entries() if n > 0 for _ in range(n)]
    neg = [r for r, n in y.entries() if n < 0 for _ in range(-n)]
    for part in (pos, neg):
        for _ in range(rounds):
            if len(part) < 2:
                break
            i, j = rng.sample(range(len(part)), 2)
            a, b = part[i], part[j]
            c = k.add(k.mul(a, k.square(_random_unit(k, rng))), k.mul(b, k.square(_random_unit(k, rng))))
            if k.is_zero(c):
                continue
            part[i], part[j] = c, k.mul(k.mul(a, b), c)
    return [(r, 1) for r in pos] + [(r, -1) for r in neg]


def trace_decompose(y: GWElem, rng: random.Random | None = None) -> Decomposition:
    """Write y = sum sign * tr(A) + c with c in {0, 1}.

    Deterministic unless ``rng`` is given; the seeded variant rewrites the
    representation and picks among equivalent routes, which is only useful
    for testing that exponentials do not depend on the choices.
    """
    k = y.tower
    algs: Counter = Counter()
    ints = 0
    terms = _rewrite_pairs(y, rng) if rng is not None else y.entries()
    for a, n in terms:
        if k.is_square(a):
            ints += n
            continue
        two_a = k.mul(k.from_base(2), a)
        if k.is_square(two_a):
            ints += _two_route(k, n, algs, rng)
            continue
        # <a> = tr(k(sqrt 2a)) - <2>
        s = _random_unit(k, rng)
        algs[_adjoin(k, k.mul(two_a, k.square(s)), rng is None)] += n
        ints += _two_route(k, -n, algs, rng)
    q, c = divmod(ints, 2)
    out: list[tuple[EtaleAlgebra, int]] = []
    for tower, m in algs.items():
        out += [(EtaleAlgebra(k, (tower,)), 1 if m > 0 else -1)] * abs(m)
    out += [(EtaleAlgebra.split(k), 1 if q > 0 else -1)] * abs(q)
    _verify(y, out, c)
    return out, c


def _verify(y: GWElem, parts: list[tuple[EtaleAlgebra, int]], c: int) -> None:
    total = GWElem.const(y.tower, c)
    for alg, sign in parts:
        total = total + trace_form(alg) * sign
    if total.equals(y) is TriBool.FALSE:
        raise AssertionError(f"trace decomposition of {y} does not reassemble")


def _grouped(parts: list[tuple[EtaleAlgebra, int]]) -> Counter:
    g: Counter = Counter()
    for alg, sign in parts:
        g[alg] += sign
    return g


def exp(x: GWElem, y: GWElem, rng: random.Random | None = None) -> GWElem:
    """x^y for a unit x.

    Each quadratic algebra A in the decomposition of y contributes N(x|A). The
    deterministic route evaluates it with the lambda2 formula over k; a seeded
    route builds x|A and runs the Wittkop fold in random order, so comparing
    the two cross-checks both norm routes and the decomposition.
    """
    if x.tower != y.tower:
        raise TowerMismatch(f"{x.tower} vs {y.tower}")
    if is_unit(x) is not TriBool.TRUE:
        raise NotAUnit(f"{x} is not a unit")
    parts, c = trace_decompose(y, rng)
    out = x if c else GWElem.one(x.tower)
    for alg, m in _grouped(parts).items():
        if m == 0:
            continue
        if rng is None:
            nrm = norm_restricted(x, trace_form(alg))
        else:
            nrm = rost_norm(restrict(x, alg), rng=rng)
        out = out * (nrm ** m if m > 0 else unit_inverse(nrm) ** (-m))
    return out


def exp_by_square_class(x: GWElem, a: Any) -> GWElem:
    """x^<a>; fast path through the trace decomposition of a single class."""
    k = x.tower
    raw = k._raw(k.elem(a).raw if not isinstance(a, tuple) else a)
    if is_unit(x) is not TriBool.TRUE:
        raise NotAUnit(f"{x} is not a unit")
    if k.is_square(raw):
        return x
    return exp(x, GWElem.sq(k, raw))
