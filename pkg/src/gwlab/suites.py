"""Named verification suites: seeded property checks with JSON reports.

Each suite is a list of *parts*; a part runs a number of independent cases,
each with its own RNG ``Random(f"{seed}:{part}:{i}")``, so reports do not
depend on execution order and parts can run in parallel.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any

from .errors import UndecidedEquality
from .etale_transfer import (
    EtaleAlgebra,
    GWOverA,
    base_change_quadratic,
    check_distributivity,
    conj_gw,
    norm_down,
    norm_restricted,
    restrict,
    rost_norm,
    scharlau_transfer,
    trace_form,
    trace_gram,
    transfer_down,
)
from .expmod import exp
from .fields import BaseField, FieldTower
from .forms import DiagForm, _from_coords, diagonalize, invariants, isometric
from .gw import GWElem, in_Fn, in_In, lambda2
from .laurent import GRElem, P, gr_exp, gr_norm, gr_transfer, log, log_m, stability_index
from .localsymbols import hilbert, relevant_places
from .presentation import check_presentation, check_T0_sequence
from .report import Report
from .sampling import (
    SQUAREFREE_POOL,
    case_rng,
    random_class,
    random_F2,
    random_gw,
    random_I2tor,
    random_In,
    random_nonsquare,
    random_raw,
    random_unit,
)
from .tribool import TriBool

Q = FieldTower(BaseField(0))


def Fp(p: int) -> FieldTower:
    return FieldTower(BaseField(p))


def _t(v: TriBool) -> bool:
    return v is TriBool.TRUE


def _eq(a: Any, b: Any) -> bool:
    return a.equals(b) is TriBool.TRUE


def nonsquares(k: FieldTower, count: int) -> list[Any]:
    """The first ``count`` non-square representatives (fewer if the field has fewer)."""
    if k.is_finite:
        return [k.from_base(a) for a in range(1, k.base.p) if not k.is_square(k.from_base(a))][:count]
    return [k.from_base(a) for a in (-1, 2, 5, -3, 3, 7)][:count]


def quadratic_algebras(k: FieldTower) -> list[EtaleAlgebra]:
    return [EtaleAlgebra.split(k)] + [EtaleAlgebra(k, (k.adjoin(d),)) for d in nonsquares(k, 3)]


def random_over(algebra: EtaleAlgebra, rng: random.Random, max_len: int = 4) -> GWOverA:
    return GWOverA(algebra, tuple(random_gw(c, rng, max_len) for c in algebra.components))


def random_quadratic(k: FieldTower, rng: random.Random, split_weight: float = 0.2) -> EtaleAlgebra:
    if rng.random() < split_weight:
        return EtaleAlgebra.split(k)
    return EtaleAlgebra(k, (k.adjoin(random_nonsquare(k, rng)),))


def _small_raw(k: FieldTower, rng: random.Random) -> Any:
    return _from_coords(k, [rng.randint(-2, 2) for _ in range(k.degree)])


def rewrite(x: GWElem, rng: random.Random, rounds: int = 2) -> GWElem:
    """An equal element with a different class list: <a, b> -> <c, abc>, c = a s^2 + b t^2."""
    k = x.tower
    pos = [r for r, n in x.entries() if n > 0 for _ in range(n)]
    neg = [r for r, n in x.entries() if n < 0 for _ in range(-n)]
    for part in (pos, neg):
        for _ in range(rounds):
            if len(part) < 2:
                break
            i, j = rng.sample(range(len(part)), 2)
            s, t = _small_raw(k, rng), _small_raw(k, rng)
            c = k.add(k.mul(part[i], k.square(s)), k.mul(part[j], k.square(t)))
            if k.is_zero(c):
                continue
            part[i], part[j] = c, k.mul(k.mul(part[i], part[j]), c)
    return GWElem.form(k, pos) - GWElem.form(k, neg)


# --------------------------------------------------------------------------
# parts: each is (name, anchor, default samples, case function)
# a case function gets (rep, i, rng) and records one or more checks


def _wittkop_case(k: FieldTower, alg_index: int) -> Callable:
    def run(rep: Report, i: int, rng: random.Random) -> None:
        alg = quadratic_algebras(k)[alg_index]
        x, y = random_over(alg, rng), random_over(alg, rng)
        rep.add(i, f"N(x+y) = N(x) + N(y) + tr(x conj y) over {alg}", check_distributivity(alg, x, y), f"x={x}; y={y}")

    return run


def _crossnorm_case(k: FieldTower) -> Callable:
    def run(rep: Report, i: int, rng: random.Random) -> None:
        alg = random_quadratic(k, rng)
        x = random_gw(k, rng)
        a = rost_norm(restrict(x, alg), expand=True, rng=rng)
        b = norm_restricted(x, trace_form(alg))
        rep.add(i, f"lambda2 norm formula = Wittkop norm over {k}", _eq(a, b), f"A={alg}; x={x}")

    return run


def _finite_tower(rng: random.Random, height: int) -> FieldTower:
    k = Fp(rng.choice((3, 5, 7, 11, 13)))
    for _ in range(height):
        k = k.adjoin(random_nonsquare(k, rng))
    return k


def _transitivity_case(rep: Report, i: int, rng: random.Random) -> None:
    top = _finite_tower(rng, 2)
    k = top.prefix(0)
    x = random_gw(top, rng, 4)
    # transfer: stepwise versus the diagonalised trace form of the degree 4 extension
    direct = GWElem.zero(k)
    for raw, n in x.entries():
        direct = direct + GWElem.from_forms(diagonalize(trace_gram(top, k, raw), k)) * n
    rep.add(i, "transfer transitivity", _eq(transfer_down(x, k), direct), f"{top}: {x}")
    # norm: rank one against the Frobenius field norm u^(1+p+p^2+p^3)
    u = random_raw(top, rng)
    p = k.base.p
    field_norm = top.pow(u, (p**4 - 1) // (p - 1))
    rep.add(
        i,
        "norm transitivity on rank one",
        _eq(norm_down(GWElem.sq(top, u), k), GWElem.sq(k, top.monomials(field_norm)[0][0])),
        f"{top}: <{top.fmt(u)}>",
    )
    # norm: the composite does not depend on the presentation of the top step
    c = random_raw(top.lower, rng)
    d2 = top.lower.mul(top.steps[-1], top.lower.square(c))
    other = top.lower.adjoin(d2)
    inv_c = top.lower.inv(c)
    moved = x.map_classes(lambda r: (r[0], top.lower.mul(r[1], inv_c)), other)
    rep.add(
        i,
        "norm transitivity across presentations",
        _eq(norm_down(x, k, rng=rng), norm_down(moved, k, expand=True)),
        f"{top} vs {other}: {x}",
    )
    y = random_gw(top, rng, 3)
    rep.add(i, "norm multiplicativity", _eq(norm_down(x * y, k), norm_down(x, k) * norm_down(y, k)), f"{x}; {y}")


def _base_change_case(rep: Report, i: int, rng: random.Random) -> None:
    k = Fp(rng.choice((3, 5, 7, 11, 13)))
    alg = random_quadratic(k, rng, 0.3)
    target = k
    for _ in range(rng.randint(1, 2)):
        target = target.adjoin(random_nonsquare(target, rng))
    new_alg, embed = base_change_quadratic(alg, target)
    x = random_over(alg, rng)
    lhs = rost_norm(x).base_change(target)
    rhs = rost_norm(embed(x))
    rep.add(i, "norm commutes with base change", _eq(lhs, rhs), f"A={alg}, B={target}: {x}")
    lhs = scharlau_transfer(x).base_change(target)
    rhs = scharlau_transfer(embed(x))
    rep.add(i, "transfer commutes with base change", _eq(lhs, rhs), f"A={alg}, B={target}: {x}")


def _fold_order_case(rep: Report, i: int, rng: random.Random) -> None:
    k = rng.choice((Q, Fp(5), Fp(7)))
    alg = EtaleAlgebra(k, (k.adjoin(random_nonsquare(k, rng)),))
    L = alg.components[0]
    x = random_gw(L, rng, 5)
    x2 = rewrite(x, rng)
    a = rost_norm(GWOverA(alg, (x,)))
    b = rost_norm(GWOverA(alg, (x2,)), expand=True, rng=rng)
    rep.add(i, "norm independent of fold order and representation", _eq(a, b), f"{alg}: {x} ~ {x2}")


def _tambara_case(k: FieldTower, split: bool) -> Callable:
    def run(rep: Report, i: int, rng: random.Random) -> None:
        if split:
            alg = EtaleAlgebra.split(k)
        else:
            alg = EtaleAlgebra(k, (k.adjoin(random_nonsquare(k, rng)),))
        x, y = random_over(alg, rng), random_over(alg, rng)
        if i == 0 and not split and not k.is_finite:
            alg = EtaleAlgebra(k, (k.adjoin(2),))
            L = alg.components[0]
            x = GWOverA(alg, (GWElem.sq(L, L.add(L.one(), L.gen())),))
            y = GWOverA.const(alg, 1)
        if i == 1:
            x = y = GWOverA.const(alg, 0)
        shape = "k x k" if split else "k(sqrt d)"
        rep.add(i, f"exponential diagram over {k}, {shape}", check_distributivity(alg, x, y), f"{alg}: x={x}; y={y}")

    return run


def _ideal_case(kind: str, n: int) -> Callable:
    def run(rep: Report, i: int, rng: random.Random) -> None:
        alg = EtaleAlgebra(Q, (Q.adjoin(random_nonsquare(Q, rng)),))
        L = alg.components[0]
        if kind == "transfer":
            x = random_In(L, n, rng, 2)
            t = scharlau_transfer(GWOverA(alg, (x,)))
            rep.add(i, f"tr(I^{n}) in I^{n}", _t(in_In(t, n)), f"{alg}: {x}")
            return
        x = random_In(L, n, rng, 2)
        rep.add(i, f"N(I^{n}) in I^{2 * n}", _t(in_In(rost_norm(GWOverA(alg, (x,))), 2 * n)), f"{alg}: {x}")
        u = random_F2(L, rng) if n == 2 else random_unit(L, rng)
        if u.dim == -1:
            u = -u
        nu = rost_norm(GWOverA(alg, (u,)))
        rep.add(i, f"N(F_{n}) in F_{n}", _t(in_Fn(nu, n)), f"{alg}: {u}")
        alpha_sq = nu - 1 - scharlau_transfer(GWOverA(alg, (u - 1,)))
        rep.add(i, f"alpha_{n}(N x) = tr(alpha_{n} x) mod I^{2 * n}", _t(in_In(alpha_sq, 2 * n)), f"{alg}: {u}")

    return run


def _module_field(i: int) -> FieldTower:
    return Q if i % 2 == 0 else Fp(5)


def _independence_case(rep: Report, i: int, rng: random.Random) -> None:
    k = _module_field(i)
    x, y = random_unit(k, rng), random_gw(k, rng, 4)
    rep.add(i, "x^y independent of the trace decomposition", _eq(exp(x, y), exp(x, y, rng)), f"{k}: x={x}; y={y}")


def _axioms_case(rep: Report, i: int, rng: random.Random) -> None:
    k = _module_field(i)
    x1, x2 = random_unit(k, rng), random_unit(k, rng)
    y1, y2 = random_gw(k, rng, 3), random_gw(k, rng, 3)
    ctx = f"{k}: x1={x1}; x2={x2}; y1={y1}; y2={y2}"
    rep.add(i, "(x1 x2)^y = x1^y x2^y", _eq(exp(x1 * x2, y1), exp(x1, y1) * exp(x2, y1)), ctx)
    rep.add(i, "x^(y1+y2) = x^y1 x^y2", _eq(exp(x1, y1 + y2), exp(x1, y1) * exp(x1, y2)), ctx)
    rep.add(i, "x^(y1 y2) = (x^y1)^y2", _eq(exp(x1, y1 * y2), exp(exp(x1, y1), y2)), ctx)
    rep.add(i, "x^0 = 1 and x^1 = x", _eq(exp(x1, GWElem.zero(k)), 1) and _eq(exp(x1, GWElem.one(k)), x1), ctx)


def _random_Fn(k: FieldTower, n: int, rng: random.Random) -> GWElem:
    if n == 0:
        return random_unit(k, rng)
    if n == 1:
        return random_class(k, rng) * random_F2(k, rng)
    return random_F2(k, rng)


def _filtration_case(rep: Report, i: int, rng: random.Random) -> None:
    k = _module_field(i)
    n, m = rng.randint(0, 2), rng.randint(0, 2)
    x = _random_Fn(k, n, rng)
    y = random_In(k, m, rng, 2)
    rep.add(i, "(F_n)^(I^m) in F_(n+m)", _t(in_Fn(exp(x, y), n + m)), f"{k}: n={n}, m={m}, x={x}, y={y}")


def _projection_case(rep: Report, i: int, rng: random.Random) -> None:
    k = _module_field(i)
    alg = EtaleAlgebra(k, (k.adjoin(random_nonsquare(k, rng)),))
    L = alg.components[0]
    x1 = random_unit(L, rng)
    y2 = random_gw(k, rng, 2)
    lhs = rost_norm(GWOverA(alg, (exp(x1, y2.base_change(L)),)))
    rhs = exp(rost_norm(GWOverA(alg, (x1,))), y2)
    rep.add(i, "N(x1^(y2|A)) = N(x1)^y2", _eq(lhs, rhs), f"{alg}: x1={x1}; y2={y2}")
    x2 = random_unit(k, rng)
    y1 = random_gw(L, rng, 2)
    lhs = rost_norm(GWOverA(alg, (exp(x2.base_change(L), y1),)))
    rhs = exp(x2, scharlau_transfer(GWOverA(alg, (y1,))))
    rep.add(i, "N((x2|A)^y1) = x2^tr(y1)", _eq(lhs, rhs), f"{alg}: x2={x2}; y1={y1}")


def _technical_field(i: int) -> FieldTower:
    return (Q, Fp(5), Q, Fp(7))[i % 4]


def _derived_case(rep: Report, i: int, rng: random.Random) -> None:
    k = _technical_field(i)
    m1 = GWElem.const(k, -1)
    for n in (1, 2):
        u = _random_Fn(k, n, rng)
        y = random_gw(k, rng, 3)
        x = u - 1
        rep.add(i, f"(1+x)^y = 1 + xy mod I^{2 * n} on F_{n}", _t(in_In(exp(u, y) - (x * y + 1), 2 * n)), f"{k}: x={x}; y={y}")
    alg = random_quadratic(k, rng)
    tr = trace_form(alg)
    rep.add(i, "(-1)^tr(A) = tr(A) - 1", _eq(exp(m1, tr), tr - 1), f"{alg}")
    y = random_In(k, 1, rng, 2)
    rep.add(i, "(-1)^y = 1 + y mod I^2 on I", _t(in_In(exp(m1, y) - (y + 1), 2)), f"{k}: y={y}")
    n, m = rng.randint(0, 2), rng.randint(0, 2)
    x = _random_Fn(k, n, rng)
    y = random_In(k, m, rng, 2)
    rep.add(i, "(F_n)^(I^m) in F_(n+m)", _t(in_Fn(exp(x, y), n + m)), f"{k}: x={x}; y={y}")
    # quadratic rule for norms of restricted elements, and x^tr(A) = N(x|A) on units
    a, b = random_gw(k, rng, 3), random_gw(k, rng, 3)

    def nr(z: GWElem) -> GWElem:
        return rost_norm(restrict(z, alg))

    rep.add(i, "(x+y)^tr(A) = x^tr(A) + y^tr(A) + tr(A)xy", _eq(nr(a + b), nr(a) + nr(b) + tr * a * b), f"{alg}: {a}; {b}")
    u = random_unit(k, rng)
    rep.add(i, "x^tr(A) = N(x|A)", _eq(exp(u, tr), nr(u)), f"{alg}: {u}")
    c = random_class(k, rng)
    z = random_gw(k, rng, 4)
    rep.add(i, "<a>^x = <a>^dim(x)", _eq(exp(c, z), c ** (z.dim % 2)), f"{c}; {z}")


def _norm_steps_case(rep: Report, i: int, rng: random.Random) -> None:
    k = _technical_field(i)
    alg = EtaleAlgebra(k, (k.adjoin(random_nonsquare(k, rng)),))
    L = alg.components[0]
    tr = trace_form(alg)
    t1 = GRElem.var(L, 1, 1)
    lhs = gr_norm(t1 - 1, alg)
    rhs = GRElem.const(-tr, 1) * (GRElem.var(k, 1, 1) - 1)
    rep.add(i, "N(<t> - 1) = -tr(L')(<t> - 1)", _eq(lhs, rhs), f"{alg}")
    rep.add(i, "tr(L')^2 = 2 tr(L')", _eq(tr * tr, tr * 2), f"{alg}")
    xi = rost_norm(GWOverA.const(alg, 2))
    rep.add(i, "N(2)(6 - N(2)) = 8", _eq(xi * (6 - xi), 8), f"{alg}")
    m = 1 + i % 4
    lhs = gr_norm(P(m, L), alg)
    rhs = P(m, k) * (tr * ((-1) ** m * 2 ** (m - 1)))
    rep.add(i, "N(P_m) = (-1)^m 2^(m-1) tr(L') P_m", _eq(lhs, rhs), f"{alg}, m={m}")
    x = random_I2tor(L, rng)
    m = 4
    lhs = gr_norm(P(m, L) * x + 1, alg)
    rhs = P(m, k) * scharlau_transfer(GWOverA(alg, (x,))) + 1
    rep.add(i, "N(1 + P_m x) = 1 + P_m tr(x) for m > 3r", _eq(lhs, rhs), f"{alg}: x={x}")


def _equality_fp_case(rep: Report, i: int, rng: random.Random) -> None:
    p = (3, 5, 7)[i % 3]
    k = Fp(p)
    n = rng.randint(1, 3)
    f1 = DiagForm(k, tuple(k.elem(rng.randrange(1, p)) for _ in range(n)))
    if rng.random() < 0.5:
        f2 = _random_congruent(f1, rng)
    else:
        f2 = DiagForm(k, tuple(k.elem(rng.randrange(1, p)) for _ in range(rng.choice((n, n, rng.randint(1, 3))))))
    verdict = isometric(f1, f2)
    oracle = _representation_counts(f1) == _representation_counts(f2)
    rep.add(i, "isometry agrees with representation counts over F_p", verdict is TriBool.of(oracle), f"F{p}: {f1} vs {f2}")


def _representation_counts(f: DiagForm) -> tuple[int, ...]:
    k = f.tower
    p = k.base.p
    a = [e.raw for e in f.entries]
    counts = [0] * p
    for v in itertools.product(range(p), repeat=len(a)):
        counts[sum(ai * vi * vi for ai, vi in zip(a, v)) % p] += 1
    return (len(a),) + tuple(counts)


def _random_congruent(f: DiagForm, rng: random.Random) -> DiagForm:
    """Diagonalise M^T diag(f) M for a random invertible integral M."""
    k = f.tower
    n = f.dim
    while True:
        M = [[k.from_base(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        G = [
            [
                _dot(k, [k.mul(k.mul(M[r][a], f.entries[r].raw), M[r][b]) for r in range(n)])
                for b in range(n)
            ]
            for a in range(n)
        ]
        try:
            return diagonalize(G, k)
        except ValueError:
            continue


def _dot(k: FieldTower, terms: list) -> Any:
    out = k.zero()
    for t in terms:
        out = k.add(out, t)
    return out


def _equality_q_case(rep: Report, i: int, rng: random.Random) -> None:
    n = rng.randint(1, 4)
    f1 = DiagForm(Q, tuple(Q.elem(rng.choice(SQUAREFREE_POOL) * rng.choice((1, 4, 9))) for _ in range(n)))
    f2 = _random_congruent(f1, rng)
    rep.add(i, "change of basis gives Equal over Q", isometric(f1, f2) is TriBool.TRUE, f"{f1} vs {f2}")

    while True:
        g = DiagForm(Q, tuple(Q.elem(rng.choice(SQUAREFREE_POOL)) for _ in range(n)))
        if invariants(g) != invariants(f1):
            break
    rep.add(i, "distinct invariants give NotEqual over Q", isometric(f1, g) is TriBool.FALSE, f"{f1} vs {g}")


def _hilbert_case(rep: Report, i: int, rng: random.Random) -> None:
    def rnd() -> Fraction:
        return Fraction(rng.choice((1, -1)) * rng.randint(1, 400), rng.randint(1, 60))

    a, b = rnd(), rnd()
    prod = 1
    for v in relevant_places(a, b):
        prod *= hilbert(a, b, v)
    rep.add(i, "Hilbert product formula", prod == 1, f"({a}, {b})")


def _log_case(rep: Report, i: int, rng: random.Random) -> None:
    m1 = GWElem.const(Q, -1)
    x = random_F2(Q, rng)
    r = stability_index(x)
    rep.add(i, "log_(3r+1) = log_(3r+2)", _eq(log_m(x, 3 * r + 1), log_m(x, 3 * r + 2)), f"x={x}, r={r}")
    x2 = random_F2(Q, rng)
    rep.add(i, "log(xy) = log x + log y", _eq(log(x * x2), log(x) + log(x2)), f"{x}; {x2}")
    z = random_gw(Q, rng, 3)
    rep.add(i, "log(x^z) = z log x", _eq(log(exp(x, z)), z * log(x)), f"x={x}; z={z}")
    d = (-1, 2, 5)[i % 3]
    alg = EtaleAlgebra(Q, (Q.adjoin(d),))
    w = random_F2(alg.components[0], rng)
    lhs = log(rost_norm(GWOverA(alg, (w,))))
    rhs = scharlau_transfer(GWOverA(alg, (log(w),)))
    rep.add(i, "log(N w) = tr(log w)", _eq(lhs, rhs), f"{alg}: w={w}")
    y = random_In(Q, 2, rng, 2)
    rep.add(i, "log((-1)^y) = (<2> - 1) y", _eq(log(exp(m1, y)), (GWElem.sq(Q, 2) - 1) * y), f"y={y}")
    a, b = random_class(Q, rng), random_class(Q, rng)
    base = (a - 1) * (b - 1)
    eta = GWElem.sq(Q, 2) - 1
    for m in (0, 1, 2):
        if m == 0:
            ok = _eq(exp(m1, base), eta * base + 1)
        else:
            pm = P(m, Q)
            ok = _eq(gr_exp(m1, pm * base), pm * (eta * base) + 1)
        rep.add(i, f"(-1)^((<a>-1)(<b>-1)P_{m}) closed form", ok, f"a={a}, b={b}")


def _presentation_part(k: FieldTower, which: str) -> Callable:
    def run(rep: Report, samples: int, seed: Any) -> None:
        fn = check_presentation if which == "presentation" else check_T0_sequence
        rep.extend(fn(k, samples, seed))

    return run


# --------------------------------------------------------------------------
# registry

PartSpec = tuple[str, Callable, int, bool]  # name, case function, default samples, whole-part flag

PARTS: dict[str, PartSpec] = {}
PART_FIELD: dict[str, str] = {}  # parts that run over one named field


def _part(name: str, fn: Callable, samples: int, whole: bool = False, field: FieldTower | None = None) -> str:
    PARTS[name] = (name, fn, samples, whole)
    if field is not None:
        PART_FIELD[name] = str(field)
    return name


WITTKOP_FIELDS = (Q, Fp(3), Fp(5), Fp(13))

SUITES: dict[str, tuple[str, list[str]]] = {
    "wittkop": (
        "Wittkop's formula N(x+y) = N(x) + N(y) + tr(x conj y); norms of restricted elements via lambda2",
        [
            _part(f"wittkop/{k}/{j}", _wittkop_case(k, j), 500, field=k)
            for k in WITTKOP_FIELDS
            for j in range(len(quadratic_algebras(k)))
        ]
        + [_part(f"cross-norm/{k}", _crossnorm_case(k), 200, field=k) for k in (Q, Fp(5))],
    ),
    "tambara": (
        "transitivity, base change and distributivity of Rost norms and Scharlau transfers",
        [
            _part("transitivity", _transitivity_case, 200),
            _part("base-change", _base_change_case, 200),
            _part("fold-order", _fold_order_case, 200),
        ]
        + [
            _part(f"distributivity/{k}/{'split' if s else 'field'}", _tambara_case(k, s), 100, field=k)
            for k in (Q, Fp(5))
            for s in (True, False)
        ],
    ),
    "arason": (
        "transfers preserve powers of the fundamental ideal",
        [_part(f"arason/I{n}", _ideal_case("transfer", n), 200, field=Q) for n in (1, 2)],
    ),
    "norm-ideals": (
        "quadratic norms map I^n to I^2n and F_n to F_n, compatibly with alpha_n",
        [_part(f"norm-ideals/I{n}", _ideal_case("norm", n), 200, field=Q) for n in (1, 2)],
    ),
    "module-axioms": (
        "exponentiation is a well-defined module structure preserving the unit filtration",
        [
            _part("independence", _independence_case, 300),
            _part("axioms", _axioms_case, 300),
            _part("filtration", _filtration_case, 300),
        ],
    ),
    "projection": (
        "projection formulas for norms and exponentiation",
        [_part("projection", _projection_case, 300)],
    ),
    "technical": (
        "derived exponent identities, norms of <t> - 1 and of P_m",
        [_part("derived", _derived_case, 100), _part("norm-steps", _norm_steps_case, 100)],
    ),
    "equality-oracle": (
        "isometry decisions against brute force and change of basis",
        [_part("equality/Fp", _equality_fp_case, 100), _part("equality/Q", _equality_q_case, 200)],
    ),
    "hilbert": ("product formula for Hilbert symbols", [_part("hilbert", _hilbert_case, 500)]),
    "log": ("the logarithm is stable, additive, and turns norms into transfers", [_part("log/Q", _log_case, 50, field=Q)]),
    "presentation": (
        "generators and relations of the unit group; the T0 exact sequence",
        [
            _part(f"{w}/{k}", _presentation_part(k, w), 200, whole=True, field=k)
            for k in (Q, Fp(7))
            for w in ("presentation", "T0")
        ],
    ),
}


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def run_part(name: str, samples: int | None = None, seed: Any = 0) -> Report:
    _, fn, default, whole = PARTS[name]
    n = default if samples is None else samples
    rep = Report(name, "", seed)
    if whole:
        fn(rep, n, seed)
        return rep
    for i in range(n):
        rng = case_rng(seed, name, i)
        try:
            fn(rep, i, rng)
        except UndecidedEquality as e:
            rep.add(i, "decided", False, f"undecided: {e}")
    return rep


def _run_part_args(args: tuple) -> Report:
    return run_part(*args)


def select_parts(name: str, field: FieldTower | str | None = None) -> list[str]:
    """Parts of a suite; a field restricts suites whose parts are per-field."""
    parts = SUITES[name][1]
    if field is None:
        return parts
    tagged = [p for p in parts if p in PART_FIELD]
    if len(tagged) < len(parts):
        # the suite mixes fields inside each case; the flag does not apply
        return parts
    chosen = [p for p in parts if PART_FIELD[p] == str(field)]
    if not chosen:
        fields = sorted({PART_FIELD[p] for p in parts})
        raise KeyError(f"suite {name!r} runs over {', '.join(fields)}, not {field}")
    return chosen


def run_suite(
    name: str,
    samples: int | None = None,
    seed: Any = 0,
    jobs: int = 1,
    field: FieldTower | str | None = None,
) -> Report:
    """Run a named suite (or ``all``); ``samples`` overrides every part's case count."""
    if name == "all":
        rep = Report("all", "every suite", seed)
        for s in SUITES:
            rep.extend(run_suite(s, samples, seed, jobs))
        return rep
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(suite_names())}")
    anchor = SUITES[name][0]
    parts = select_parts(name, field)
    args = [(p, samples, seed) for p in parts]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            reports = list(pool.map(_run_part_args, args))
    else:
        reports = [_run_part_args(a) for a in args]
    rep = Report(name, anchor, seed)
    for part, r in zip(parts, reports):
        for c in r.cases:
            rep.cases.append({**c, "part": part})
    return rep
