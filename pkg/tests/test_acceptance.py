"""Acceptance gate: one test per criterion, at the full default case counts.

Each test runs the relevant suite parts with seed 0 and requires that every
check ran at least the stated number of cases with zero failures. Unknown
equality verdicts count as failures.
"""

import pytest

from gwlab.suites import PARTS, WITTKOP_FIELDS, quadratic_algebras, run_part

pytestmark = pytest.mark.acceptance


def _run(parts: list[str]) -> dict[str, dict[str, list[int]]]:
    out = {}
    for name in parts:
        rep = run_part(name, seed=0)
        assert rep.passed, f"{name}: {rep.failures[:3]}"
        out[name] = rep.counts()
    return out


def _at_least(counts: dict[str, dict[str, list[int]]], n: int) -> None:
    for part, checks in counts.items():
        assert checks, f"{part} ran no checks"
        for check, (ok, bad) in checks.items():
            assert bad == 0
            assert ok >= n, f"{part}: {check} ran {ok} cases, want {n}"


def test_wittkop_formula():
    parts = [f"wittkop/{k}/{j}" for k in WITTKOP_FIELDS for j in range(len(quadratic_algebras(k)))]
    # k x k plus three quadratic fields wherever k has that many square classes
    assert len([p for p in parts if p.startswith("wittkop/Q/")]) == 4
    _at_least(_run(parts), 500)


def test_norm_transfer_structure():
    _at_least(_run(["transitivity", "base-change", "fold-order"]), 200)


def test_ideal_mapping():
    _at_least(_run(["arason/I1", "arason/I2", "norm-ideals/I1", "norm-ideals/I2"]), 200)


def test_module_axioms():
    _at_least(_run(["independence", "axioms", "projection"]), 300)


def test_derived_identities():
    counts = _run(["derived", "norm-steps", "filtration"])
    _at_least(counts, 100)
    assert "N(P_m) = (-1)^m 2^(m-1) tr(L') P_m" in counts["norm-steps"]


def test_equality_oracle():
    counts = _run(["equality/Fp", "equality/Q", "hilbert"])
    assert counts["equality/Fp"]["isometry agrees with representation counts over F_p"][0] >= 100
    for check, (ok, _) in counts["equality/Q"].items():
        assert ok >= 200, check
    assert counts["hilbert"]["Hilbert product formula"][0] >= 500


def test_logarithm():
    counts = _run(["log/Q"])
    assert len(counts["log/Q"]) == 8
    _at_least(counts, 50)


def test_presentation():
    parts = ["presentation/Q", "T0/Q", "presentation/F7", "T0/F7"]
    counts = _run(parts)
    assert "(-1)^(I^2) = 1 when 2 is a square" in counts["T0/F7"]
    for part, checks in counts.items():
        for check, (ok, _) in checks.items():
            # injectivity discards samples whose kernel test is vacuous
            assert ok >= (90 if check == "injectivity" else 200), (part, check)


def test_tambara_distributivity():
    parts = [p for p in PARTS if p.startswith("distributivity/")]
    assert len(parts) == 4
    _at_least(_run(parts), 100)


def test_cross_route_norm():
    _at_least(_run(["cross-norm/Q", "cross-norm/F5"]), 200)
