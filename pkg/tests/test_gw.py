import random

import pytest

from gwlab.config import override
from gwlab.errors import NotAUnit, NotInFiltration, NotTorsion, TowerMismatch, UndecidedEquality
from gwlab.fields import BaseField, FieldTower, Q
from gwlab.gw import (
    GWElem,
    alpha_n,
    dim,
    gw_arith,
    gw_equal,
    in_Fn,
    in_In,
    is_torsion,
    is_unit,
    lambda2,
    signatures,
    torsion_exponent,
    unit_inverse,
)
from gwlab.sampling import case_rng, random_class, random_F2, random_gw, random_In, random_unit
from gwlab.tribool import TriBool

F5 = FieldTower(BaseField(5))
T, F, U = TriBool.TRUE, TriBool.FALSE, TriBool.UNKNOWN


def sq(a, k=Q):
    return GWElem.sq(k, a)


def pf(*vals, k=Q):
    out = GWElem.one(k)
    for v in vals:
        out = out * (sq(v, k) - 1)
    return out


def test_arith_examples():
    for a in (2, -3, 7):
        assert gw_equal(sq(a) * sq(a), GWElem.one(Q)) is T
        assert gw_equal((1 - sq(a)) * (1 - sq(a)), (1 - sq(a)) * 2) is T
    for k in (Q, F5, Q.adjoin(2), Q.adjoin(-1), F5.adjoin(2)):
        assert ((sq(2, k) - 1) * 2).is_zero() is T
    assert gw_arith(sq(2), sq(3), "add").dim == 2
    assert gw_arith(sq(2), None, "neg").dim == -1
    with pytest.raises(TowerMismatch):
        sq(2) + sq(2, F5)


def test_equal_examples():
    assert gw_equal(GWElem.form(Q, [1, 1]) - GWElem.form(Q, [2, 2]), GWElem.zero(Q)) is T
    assert gw_equal(GWElem.one(Q), GWElem.const(Q, -1)) is F
    # (2,5)_5 = -1, so the Pfister form <<2,5>> is not hyperbolic
    assert gw_equal(pf(2, 5), GWElem.zero(Q)) is F


def test_semantic_eq_and_hash():
    x = GWElem.form(Q, [1, 1])
    y = GWElem.form(Q, [2, 2])
    assert x == y and hash(x) == hash(y)
    k = Q.adjoin(-5)
    a = GWElem.form(k, [1, 2, 3, 5, 7, 11, 13])
    b = GWElem.form(k, [(1, 1), 2, 3, 5, 7, 11, 17])
    if a.equals(b) is U:
        with pytest.raises(UndecidedEquality):
            _ = a == b


def test_dim_disc_signature_examples():
    L = Q.adjoin(5)
    assert dim(sq(2) + sq(10)) == 2
    assert signatures(GWElem.form(Q, [1, 1, 1]) - 1) == [2]
    assert dim(-sq(3)) == -1
    assert (sq(2) + sq(10)).disc() == "-5"
    assert len(GWElem.one(L).signatures()) == 2


def test_homomorphisms():
    rng = random.Random(1)
    for k in (Q, F5, Q.adjoin(2)):
        for _ in range(40):
            x, y = random_gw(k, rng, 4), random_gw(k, rng, 4)
            assert (x * y).dim == x.dim * y.dim
            assert (x + y).dim == x.dim + y.dim
            assert (x * y).signatures() == [a * b for a, b in zip(x.signatures(), y.signatures())]


def test_in_In_examples():
    assert in_In(pf(3, -7), 2) is T
    assert in_In(sq(5) - 1, 2) is F
    for n in range(6):
        assert in_In(GWElem.zero(Q), n) is T
        assert in_In(GWElem.zero(F5), n) is T


def test_in_In_over_Q_levels():
    assert in_In(pf(2, 3, 5), 3) is T
    assert in_In(pf(-1, -1, -1), 3) is T and in_In(pf(-1, -1, -1), 4) is F
    assert in_In(pf(-1, -1, -1, -1), 4) is T
    assert in_In(pf(-1, -1), 3) is F  # signature 4 is not divisible by 8
    assert in_In(pf(2, 5), 3) is F  # the Hasse symbol at 5 is nontrivial
    assert in_In(GWElem.form(Q, [1, 1]) - 2, 7) is T


def test_in_In_over_towers_is_three_valued():
    k = Q.adjoin(-1)
    assert in_In(pf(2, 3, k=k), 2) is T
    assert in_In(pf(3, 7, 11, k=k), 3) in (T, U)
    assert in_In(pf(-1, -1, k=Q.adjoin(2)), 3) is F


def test_ideal_products():
    rng = random.Random(5)
    for _ in range(40):
        n, m = rng.randint(0, 2), rng.randint(0, 2)
        x, y = random_In(Q, n, rng, 2), random_In(Q, m, rng, 2)
        assert in_In(x * y, n + m) is T


def test_torsion_examples():
    assert is_torsion(pf(2, 5)) is T
    assert is_torsion(GWElem.form(Q, [1, 1])) is F
    assert is_torsion(sq(2) - 1) is T
    assert torsion_exponent(GWElem.zero(Q)) == 0
    assert torsion_exponent(sq(2) - 1) == 1
    assert torsion_exponent(pf(2, 5)) == 1
    assert torsion_exponent(sq(3) - 1) == 2  # 3 is not a sum of two squares
    with pytest.raises(NotTorsion):
        torsion_exponent(sq(3) + 1)
    with override(max_torsion_exponent=1):
        with pytest.raises(NotTorsion):
            torsion_exponent(sq(3) - 1)


def test_unit_examples():
    for a in (2, -3, 7):
        assert is_unit(sq(a)) is T
        assert gw_equal(unit_inverse(sq(a)), sq(a)) is T
    x = 1 + pf(2, 5)
    assert is_unit(x) is T
    assert is_unit(GWElem.form(Q, [1, 1])) is F
    assert is_unit(1 + pf(-1, -1)) is F  # signature 5 is not +-1
    with pytest.raises(NotAUnit):
        unit_inverse(GWElem.form(Q, [1, 1]))


@pytest.mark.parametrize("k", [Q, F5, Q.adjoin(2), F5.adjoin(2)], ids=str)
def test_unit_inverse_property(k):
    for i in range(25):
        rng = case_rng(0, f"inv/{k}", i)
        x = random_unit(k, rng)
        assert is_unit(x) is T
        verdict = (unit_inverse(x) * x).equals(1)
        # equality over number-field towers is three-valued; it must never refute
        assert verdict is T if k.height == 0 or k.is_finite else verdict is not F


def test_filtration_examples():
    assert in_Fn(sq(7), 1) is T
    assert in_Fn(1 + pf(2, 5), 2) is T
    assert in_Fn(GWElem.const(Q, -1), 1) is F
    assert gw_equal(alpha_n(sq(7), 1), sq(7) - 1) is T
    with pytest.raises(NotInFiltration):
        alpha_n(sq(7), 2)


def test_graded_piece_F1_F2():
    rng = random.Random(3)
    for _ in range(60):
        x = random_class(Q, rng) * random_F2(Q, rng)
        assert in_Fn(x, 1) is T
        if (x - 1).disc_key == 1:
            assert in_Fn(x, 2) is T


def test_lambda2_examples():
    assert gw_equal(lambda2(GWElem.form(Q, [3, 5])), sq(15)) is T
    assert gw_equal(lambda2(GWElem.form(Q, [1, 1])), GWElem.one(Q)) is T
    assert gw_equal(lambda2(GWElem.const(Q, 2)), GWElem.one(Q)) is T
    assert gw_equal(lambda2(-sq(3)), GWElem.one(Q)) is T


def _lambda2_brute(entries_plus, entries_minus, k):
    # coefficient of t^2 in prod(1 + a t) / prod(1 + b t), truncated
    one = GWElem.one(k)
    lam = [one, GWElem.zero(k), GWElem.zero(k)]
    for a in entries_plus:
        c = sq(a, k)
        lam = [lam[0], lam[1] + c * lam[0], lam[2] + c * lam[1]]
    for b in entries_minus:
        c = sq(b, k)
        # multiply by 1/(1 + c t) = 1 - c t + c^2 t^2
        lam = [lam[0], lam[1] - c * lam[0], lam[2] - c * lam[1] + c * c * lam[0]]
    return lam[2]


def test_lambda2_matches_power_series():
    rng = random.Random(2)
    pool = [-6, -3, -2, -1, 2, 3, 5, 7]
    for _ in range(60):
        plus = rng.choices(pool, k=rng.randint(0, 4))
        minus = rng.choices(pool, k=rng.randint(0, 3))
        x = GWElem.form(Q, plus) - GWElem.form(Q, minus)
        assert gw_equal(lambda2(x), _lambda2_brute(plus, minus, Q)) is T


def test_lambda2_additivity():
    rng = random.Random(7)
    for k in (Q, F5):
        for _ in range(40):
            x, y = random_gw(k, rng, 4), random_gw(k, rng, 4)
            assert gw_equal(lambda2(x + y), lambda2(x) + x * y + lambda2(y)) is T


def test_congruence():
    rng = random.Random(4)
    for _ in range(40):
        x = random_gw(Q, rng, 4)
        y = x + GWElem.form(Q, [1, 1]) - GWElem.form(Q, [2, 2])
        z = random_gw(Q, rng, 3)
        assert gw_equal(x + z, y + z) is T
        assert gw_equal(x * z, y * z) is T


def test_str():
    assert str(GWElem.one(Q) - sq(2) + sq(5) * 3) == "1 - <2> + 3*<5>"
    assert str(GWElem.zero(Q)) == "0"
