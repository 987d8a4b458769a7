import random

import pytest

from gwlab.errors import ArityMismatch, IndexOutOfRange, NotInF2, OddDegree
from gwlab.etale_transfer import EtaleAlgebra, GWOverA, rost_norm, restrict, scharlau_transfer, trace_form
from gwlab.expmod import exp
from gwlab.fields import BaseField, FieldTower, Q
from gwlab.gw import GWElem, gw_equal
from gwlab.laurent import (
    GRElem,
    P,
    embed,
    gr_exp,
    gr_norm,
    gr_restrict,
    gr_transfer,
    log,
    log_m,
    second_residue,
    specialize_one,
    top_coefficient,
)
from gwlab.sampling import random_F2, random_gw, random_In, random_nonsquare
from gwlab.tribool import TriBool

T = TriBool.TRUE
MINUS_ONE = GWElem.const(Q, -1)


def sq(a, k=Q):
    return GWElem.sq(k, a)


def pf(a, b, k=Q):
    return (sq(a, k) - 1) * (sq(b, k) - 1)


def t(i, m, k=Q):
    return GRElem.var(k, m, i)


def test_step_one_identity():
    x = t(1, 1) - 1
    assert x * x == x * (-2)
    for a in (2, 3, -1):
        y = GRElem.const(1 - sq(a), 1)
        assert y * y == y * 2


def test_P2_expansion():
    want = t(1, 2) * t(2, 2) - t(1, 2) - t(2, 2) + 1
    assert P(2) == want
    assert str(P(2)) == "1 - <t1> - <t2> + <t1*t2>" or P(2).equals(want) is T


@pytest.mark.parametrize("m", range(0, 5))
def test_P_square(m):
    assert (P(m) * P(m)).equals(P(m) * (-2) ** m) is T
    assert P(m).dim == 0 or m == 0


def test_residue_and_specialization():
    rng = random.Random(1)
    for _ in range(20):
        a = GRElem.const(random_gw(Q, rng, 3), 2) + t(2, 2) * random_gw(Q, rng, 3)
        b = GRElem.const(random_gw(Q, rng, 3), 2) + t(2, 2) * random_gw(Q, rng, 3)
        x = a + t(1, 2) * b
        r = second_residue(x, 1)
        assert r.m == 1
        assert r.equals(GRElem.from_map(Q, 1, {m >> 1: c for m, c in b.coeffs})) is T
        s = specialize_one(x, 1)
        assert s.equals(GRElem.from_map(Q, 1, {m >> 1: c for m, c in (a + b).coeffs})) is T
    for m in range(1, 5):
        for i in range(1, m + 1):
            assert specialize_one(P(m), i).equals(0) is T
    with pytest.raises(IndexOutOfRange):
        second_residue(P(2), 3)


def test_top_coefficient_recovers_multiplier():
    rng = random.Random(2)
    for m in range(1, 5):
        for _ in range(5):
            y = random_gw(Q, rng)
            assert gw_equal(top_coefficient(P(m) * y), y) is T


@pytest.mark.parametrize("a", [2, 3, 5, -1])
def test_gr_norm_examples(a):
    L = Q.adjoin(a)
    A = EtaleAlgebra(Q, (L,))
    tr = trace_form(A)
    x = GRElem.var(L, 1, 1) - 1
    assert gr_norm(x, A).equals((t(1, 1) - 1) * (-tr)) is T
    for m in range(1, 4):
        got = gr_norm(P(m, L), A)
        assert got.equals(P(m) * tr * ((-1) ** m * 2 ** (m - 1))) is T
    assert gr_transfer(GRElem.const(1, 2, L), A).equals(GRElem.const(tr, 2)) is T


def test_gr_norm_split_and_constants():
    rng = random.Random(3)
    S = EtaleAlgebra.split(Q)
    for _ in range(10):
        x = GRElem.const(random_gw(Q, rng, 3), 2) + t(1, 2) * random_gw(Q, rng, 3)
        y = GRElem.const(random_gw(Q, rng, 3), 2)
        assert gr_norm((x, y), S).equals(x * y) is T
    A = EtaleAlgebra.quadratic(Q, 3)
    for _ in range(10):
        c = random_gw(Q, rng, 3)
        (r,) = gr_restrict(GRElem.const(c, 1), A)
        assert gr_norm(r, A).equals(embed(rost_norm(restrict(c, A)), 1)) is T
        assert gr_transfer(r, A).equals(embed(scharlau_transfer(restrict(c, A)), 1)) is T
    with pytest.raises(OddDegree):
        B = EtaleAlgebra.split(Q, 3)
        gr_norm((P(1),) * 3, B)


def test_gr_exp_examples():
    rng = random.Random(4)
    for _ in range(10):
        x = GWElem.const(Q, -1) if rng.random() < 0.5 else sq(random_nonsquare(Q, rng))
        assert gr_exp(x, GRElem.const(0, 2, Q)).equals(1) is T
        c = random_gw(Q, rng, 3)
        assert gr_exp(x, GRElem.const(c, 2)).equals(embed(exp(x, c), 2)) is T
    for a in (2, 3, 5, -1):
        y = GRElem.const(sq(a) - 1, 1) * (t(1, 1) - 1)
        want = GRElem.const((sq(2) - 1) * (sq(a) - 1), 1) * (t(1, 1) - 1) + 1
        assert gr_exp(MINUS_ONE, y).equals(want) is T


@pytest.mark.parametrize("a,b", [(2, 3), (3, 5), (-1, -1), (2, 5), (-1, 3)])
def test_log_m_of_pfister_power(a, b):
    x = exp(MINUS_ONE, pf(a, b))
    want = (sq(2) - 1) * pf(a, b)
    for m in range(1, 4):
        assert gw_equal(log_m(x, m), want) is T
    assert gw_equal(log(x), want) is T


def test_log_basic():
    assert gw_equal(log_m(GWElem.one(Q), 2), GWElem.zero(Q)) is T
    assert gw_equal(log(GWElem.one(Q)), GWElem.zero(Q)) is T
    with pytest.raises(NotInF2):
        log(GWElem.const(Q, -1))
    with pytest.raises(ArityMismatch):
        log_m(GWElem.one(Q), 0)


def test_log_of_exp_minus_one():
    rng = random.Random(5)
    for _ in range(10):
        y = random_In(Q, 2, rng)
        assert gw_equal(log(exp(MINUS_ONE, y)), (sq(2) - 1) * y) is T


def test_log_homomorphism():
    rng = random.Random(6)
    for _ in range(8):
        x, y = random_F2(Q, rng), random_F2(Q, rng)
        assert gw_equal(log(x * y), log(x) + log(y)) is T
        z = random_gw(Q, rng, 3)
        assert gw_equal(log(exp(x, z)), z * log(x)) is T


@pytest.mark.parametrize("k", [Q, FieldTower(BaseField(5))], ids=str)
def test_log_commutes_with_norm(k):
    rng = random.Random(7)
    for _ in range(5):
        L = k.adjoin(random_nonsquare(k, rng))
        A = EtaleAlgebra(k, (L,))
        w = random_F2(L, rng)
        lhs = log(rost_norm(GWOverA(A, (w,))))
        assert lhs.equals(scharlau_transfer(GWOverA(A, (log(w),)))) is not TriBool.FALSE
