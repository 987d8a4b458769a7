import random
from fractions import Fraction

import pytest
from oracles import hilbert_brute, legendre_brute

from gwlab.errors import ZeroArgument
from gwlab.localsymbols import (
    Place,
    factorize,
    hilbert,
    is_prime,
    legendre,
    relevant_places,
    square_class_Q,
    squarefree_part,
    valuation,
)


@pytest.mark.parametrize("a,p,expected", [(2, 7, 1), (2, 5, -1), (9, 5, 1), (10, 5, 0)])
def test_legendre_examples(a, p, expected):
    assert legendre(a, p) == expected


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 29, 31])
def test_legendre_matches_enumeration(p):
    for a in range(-40, 41):
        assert legendre(a, p) == legendre_brute(a, p)


@pytest.mark.parametrize("a,expected", [(Fraction(8, 3), 6), (-4, -1), (1, 1), (Fraction(-1, 12), -3), (50, 2)])
def test_square_class_examples(a, expected):
    assert square_class_Q(a) == expected


def test_square_class_zero():
    with pytest.raises(ZeroArgument):
        square_class_Q(0)


def test_square_class_invariant_under_squares():
    rng = random.Random(3)
    for _ in range(200):
        a = Fraction(rng.randint(-500, 500) or 1, rng.randint(1, 50))
        s = Fraction(rng.randint(1, 30), rng.randint(1, 30))
        assert square_class_Q(a * s * s) == square_class_Q(a)


def test_factorize_and_primality():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    big = 1000003 * 998244353
    assert factorize(big) == {1000003: 1, 998244353: 1}
    assert is_prime(998244353) and not is_prime(big)
    assert squarefree_part(-72) == -2
    assert valuation(Fraction(50, 3), 5) == 2 and valuation(Fraction(50, 3), 3) == -1


def test_hilbert_examples():
    assert hilbert(-1, -1, Place(0)) == -1
    assert hilbert(2, 5, Place(5)) == -1
    for a in (2, -3, 5, Fraction(7, 2)):
        for v in relevant_places(a):
            assert hilbert(a, -a, v) == 1


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_hilbert_matches_brute_force(p):
    vals = [-10, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 14, 15]
    for a in vals:
        for b in vals:
            assert hilbert(a, b, Place(p)) == hilbert_brute(a, b, p), (a, b, p)


def test_hilbert_symmetry_bilinearity_product_formula():
    rng = random.Random(11)
    for _ in range(300):
        a, a2, b = (Fraction(rng.choice((1, -1)) * rng.randint(1, 300), rng.randint(1, 20)) for _ in range(3))
        places = relevant_places(a, a2, b)
        for v in places:
            assert hilbert(a, b, v) == hilbert(b, a, v)
            assert hilbert(a * a2, b, v) == hilbert(a, b, v) * hilbert(a2, b, v)
        prod = 1
        for v in relevant_places(a, b):
            prod *= hilbert(a, b, v)
        assert prod == 1
        if a != 1:
            for v in relevant_places(a, 1 - a):
                assert hilbert(a, 1 - a, v) == 1


def test_hilbert_zero_argument():
    with pytest.raises(ZeroArgument):
        hilbert(0, 3, Place(3))


def test_place_parse():
    assert Place.parse("inf").is_real and Place.parse("7") == Place(7)
    with pytest.raises(ValueError):
        Place.parse("9")
