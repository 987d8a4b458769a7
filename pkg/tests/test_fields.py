import random
from fractions import Fraction

import pytest

from gwlab.config import override
from gwlab.errors import DivisionByZero, NoTopStep, NotANonSquare, TowerMismatch, TowerTooTall, ZeroArgument
from gwlab.fields import (
    BaseField,
    FieldTower,
    Q,
    conj_step,
    elem_arith,
    is_square,
    norm_elem,
    real_embeddings,
    sign_at,
    trace_elem,
)
from gwlab.parse import parse_element, parse_field
from gwlab.sampling import random_raw

F7 = FieldTower(BaseField(7))
Q5 = Q.adjoin(5)


def E(text, k):
    return parse_element(text, k)


def test_arithmetic_examples():
    assert elem_arith(E("1 + sqrt", Q5), E("1 - sqrt", Q5), "mul").raw == Q5.from_base(-4)
    assert (F7.elem(3) + F7.elem(5)).raw == 1
    assert elem_arith(Q.elem(Fraction(1, 2)), Q.elem(Fraction(1, 3)), "div").raw == Fraction(3, 2)


def test_arithmetic_errors():
    with pytest.raises(DivisionByZero):
        Q.elem(1) / Q.elem(0)
    with pytest.raises(TowerMismatch):
        elem_arith(Q.elem(1), F7.elem(1), "add")


def test_is_square_examples():
    assert not is_square(Q.elem(2))
    assert is_square(F7.elem(2))
    assert is_square(Q5.elem(5))
    with pytest.raises(ZeroArgument):
        is_square(Q.elem(0))


def test_conj_examples():
    assert str(conj_step(E("1 + sqrt", Q5))) == "1 - sqrt"
    assert conj_step(Q5.elem(7)).raw == Q5.from_base(7)
    k = Q.adjoin(2).adjoin(3)
    x = E("sqrt1*sqrt2", k)
    assert conj_step(x).raw == (-x).raw
    with pytest.raises(NoTopStep):
        conj_step(Q.elem(3))


def test_norm_trace_examples():
    assert norm_elem(E("1 + sqrt", Q5)).raw == -4
    assert trace_elem(E("1 + sqrt", Q5)).raw == 2
    assert norm_elem(E("sqrt", Q.adjoin(2))).raw == -2


def test_real_embeddings_examples():
    embs = real_embeddings(Q5)
    assert len(embs) == 2
    neg = next(e for e in embs if e.signs == (-1,))
    assert sign_at(E("1 + sqrt", Q5), neg) == -1
    assert real_embeddings(F7.adjoin(3)) == []
    # sqrt(-1) has no real embedding; sqrt(2) then sqrt(sqrt 2) has 2
    assert real_embeddings(Q.adjoin(-1)) == []
    k = Q.adjoin(2)
    assert len(real_embeddings(k.adjoin(k.gen()))) == 2


def test_tower_construction_errors():
    with pytest.raises(NotANonSquare):
        Q.adjoin(4)
    with pytest.raises(NotANonSquare):
        F7.adjoin(2)
    with override(max_tower_height=1):
        with pytest.raises(TowerTooTall):
            Q.adjoin(2).adjoin(3)


@pytest.mark.parametrize("text", ["Q", "F7", "Q[sqrt 5]", "Q[sqrt 2][sqrt -3]", "F7[sqrt 3]"])
def test_field_grammar_round_trip(text):
    assert str(parse_field(text)) == text


TOWERS = [Q5, Q.adjoin(2).adjoin(-3), F7.adjoin(3), FieldTower(BaseField(5)).adjoin(2).adjoin((0, 1))]


@pytest.mark.parametrize("k", TOWERS, ids=str)
def test_conjugation_is_involutive_automorphism(k):
    rng = random.Random(5)
    for _ in range(60):
        a, b = random_raw(k, rng), random_raw(k, rng)
        assert k.conj(k.conj(a)) == a
        assert k.conj(k.mul(a, b)) == k.mul(k.conj(a), k.conj(b))
        assert k.conj(k.add(a, b)) == k.add(k.conj(a), k.conj(b))
        lo = k.lower
        c = k.lift_from(lo, random_raw(lo, rng))
        assert k.conj(c) == c
        # norm and trace are conjugation invariant and land one level down
        assert k.norm(k.conj(a)) == k.norm(a)
        assert k.trace(k.conj(a)) == k.trace(a)
        assert k.lift_from(lo, k.norm(a)) == k.mul(a, k.conj(a))


@pytest.mark.parametrize("k", TOWERS + [Q, F7], ids=str)
def test_square_tests(k):
    rng = random.Random(8)
    for _ in range(60):
        a, b = random_raw(k, rng), random_raw(k, rng)
        if k.is_zero(a) or k.is_zero(b):
            continue
        assert k.is_square(k.square(a))
        assert k.is_square(k.mul(a, k.square(b))) == k.is_square(a)
        r = k.sqrt(k.square(a))
        assert k.square(r) == k.square(a)


def test_embedding_count_is_power_of_two():
    for k in (Q, Q5, Q.adjoin(-2), Q.adjoin(2).adjoin(3), Q.adjoin(2).adjoin(-3), Q.adjoin(3).adjoin(5).adjoin(7)):
        n = len(real_embeddings(k))
        assert n == 0 or (n & (n - 1) == 0 and n <= 2**k.height)


def test_sign_at_matches_float_evaluation():
    import math

    k = Q.adjoin(2).adjoin(3)
    rng = random.Random(2)
    for e in real_embeddings(k):
        r2, r3 = e.signs[0] * math.sqrt(2), e.signs[1] * math.sqrt(3)
        for _ in range(50):
            coeffs = [rng.randint(-9, 9) for _ in range(4)]
            x = coeffs[0] + coeffs[1] * r2 + coeffs[2] * r3 + coeffs[3] * r2 * r3
            if abs(x) < 1e-6:
                continue
            raw = ((Fraction(coeffs[0]), Fraction(coeffs[1])), (Fraction(coeffs[2]), Fraction(coeffs[3])))
            assert k.sign_at(raw, e.signs) == (1 if x > 0 else -1)
