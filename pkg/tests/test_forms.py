import random
from fractions import Fraction

import pytest
from oracles import gram_det, representation_counts

from gwlab.errors import DegenerateForm, NotSymmetric, TowerMismatch
from gwlab.fields import BaseField, FieldTower, Q
from gwlab.forms import DiagForm, diagonalize, invariants, isometric
from gwlab.localsymbols import square_class_Q
from gwlab.tribool import TriBool


def D(k, *vals):
    return DiagForm.of(k, vals)


def test_diagonalize_examples():
    assert isometric(diagonalize([[0, 1], [1, 0]], Q), D(Q, 1, -1)) is TriBool.TRUE
    assert [e.raw for e in diagonalize([[2, 0], [0, 10]], Q).entries] == [2, 10]
    f = diagonalize([[1, 1], [1, 2]], Q)
    assert invariants(f) == invariants(D(Q, 1, 1))


def test_diagonalize_errors():
    with pytest.raises(DegenerateForm):
        diagonalize([[1, 2], [2, 4]], Q)
    with pytest.raises(NotSymmetric):
        diagonalize([[1, 2], [3, 4]], Q)


def test_diagonalize_preserves_determinant_class():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(1, 4)
        g = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                g[i][j] = g[j][i] = Fraction(rng.randint(-5, 5))
        det = gram_det(g)
        if det == 0:
            with pytest.raises(DegenerateForm):
                diagonalize(g, Q)
            continue
        f = diagonalize(g, Q)
        prod = Fraction(1)
        for e in f.entries:
            prod *= e.raw
        assert square_class_Q(prod) == square_class_Q(det)


def test_invariants_examples():
    inv = invariants(D(Q, 2, 10))
    assert (inv.dim, inv.disc, [s for _, s in inv.signatures]) == (2, "-5", [2])
    hyp = invariants(D(Q, 1, -1))
    assert hyp.disc == "1" and all(s == 1 for _, s in hyp.hasse) and [s for _, s in hyp.signatures] == [0]
    empty = invariants(DiagForm(Q))
    assert (empty.dim, empty.disc, [s for _, s in empty.signatures]) == (0, "1", [0])


def test_invariants_json_shape():
    js = invariants(D(Q, 2, 10)).to_json()
    assert set(js) == {"dim", "disc", "hasse", "sig"}
    assert js["dim"] == 2 and js["disc"] == "-5" and js["sig"] == [2]
    assert all(isinstance(p, str) and s in (1, -1) for p, s in js["hasse"])


def test_isometric_examples():
    assert isometric(D(Q, 1, 1), D(Q, 2, 2)) is TriBool.TRUE
    assert isometric(D(Q, 1, -1), D(Q, 5, -5)) is TriBool.TRUE
    assert isometric(D(Q, 1, 1), D(Q, 1, -1)) is TriBool.FALSE
    with pytest.raises(TowerMismatch):
        isometric(D(Q, 1), D(FieldTower(BaseField(5)), 1))


def test_isometric_over_number_field_towers():
    k = Q.adjoin(5)
    sqrt5 = k.gen()
    # <1,1> ~ <2,2> everywhere; <1> ~ <5> once 5 is a square; signatures separate <1> from <-1>
    assert isometric(D(k, 1, 1), D(k, 2, 2)) is TriBool.TRUE
    assert isometric(D(k, 1), D(k, 5)) is TriBool.TRUE
    assert isometric(D(k, 1), D(k, -1)) is TriBool.FALSE
    assert isometric(DiagForm(k, (k.elem(sqrt5),)), D(k, -1)) is TriBool.FALSE


@pytest.mark.parametrize("p", [3, 5, 7])
def test_isometric_agrees_with_representation_counts(p):
    k = FieldTower(BaseField(p))
    forms = [list(v) for n in (1, 2, 3) for v in __import__("itertools").product(range(1, p), repeat=n)]
    rng = random.Random(p)
    for _ in range(150):
        a, b = rng.choice(forms), rng.choice(forms)
        expected = representation_counts(a, p) == representation_counts(b, p)
        assert isometric(D(k, *a), D(k, *b)) is TriBool.of(expected), (a, b)


def test_invariants_under_change_of_basis():
    rng = random.Random(9)
    for _ in range(100):
        n = rng.randint(1, 4)
        a = [rng.choice([-6, -5, -3, -2, -1, 1, 2, 3, 5, 7]) for _ in range(n)]
        while True:
            M = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            if gram_det([[Fraction(x) for x in row] for row in M]) != 0:
                break
        G = [[sum(M[r][i] * a[r] * M[r][j] for r in range(n)) for j in range(n)] for i in range(n)]
        f = diagonalize(G, Q)
        assert invariants(f) == invariants(D(Q, *a))
        assert isometric(f, D(Q, *a)) is TriBool.TRUE


def test_hasse_product_formula():
    rng = random.Random(1)
    for _ in range(100):
        f = D(Q, *(rng.choice([-10, -7, -3, -2, -1, 1, 2, 3, 5, 6, 11, 13]) for _ in range(rng.randint(1, 5))))
        prod = 1
        for _, s in invariants(f).hasse:
            prod *= s
        assert prod == 1


def test_witt_cancellation_at_invariant_level():
    # f + h and g + h have equal invariants exactly when f and g do
    rng = random.Random(6)
    pool = [-6, -5, -3, -2, -1, 1, 2, 3, 5, 6]
    for _ in range(100):
        n = rng.randint(1, 3)
        f, g = D(Q, *rng.choices(pool, k=n)), D(Q, *rng.choices(pool, k=n))
        h = D(Q, *rng.choices(pool, k=rng.randint(1, 3)))
        assert (isometric(f + h, g + h) is TriBool.TRUE) == (invariants(f) == invariants(g))
