"""Diagonal bilinear forms: diagonalisation, invariants, isometry decisions.

Isometry is decided on *multiplicity maps* ``{square-class key: count}``; a
diagonal form only matters through the square classes of its entries. Over Q
the decision is complete (Hasse-Minkowski), over finite towers dimension and
discriminant suffice, and over number-field towers the answer is three-valued:
invariants can refute, a bounded search for a chain of binary isometries can
confirm, and anything else is ``UNKNOWN``.
"""

from __future__ import annotations

import dataclasses
import itertools
from functools import lru_cache
from fractions import Fraction
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from typing import Any

from .config import settings
from .errors import DegenerateForm, NotSymmetric, TowerMismatch, ZeroArgument
from .fields import FieldElem, FieldTower, Raw, RealEmbedding, real_embeddings
from .localsymbols import REAL, Place, _hilbert_sqfree, legendre, prime_divisors
from .tribool import TriBool

Counts = Mapping[Any, int]


@dataclasses.dataclass(frozen=True)
class DiagForm:
    """The form <a_1, ..., a_n>; entry order carries no meaning."""

    tower: FieldTower
    entries: tuple[FieldElem, ...] = ()

    def __post_init__(self) -> None:
        for e in self.entries:
            if e.tower != self.tower:
                raise TowerMismatch(f"{e.tower} vs {self.tower}")
            if e.is_zero():
                raise ZeroArgument("diagonal forms have nonzero entries")

    @classmethod
    def of(cls, tower: FieldTower, values: Iterable[Any]) -> DiagForm:
        return cls(tower, tuple(tower.elem(v) for v in values))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __add__(self, other: DiagForm) -> DiagForm:
        if other.tower != self.tower:
            raise TowerMismatch(f"{other.tower} vs {self.tower}")
        return DiagForm(self.tower, self.entries + other.entries)

    def class_counts(self) -> Counter:
        sq = self.tower.square_classes
        return Counter(sq.key(e.raw) for e in self.entries)

    def __str__(self) -> str:
        return "<" + ", ".join(str(e) for e in self.entries) + ">"


@dataclasses.dataclass(frozen=True)
class FormInvariants:
    dim: int
    disc: str
    hasse: tuple[tuple[Place, int], ...]
    signatures: tuple[tuple[RealEmbedding, int], ...]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "disc": self.disc,
            "hasse": [[str(p), s] for p, s in self.hasse],
            "sig": [s for _, s in self.signatures],
        }


# --------------------------------------------------------------------------
# diagonalisation


def diagonalize(g: Sequence[Sequence[Any]], tower: FieldTower | None = None) -> DiagForm:
    """Diagonalise a symmetric Gram matrix by symmetric Gaussian elimination."""
    if tower is None:
        tower = next(
            (x.tower for row in g for x in row if isinstance(x, FieldElem)), FieldTower()
        )
    n = len(g)
    a = [[tower._raw(x) for x in row] for row in g]
    if any(len(row) != n for row in a):
        raise NotSymmetric("Gram matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise NotSymmetric(f"entry ({i},{j}) differs from ({j},{i})")
    diag: list[Raw] = []
    for k in range(n):
        pivot = next((i for i in range(k, n) if not tower.is_zero(a[i][i])), None)
        if pivot is None:
            partner = next((j for j in range(k + 1, n) if not tower.is_zero(a[k][j])), None)
            if partner is None:
                raise DegenerateForm("Gram matrix is singular")
            # row/column k += row/column partner gives a[k][k] = 2*a[k][partner] != 0
            for j in range(n):
                a[k][j] = tower.add(a[k][j], a[partner][j])
            for i in range(n):
                a[i][k] = tower.add(a[i][k], a[i][partner])
            pivot = k
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            for row in a:
                row[k], row[pivot] = row[pivot], row[k]
        p = a[k][k]
        p_inv = tower.inv(p)
        for i in range(k + 1, n):
            f = tower.mul(a[i][k], p_inv)
            if tower.is_zero(f):
                continue
            for j in range(k + 1, n):
                a[i][j] = tower.sub(a[i][j], tower.mul(f, a[k][j]))
        for i in range(k + 1, n):
            a[i][k] = a[k][i] = tower.zero()
        diag.append(p)
    return DiagForm(tower, tuple(FieldElem(tower, d) for d in diag))


# --------------------------------------------------------------------------
# invariants of multiplicity maps


def counts_dim(c: Counts) -> int:
    return sum(c.values())


def counts_det(tower: FieldTower, c: Counts) -> Any:
    sq = tower.square_classes
    d = sq.one
    for key, n in c.items():
        if n % 2:
            d = sq.mul(d, key)
    return d


def counts_disc(tower: FieldTower, c: Counts) -> Any:
    """Signed discriminant (-1)^(n(n-1)/2) * det as a square-class key."""
    sq = tower.square_classes
    n = counts_dim(c)
    d = counts_det(tower, c)
    if (n * (n - 1) // 2) % 2:
        d = sq.mul(d, sq.key(tower.from_base(-1)))
    return d


def counts_signatures(tower: FieldTower, c: Counts) -> list[int]:
    sq = tower.square_classes
    out = [0] * len(tower.embedding_signs)
    for k, n in c.items():
        for i, s in enumerate(sq.signs(k)):
            out[i] += n * s
    return out


def _local_class(a: int, p: int) -> tuple[int, int]:
    """The square class of a in Q_p (p = 0 for the reals)."""
    if p == 0:
        return (a < 0, 0)
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return (v % 2, a % 8 if p == 2 else legendre(a, p))


def counts_hasse(c: Counts, p: int) -> int:
    """Hasse invariant prod_{i<j} (a_i, a_j)_p of a form over Q."""
    # the symbol only sees local square classes, so merge classes that agree at p
    local: dict[tuple[int, int], list] = {}
    for k, n in c.items():
        if n:
            slot = local.setdefault(_local_class(k, p), [k, 0])
            slot[1] += n
    items = list(local.values())
    e = 0
    for i, (a, na) in enumerate(items):
        if na >= 2 and (na * (na - 1) // 2) % 2 and _hilbert_sqfree(a, a, p) < 0:
            e ^= 1
        for b, nb in items[i + 1 :]:
            if (na * nb) % 2 and _hilbert_sqfree(a, b, p) < 0:
                e ^= 1
    return -1 if e else 1


@lru_cache(maxsize=4096)
def _least_nonresidue(p: int) -> int:
    return next(q for q in range(2, p) if legendre(q, p) == -1)


def rational_normal_form(c: Counts) -> Counter:
    """A canonical representative over Q with at most two classes per prime.

    W(Q) splits as W(Z) + sum_p W(F_p) through the residue maps. Residues are
    cleared from the largest prime down; each lift <p>, <-p>, <q p> (q the
    least non-residue mod p) only has residues at smaller primes, so cleared
    primes stay cleared. What is left lives in W(Z) and is fixed by the
    signature, and hyperbolic planes restore the dimension.
    """
    work = Counter({k: n for k, n in c.items() if n})
    primes: set[int] = set()
    for k in work:
        primes.update(prime_divisors(k))
    out: Counter = Counter()

    def lift(key: int, n: int) -> None:
        out[key] += n
        work[key] -= n
        primes.update(prime_divisors(key))

    primes.discard(2)
    while primes:
        p = max(primes)
        primes.discard(p)
        r = [0, 0]
        for k, n in work.items():
            if n and k % p == 0:
                r[legendre(k // p, p) < 0] += n
        if p % 4 == 1:
            if r[0] % 2:
                lift(p, 1)
            if r[1] % 2:
                lift(_least_nonresidue(p) * p, 1)
        else:
            t = (r[0] - r[1]) % 4
            if t == 3:
                lift(-p, 1)
            elif t:
                lift(p, t)
        primes.discard(p)
        primes.discard(2)
    if sum(n for k, n in work.items() if k % 2 == 0) % 2:
        lift(2, 1)
    # the rest has no residues; only the signature is left
    sig = sum(n * (1 if k > 0 else -1) for k, n in work.items())
    if sig > 0:
        out[1] += sig
    elif sig < 0:
        out[-1] -= sig
    h = (counts_dim(c) - counts_dim(out)) // 2
    out[1] += h
    out[-1] += h
    return Counter({k: n for k, n in out.items() if n})


def counts_places(*maps: Counts) -> list[Place]:
    primes = {2}
    for c in maps:
        for k in c:
            primes.update(prime_divisors(k))
    return [REAL] + [Place(p) for p in sorted(primes)]


def fmt_class(tower: FieldTower, key: Any) -> str:
    if tower.square_classes.kind == "rational":
        return str(key)
    return tower.fmt(tower.square_classes.raw(key))


# --------------------------------------------------------------------------
# isometry of multiplicity maps


def _cancel(left: Counts, right: Counts) -> tuple[Counter, Counter]:
    lc, rc = Counter(), Counter()
    for k in set(left) | set(right):
        d = left.get(k, 0) - right.get(k, 0)
        if d > 0:
            lc[k] = d
        elif d < 0:
            rc[k] = -d
    return lc, rc


def isometric_counts(tower: FieldTower, left: Counts, right: Counts) -> TriBool:
    """Decide whether two diagonal forms, given by class multiplicities, are isometric."""
    lc, rc = _cancel(left, right)
    if counts_dim(lc) != counts_dim(rc):
        return TriBool.FALSE
    if not lc:
        return TriBool.TRUE
    if counts_det(tower, lc) != counts_det(tower, rc):
        return TriBool.FALSE
    if tower.is_finite:
        return TriBool.TRUE
    if counts_signatures(tower, lc) != counts_signatures(tower, rc):
        return TriBool.FALSE
    if tower.height == 0:
        for place in counts_places(lc, rc):
            if counts_hasse(lc, place.p) != counts_hasse(rc, place.p):
                return TriBool.FALSE
        return TriBool.TRUE
    return _witness_search(tower, lc, rc)


def _small_elements(tower: FieldTower) -> list[Raw]:
    """Nonzero elements with small coordinates; used as search coefficients.

    Half-integers are included at height 1 so that units such as (1 + sqrt 5)/2
    are reachable.
    """
    if tower.degree <= 2:
        values: tuple = (0, 1, -1, 2, Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2))
    else:
        values = (0, 1, -1)
    out = []
    for coords in itertools.product(values, repeat=tower.degree):
        x = _from_coords(tower, coords)
        if not tower.is_zero(x):
            out.append(x)
    return out


def _from_coords(tower: FieldTower, coords: Sequence[int]) -> Raw:
    if not tower.steps:
        return tower.base.coerce(coords[0])
    half = len(coords) // 2
    lo = tower.lower
    return (_from_coords(lo, coords[:half]), _from_coords(lo, coords[half:]))


# the search is exponential in the dimension of the cancelled difference
WITNESS_MAX_DIM = 6


def _witness_search(tower: FieldTower, left: Counter, right: Counter) -> TriBool:
    """Look for a chain of binary isometries turning ``left`` into ``right``.

    A move replaces <a, b> on one side by <c, abc> where c is a class on the
    other side represented by <a, b> (c = a s^2 + b t^2 for small s), so that
    c cancels. Every accepted move is an isometry, hence TRUE is a
    certificate; exhausting the budget gives UNKNOWN.
    """
    if counts_dim(left) > WITNESS_MAX_DIM:
        return TriBool.UNKNOWN
    sq = tower.square_classes
    squares = [tower.square(s) for s in _small_elements(tower)]
    work = [settings.witness_budget]
    seen: set = set()

    def represents(a: Any, b: Any, c: Any) -> bool:
        ar, br, cr = sq.raw(a), sq.raw(b), sq.raw(c)
        b_inv = tower.inv(br)
        for s2 in squares:
            if work[0] <= 0:
                return False
            work[0] -= 1
            w = tower.mul(tower.sub(cr, tower.mul(ar, s2)), b_inv)
            if not tower.is_zero(w) and tower.sqrt(w) is not None:
                return True
        return False

    def search(lc: Counter, rc: Counter) -> bool:
        if not lc:
            return True
        state = (frozenset(lc.items()), frozenset(rc.items()))
        if state in seen or work[0] <= 0:
            return False
        seen.add(state)
        for src, dst, flip in ((lc, rc, False), (rc, lc, True)):
            for a, b in itertools.combinations_with_replacement(sorted(src, key=repr), 2):
                if a == b and src[a] < 2:
                    continue
                for c in dst:
                    if c in (a, b) or not represents(a, b, c):
                        continue
                    moved = src.copy()
                    moved[a] -= 1
                    moved[b] -= 1
                    moved[c] += 1
                    moved[sq.mul(sq.mul(a, b), c)] += 1
                    nl, nr = _cancel(+moved, dst)
                    if flip:
                        nl, nr = nr, nl
                    if search(nl, nr):
                        return True
        return False

    return TriBool.TRUE if search(left, right) else TriBool.UNKNOWN


# --------------------------------------------------------------------------
# public operations on DiagForm


def hasse_list(c: Counts) -> tuple[tuple[Place, int], ...]:
    """Hasse symbols at inf and 2, and at every odd prime where the symbol is -1.

    Symbols at the remaining places are +1, so the list is canonical.
    """
    out = []
    for pl in counts_places(c):
        s = counts_hasse(c, pl.p)
        if pl.p in (0, 2) or s == -1:
            out.append((pl, s))
    return tuple(out)


def invariants(f: DiagForm) -> FormInvariants:
    t = f.tower
    c = f.class_counts()
    hasse: tuple[tuple[Place, int], ...] = ()
    if not t.is_finite and t.height == 0:
        hasse = hasse_list(c)
    sigs = counts_signatures(t, c)
    return FormInvariants(
        dim=f.dim,
        disc=fmt_class(t, counts_disc(t, c)),
        hasse=hasse,
        signatures=tuple(zip(real_embeddings(t), sigs)),
    )


def isometric(f1: DiagForm, f2: DiagForm) -> TriBool:
    if f1.tower != f2.tower:
        raise TowerMismatch(f"{f1.tower} vs {f2.tower}")
    return isometric_counts(f1.tower, f1.class_counts(), f2.class_counts())
