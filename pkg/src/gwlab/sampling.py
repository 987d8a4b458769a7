"""Seeded random generators for field elements, forms, ideal and unit samples."""

from __future__ import annotations

import random

from .fields import FieldTower, Raw
from .gw import GWElem
from .localsymbols import squarefree_part

SQUAREFREE_POOL = [a for a in range(-30, 31) if a and squarefree_part(a) == a]


def case_rng(seed: int | str, suite: str, i: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{i}")


def random_raw(k: FieldTower, rng: random.Random) -> Raw:
    """A random nonzero element of small height."""
    if k.is_finite:
        size = k.base.p ** k.degree
        while True:
            x = k.from_digits(rng.randrange(1, size))
            if not k.is_zero(x):
                return x
    if not k.steps:
        return k.from_base(rng.choice(SQUAREFREE_POOL))
    while True:
        lo = k.lower
        u = random_raw(lo, rng) if rng.random() < 0.8 else lo.zero()
        v = lo.from_base(rng.randint(-3, 3))
        x = (u, v)
        if not k.is_zero(x):
            return x


def random_class(k: FieldTower, rng: random.Random) -> GWElem:
    return GWElem.sq(k, random_raw(k, rng))


def random_gw(k: FieldTower, rng: random.Random, max_len: int = 6) -> GWElem:
    """A formal difference of at most ``max_len`` classes plus a small integer."""
    x = GWElem.const(k, rng.randint(-1, 2))
    for _ in range(rng.randint(0, max_len)):
        x = x + random_class(k, rng) * rng.choice((1, 1, -1))
    return x


def random_pfister_generator(k: FieldTower, rng: random.Random) -> GWElem:
    return random_class(k, rng) - 1


def random_In(k: FieldTower, n: int, rng: random.Random, terms: int = 3) -> GWElem:
    """A random element of I^n: a signed sum of n-fold products of <a> - 1."""
    x = GWElem.zero(k)
    if n == 0:
        return random_gw(k, rng)
    for _ in range(rng.randint(1, terms)):
        t = GWElem.one(k)
        for _ in range(n):
            t = t * random_pfister_generator(k, rng)
        x = x + t * rng.choice((1, -1, 2))
    return x


def totally_positive_raw(k: FieldTower, rng: random.Random) -> Raw:
    while True:
        a = random_raw(k, rng)
        if all(k.sign_at(a, s) > 0 for s in k.embedding_signs):
            return a


def random_I2tor(k: FieldTower, rng: random.Random, terms: int = 2) -> GWElem:
    """A torsion element of I^2: sums of (<a> - 1)(<b> - 1) with b totally positive."""
    x = GWElem.zero(k)
    for _ in range(rng.randint(1, terms)):
        a = random_pfister_generator(k, rng)
        b = GWElem.sq(k, totally_positive_raw(k, rng)) - 1
        x = x + a * b * rng.choice((1, -1))
    return x


def random_F2(k: FieldTower, rng: random.Random) -> GWElem:
    return random_I2tor(k, rng) + 1


def random_unit(k: FieldTower, rng: random.Random) -> GWElem:
    """+-<a> (1 + w) with w a torsion element of I^2."""
    return random_class(k, rng) * random_F2(k, rng) * rng.choice((1, -1))


def random_nonsquare(k: FieldTower, rng: random.Random) -> Raw:
    while True:
        a = random_raw(k, rng)
        if not k.is_square(a):
            return a
