"""Generators and relations for the unit group of GW(k).

Every unit factors as (-1)^y * z with z in F_2 (:func:`decompose_unit`); the
checks below sample the exact sequences that describe the unit group.
"""

from __future__ import annotations

from typing import Any

from .errors import NotAUnit
from .expmod import exp
from .fields import FieldTower
from .gw import GWElem, in_Fn, in_In, is_unit, unit_inverse
from .report import Report
from .sampling import case_rng, random_gw, random_In, random_unit
from .tribool import TriBool


def decompose_unit(x: GWElem) -> tuple[GWElem, GWElem]:
    """Return (y, z) with x = (-1)^y * z and z in F_2."""
    if is_unit(x) is not TriBool.TRUE:
        raise NotAUnit(f"{x} is not a unit")
    k = x.tower
    n = 0 if x.dim == 1 else 1
    z1 = x * x.dim
    d = (z1 - 1).disc_key
    t = GWElem(k, ((d, 1),)) - 1
    minus_one = GWElem.const(k, -1)
    z = exp(minus_one, t) * z1
    y = GWElem.const(k, n) - t
    return y, z


def _ok(v: TriBool) -> bool:
    return v is TriBool.TRUE


def check_presentation(k: FieldTower, samples: int = 200, seed: int = 0) -> Report:
    rep = Report("presentation", "units are generated by -1 and F_2, with relations from I^2", seed)
    minus_one = GWElem.const(k, -1)
    for i in range(samples):
        rng = case_rng(seed, f"presentation/{k}", i)
        u = random_unit(k, rng)
        y, z = decompose_unit(u)
        rep.add(
            i,
            "surjectivity",
            _ok(in_Fn(z, 2)) and _ok((exp(minus_one, y) * z).equals(u)),
            f"{u} = (-1)^({y}) * ({z})",
        )

        w = random_In(k, 2, rng)
        rep.add(i, "I^2 lands in F_2", _ok(in_Fn(exp(minus_one, w), 2)), str(w))
        v = random_gw(k, rng)
        rep.add(i, "2GW is killed", _ok(exp(minus_one, v * 2).equals(1)), str(v))

        x = random_gw(k, rng)
        ex = exp(minus_one, x)
        in_f2 = in_Fn(ex, 2)
        w = x - x.dim
        in_kernel = x.dim % 2 == 0 and _ok(in_In(w, 2))
        if _ok(in_f2):
            # x = dim(x) + w with dim(x) even and w in I^2 certifies x in 2GW + I^2
            ok = in_kernel and _ok(exp(minus_one, w).equals(ex))
        else:
            ok = not in_kernel
        rep.add(i, "middle exactness", ok, f"x = {x}, (-1)^x in F_2: {in_f2.value}")

        v = random_gw(k, rng)
        x = v * 2 - GWElem.hyperbolic(k) * v.dim
        if v.dim % 2 == 0 and _ok(in_In(x, 2)):
            u2 = v - GWElem.hyperbolic(k) * (v.dim // 2)
            ok = _ok(in_In(u2, 1)) and _ok((u2 * 2).equals(x))
            ok = ok and _ok(((GWElem.sq(k, 2) - 1) * x).is_zero())
            rep.add(i, "injectivity", ok, f"x = 2 * ({u2})")
    return rep


def check_T0_sequence(k: FieldTower, samples: int = 200, seed: int = 0) -> Report:
    rep = Report("presentation", "0 -> I^2/2I -> GW/2 + I^2_tor -> GW^x -> 1", seed)
    minus_one = GWElem.const(k, -1)
    eta = GWElem.sq(k, 2) - 1
    two_is_square = k.is_square(k.from_base(2))
    for i in range(samples):
        rng = case_rng(seed, f"T0/{k}", i)
        x = random_In(k, 2, rng)
        ex = exp(minus_one, x)
        rep.add(i, "(-1)^x = 1 + (<2>-1)x on I^2", _ok(ex.equals(eta * x + 1)), str(x))
        killed = ex * unit_inverse(eta * x + 1)
        rep.add(i, "image of I^2 is killed", _ok(killed.equals(1)), str(x))
        if two_is_square:
            rep.add(i, "(-1)^(I^2) = 1 when 2 is a square", _ok(ex.equals(1)), str(x))

        u = random_unit(k, rng)
        y, z = decompose_unit(u)
        v = z - 1
        image = exp(minus_one, y) * (v + 1)
        rep.add(i, "surjectivity", _ok(image.equals(u)), f"{u} <- ({y}, {v})")

        v2 = random_unit(k, rng)
        _, z2 = decompose_unit(v2)
        w1, w2 = z - 1, z2 - 1
        rep.add(
            i,
            "1 + I^2_tor is additive",
            _ok(((w1 + 1) * (w2 + 1)).equals(w1 + w2 + 1)),
            f"{w1}; {w2}",
        )
    return rep


def check_all(k: FieldTower, samples: int, seed: int) -> list[Any]:
    return [check_presentation(k, samples, seed), check_T0_sequence(k, samples, seed)]
