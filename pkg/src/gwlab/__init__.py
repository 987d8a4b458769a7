"""Exact arithmetic in Grothendieck-Witt rings of concrete fields.

Fields are Q or F_p extended by square roots (:mod:`gwlab.fields`); elements
of GW(k) are :class:`GWElem`; étale algebras carry Scharlau transfers and Rost
norms; units of GW(k) form a GW(k)-module under :func:`exp`, and the
logarithm on 1 + I^2_tor is computed in a group-ring model.
"""

__version__ = "0.1.0"

from .errors import GWLabError, UndecidedEquality
from .etale_transfer import EtaleAlgebra, GWOverA, norm_restricted, restrict, rost_norm, scharlau_transfer, trace_form
from .expmod import exp, exp_by_square_class, trace_decompose
from .fields import FieldTower
from .forms import DiagForm, invariants, isometric
from .gw import GWElem, gw_equal, in_Fn, in_In, is_unit, unit_inverse
from .laurent import GRElem, P, gr_exp, log, log_m
from .localsymbols import hilbert
from .parse import parse, parse_algebra, parse_field
from .tribool import TriBool

__all__ = [
    "DiagForm",
    "EtaleAlgebra",
    "FieldTower",
    "GRElem",
    "GWElem",
    "GWLabError",
    "GWOverA",
    "P",
    "TriBool",
    "UndecidedEquality",
    "exp",
    "exp_by_square_class",
    "gr_exp",
    "gw_equal",
    "hilbert",
    "in_Fn",
    "in_In",
    "invariants",
    "is_unit",
    "isometric",
    "log",
    "log_m",
    "norm_restricted",
    "parse",
    "parse_algebra",
    "parse_field",
    "restrict",
    "rost_norm",
    "scharlau_transfer",
    "trace_decompose",
    "trace_form",
    "unit_inverse",
]
