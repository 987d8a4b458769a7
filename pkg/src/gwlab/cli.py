"""Command-line interface: ``gwlab <command> [options]``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Any

from . import __version__
from .errors import GWLabError
from .etale_transfer import GWOverA, rost_norm, scharlau_transfer
from .expmod import exp
from .fields import FieldTower
from .gw import GWElem, gw_equal, is_torsion, is_unit
from .laurent import GRElem, gr_exp, log
from .localsymbols import Place, hilbert
from .parse import parse, parse_algebra, parse_field, parse_value
from .suites import run_suite, suite_names
from .tribool import TriBool

VERDICT = {TriBool.TRUE: "Equal", TriBool.FALSE: "NotEqual", TriBool.UNKNOWN: "Unknown"}


def _common(defaults: bool) -> argparse.ArgumentParser:
    # the same flags are accepted before and after the subcommand; the
    # subcommand copy uses SUPPRESS so it does not clobber an earlier value
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", default=d(None), help="base field, e.g. Q, F7, 'Q[sqrt 2][sqrt -3]' (default Q)")
    p.add_argument("--vars", type=int, default=d(0), help="number of group-ring variables t1..tm")
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--seed", default=d(None), help="seed for randomised routes and suites")
    p.add_argument("--samples", type=int, default=d(None), help="cases per suite part")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwlab",
        description="Exact computations in Grothendieck-Witt rings of concrete fields.",
        parents=[_common(True)],
    )
    parser.add_argument("--version", action="version", version=f"gwlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = _common(False)

    def cmd(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[common])

    p = cmd("invariants", "dimension, discriminant, Hasse symbols and signatures")
    p.add_argument("expr", help="a GW expression, e.g. '<1,2> - H'")

    p = cmd("isometric", "decide equality of two GW expressions")
    p.add_argument("left")
    p.add_argument("right")

    p = cmd("eval", "evaluate and print an expression")
    p.add_argument("expr")

    for name, help in (("norm", "Rost norm N_{A/k}"), ("transfer", "Scharlau transfer tr_{A/k}")):
        p = cmd(name, help)
        p.add_argument("--algebra", required=True, help="e.g. 'Q[sqrt 2] x Q'")
        p.add_argument(
            "--expr",
            action="append",
            required=True,
            help="element of each component (repeat once per component, or give one for all)",
        )

    p = cmd("exp", "the module action x^y on units")
    p.add_argument("--base", required=True)
    p.add_argument("--exponent", required=True)

    p = cmd("log", "logarithm of an element of 1 + I^2_tor")
    p.add_argument("--expr", required=True)

    p = cmd("grexp", "x^y with y in the group ring over t1..tm")
    p.add_argument("--base", required=True)
    p.add_argument("--exponent", required=True)

    p = cmd("hilbert", "Hilbert symbol (a, b)_v over Q")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("v", help="a prime or 'inf'")

    p = cmd("check", "run a named verification suite")
    p.add_argument("suite", choices=suite_names())
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", type=Path, help="write the JSON report here")
    p.add_argument("--no-transcripts", action="store_true", help="omit per-case transcripts from JSON")
    return parser


def _seed(args: argparse.Namespace) -> Any:
    if args.seed is None:
        return None
    try:
        return int(args.seed)
    except ValueError:
        return args.seed


def _rng(args: argparse.Namespace) -> random.Random | None:
    s = _seed(args)
    return None if s is None else random.Random(s)


def _gw(text: str, k: FieldTower, args: argparse.Namespace) -> Any:
    return parse(text, k, args.vars).evaluate()


def _value_json(x: Any) -> Any:
    if isinstance(x, GWElem):
        return {"value": str(x), "dim": x.dim, "disc": x.disc(), "sig": x.signatures()}
    if isinstance(x, GRElem):
        return {"value": str(x), "vars": x.m}
    return {"value": str(x)}


def _emit(args: argparse.Namespace, text: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _algebra_args(args: argparse.Namespace, k: FieldTower) -> GWOverA:
    alg = parse_algebra(args.algebra, k)
    exprs = args.expr
    if len(exprs) == 1:
        exprs = exprs * len(alg.components)
    if len(exprs) != len(alg.components):
        raise GWLabError(f"{alg} has {len(alg.components)} components but {len(exprs)} expressions were given")
    return GWOverA(alg, tuple(parse(e, c).evaluate() for e, c in zip(exprs, alg.components)))


def run(args: argparse.Namespace) -> int:
    c = args.command
    if c == "hilbert":
        v = Place.parse(args.v)
        s = hilbert(parse_value(args.a), parse_value(args.b), v)
        _emit(args, str(s), {"a": args.a, "b": args.b, "place": str(v), "symbol": s})
        return 0
    if c == "check":
        field = None if args.field is None else parse_field(args.field)
        try:
            rep = run_suite(args.suite, args.samples, _seed(args) or 0, args.jobs, field)
        except KeyError as e:
            print(f"gwlab: error: {e.args[0]}", file=sys.stderr)
            return 2
        text = rep.dumps(not args.no_transcripts)
        if args.out:
            args.out.write_text(text + "\n")
        if args.json:
            print(text)
        else:
            print(rep.summary())
            for f in rep.failures[:20]:
                print(f"  FAIL case {f['case']}: {f['check']}: {f['detail']}")
        return 0 if rep.passed else 1

    k = parse_field(args.field or "Q")
    if c == "invariants":
        x = _gw(args.expr, k, args)
        inv = x.invariants()
        payload = inv.to_json()
        payload["torsion"] = is_torsion(x) is TriBool.TRUE
        payload["unit"] = is_unit(x) is TriBool.TRUE
        lines = [f"dim  {inv.dim}", f"disc {inv.disc}"]
        if inv.hasse:
            lines.append("hasse " + " ".join(f"{p}:{s:+d}" for p, s in inv.hasse))
        if inv.signatures:
            lines.append("sig  " + " ".join(str(s) for _, s in inv.signatures))
        lines.append(f"torsion {str(payload['torsion']).lower()}")
        lines.append(f"unit {str(payload['unit']).lower()}")
        _emit(args, "\n".join(lines), payload)
        return 0
    if c == "isometric":
        v = gw_equal(_gw(args.left, k, args), _gw(args.right, k, args))
        _emit(args, VERDICT[v], {"value": VERDICT[v]})
        return {TriBool.TRUE: 0, TriBool.FALSE: 1, TriBool.UNKNOWN: 2}[v]
    if c == "eval":
        x = _gw(args.expr, k, args)
        _emit(args, str(x), _value_json(x))
        return 0
    if c == "norm":
        x = rost_norm(_algebra_args(args, k), rng=_rng(args))
        _emit(args, str(x), _value_json(x))
        return 0
    if c == "transfer":
        x = scharlau_transfer(_algebra_args(args, k))
        _emit(args, str(x), _value_json(x))
        return 0
    if c == "exp":
        x = exp(_gw(args.base, k, args), _gw(args.exponent, k, args), _rng(args))
        _emit(args, str(x), _value_json(x))
        return 0
    if c == "log":
        x = log(_gw(args.expr, k, args))
        _emit(args, str(x), _value_json(x))
        return 0
    if c == "grexp":
        base = parse(args.base, k).evaluate()
        y = _gw(args.exponent, k, args)
        if isinstance(y, GWElem):
            y = GRElem.const(y, max(args.vars, 0))
        x = gr_exp(base, y, _rng(args))
        _emit(args, str(x), _value_json(x))
        return 0
    raise AssertionError(c)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except GWLabError as e:
        print(f"gwlab: error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"gwlab: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
