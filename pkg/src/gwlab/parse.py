"""Text grammar for fields, elements, algebras and GW expressions.

Fields:     Q | F7 | Q[sqrt 5] | Q[sqrt 2][sqrt -3] | F7[sqrt 3]
Elements:   1/2 | 1 + 2*sqrt | sqrt1*sqrt2 - 3       (sqrt = top step, sqrtN = step N)
Algebras:   Q[sqrt 2] x Q x Q[sqrt 5]
Expressions over a field:
    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'H' | '<' entries '>' | '(' expr ')' | 'tr' '(' algebra ')'
            | 'exp' '(' expr ';' expr ')' | 'lambda2' '(' expr ')' | 'P' '(' INT ')'
    entries:= element (',' element)*   where an element may contain factors t1, t2, ...
"""

from __future__ import annotations

import dataclasses
import re
from fractions import Fraction
from typing import Any

from .errors import GWSyntaxError, UnknownField
from .fields import BaseField, FieldElem, FieldTower, Raw

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[-+*/^()<>\[\],;]))")


@dataclasses.dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise GWSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup or "sym"
        start = m.start(kind)
        out.append(Token(kind, m.group(kind), start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Token | None = None) -> GWSyntaxError:
        t = tok or self.tok
        return GWSyntaxError(msg, self.text, t.pos)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "end":
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "end":
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def expect_int(self) -> int:
        if self.tok.kind != "num":
            raise self.error("expected an integer")
        v = int(self.tok.text)
        self.i += 1
        return v

    def done(self) -> None:
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")

    # -- fields ----------------------------------------------------------------

    def field(self) -> FieldTower:
        t = self.tok
        if t.kind != "name":
            raise self.error("expected a field such as Q or F7")
        if t.text == "Q":
            tower = FieldTower(BaseField(0))
        elif re.fullmatch(r"F\d+", t.text):
            try:
                tower = FieldTower(BaseField(int(t.text[1:])))
            except ValueError as e:
                raise UnknownField(str(e)) from None
        else:
            raise UnknownField(f"unknown field {t.text!r}")
        self.i += 1
        while self.tok.text == "[":
            self.i += 1
            if self.tok.text != "sqrt":
                raise self.error("expected 'sqrt'")
            self.i += 1
            start = self.tok
            raw, mask = self.element(tower)
            if mask:
                raise self.error("variables are not allowed in a field", start)
            try:
                tower = tower.adjoin(raw)
            except ValueError as e:
                raise GWSyntaxError(str(e), self.text, start.pos) from None
            self.expect("]")
        return tower

    def algebra(self) -> list[FieldTower]:
        comps = [self.field()]
        while self.tok.kind == "name" and self.tok.text == "x":
            self.i += 1
            comps.append(self.field())
        return comps

    # -- elements ----------------------------------------------------------------
    # values are (raw, mask): mask collects variables t_i appearing as factors

    def element(self, k: FieldTower) -> tuple[Raw, int]:
        start = self.tok
        val = self.e_term(k)
        while self.tok.text in ("+", "-"):
            op = self.tok.text
            self.i += 1
            rhs = self.e_term(k)
            if val[1] or rhs[1]:
                raise self.error("variables may only appear as factors", start)
            val = (k.add(val[0], rhs[0]) if op == "+" else k.sub(val[0], rhs[0]), 0)
        return val

    def e_term(self, k: FieldTower) -> tuple[Raw, int]:
        val = self.e_unary(k)
        while self.tok.text in ("*", "/"):
            op = self.tok.text
            t = self.tok
            self.i += 1
            rhs = self.e_unary(k)
            if op == "*":
                val = (k.mul(val[0], rhs[0]), val[1] ^ rhs[1])
            else:
                if rhs[1]:
                    raise self.error("cannot divide by a variable", t)
                if k.is_zero(rhs[0]):
                    raise self.error("division by zero", t)
                val = (k.div(val[0], rhs[0]), val[1])
        return val

    def e_unary(self, k: FieldTower) -> tuple[Raw, int]:
        if self.accept("-"):
            v = self.e_unary(k)
            return (k.neg(v[0]), v[1])
        return self.e_power(k)

    def e_power(self, k: FieldTower) -> tuple[Raw, int]:
        val = self.e_atom(k)
        if self.tok.text == "^":
            t = self.tok
            self.i += 1
            n = self.expect_int()
            if val[1] or (n == 0 and k.is_zero(val[0])):
                raise self.error("bad power", t)
            val = (k.pow(val[0], n), val[1] if n % 2 else 0)
        return val

    def e_atom(self, k: FieldTower) -> tuple[Raw, int]:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return (k.from_base(int(t.text)), 0)
        if self.accept("("):
            v = self.element(k)
            self.expect(")")
            return v
        if t.kind == "name":
            m = re.fullmatch(r"sqrt(\d*)", t.text)
            if m:
                self.i += 1
                level = int(m.group(1)) if m.group(1) else k.height
                if not 1 <= level <= k.height:
                    raise self.error(f"{t.text} does not exist in {k}", t)
                sub = k.prefix(level)
                return (k.lift_from(sub, sub.gen()), 0)
            m = re.fullmatch(r"t(\d+)", t.text)
            if m and self.vars_allowed:
                i = int(m.group(1))
                if not 1 <= i <= self.vars:
                    raise self.error(f"variable {t.text} needs --vars >= {i}", t)
                self.i += 1
                return (k.one(), 1 << (i - 1))
        raise self.error(f"unexpected {t.text or 'end of input'!r} in element")

    vars_allowed = False
    vars = 0


def parse_field(text: str) -> FieldTower:
    p = _Parser(text)
    f = p.field()
    p.done()
    return f


def parse_algebra(text: str, base: FieldTower | None = None) -> Any:
    from .etale_transfer import EtaleAlgebra

    p = _Parser(text)
    comps = p.algebra()
    p.done()
    return _make_algebra(comps, base, text)


def _make_algebra(comps: list[FieldTower], base: FieldTower | None, text: str) -> Any:
    from .etale_transfer import EtaleAlgebra

    if base is None:
        # written over the ground field: Q[sqrt 5] is a quadratic algebra over Q
        base = comps[0].prefix(0)
        if any(c.base != base.base for c in comps):
            raise GWSyntaxError("components have different base fields", text, 0)
    try:
        return EtaleAlgebra(base, tuple(comps))
    except ValueError as e:
        raise GWSyntaxError(str(e), text, 0) from None


def parse_element(text: str, tower: FieldTower) -> FieldElem:
    p = _Parser(text)
    raw, _ = p.element(tower)
    p.done()
    return FieldElem(tower, raw)


# --------------------------------------------------------------------------
# expression AST


@dataclasses.dataclass(frozen=True)
class Int:
    value: int


@dataclasses.dataclass(frozen=True)
class Hyp:
    pass


@dataclasses.dataclass(frozen=True)
class Form:
    entries: tuple[tuple[Raw, int], ...]


@dataclasses.dataclass(frozen=True)
class Neg:
    arg: Any


@dataclasses.dataclass(frozen=True)
class BinOp:
    op: str
    left: Any
    right: Any


@dataclasses.dataclass(frozen=True)
class Pow:
    base: Any
    exponent: int


@dataclasses.dataclass(frozen=True)
class Trace:
    components: tuple[FieldTower, ...]


@dataclasses.dataclass(frozen=True)
class Exp:
    base: Any
    exponent: Any


@dataclasses.dataclass(frozen=True)
class Lambda2:
    arg: Any


@dataclasses.dataclass(frozen=True)
class PolyP:
    m: int


@dataclasses.dataclass(frozen=True)
class Expr:
    """A parsed expression together with its field and variable count."""

    tower: FieldTower
    vars: int
    root: Any

    def __str__(self) -> str:
        return to_text(self)

    def uses_vars(self) -> bool:
        return _uses_vars(self.root)

    def evaluate(self) -> Any:
        return evaluate(self)


class _ExprParser(_Parser):
    def __init__(self, text: str, tower: FieldTower, vars: int) -> None:
        super().__init__(text)
        self.k = tower
        self.vars = vars
        self.vars_allowed = vars > 0

    def expr(self) -> Any:
        node = self.term()
        while self.tok.text in ("+", "-"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Any:
        node = self.unary()
        while self.tok.text == "*":
            self.i += 1
            node = BinOp("*", node, self.unary())
        return node

    def unary(self) -> Any:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Any:
        node = self.atom()
        if self.accept("^"):
            node = Pow(node, self.expect_int())
        return node

    def atom(self) -> Any:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Int(int(t.text))
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if self.accept("<"):
            entries = []
            if self.tok.text != ">":
                entries.append(self.entry())
                while self.accept(","):
                    entries.append(self.entry())
            self.expect(">")
            return Form(tuple(entries))
        if t.kind == "name":
            name = t.text
            if name == "H":
                self.i += 1
                return Hyp()
            if name == "tr" and self.peek().text == "(":
                self.i += 2
                comps = self.algebra()
                self.expect(")")
                for c in comps:
                    if not self.k.is_prefix_of(c):
                        raise self.error(f"{c} is not an extension of {self.k}", t)
                return Trace(tuple(comps))
            if name == "exp" and self.peek().text == "(":
                self.i += 2
                base = self.expr()
                self.expect(";")
                exponent = self.expr()
                self.expect(")")
                return Exp(base, exponent)
            if name == "lambda2" and self.peek().text == "(":
                self.i += 2
                arg = self.expr()
                self.expect(")")
                return Lambda2(arg)
            if name == "P" and self.peek().text == "(":
                self.i += 2
                m = self.expect_int()
                self.expect(")")
                if m > self.vars:
                    raise self.error(f"P({m}) needs --vars >= {m}", t)
                return PolyP(m)
        raise self.error(f"unexpected {t.text or 'end of input'!r}")

    def entry(self) -> tuple[Raw, int]:
        start = self.tok
        raw, mask = self.element(self.k)
        if self.k.is_zero(raw):
            raise self.error("form entries must be nonzero", start)
        return (raw, mask)


def parse(expr: str, field: str | FieldTower = "Q", vars: int = 0) -> Expr:
    tower = parse_field(field) if isinstance(field, str) else field
    p = _ExprParser(expr, tower, vars)
    if p.tok.kind == "end":
        raise p.error("empty expression")
    root = p.expr()
    p.done()
    return Expr(tower, vars, root)


# --------------------------------------------------------------------------
# printing

_PREC = {"+": 1, "-": 1, "*": 2}


def to_text(e: Expr) -> str:
    return _show(e.root, e.tower, 0)


def _show(node: Any, k: FieldTower, prec: int) -> str:
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, Hyp):
        return "H"
    if isinstance(node, Form):
        return "<" + ", ".join(_show_entry(k, r, m) for r, m in node.entries) + ">"
    if isinstance(node, Trace):
        return "tr(" + " x ".join(str(c) for c in node.components) + ")"
    if isinstance(node, Exp):
        return f"exp({_show(node.base, k, 0)}; {_show(node.exponent, k, 0)})"
    if isinstance(node, Lambda2):
        return f"lambda2({_show(node.arg, k, 0)})"
    if isinstance(node, PolyP):
        return f"P({node.m})"
    if isinstance(node, Pow):
        return f"{_show(node.base, k, 4)}^{node.exponent}"
    if isinstance(node, Neg):
        s = "-" + _show(node.arg, k, 3)
        return f"({s})" if prec > 3 else s
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        s = f"{_show(node.left, k, p)} {node.op} {_show(node.right, k, p + 1)}"
        return f"({s})" if prec > p else s
    raise TypeError(f"unknown node {node!r}")


def _show_entry(k: FieldTower, raw: Raw, mask: int) -> str:
    if not mask:
        return k.fmt(raw)
    from .laurent import _bits, _entry

    return _entry(k, raw, [f"t{i}" for i in _bits(mask)])


def _uses_vars(node: Any) -> bool:
    if isinstance(node, Form):
        return any(m for _, m in node.entries)
    if isinstance(node, PolyP):
        return True
    for f in dataclasses.fields(node) if dataclasses.is_dataclass(node) else ():
        v = getattr(node, f.name)
        if dataclasses.is_dataclass(v) and _uses_vars(v):
            return True
    return False


# --------------------------------------------------------------------------
# evaluation


def evaluate(e: Expr) -> Any:
    """Evaluate to a GWElem, or to a GRElem when variables are in play."""
    return _eval(e.root, e.tower, e.vars if e.uses_vars() else 0)


def _eval(node: Any, k: FieldTower, m: int) -> Any:
    from .etale_transfer import trace_form
    from .expmod import exp
    from .gw import GWElem, lambda2
    from .laurent import GRElem, P, gr_exp

    def lift(x: Any) -> Any:
        return GRElem.const(x, m) if m and isinstance(x, GWElem) else x

    if isinstance(node, Int):
        return lift(GWElem.const(k, node.value))
    if isinstance(node, Hyp):
        return lift(GWElem.hyperbolic(k))
    if isinstance(node, Form):
        if not m:
            return GWElem.form(k, (r for r, _ in node.entries))
        out = GRElem.const(0, m, k)
        for r, mask in node.entries:
            out = out + GRElem.monomial(k, m, mask, GWElem.sq(k, r))
        return out
    if isinstance(node, Trace):
        alg = _make_algebra(list(node.components), k, "")
        return lift(trace_form(alg))
    if isinstance(node, PolyP):
        return P(node.m, k) * GRElem.const(1, m, k) if node.m < m else P(node.m, k)
    if isinstance(node, Neg):
        return -_eval(node.arg, k, m)
    if isinstance(node, Pow):
        base = _eval(node.base, k, m)
        return base ** node.exponent
    if isinstance(node, Lambda2):
        arg = _eval(node.arg, k, 0)
        if not isinstance(arg, GWElem):
            raise GWSyntaxError("lambda2 takes a constant argument")
        return lift(lambda2(arg))
    if isinstance(node, Exp):
        base = _eval(node.base, k, 0)
        if not isinstance(base, GWElem):
            raise GWSyntaxError("the base of exp must be constant")
        exponent = _eval(node.exponent, k, m)
        if isinstance(exponent, GRElem):
            return gr_exp(base, exponent)
        return lift(exp(base, exponent))
    if isinstance(node, BinOp):
        a = _eval(node.left, k, m)
        b = _eval(node.right, k, m)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    raise TypeError(f"unknown node {node!r}")


def parse_gw(text: str, tower: FieldTower, vars: int = 0) -> Any:
    return evaluate(parse(text, tower, vars))


def parse_value(text: str) -> Fraction:
    return Fraction(text)
