"""Recursive-descent parser for the expression grammar.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' ['-'] int)?
    base   := number | identifier | call | '(' expr ')'
    call   := name ['#' int ('.' int)*] '(' expr (',' expr)* ')'

Identifiers resolve against a :class:`Context`: independent variables,
the dependent variable and its jets (``u_xxt``), declared parameters and
declared functions.  ``Diff(e, x, ...)`` is the total derivative and
``exp(e)`` the exponential.  Implicit multiplication is not accepted.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .atoms import Jet, Param, Var, var_priority
from .errors import ParseError, UnknownSymbol
from .expr import Expr, exp, func, normalize, total_derive


@dataclass(frozen=True)
class Context:
    """Symbol declarations used to resolve identifiers."""

    dependent: str = "u"
    independent: tuple = ("x", "t")
    extra_vars: tuple = ()
    params: frozenset = field(default_factory=frozenset)
    functions: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "independent",
                           tuple(sorted(self.independent, key=var_priority)))
        object.__setattr__(self, "params", frozenset(self.params))
        object.__setattr__(self, "functions", frozenset(self.functions))

    def with_symbols(self, params=(), functions=()) -> Context:
        return Context(self.dependent, self.independent, self.extra_vars,
                       self.params | set(params), self.functions | set(functions))

    def jet(self, counts=None) -> Jet:
        return Jet(self.dependent, self.independent, counts)


DEFAULT_CONTEXT = Context()

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<ident>[^\W\d][\w]*(?:\#\d+(?:\.\d+)*)?)
  | (?P<op>[-+*/^(),=])
""", re.VERBOSE | re.UNICODE)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", *_linecol(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


def _linecol(text: str, pos: int):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str, ctx: Context):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def error(self, msg, tok=None, cls=ParseError):
        tok = tok or self.peek()
        return cls(msg, *_linecol(self.text, tok.pos))

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, text):
        if self.peek().kind == "op" and self.peek().text == text:
            return self.next()
        return None

    def expect(self, text):
        t = self.accept(text)
        if t is None:
            found = self.peek().text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return t

    def parse(self):
        e = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return e

    def expr(self):
        if self.accept("-"):
            node = ("neg", self.term())
        else:
            self.accept("+")
            node = self.term()
        while True:
            if self.accept("+"):
                node = ("add", node, self.term())
            elif self.accept("-"):
                node = ("sub", node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            if self.accept("*"):
                node = ("mul", node, self.factor())
            elif self.peek().kind == "op" and self.peek().text == "/":
                tok = self.next()
                rhs = self.factor()
                if normalize(rhs).is_zero():
                    raise self.error("division by an expression that is identically zero", tok)
                node = ("div", node, rhs)
            else:
                return node

    def factor(self):
        base = self.base()
        if self.accept("^"):
            neg = bool(self.accept("-"))
            t = self.next()
            if t.kind != "num" or not t.text.isdigit():
                raise self.error("exponent must be an integer", t)
            n = int(t.text)
            return ("pow", base, -n if neg else n)
        return base

    def base(self):
        t = self.peek()
        if t.kind == "num":
            self.next()
            return ("num", Fraction(t.text))
        if t.kind == "ident":
            self.next()
            if self.peek().kind == "op" and self.peek().text == "(":
                return self.call(t)
            return ("atom", self.resolve(t))
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}")

    def resolve(self, tok):
        name = tok.text
        ctx = self.ctx
        if "#" in name:
            raise self.error(f"{name!r} must be applied to arguments", tok)
        if name in ctx.independent or name in ctx.extra_vars:
            return Var(name)
        if name == ctx.dependent:
            return ctx.jet()
        if name in ctx.params:
            return Param(name)
        prefix = ctx.dependent + "_"
        if name.startswith(prefix) and len(name) > len(prefix):
            suffix = name[len(prefix):]
            if all(ch in ctx.independent for ch in suffix):
                return ctx.jet([suffix.count(d) for d in ctx.independent])
        raise self.error(f"unknown symbol {name!r}", tok, UnknownSymbol)

    def call(self, tok):
        name, _, derivs = tok.text.partition("#")
        self.expect("(")
        args = [self.expr()]
        while self.accept(","):
            args.append(self.expr())
        self.expect(")")
        if name == "Diff" and not derivs:
            e = normalize(args[0])
            for a in args[1:]:
                v = normalize(a).as_atom()
                if v is None or v[0] != 0:
                    raise self.error("Diff takes independent variables after the expression", tok)
                e = total_derive(e, v.name)
            return e
        if name == "exp" and not derivs:
            if len(args) != 1:
                raise self.error("exp takes one argument", tok)
            return exp(normalize(args[0]))
        if name not in self.ctx.functions:
            raise self.error(f"unknown function {name!r}", tok, UnknownSymbol)
        counts = [int(x) for x in derivs.split(".")] if derivs else None
        if counts is not None and len(counts) != len(args):
            raise self.error("derivative counts do not match the argument count", tok)
        return func(name, [normalize(a) for a in args], counts)


def parse_expr(text: str, ctx: Context = DEFAULT_CONTEXT) -> Expr:
    """Parse text into a canonical Expr."""
    return normalize(_Parser(text, ctx).parse())


def parse_equation(text: str, ctx: Context = DEFAULT_CONTEXT) -> tuple[Expr, Expr]:
    """Parse ``lhs = rhs`` (or a bare expression meaning ``expr = 0``)."""
    parts = text.split("=")
    if len(parts) > 2:
        raise ParseError("more than one '=' in equation", *_linecol(text, text.rfind("=")))
    lhs = parse_expr(parts[0], ctx)
    if len(parts) == 1:
        from .expr import ZERO
        return lhs, ZERO
    offset = len(parts[0]) + 1
    try:
        rhs = parse_expr(parts[1], ctx)
    except ParseError as err:
        raise type(err)(str(err).rsplit(" (line", 1)[0], err.line,
                        err.column + offset if err.line == 1 else err.column) from None
    return lhs, rhs
