"""Canonical text form of expressions; the parser reads it back unchanged."""
from __future__ import annotations

from fractions import Fraction

from .atoms import EXP, FUNC


def _lex(m):
    return m[::-1]


def format_atom(a) -> str:
    return str(a)


def format_func(f) -> str:
    args = ", ".join(print_expr(a) for a in f.args)
    if not any(f.derivs):
        return f"{f.name}({args})"
    if len(f.derivs) == 1:
        return f"{f.name}#{f.derivs[0]}({args})"
    return f"{f.name}#{'.'.join(map(str, f.derivs))}({args})"


def format_mono(m: tuple) -> str:
    parts = []
    for a, k in m:
        s = format_atom(a)
        parts.append(s if k == 1 else f"{s}^{k}")
    return "*".join(parts)


def _coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: dict) -> str:
    if not p:
        return "0"
    out = []
    for i, m in enumerate(sorted(p, key=_lex)):
        c = p[m]
        neg = c < 0
        mag = -c if neg else c
        if not m:
            body = _coeff(mag)
        elif mag == 1:
            body = format_mono(m)
        else:
            body = f"{_coeff(mag)}*{format_mono(m)}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _is_single_term(p: dict) -> bool:
    return len(p) == 1


def print_expr(e) -> str:
    num = format_poly(e.num)
    if e.is_poly:
        return num
    if not _is_single_term(e.num) or "/" in num:
        num = f"({num})"
    parts = []
    for a, k in e.dmono:
        s = format_atom(a)
        parts.append(s if k == 1 else f"{s}^{k}")
    for f, k in e.dfac:
        s = f"({format_poly(f.terms)})"
        parts.append(s if k == 1 else f"{s}^{k}")
    den = parts[0] if len(parts) == 1 and "^" not in parts[0] else f"({'*'.join(parts)})"
    return f"{num}/{den}"


def format_equation(e) -> str:
    return f"{print_expr(e)} = 0"
