"""Generator literals and JSON reports."""
from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction

from .atoms import Atom
from .errors import ParseError
from .expr import Expr
from .parser import DEFAULT_CONTEXT, Context, parse_expr
from .printer import print_expr
from .prolong import Generator


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_generator(xi: str, eta: str, phi: str, ctx: Context = DEFAULT_CONTEXT) -> Generator:
    comps = [parse_expr(s, ctx) for s in (xi, eta, phi)]
    return Generator(*comps, ctx.dependent, ctx.independent)


def parse_generator_literal(text: str, ctx: Context = DEFAULT_CONTEXT) -> Generator:
    """``"xi, eta, phi"`` with optional surrounding parentheses."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")") and len(split_top_level(s[1:-1])) == 3:
        s = s[1:-1]
    parts = split_top_level(s)
    if len(parts) != 3:
        raise ParseError(f"generator needs three components, got {len(parts)}", 1, 1)
    return parse_generator(*parts, ctx=ctx)


def to_plain(obj):
    """Convert engine values to JSON-ready data with canonical strings."""
    if isinstance(obj, Expr):
        return print_expr(obj)
    if isinstance(obj, Generator):
        return obj.as_dict()
    if isinstance(obj, Atom):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    if hasattr(obj, "as_dict"):
        return to_plain(obj.as_dict())
    if isinstance(obj, dict):
        return {str(to_plain(k)): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_plain(v) for v in obj]
        return sorted(items, key=str) if isinstance(obj, (set, frozenset)) else items
    if is_dataclass(obj):
        return {f.name: to_plain(getattr(obj, f.name)) for f in fields(obj)}
    return str(obj)


def make_report(command: str, inputs: dict, results=(), residuals=(), status: str = "ok") -> dict:
    return {"command": command, "inputs": to_plain(inputs), "results": to_plain(list(results)),
            "residuals": to_plain(list(residuals)), "status": status}


def to_json(report) -> str:
    return json.dumps(to_plain(report), indent=2, sort_keys=False, ensure_ascii=False)
