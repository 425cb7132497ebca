"""Bundled corpus of published results and engine-derived checks.

Each entry states a claim.  Running it yields ``pass`` when the engine agrees
with the claim and ``discrepancy`` otherwise; ``expected_status`` records the
outcome the entry is known to have.
"""
from __future__ import annotations

import json
from importlib import resources

from .determining import primitive, span_contains, span_equal, classical_symmetries
from .equation import to_solved_form
from .errors import JetsymError
from .expr import Expr
from .models import model
from .nonclassical import (governing_condition_eta0, nonclassical_solve_eta0,
                           nonclassical_solve_eta1)
from .parser import parse_expr
from .printer import print_expr
from .reduction import (invariants_for_generator, invariants_from_text, reduce_with_invariants,
                        reduced_context, reduced_system_from_text)
from .report import parse_generator_literal
from .verify import classify_generator, flow_transform, verify_reduced_solution, verify_solution


def load_corpus() -> list:
    text = resources.files("jetsym").joinpath("data/corpus.json").read_text(encoding="utf-8")
    return json.loads(text)["entries"]


def _ctx(entry, eq=None):
    base = eq.context if eq is not None else reduced_context()
    return base.with_symbols(entry.get("params", ()), entry.get("functions", ()))


def same_up_to_sign(a: Expr, b: Expr) -> bool:
    a, b = primitive(a.numerator()), primitive(b.numerator())
    return a == b or a == -b


def split_invariants(text: str) -> tuple[str, str]:
    parts = dict(p.split("=", 1) for p in text.split(";"))
    parts = {k.strip(): v.strip() for k, v in parts.items()}
    if set(parts) != {"r", "u"}:
        raise ValueError("invariants must be given as 'r = ...; u = ...'")
    return parts["r"], parts["u"]


def characteristic_sets(eq, degree=1):
    ef = to_solved_form(eq)
    r1 = nonclassical_solve_eta1(ef, None if degree == 1 else _ansatz(ef, degree))
    r0 = nonclassical_solve_eta0(ef, degree)
    return r1, r0


def _ansatz(ef, degree):
    from .determining import AnsatzSpec
    ctx = ef.context
    return AnsatzSpec(degree, ctx.independent, ctx.dependent)


def run_entry(entry) -> tuple[bool, str]:
    """(claim holds, detail) for one entry."""
    kind, claim = entry["kind"], entry["claim"]
    eq = model(entry["eq"]) if "eq" in entry else None
    ctx = _ctx(entry, eq)
    if kind == "symmetries":
        basis = classical_symmetries(to_solved_form(eq), entry.get("degree", 1))
        claimed = [parse_generator_literal(", ".join(c), ctx) for c in claim["span"]]
        ok = span_equal(list(basis), claimed) if entry["eq"] == "kdv" else (
            len(basis) == len(claimed) and all(span_contains(list(basis), g) for g in claimed))
        return ok, f"dimension {len(basis)}: " + "; ".join(str(g) for g in basis)
    if kind in ("nonclassical", "nonclassical_constraints"):
        r1, r0 = characteristic_sets(eq, entry.get("degree", 1))
        if kind == "nonclassical_constraints":
            got = r1.constraint_set()
            return sorted(got) == sorted(claim["constraints"]), ", ".join(got)
        chars = r1.characteristics() + [c for c in r0.characteristics() if c not in r1.characteristics()]
        want = [primitive(parse_expr(c, ctx)) for c in claim["characteristics"]]
        ok = sorted(map(str, chars)) == sorted(map(str, want))
        return ok, ", ".join(print_expr(c) for c in chars)
    if kind == "reduce":
        if "gen" in entry:
            inv = invariants_for_generator(parse_generator_literal(entry["gen"], ctx))
        else:
            inv = invariants_from_text(*split_invariants(entry["invariants"]))
        sys = reduce_with_invariants(eq, inv)
        ok = True
        if "status" in claim:
            ok = ok and sys.status == claim["status"]
        if "expression" in claim:
            want = parse_expr(claim["expression"], reduced_context(params=entry.get("params", ())))
            ok = ok and same_up_to_sign(sys.expression, want)
        return ok, f"{sys.status}: {print_expr(sys.expression)} = 0"
    if kind == "verify":
        res = verify_solution(eq, parse_expr(entry["u"], ctx))
        return res.is_zero == claim["is_zero"], f"residual {print_expr(res.expr)}"
    if kind == "verify_reduced":
        sys = reduced_system_from_text([entry["ode"]], entry.get("params", ()))
        res = verify_reduced_solution(sys, parse_expr(entry["w"], ctx))
        return res.is_zero == claim["is_zero"], f"residual {print_expr(res.expr)}"
    if kind == "governing_eta0":
        got = governing_condition_eta0(to_solved_form(eq), parse_expr(entry["phi"], ctx))
        ok = (got - parse_expr(claim["residual"], ctx)).is_zero()
        return ok, f"residual {print_expr(got)}"
    if kind == "classify":
        got = classify_generator(to_solved_form(eq), parse_generator_literal(entry["gen"], ctx))
        return got == claim["class"], got
    if kind == "transform":
        tctx = ctx.with_symbols(["epsilon"])
        got = flow_transform(parse_expr(entry["u"], tctx), parse_generator_literal(entry["gen"], tctx))
        try:
            want = parse_expr(claim["result"], tctx)
        except JetsymError as err:
            return False, f"{print_expr(got)} (claim unusable: {err})"
        try:
            ok = (got - want).is_zero()
        except JetsymError:
            ok = False
        return ok, print_expr(got)
    raise ValueError(f"unknown corpus entry kind {kind!r}")


def run_corpus(entries=None) -> list[dict]:
    rows = []
    for entry in entries if entries is not None else load_corpus():
        try:
            ok, detail = run_entry(entry)
            outcome = "pass" if ok else "discrepancy"
        except JetsymError as err:
            outcome, detail = "discrepancy", f"{type(err).__name__}: {err}"
        rows.append({"id": entry["id"], "kind": entry["kind"], "outcome": outcome,
                     "expected_status": entry.get("expected_status", "pass"),
                     "matches_expected": outcome == entry.get("expected_status", "pass"),
                     "detail": detail})
    return rows
