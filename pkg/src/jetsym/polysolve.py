"""Case-splitting solver for small polynomial systems in scalar unknowns.

Sound but incomplete: it eliminates unknowns that occur linearly, splits on
monomial factors (p = 0 or p != 0) and on vanishing leading coefficients.
Systems it cannot reduce are returned as unresolved rather than guessed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .atoms import PARAM
from .expr import (ONE, ZERO, Expr, collect_by, divexact, partial_derive, poly_mono_gcd,
                   split_poly, substitute)

_MAX_BRANCHES = 512


@dataclass(frozen=True)
class Family:
    """Solutions ``unknown = value`` with the remaining unknowns free,
    valid wherever every expression in ``nonzero`` is nonzero."""

    assignment: dict
    free: tuple
    nonzero: tuple = ()

    def apply(self, e: Expr) -> Expr:
        return substitute(e, self.assignment) if self.assignment else e

    def specialize(self, values: dict) -> dict:
        """Full assignment for given values of the free unknowns."""
        vals = {p: Expr.coerce(v) for p, v in values.items()}
        out = {p: substitute(v, vals) for p, v in self.assignment.items()}
        out.update(vals)
        return out


@dataclass
class Solution:
    families: list = field(default_factory=list)
    unresolved: list = field(default_factory=list)


def _prim(e: Expr) -> Expr:
    e = e.numerator() if not e.is_poly else e
    if e.is_zero():
        return e
    coeff, _, _ = split_poly(e.num)
    return e * Expr.const(1 / coeff)


def _strip(e: Expr, nonzero) -> Expr:
    """Divide out monomial factors and factors assumed nonzero."""
    changed = True
    while changed and not e.is_zero():
        changed = False
        mono = poly_mono_gcd(e.num)
        mono = tuple((a, k) for a, k in mono if any(Expr.atom(a) == nz for nz in nonzero))
        if mono:
            e = e / Expr({mono: 1})
            changed = True
        for nz in nonzero:
            if nz.is_const() or len(nz.num) < 1:
                continue
            q = divexact(e.num, nz.num)
            if q is not None and nz.is_poly:
                e = Expr(q)
                changed = True
    return _prim(e)


def _compose(assign: dict, p, value: Expr) -> dict:
    out = {q: substitute(v, {p: value}) for q, v in assign.items()}
    out[p] = value
    return out


def _subst_linear(e: Expr, p, num: Expr, den: Expr) -> Expr:
    """Numerator of e with p = num/den, as den^deg(e, p) * e(num/den)."""
    if p not in e.atoms():
        return e
    parts = collect_by(e, [p])
    d = max((m[0][1] if m else 0) for m in parts)
    npow, dpow = [ONE], [ONE]
    for _ in range(d):
        npow.append(npow[-1] * num)
        dpow.append(dpow[-1] * den)
    out = ZERO
    for m, c in parts.items():
        k = m[0][1] if m else 0
        out = out + c * npow[k] * dpow[d - k]
    return out


def solve_system(eqs, unknowns, nonzero=()) -> Solution:
    """Solve polynomial equations ``eqs = 0`` for the Param atoms ``unknowns``."""
    unknowns = tuple(unknowns)
    result = Solution()
    eqs = [e.numerator() if not e.is_poly else e for e in eqs]
    stack = [(eqs, {}, tuple(Expr.coerce(n) for n in nonzero), None)]
    steps = 0
    while stack:
        steps += 1
        if steps > _MAX_BRANCHES:
            for eqs_, assign, nz, pending in stack:
                result.unresolved.append((eqs_, assign, nz))
            break
        branch = _step(*stack.pop(), unknowns)
        if branch is None:
            continue
        kind, payload = branch
        if kind == "done":
            result.families.append(payload)
        elif kind == "split":
            stack.extend(reversed(payload))
        else:
            result.unresolved.append(payload)
    result.families = _dedupe(result.families)
    return result


def _step(eqs, assign, nonzero, pending, unknowns):
    if pending is not None:
        p, num, den = pending
        assign = _compose(assign, p, num / den)
        eqs = [_subst_linear(e, p, num, den) for e in eqs]
        nonzero = tuple(_prim(_subst_linear(n.numerator(), p, num, den)) for n in nonzero)
    if any(n.is_zero() for n in nonzero):
        return None
    work = []
    seen = set()
    for e in eqs:
        e = _strip(e, nonzero)
        if e.is_zero() or e in seen:
            continue
        if e.is_const():
            return None
        seen.add(e)
        work.append(e)
    if not work:
        free = tuple(q for q in unknowns if q not in assign)
        return "done", Family(dict(assign), free, nonzero)
    work.sort(key=lambda e: (len(e.num), e.key))
    # unknowns occurring linearly; numeric coefficients first, then the
    # smallest symbolic coefficient
    best = None
    for e in work:
        for q in sorted(a for a in e.atoms() if a[0] == PARAM and a in unknowns):
            if e.degree(q) != 1:
                continue
            c = partial_derive(e, q)
            key = (not c.is_const(), len(c.num), len(e.num))
            if best is None or key < best[0]:
                best = (key, e, q, c)
        if best is not None and best[0][0] is False:
            break
    if best is not None and not best[0][0]:
        _, e, q, c = best
        num = -(e - c * Expr.atom(q))
        return "split", [(work, assign, nonzero, (q, num, c))]
    # a monomial factor: q = 0 or q != 0
    for e in work:
        mono = poly_mono_gcd(e.num)
        if mono:
            q = mono[0][0]
            zero = (work, assign, nonzero, (q, ZERO, ONE))
            rest = (work, assign, nonzero + (Expr.atom(q),), None)
            return "split", [zero, rest]
    if best is not None:
        _, e, q, c = best
        num = -(e - c * Expr.atom(q))
        vanish = (work + [c], assign, nonzero, None)
        solve = (work, assign, nonzero + (_prim(c),), (q, num, c))
        return "split", [vanish, solve]
    return "unresolved", (work, assign, nonzero)


def _dedupe(families):
    out = []
    keys = set()
    for f in families:
        k = (tuple(sorted((p, v.key) for p, v in f.assignment.items())), f.free)
        if k not in keys:
            keys.add(k)
            out.append(f)
    return out
