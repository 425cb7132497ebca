"""Residual checks for candidate solutions, generator classification and
exact flows of affine generators."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .atoms import EXP, FUNC, JET, PARAM, VAR, Param, Var
from .determining import on_shell_residual
from .equation import EvolutionForm, SourceEquation
from .errors import InvalidCandidate, PoleAtPoint, UnsupportedGenerator
from .expr import ZERO, Expr, evaluate_at, exp, partial_derive, substitute
from .nonclassical import reduce_on_surface
from .printer import print_expr
from .prolong import Generator

STRONG = "Strong"
NONCLASSICAL = "NonClassical"
WEAK_ONLY = "WeakOnly"

WITNESS_TRIES = 1000


@dataclass(frozen=True)
class Residual:
    expr: Expr
    is_zero: bool
    witness: dict | None = None

    def as_dict(self) -> dict:
        out = {"residual": print_expr(self.expr), "is_zero": self.is_zero}
        if self.witness is not None:
            out["witness"] = {str(a): str(v) for a, v in self.witness.items()}
        return out


def _leaf_atoms(e: Expr) -> set:
    """Atoms a witness point has to assign: everything outside exp arguments,
    with function atoms treated as independent values."""
    return {a for a in e.atoms() if a[0] in (VAR, PARAM, JET, FUNC, EXP)}


def find_witness(e: Expr, tries: int = WITNESS_TRIES, seed: int = 0) -> dict | None:
    """Random rational point where the numerator of e is nonzero and no
    denominator vanishes."""
    if e.is_zero():
        return None
    rng = random.Random(seed)
    atoms = sorted(_leaf_atoms(e))
    for _ in range(tries):
        point = {a: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for a in atoms}
        try:
            if evaluate_at(e, point):
                return point
        except PoleAtPoint:
            continue
    return None


def make_residual(e: Expr) -> Residual:
    if e.is_zero():
        return Residual(e, True)
    return Residual(e, False, find_witness(e))


def _check_candidate(candidate: Expr, dependent: str):
    if any(a[0] == JET and a.dep == dependent for a in candidate.atoms(True)):
        raise InvalidCandidate(f"candidate {candidate} contains {dependent}")


def solution_rules(delta: Expr, candidate: Expr, dependent: str) -> dict:
    rules = {}
    for a in delta.atoms(True):
        if a[0] == JET and a.dep == dependent:
            e = candidate
            for v, n in zip(a.dirs, a.counts):
                for _ in range(n):
                    e = partial_derive(e, Var(v))
            rules[a] = e
    return rules


def verify_solution(eq: SourceEquation, candidate) -> Residual:
    """Substitute u = candidate(x, t) and its derivatives into the equation."""
    candidate = Expr.coerce(candidate)
    dep = eq.context.dependent
    _check_candidate(candidate, dep)
    delta = eq.delta
    return make_residual(substitute(delta, solution_rules(delta, candidate, dep)))


def verify_reduced_solution(sys, candidate) -> Residual:
    """Substitute w = candidate(r) into each reduced equation."""
    candidate = Expr.coerce(candidate)
    inv = sys.invariants
    dep = inv.dependent if inv is not None else "w"
    _check_candidate(candidate, dep)
    out = ZERO
    for e in sys.equations:
        res = substitute(e, solution_rules(e, candidate, dep))
        if not res.is_zero():
            out = res
            break
    return make_residual(out)


def classify_generator(ef: EvolutionForm, g: Generator) -> str:
    if on_shell_residual(ef, g).is_zero():
        return STRONG
    if not g.eta.is_zero() or not g.xi.is_zero():
        if reduce_on_surface(ef, g).residual.is_zero():
            return NONCLASSICAL
    return WEAK_ONLY


def classification_report(ef: EvolutionForm, g: Generator) -> dict:
    strong = on_shell_residual(ef, g)
    surface = reduce_on_surface(ef, g).residual if (not g.eta.is_zero() or not g.xi.is_zero()) else strong
    return {
        "generator": g.as_dict() if hasattr(g, "as_dict") else str(g),
        "class": classify_generator(ef, g),
        "on_shell_residual": print_expr(strong),
        "surface_residual": print_expr(surface),
    }


# ---------------------------------------------------------------- flows

def _const_affine(g: Generator):
    """Numeric matrix M and constant vector b (parameters allowed) with
    (xi, eta, phi) = M (x, t, u) + b, else None."""
    atoms = [Var(v) for v in g.independent] + [g.u]
    M, b = [], []
    for comp in g.components:
        if not comp.is_poly:
            return None
        row = []
        rest = comp
        for a in atoms:
            if comp.degree(a) > 1:
                return None
            c = partial_derive(comp, a)
            if not c.is_const():
                return None
            row.append(c.const_value())
            rest = rest - c * Expr.atom(a)
        if not rest.free_of(atoms) or any(a[0] != PARAM for a in rest.atoms(True)):
            return None
        M.append(row)
        b.append(rest)
    return M, b


# Each flow coordinate is a sum of terms  coeff * s^k * exp(lam * s)  stored as
# {(k, lam): coeff Expr}; coefficients may involve the initial values.

def _term_add(acc: dict, key, c: Expr):
    v = acc.get(key, ZERO) + c
    if v.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = v


def _integrate_terms(terms: dict) -> dict:
    """int_0^s of the terms."""
    out = {}
    for (k, lam), c in terms.items():
        if lam == 0:
            _term_add(out, (k + 1, Fraction(0)), c * Expr.const(Fraction(1, k + 1)))
            continue
        # int_0^s s^k e^{lam s} = sum_j (-1)^j k!/(k-j)! s^{k-j} e^{lam s}/lam^{j+1} - const
        fact = Fraction(1)
        for j in range(k + 1):
            coef = Fraction((-1) ** j) * fact / lam ** (j + 1)
            _term_add(out, (k - j, lam), c * Expr.const(coef))
            if j == k:
                _term_add(out, (0, Fraction(0)), c * Expr.const(-coef))
            fact *= k - j
    return out


def _flow_terms(M, b, start):
    """Solve dz/ds = M z + b, z(0) = start, for M with an acyclic coupling
    pattern (after the diagonal).  Returns per-coordinate term dicts."""
    n = len(M)
    order, done = [], set()
    while len(order) < n:
        progress = False
        for i in range(n):
            if i in done:
                continue
            if all(j in done or j == i or M[i][j] == 0 for j in range(n)):
                order.append(i)
                done.add(i)
                progress = True
        if not progress:
            raise UnsupportedGenerator("generator couples the coordinates cyclically")
    sol = [None] * n
    for i in order:
        a = M[i][i]
        # forcing g(s) = b_i + sum_j M_ij z_j(s), multiplied by e^{-a s}
        forcing = {}
        if not b[i].is_zero():
            _term_add(forcing, (0, -a), b[i])
        for j in range(n):
            if j != i and M[i][j]:
                for (k, lam), c in sol[j].items():
                    _term_add(forcing, (k, lam - a), c * Expr.const(M[i][j]))
        integral = _integrate_terms(forcing)
        terms = {}
        _term_add(terms, (0, a), start[i])
        for (k, lam), c in integral.items():
            _term_add(terms, (k, lam + a), c)
        sol[i] = terms
    return sol


def _terms_expr(terms: dict, s: Expr) -> Expr:
    out = ZERO
    for (k, lam), c in terms.items():
        out = out + c * s ** k * exp(Expr.const(lam) * s)
    return out


def flow(g: Generator, epsilon="epsilon"):
    """Exact flow (x, t, u) -> Phi_epsilon(x, t, u) of an affine generator."""
    aff = _const_affine(g)
    if aff is None:
        raise UnsupportedGenerator(f"{g} is not affine with constant coefficients")
    M, b = aff
    eps = Expr.atom(Param(epsilon)) if isinstance(epsilon, str) else Expr.coerce(epsilon)
    start = [Expr.atom(Var(v)) for v in g.independent] + [Expr.atom(g.u)]
    return [_terms_expr(tr, eps) for tr in _flow_terms(M, b, start)]


def flow_transform(solution, g: Generator, epsilon="epsilon") -> Expr:
    """Image of the graph u = f(x, t) under the flow of g, solved for u."""
    f = Expr.coerce(solution)
    _check_candidate(f, g.dependent)
    aff = _const_affine(g)
    if aff is None:
        raise UnsupportedGenerator(f"{g} is not affine with constant coefficients")
    M, _ = aff
    if M[0][2] or M[1][2]:
        raise UnsupportedGenerator("flow mixes u into x or t; the image is not explicit")
    eps = Expr.atom(Param(epsilon)) if isinstance(epsilon, str) else Expr.coerce(epsilon)
    x0, t0, u0 = flow(g, -eps)
    # (x0, t0, u0) = Phi_{-eps}(x, t, u); u0 = A + B*u must equal f(x0, t0)
    X, T = (Var(v) for v in g.independent)
    tmp = {X: Var(X.name + "'"), T: Var(T.name + "'")}
    fx = substitute(substitute(f, {a: Expr.atom(b) for a, b in tmp.items()}),
                    {tmp[X]: x0, tmp[T]: t0})
    B = partial_derive(u0, g.u)
    A = u0 - B * Expr.atom(g.u)
    return (fx - A) / B
