"""Similarity reduction by group invariants, parametric splitting and a
bounded compatibility check for the split system."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .atoms import JET, Jet, Var
from .determining import primitive
from .equation import SourceEquation
from .errors import InvalidInvariants, UnsupportedGenerator
from .expr import ONE, ZERO, Expr, collect_by, derivation, partial_derive, substitute
from .parser import Context, parse_equation, parse_expr
from .printer import format_mono, print_expr
from .prolong import Generator

CLEAN = "Clean"
PARAMETRIC_COMPATIBLE = "ParametricCompatible"
PARAMETRIC_INCOMPATIBLE = "ParametricIncompatible"
UNKNOWN = "Unknown"


def reduced_context(dependent="w", variable="r", original=("x", "t"), params=(), functions=()):
    """Parsing context for reduced equations: w-jets in r plus the original variables."""
    return Context(dependent, (variable,), tuple(original), frozenset(params), frozenset(functions))


@dataclass(frozen=True)
class InvariantPair:
    """Similarity variable ``r(x, t)`` and ``u = U(x, t, w(r))``."""

    r: Expr
    u_expression: Expr
    parametric_candidates: tuple = ("x", "t")
    generator: Generator | None = None
    dependent: str = "w"
    variable: str = "r"

    @property
    def w(self) -> Jet:
        return Jet(self.dependent, (self.variable,))

    def __str__(self):
        return f"r = {print_expr(self.r)}, u = {print_expr(self.u_expression)}"


# ---------------------------------------------------------------- catalog

def _integrate_t(e: Expr, t: Var) -> Expr:
    if not e.is_poly or any(a != t for a in e.atoms(True)):
        raise UnsupportedGenerator(f"cannot integrate {e} in {t}")
    out = ZERO
    for m, c in collect_by(e, [t]).items():
        k = m[0][1] if m else 0
        out = out + c * Expr.atom(t) ** (k + 1) * Expr.const(Fraction(1, k + 1))
    return out


def _normalize_r(r: Expr, x: Var) -> Expr:
    """Integer coefficients, positive coefficient on x (or leading term)."""
    r = primitive(r)
    c = partial_derive(r, x)
    if c.is_const() and c.const_value() < 0:
        r = -r
    return r


def _affine(e: Expr, a) -> tuple | None:
    """(slope, offset) constants with e = slope*a + offset, else None."""
    if not e.is_poly or e.degree(a) > 1:
        return None
    slope = partial_derive(e, a)
    offset = e - slope * Expr.atom(a)
    if not (slope.is_const() and offset.is_const()):
        return None
    return slope.const_value(), offset.const_value()


def _catalog(g: Generator) -> tuple:
    x, t = (Var(v) for v in g.independent)
    u = g.u
    xi, eta, phi = g.components
    X, T, U = Expr.atom(x), Expr.atom(t), Expr.atom(u)
    w = Expr.atom(Jet("w", ("r",)))
    if g.is_zero():
        raise UnsupportedGenerator("the zero generator has no invariants")

    def only_t(e):
        return e.free_of([x, u])

    # eta constant, xi and phi polynomial in t: dx/dt = xi/eta, du/dt = phi/eta
    if eta.is_const() and not eta.is_zero() and only_t(xi) and only_t(phi):
        r = _normalize_r(X - _integrate_t(xi / eta, t), x)
        return r, _integrate_t(phi / eta, t) + w
    # eta = 0: invariants t and u - (phi/xi) x
    if eta.is_zero() and not xi.is_zero() and only_t(xi) and only_t(phi):
        return T, phi / xi * X + w
    # diagonal scalings with translations: xi = a(x + x0), eta = b(t + t0), phi = c u + d
    ax, bt, cu = _affine(xi, x), _affine(eta, t), _affine(phi, u)
    if None in (ax, bt, cu) or not xi.free_of([t, u]) or not eta.free_of([x, u]) \
            or not phi.free_of([x, t]):
        raise UnsupportedGenerator(f"no closed-form invariants for {g}")
    (a, a0), (b, b0), (c, d) = ax, bt, cu
    if (a == 0 and a0) or (b == 0 and b0):
        raise UnsupportedGenerator(f"mixed translation and scaling in {g}")
    Xs = X + Expr.const(a0 / a) if a else X
    Ts = T + Expr.const(b0 / b) if b else T
    if a and b:
        den = lcm(a.denominator, b.denominator)
        ai, bi = int(a * den), int(b * den)
        k = gcd(ai, bi)
        p, q = bi // k, -ai // k
        if p < 0:
            p, q = -p, -q
        r = Xs ** p * Ts ** q
    elif a:
        r = Ts
    else:
        r = Xs
    # weight function m(x, t) with X(m) = c*m
    if c == 0:
        if d:
            raise UnsupportedGenerator(f"logarithmic invariant required for {g}")
        return r, w
    if b:
        expo, base = c / b, Ts
    else:
        expo, base = c / a, Xs
    if expo.denominator != 1:
        raise UnsupportedGenerator(f"non-integer weight {expo} in {g}")
    return r, Expr.const(-d / c) + base ** int(expo) * w


def check_invariance(g: Generator, r: Expr, u_expr: Expr, w: Jet | None = None) -> bool:
    """X(r) = 0 and X(w) = 0 for w recovered from u = a + b*w."""
    w = w or Jet("w", ("r",))
    xi, eta, phi = g.components
    x, t = (Var(v) for v in g.independent)

    def act(e):
        return xi * partial_derive(e, x) + eta * partial_derive(e, t) + phi * partial_derive(e, g.u)

    if not act(r).is_zero():
        return False
    if u_expr.degree(w) != 1 or any(a == w for a, _ in u_expr.dmono):
        return False
    b = partial_derive(u_expr, w)
    a = u_expr - b * Expr.atom(w)
    if w in b.atoms(True) or b.is_zero():
        return False
    winv = (Expr.atom(g.u) - a) / b
    return act(winv).is_zero()


def invariants_for_generator(g: Generator) -> InvariantPair:
    """Invariants from the closed-form catalog, verified symbolically."""
    r, uexpr = _catalog(g)
    if not check_invariance(g, r, uexpr):
        raise UnsupportedGenerator(f"catalog invariants fail verification for {g}")
    return InvariantPair(r, uexpr, tuple(g.independent), g)


def invariants_from_text(r: str, u: str, context: Context | None = None,
                         generator: Generator | None = None) -> InvariantPair:
    """User-supplied invariants such as ``r = x - t`` and ``u = w``."""
    ctx = context or Context("w", ("r",), ("x", "t"))
    uctx = Context("w", ("r",), ("x", "t"), ctx.params, ctx.functions)
    rr = parse_expr(r, Context("u", ("x", "t"), (), ctx.params, ctx.functions))
    ue = parse_expr(u, uctx)
    if Var("r") in ue.atoms(True):
        raise InvalidInvariants("u expression must use w, x and t, not r")
    return InvariantPair(rr, ue, ("x", "t"), generator)


# ---------------------------------------------------------------- reduction

@dataclass
class Certificate:
    steps: list = field(default_factory=list)
    contradiction: tuple | None = None

    def __str__(self):
        return "; ".join(self.steps)


@dataclass
class ReducedSystem:
    expression: Expr
    equations: list
    parametric: tuple = ()
    split: dict = field(default_factory=dict)
    status: str = UNKNOWN
    certificate: Certificate | None = None
    invariants: InvariantPair | None = None

    def as_dict(self) -> dict:
        return {
            "expression": print_expr(self.expression),
            "parametric": list(self.parametric),
            "split": {format_mono(m) or "1": print_expr(c) for m, c in self.split.items()},
            "equations": [print_expr(e) for e in self.equations],
            "status": self.status,
            "certificate": self.certificate.steps if self.certificate else [],
        }


def _chain_derivation(r: Expr, w: Jet, var: Var, wvar: str):
    rv = partial_derive(r, var)

    def datom(a):
        if a == var:
            return ONE
        if a[0] == JET and a.dep == w.dep:
            return Expr.atom(a.raised(wvar)) * rv
        return None
    return datom


def _eliminate(e: Expr, r: Expr, names) -> tuple:
    """Replace one original variable by its expression in r; returns (e, var),
    with var None when r cannot be solved rationally for either variable."""
    R = Expr.atom(Var("r"))
    for v in names:
        a = Var(v)
        if a not in r.atoms(True) or r.degree(a) != 1 or any(b == a for b, _ in r.dmono):
            continue
        c = partial_derive(r, a)
        if a in c.atoms(True):
            continue
        rest = r - c * Expr.atom(a)
        if any(f for f, _ in r.dfac if a in {x for m in f.terms for x, _ in m}):
            continue
        return substitute(e, {a: (R - rest) / c}), v
    return e, None


def reduce_with_invariants(eq: SourceEquation, inv: InvariantPair, max_iter: int = 5) -> ReducedSystem:
    ctx = eq.context
    names = ctx.independent
    w = inv.w
    delta = eq.delta
    if not any(Var(v) in inv.r.atoms(True) for v in names):
        raise InvalidInvariants(f"similarity variable {inv.r} is constant")
    if ctx.jet() in inv.u_expression.atoms(True) or ctx.jet() in inv.r.atoms(True):
        raise InvalidInvariants("invariants must not contain the dependent variable")
    ders = {v: _chain_derivation(inv.r, w, Var(v), inv.variable) for v in names}
    rules = {}
    for a in delta.atoms(True):
        if a[0] == JET and a.dep == ctx.dependent:
            e = inv.u_expression
            for v, n in zip(a.dirs, a.counts):
                for _ in range(n):
                    e = derivation(e, ders[v])
            rules[a] = e
    out = substitute(delta, rules)
    if any(a[0] == JET and a.dep == ctx.dependent for a in out.atoms(True)):
        raise InvalidInvariants("substitution left the dependent variable in the equation")
    out, _ = _eliminate(out, inv.r, names)
    out = primitive(out.numerator())
    surviving = tuple(v for v in names if Var(v) in out.atoms(True))
    split = collect_by(out, [Var(v) for v in surviving]) if surviving else {(): out}
    equations = [c for _, c in sorted(split.items(), key=lambda kv: kv[0][::-1])]
    sys = ReducedSystem(out, equations, surviving, split, invariants=inv)
    if not surviving:
        sys.status = CLEAN
        sys.equations = [out]
        return sys
    if len(surviving) > 1:
        sys.status = UNKNOWN
        return sys
    status, cert = compatibility_check(sys, max_iter)
    sys.status, sys.certificate = status, cert
    return sys


def _wjets(e: Expr, dep: str) -> set:
    return {a for a in e.atoms(True) if a[0] == JET and a.dep == dep}


def compatibility_check(sys: ReducedSystem, max_iter: int = 5, dependent: str = "w"):
    """Propagate equations of the form w_J = constant and look for 0 = c != 0."""
    eqs = [e for e in sys.equations if not e.is_zero()]
    labels = [f"coefficient of {format_mono(m) or '1'}" for m, c in
              sorted(sys.split.items(), key=lambda kv: kv[0][::-1]) if not c.is_zero()] \
        if sys.split else [f"equation {i + 1}" for i in range(len(eqs))]
    if len(labels) != len(eqs):
        labels = [f"equation {i + 1}" for i in range(len(eqs))]
    cert = Certificate()
    propagated = False
    for _ in range(max_iter):
        found = None
        for i, e in enumerate(eqs):
            js = _wjets(e, dependent)
            if len(js) != 1:
                continue
            j = next(iter(js))
            if e.degree(j) != 1 or not e.is_poly:
                continue
            c = partial_derive(e, j)
            rest = e - c * Expr.atom(j)
            if c.is_const() and rest.is_const() and not rest.atoms(True):
                found = (i, j, -rest / c)
                break
        if found is None:
            break
        i, j, val = found
        propagated = True
        cert.steps.append(f"{labels[i]} gives {j} = {print_expr(val)}")
        cert.steps.append(f"hence every derivative of {j} vanishes")
        new_eqs, new_labels = [], []
        for k, e in enumerate(eqs):
            if k == i:
                continue
            e2 = substitute(e, {j: val}, closed=True)
            if e2.is_zero():
                continue
            if e2.is_const():
                cert.steps.append(f"{labels[k]} becomes {print_expr(e2)} = 0")
                cert.contradiction = (labels[i], labels[k], e2)
                return PARAMETRIC_INCOMPATIBLE, cert
            new_eqs.append(e2)
            new_labels.append(labels[k])
        eqs, labels = new_eqs, new_labels
    if not eqs:
        cert.steps.append("all equations satisfied")
        return PARAMETRIC_COMPATIBLE, cert
    if len(eqs) == 1 and not propagated:
        cert.steps.append(f"single equation {print_expr(eqs[0])} = 0")
        return PARAMETRIC_COMPATIBLE, cert
    # a propagated constraint may still conflict with what is left
    cert.steps.append("undecided: " + ", ".join(f"{print_expr(e)} = 0" for e in eqs))
    return UNKNOWN, cert


def reduce_by_generator(eq: SourceEquation, g: Generator) -> ReducedSystem:
    return reduce_with_invariants(eq, invariants_for_generator(g))


def reduced_system_from_text(texts, params=(), functions=()) -> ReducedSystem:
    """A reduced system given directly as ODE strings in w(r)."""
    ctx = reduced_context(params=params, functions=functions)
    eqs = []
    for s in texts:
        lhs, rhs = parse_equation(s, ctx)
        eqs.append(lhs - rhs)
    status = CLEAN if len(eqs) == 1 else UNKNOWN
    return ReducedSystem(eqs[0] if len(eqs) == 1 else ZERO, eqs, (), {}, status)
