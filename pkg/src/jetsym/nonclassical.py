"""Non-classical symmetries: invariance under the invariant surface condition.

Two canonical branches are handled.  With eta = 1 the surface condition is
u_t = phi - xi*u_x; with eta = 0 and xi = 1 it is u_x = phi.  In both, the
prolonged generator applied to the equation is reduced modulo the surface
condition (closed under total derivatives) and modulo the equation restricted
to that surface, solved for its highest remaining jet.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .atoms import JET, Jet, Param, Var
from .determining import AnsatzSpec, primitive, unique_equations
from .equation import EvolutionForm
from .expr import (ONE, ZERO, Expr, collect_by, func, partial_derive, substitute,
                   total_derive)
from .polysolve import Family, solve_system
from .printer import print_expr
from .prolong import Generator, apply_prolonged


@dataclass(frozen=True)
class InvariantSurfaceCondition:
    generator: Generator

    @property
    def condition(self) -> Expr:
        g = self.generator
        x, t = g.independent
        return (g.eta * Expr.atom(g.u.raised(t)) + g.xi * Expr.atom(g.u.raised(x)) - g.phi)

    def solved(self):
        """(jet, value) with the ISC solved for u_t when eta != 0, else u_x."""
        g = self.generator
        x, t = g.independent
        ux, ut = g.u.raised(x), g.u.raised(t)
        if not g.eta.is_zero():
            return ut, (g.phi - g.xi * Expr.atom(ux)) / g.eta
        if not g.xi.is_zero():
            return ux, g.phi / g.xi
        return None


def _leading_jet(e: Expr, dependent: str):
    jets = [a for a in e.atoms(True) if a[0] == JET and a.dep == dependent and a.order > 0]
    if not jets:
        return None
    return max(jets, key=lambda a: (a.order, a.counts))


@dataclass(frozen=True)
class Reduction:
    """Intermediate data of the governing computation for one generator."""

    prolonged: Expr        # pr X(Delta) on the surface condition
    restricted: Expr       # Delta on the surface condition
    leading: Jet | None    # jet the restricted equation is solved for
    coefficient: Expr      # its coefficient in the restricted equation
    residual: Expr


def reduce_on_surface(ef: EvolutionForm, g: Generator) -> Reduction:
    isc = InvariantSurfaceCondition(g).solved()
    pr = apply_prolonged(g, ef.delta)
    if isc is None:
        return Reduction(pr, ef.delta, None, ONE, pr)
    rule = {isc[0]: isc[1]}
    r1 = substitute(pr, rule, closed=True)
    d1 = substitute(ef.delta, rule, closed=True)
    lead = _leading_jet(d1, g.dependent)
    if lead is None or d1.degree(lead) != 1 or any(a == lead for a, _ in d1.dmono):
        return Reduction(r1, d1, None, ONE, r1)
    a = partial_derive(d1, lead)
    if any(x[0] == JET and x.order > 0 for x in a.atoms(True)):
        return Reduction(r1, d1, None, ONE, r1)
    b = d1 - a * Expr.atom(lead)
    r2 = substitute(r1, {lead: -b / a}, closed=True)
    return Reduction(r1, d1, lead, a, r2)


def governing_condition_eta1(ef: EvolutionForm, xi, phi) -> Expr:
    """Residual whose jet-monomial coefficients are the eta = 1 determining system."""
    ctx = ef.context
    g = Generator(Expr.coerce(xi), ONE, Expr.coerce(phi), ctx.dependent, ctx.independent)
    return reduce_on_surface(ef, g).residual


def bbm_governing_expression(xi, phi, dependent="u", independent=("x", "t")) -> Expr:
    """phi^t - phi^xxt + (u+1)*phi^x + phi*u_x built from the coefficient rules
    phi^J = D_J(phi - xi*u_x) + xi*u_{J,x}; only meaningful for eta = 1."""
    xi, phi = Expr.coerce(xi), Expr.coerce(phi)
    x, t = independent
    u = Jet(dependent, independent)
    ux = Expr.atom(u.raised(x))
    g = phi - xi * ux

    def coef(counts):
        e = g
        for d, n in zip(independent, counts):
            for _ in range(n):
                e = total_derive(e, d)
        return e + xi * Expr.atom(Jet(dependent, independent, counts).raised(x))

    return coef((0, 1)) - coef((2, 1)) + (Expr.atom(u) + 1) * coef((1, 0)) + phi * ux


def surface_residual(ef: EvolutionForm, e: Expr, g: Generator) -> Expr:
    """Reduce an arbitrary expression the same way the governing residual is."""
    isc = InvariantSurfaceCondition(g).solved()
    red = reduce_on_surface(ef, g)
    out = substitute(e, {isc[0]: isc[1]}, closed=True)
    if red.leading is not None:
        b = red.restricted - red.coefficient * Expr.atom(red.leading)
        out = substitute(out, {red.leading: -b / red.coefficient}, closed=True)
    return out


# ---------------------------------------------------------------- solving

@dataclass
class NonclassicalFamily:
    eta: int
    xi: Expr
    phi: Expr
    free: tuple
    nonzero: tuple = ()

    def characteristic(self, dependent="u", independent=("x", "t")) -> Expr:
        """sigma = eta*u_t + xi*u_x - phi (the surface condition)."""
        u = Jet(dependent, independent)
        x, t = independent
        return (Expr.const(self.eta) * Expr.atom(u.raised(t)) + self.xi * Expr.atom(u.raised(x))
                - self.phi)

    def constraints(self, variables=("x", "t"), dependent="u") -> list:
        """Derivative constraints satisfied identically, e.g. ['xi_x', 'phi']."""
        atoms = [Var(v) for v in variables] + [Jet(dependent, variables)]
        names = list(variables) + [dependent]
        out = []
        comps = [("phi", self.phi)] if self.eta == 0 else [("xi", self.xi), ("phi", self.phi)]
        for cname, e in comps:
            if e.is_zero():
                out.append(cname)
                continue
            for a, n in zip(atoms, names):
                if partial_derive(e, a).is_zero():
                    out.append(f"{cname}_{n}")
        return out

    def specializations(self):
        """Members with one free parameter set to 1 and the rest to 0, plus the
        all-zero member when no nonzero condition excludes it."""
        subs = []
        if not self.free:
            subs.append({})
        else:
            zero = {p: ZERO for p in self.free}
            if all(not substitute(n, zero).is_zero() for n in self.nonzero):
                subs.append(zero)
            for p in self.free:
                s = dict(zero)
                s[p] = ONE
                if all(not substitute(n, s).is_zero() for n in self.nonzero):
                    subs.append(s)
        for s in subs:
            yield (substitute(self.xi, s), substitute(self.phi, s))


@dataclass
class NonclassicalResult:
    eta: int
    families: list = field(default_factory=list)
    unresolved: list = field(default_factory=list)

    def constraint_set(self, variables=("x", "t"), dependent="u") -> list:
        """Constraints holding for every family; a vanishing component
        implies all of its derivatives vanish."""
        names = list(variables) + [dependent]

        def implied(fam):
            out = set(fam.constraints(variables, dependent))
            for c in list(out):
                if "_" not in c:
                    out.update(f"{c}_{n}" for n in names)
            return out

        if not self.families:
            return []
        common = set.intersection(*(implied(f) for f in self.families))
        common = {c for c in common if c.split("_")[0] not in common or "_" not in c}
        order = [f"{c}{s}" for c in ("xi", "phi") for s in [""] + [f"_{n}" for n in names]]
        return [c for c in order if c in common]

    def characteristics(self, dependent="u", independent=("x", "t")) -> list:
        seen = []
        for fam in self.families:
            for xi, phi in fam.specializations():
                sigma = NonclassicalFamily(self.eta, xi, phi, ()).characteristic(dependent, independent)
                sigma = primitive(sigma)
                if sigma not in seen:
                    seen.append(sigma)
        return seen

    def contains(self, xi, phi, variables=("x", "t"), dependent="u") -> bool:
        """Whether some family has a member equal to (xi, phi)."""
        xi, phi = Expr.coerce(xi), Expr.coerce(phi)
        base = [Var(v) for v in variables] + [Jet(dependent, variables)]
        for fam in self.families:
            eqs = _coefficients(fam.xi - xi, base) + _coefficients(fam.phi - phi, base)
            if not fam.free:
                if all(e.is_zero() for e in eqs):
                    return True
                continue
            if solve_system(eqs, list(fam.free), fam.nonzero).families:
                return True
        return False


def _split_atoms(e: Expr, base):
    jets = [a for a in e.atoms() if a[0] == JET and a.order > 0]
    return jets + [a for a in base if a in e.atoms()]


def _coefficients(e: Expr, base) -> list:
    e = e.numerator() if not e.is_poly else e
    return list(collect_by(e, _split_atoms(e, base)).values())


def _has_unknowns(e: Expr, unknowns) -> bool:
    return bool(e.atoms(True) & set(unknowns))


def _solve_branches(ef, xi, phi, eta, unknowns, base, nonzero=(), depth=0):
    """Generator of (Family, unresolved) over the case tree on leading coefficients."""
    ctx = ef.context
    g = Generator(xi, Expr.const(eta), phi, ctx.dependent, ctx.independent)
    red = reduce_on_surface(ef, g)
    if red.leading is None:
        eqs = _coefficients(red.restricted, base) + _coefficients(red.residual, base)
        sol = solve_system(unique_equations(eqs), unknowns, nonzero)
        yield sol.families, sol.unresolved
        return
    a = red.coefficient
    # leading coefficient not identically zero
    eqs = unique_equations(_coefficients(red.residual, base))
    sol = solve_system(eqs, unknowns, nonzero)
    kept = [f for f in sol.families if not f.apply(a).is_zero()]
    yield kept, sol.unresolved
    if not _has_unknowns(a, unknowns) or depth > 4:
        return
    # leading coefficient identically zero
    zero = solve_system(unique_equations(_coefficients(a, base)), unknowns, nonzero)
    yield [], zero.unresolved
    for fam in zero.families:
        sub_xi, sub_phi = fam.apply(xi), fam.apply(phi)
        for fams, unres in _solve_branches(ef, sub_xi, sub_phi, eta, fam.free, base,
                                           fam.nonzero, depth + 1):
            composed = []
            for f in fams:
                assign = {p: f.apply(v) for p, v in fam.assignment.items()}
                assign.update(f.assignment)
                composed.append(Family(assign, f.free, f.nonzero))
            yield composed, unres


def _ansatz_unknowns(ansatz: AnsatzSpec, comps):
    triples = [tr for tr in ansatz.unknowns() if tr[0] in comps]
    expr = {c: ZERO for c in comps}
    for comp, m, p in triples:
        expr[comp] = expr[comp] + Expr.atom(p) * m
    return [p for _, _, p in triples], expr


def nonclassical_solve_eta1(ef: EvolutionForm, ansatz: AnsatzSpec | None = None) -> NonclassicalResult:
    """Polynomial-ansatz solutions (xi, phi) of the eta = 1 determining system."""
    ctx = ef.context
    ansatz = ansatz or AnsatzSpec(1, ctx.independent, ctx.dependent)
    unknowns, comps = _ansatz_unknowns(ansatz, ("xi", "phi"))
    base = ansatz.base_atoms()
    result = NonclassicalResult(1)
    for fams, unres in _solve_branches(ef, comps["xi"], comps["phi"], 1, unknowns, base):
        result.unresolved.extend(unres)
        for f in fams:
            fam = NonclassicalFamily(1, f.apply(comps["xi"]), f.apply(comps["phi"]),
                                     f.free, f.nonzero)
            if governing_condition_eta1(ef, fam.xi, fam.phi).is_zero():
                result.families.append(fam)
    result.families = _merge_families(result.families)
    return result


def _merge_families(fams):
    out = []
    seen = set()
    for f in fams:
        k = (f.xi, f.phi)
        if k not in seen:
            seen.add(k)
            out.append(f)
    # a family that is a special case of another (fewer free unknowns) is dropped
    return [f for f in out if not any(o is not f and _subsumes(o, f) for o in out)]


def _subsumes(big: NonclassicalFamily, small: NonclassicalFamily) -> bool:
    if len(big.free) <= len(small.free):
        return False
    from .polysolve import solve_system as _solve
    eqs = [big.xi - small.xi, big.phi - small.phi]
    eqs = [e.numerator() for e in eqs]
    base = [a for e in eqs for a in e.atoms() if a not in big.free and a not in small.free]
    coeffs = []
    for e in eqs:
        coeffs += list(collect_by(e, base).values()) if not e.is_zero() else []
    sol = _solve(coeffs, big.free)
    return bool(sol.families) and not sol.unresolved and all(
        not any(substitute(n, f.assignment).is_zero() for n in big.nonzero) for f in sol.families)


# ---------------------------------------------------------------- eta = 0

def governing_condition_eta0(ef: EvolutionForm, phi, generic: bool = False) -> Expr:
    """Case eta = 0, xi = 1: compatibility of u_x = phi with the solved u_t = A.

    Returns phi_t + A*phi_u - A_x - A_u*phi, the x-derivative of A taken
    along the surface.  ``A`` comes from the equation restricted to u_x = phi.
    """
    ctx = ef.context
    phi = Expr.coerce(phi)
    g = Generator(ONE, ZERO, phi, ctx.dependent, ctx.independent)
    red = reduce_on_surface(ef, g)
    x, t = ctx.independent
    u = ctx.jet()
    ut = u.raised(t)
    if red.leading != ut:
        if generic:
            return red.residual
        raise ValueError(f"restricted equation {red.restricted} cannot be solved for {ut}")
    b = red.restricted - red.coefficient * Expr.atom(ut)
    A = -b / red.coefficient
    X, T = Var(x), Var(t)
    return (partial_derive(phi, T) + A * partial_derive(phi, u)
            - partial_derive(A, X) - partial_derive(A, u) * phi)


def phi_of_xt(name: str = "phi", variables=("x", "t")) -> Expr:
    return func(name, [Expr.atom(Var(v)) for v in variables])


def split_by_dependent(e: Expr, dependent: str = "u", variables=("x", "t")) -> dict:
    """Split an expression by powers of the dependent variable."""
    u = Jet(dependent, variables)
    e = e.numerator() if not e.is_poly else e
    return {(m[0][1] if m else 0): c for m, c in collect_by(e, [u]).items()}


def nonclassical_solve_eta0(ef: EvolutionForm, degree: int = 1, restrict_xt: bool = True) -> NonclassicalResult:
    """Polynomial solutions phi of the eta = 0 branch (phi = phi(x, t) by default)."""
    ctx = ef.context
    ansatz = AnsatzSpec(degree, ctx.independent, ctx.dependent, prefix="k")
    if restrict_xt:
        atoms = [Var(v) for v in ctx.independent]
        mons = []
        for d in range(degree + 1):
            for combo in combinations_with_replacement(atoms, d):
                m = ONE
                for a in combo:
                    m = m * Expr.atom(a)
                mons.append(m)
        unknowns = [Param(f"k_phi_{i}") for i in range(len(mons))]
        phi = ZERO
        for p, m in zip(unknowns, mons):
            phi = phi + Expr.atom(p) * m
    else:
        unknowns, comps = _ansatz_unknowns(ansatz, ("phi",))
        phi = comps["phi"]
    base = ansatz.base_atoms()
    result = NonclassicalResult(0)
    for fams, unres in _solve_branches(ef, ONE, phi, 0, unknowns, base):
        result.unresolved.extend(unres)
        for f in fams:
            fam = NonclassicalFamily(0, ONE, f.apply(phi), f.free, f.nonzero)
            g = Generator(ONE, ZERO, fam.phi, ctx.dependent, ctx.independent)
            if reduce_on_surface(ef, g).residual.is_zero():
                result.families.append(fam)
    result.families = _merge_families(result.families)
    return result


def describe_family(fam: NonclassicalFamily) -> dict:
    return {
        "xi": print_expr(fam.xi),
        "eta": str(fam.eta),
        "phi": print_expr(fam.phi),
        "free": [str(p) for p in fam.free],
        "nonzero": [print_expr(n) for n in fam.nonzero],
        "constraints": fam.constraints(),
        "characteristic": print_expr(fam.characteristic()),
    }
