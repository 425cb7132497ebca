"""Classical determining equations and their bounded-degree polynomial solution."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .atoms import FUNC, Param, Var
from .equation import EvolutionForm
from .expr import ONE, ZERO, Expr, collect_by, collect_jets, func, partial_derive, substitute
from .expr import split_poly
from .linalg import nullspace, rank, same_span
from .prolong import Generator, apply_prolonged

COMPONENTS = ("xi", "eta", "phi")


def coefficient_functions(ef: EvolutionForm) -> Generator:
    """Generator whose components are opaque functions xi, eta, phi of (x, t, u)."""
    ctx = ef.context
    args = [Expr.atom(Var(v)) for v in ctx.independent] + [Expr.atom(ctx.jet())]
    return Generator(*(func(n, args) for n in COMPONENTS), ctx.dependent, ctx.independent)


def primitive(e: Expr) -> Expr:
    """e divided by its rational content, sign fixed by the leading term."""
    if e.is_zero():
        return e
    coeff, _, _ = split_poly(e.num)
    return e * Expr.const(1 / coeff)


def unique_equations(eqs) -> list:
    seen = set()
    out = []
    for e in eqs:
        p = primitive(e)
        if p.is_zero() or p in seen:
            continue
        seen.add(p)
        out.append(p)
    return out


@dataclass(frozen=True)
class DeterminingSystem:
    unknowns: tuple
    equations: tuple
    form: EvolutionForm = field(compare=False, default=None)


def on_shell_residual(ef: EvolutionForm, g: Generator, max_order: int | None = None) -> Expr:
    """pr X(Delta) with the leading jet and its derivatives eliminated."""
    return ef.on_shell(apply_prolonged(g, ef.delta, max_order))


def determining_system(ef: EvolutionForm, max_order: int | None = None) -> DeterminingSystem:
    g = coefficient_functions(ef)
    residual = on_shell_residual(ef, g, max_order)
    eqs = unique_equations(collect_jets(residual).values())
    return DeterminingSystem(tuple(COMPONENTS), tuple(eqs), ef)


@dataclass(frozen=True)
class AnsatzSpec:
    """Polynomial ansatz of bounded total degree in (x, t, u) per component."""

    degree: int | dict = 1
    variables: tuple = ("x", "t")
    dependent: str = "u"
    prefix: str = "k"

    def degree_of(self, comp: str) -> int:
        if isinstance(self.degree, dict):
            return self.degree.get(comp, 0)
        return self.degree

    def base_atoms(self) -> list:
        from .atoms import Jet
        return [Var(v) for v in self.variables] + [Jet(self.dependent, self.variables)]

    def monomials(self, comp: str) -> list:
        atoms = self.base_atoms()
        out = []
        for d in range(self.degree_of(comp) + 1):
            for combo in combinations_with_replacement(atoms, d):
                e = ONE
                for a in combo:
                    e = e * Expr.atom(a)
                out.append(e)
        return out

    def unknowns(self) -> list:
        """(component, monomial, Param) triples, in a fixed order."""
        out = []
        for comp in COMPONENTS:
            for i, m in enumerate(self.monomials(comp)):
                out.append((comp, m, Param(f"{self.prefix}_{comp}_{i}")))
        return out

    def components(self) -> dict:
        comps = {c: ZERO for c in COMPONENTS}
        for comp, m, p in self.unknowns():
            comps[comp] = comps[comp] + Expr.atom(p) * m
        return comps


@dataclass(frozen=True)
class SymmetryBasis:
    generators: tuple

    @property
    def dimension(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]


def function_substitution(eqs, components: dict, base_atoms) -> dict:
    """Map each derivative atom of xi, eta, phi to the matching derivative of
    the concrete component expression."""
    rules = {}
    for e in eqs:
        for a in e.atoms():
            if a[0] == FUNC and a.name in components and a not in rules:
                r = components[a.name]
                for atom, n in zip(base_atoms, a.derivs):
                    for _ in range(n):
                        r = partial_derive(r, atom)
                rules[a] = r
    return rules


def linear_rows(eqs, unknowns, split_atoms) -> list:
    """Split equations over monomials in ``split_atoms`` and return the rows
    of the resulting linear homogeneous system in ``unknowns``."""
    index = {p: i for i, p in enumerate(unknowns)}
    rows = []
    for e in eqs:
        if not e.is_poly:
            e = e.numerator()
        for coeff in collect_by(e, split_atoms).values():
            row = [Fraction(0)] * len(unknowns)
            for m, c in coeff.num.items():
                if len(m) != 1 or m[0][1] != 1 or m[0][0] not in index:
                    raise ValueError(f"coefficient {coeff} is not linear homogeneous in the unknowns")
                row[index[m[0][0]]] += c
            if any(row):
                rows.append(row)
    return rows


def solve_ansatz(system: DeterminingSystem, ansatz: AnsatzSpec | None = None) -> SymmetryBasis:
    """Null space of the determining system under a polynomial ansatz."""
    if ansatz is None:
        ctx = system.form.context if system.form is not None else None
        ansatz = AnsatzSpec(1, ctx.independent, ctx.dependent) if ctx else AnsatzSpec()
    triples = ansatz.unknowns()
    params = [p for _, _, p in triples]
    comps = ansatz.components()
    base = ansatz.base_atoms()
    rules = function_substitution(system.equations, comps, base)
    eqs = [substitute(e, rules) for e in system.equations]
    rows = linear_rows(eqs, params, base)
    basis = []
    for v in nullspace(rows, len(params)):
        lead = next(x for x in v if x)
        if lead < 0:
            v = [-x for x in v]
        c = {k: ZERO for k in COMPONENTS}
        for (comp, m, _), coef in zip(triples, v):
            if coef:
                c[comp] = c[comp] + Expr.const(coef) * m
        basis.append(Generator(c["xi"], c["eta"], c["phi"], ansatz.dependent, ansatz.variables))
    return SymmetryBasis(tuple(basis))


def classical_symmetries(ef: EvolutionForm, degree: int = 1) -> SymmetryBasis:
    ctx = ef.context
    return solve_ansatz(determining_system(ef), AnsatzSpec(degree, ctx.independent, ctx.dependent))


# ---------------------------------------------------------------- span tools

def generator_vectors(gens, variables=("x", "t"), dependent="u"):
    """Coefficient vectors of polynomial generators over a shared monomial basis."""
    from .atoms import Jet
    atoms = [Var(v) for v in variables] + [Jet(dependent, variables)]
    keyed = []
    keys = set()
    for g in gens:
        entry = {}
        for comp, e in zip(COMPONENTS, g.components):
            if not e.is_poly:
                raise ValueError(f"{e} is not polynomial")
            for m, coeff in collect_by(e, atoms).items():
                if not coeff.is_const():
                    raise ValueError(f"{e} has non-numeric coefficients")
                entry[(comp, m)] = coeff.const_value()
                keys.add((comp, m))
        keyed.append(entry)
    order = sorted(keys, key=lambda k: (COMPONENTS.index(k[0]), k[1][::-1]))
    return [[entry.get(k, 0) for k in order] for entry in keyed], len(order)


def span_equal(a, b, variables=("x", "t"), dependent="u") -> bool:
    vecs, n = generator_vectors(list(a) + list(b), variables, dependent)
    return same_span(vecs[:len(a)], vecs[len(a):], n)


def span_contains(basis, g, variables=("x", "t"), dependent="u") -> bool:
    vecs, n = generator_vectors(list(basis) + [g], variables, dependent)
    return rank(vecs[:-1], n) == rank(vecs, n)


def generators_rank(gens, variables=("x", "t"), dependent="u") -> int:
    vecs, n = generator_vectors(gens, variables, dependent)
    return rank(vecs, n)
