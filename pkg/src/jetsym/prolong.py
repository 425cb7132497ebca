"""Point generators, their Lie characteristic and prolongation."""
from __future__ import annotations

from dataclasses import dataclass

from .atoms import JET, Jet, Var
from .errors import NotPointGenerator
from .expr import ONE, ZERO, Expr, partial_derive, total_derive


@dataclass(frozen=True)
class Generator:
    """X = xi*d/dx + eta*d/dt + phi*d/du with components in (x, t, u)."""

    xi: Expr
    eta: Expr
    phi: Expr
    dependent: str = "u"
    independent: tuple = ("x", "t")

    def __post_init__(self):
        for name in ("xi", "eta", "phi"):
            e = Expr.coerce(getattr(self, name))
            object.__setattr__(self, name, e)
            for a in e.atoms(True):
                if a[0] == JET and a.order > 0:
                    raise NotPointGenerator(f"{name} = {e} contains the derivative {a}")

    @property
    def components(self) -> tuple:
        return (self.xi, self.eta, self.phi)

    @property
    def u(self) -> Jet:
        return Jet(self.dependent, self.independent)

    def jet(self, counts) -> Jet:
        return Jet(self.dependent, self.independent, counts)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: Generator) -> Generator:
        return Generator(self.xi + other.xi, self.eta + other.eta, self.phi + other.phi,
                         self.dependent, self.independent)

    def __sub__(self, other: Generator) -> Generator:
        return self + other.scaled(-1)

    def scaled(self, c) -> Generator:
        c = Expr.coerce(c)
        return Generator(self.xi * c, self.eta * c, self.phi * c, self.dependent, self.independent)

    def act(self, f: Expr) -> Expr:
        """Apply X as a first-order operator to a function of (x, t, u)."""
        x, t = (Var(n) for n in self.independent)
        return (self.xi * partial_derive(f, x) + self.eta * partial_derive(f, t)
                + self.phi * partial_derive(f, self.u))

    def bracket(self, other: Generator) -> Generator:
        """Commutator [X, Y] of two first-order operators."""
        comps = [self.act(b) - other.act(a) for a, b in zip(self.components, other.components)]
        return Generator(*comps, self.dependent, self.independent)

    def as_dict(self) -> dict:
        return {"xi": str(self.xi), "eta": str(self.eta), "phi": str(self.phi)}

    def __str__(self) -> str:
        return f"({self.xi}, {self.eta}, {self.phi})"


def characteristic(g: Generator) -> Expr:
    """Q = phi - xi*u_x - eta*u_t."""
    x, t = g.independent
    ux = Expr.atom(g.u.raised(x))
    ut = Expr.atom(g.u.raised(t))
    return g.phi - g.xi * ux - g.eta * ut


def _as_counts(g: Generator, J) -> tuple:
    if isinstance(J, Jet):
        return J.counts
    if isinstance(J, dict):
        return tuple(J.get(d, 0) for d in g.independent)
    if isinstance(J, str):
        return tuple(J.count(d) for d in g.independent)
    return tuple(J)


class Prolongation:
    """Caches D_J Q so coefficients of a generator can be requested repeatedly."""

    def __init__(self, g: Generator):
        self.g = g
        self._dq = {(0,) * len(g.independent): characteristic(g)}

    def total_q(self, counts: tuple) -> Expr:
        dq = self._dq
        if counts in dq:
            return dq[counts]
        # D_J is applied in the fixed direction order: lower the last direction first
        for i in reversed(range(len(counts))):
            if counts[i]:
                lower = counts[:i] + (counts[i] - 1,) + counts[i + 1:]
                r = total_derive(self.total_q(lower), self.g.independent[i])
                break
        dq[counts] = r
        return r

    def coefficient(self, J) -> Expr:
        g = self.g
        counts = _as_counts(g, J)
        if sum(counts) < 1:
            raise ValueError("prolongation coefficients need |J| >= 1")
        uj = g.jet(counts)
        x, t = g.independent
        return (self.total_q(counts) + g.xi * Expr.atom(uj.raised(x))
                + g.eta * Expr.atom(uj.raised(t)))


def prolong_coefficient(g: Generator, J) -> Expr:
    """phi^J = D_J Q + xi*u_{J,x} + eta*u_{J,t}."""
    return Prolongation(g).coefficient(J)


def expr_order(e: Expr, dependent: str = "u") -> int:
    return max((a.order for a in e.atoms(True) if a[0] == JET and a.dep == dependent), default=0)


def apply_prolonged(g: Generator, e: Expr, max_order: int | None = None) -> Expr:
    """pr X (e), summing phi^J * d e / d u_J over the jets present in e."""
    order = expr_order(e, g.dependent)
    if max_order is None:
        max_order = order + 1
    if max_order < order:
        raise ValueError(f"max_order {max_order} is below the order {order} of the expression")
    x, t = (Var(n) for n in g.independent)
    out = g.xi * partial_derive(e, x) + g.eta * partial_derive(e, t) + g.phi * partial_derive(e, g.u)
    pr = Prolongation(g)
    jets = sorted(a for a in e.atoms(True)
                  if a[0] == JET and a.dep == g.dependent and a.order >= 1)
    for a in jets:
        d = partial_derive(e, a)
        if d:
            out = out + pr.coefficient(a.counts) * d
    return out


def zero_generator(dependent: str = "u", independent: tuple = ("x", "t")) -> Generator:
    return Generator(ZERO, ZERO, ZERO, dependent, independent)


def translation(direction: str) -> Generator:
    comps = {"x": (ONE, ZERO, ZERO), "t": (ZERO, ONE, ZERO), "u": (ZERO, ZERO, ONE)}[direction]
    return Generator(*comps)
