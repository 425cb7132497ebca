"""Source equations and their solved (on-shell) form."""
from __future__ import annotations

from dataclasses import dataclass

from .atoms import JET, Jet
from .errors import NotQuasiLinear
from .expr import ZERO, Expr, partial_derive, substitute
from .parser import DEFAULT_CONTEXT, Context, parse_equation
from .printer import print_expr


@dataclass(frozen=True)
class SourceEquation:
    lhs: Expr
    rhs: Expr = ZERO
    context: Context = DEFAULT_CONTEXT
    name: str = ""

    def __post_init__(self):
        if not any(a.order > 0 for a in self.jets()):
            raise NotQuasiLinear(f"{self.delta} = 0 contains no derivatives")

    @classmethod
    def parse(cls, text: str, context: Context = DEFAULT_CONTEXT, name: str = "") -> SourceEquation:
        lhs, rhs = parse_equation(text, context)
        return cls(lhs, rhs, context, name)

    @property
    def delta(self) -> Expr:
        return self.lhs - self.rhs

    @property
    def dependent(self) -> str:
        return self.context.dependent

    @property
    def independent(self) -> tuple:
        return self.context.independent

    def jets(self) -> set:
        return {a for a in (self.lhs - self.rhs).atoms(True)
                if a[0] == JET and a.dep == self.context.dependent}

    def __str__(self) -> str:
        return f"{print_expr(self.lhs)} = {print_expr(self.rhs)}"


@dataclass(frozen=True)
class EvolutionForm:
    """The equation solved for one leading jet: leading = solved_rhs."""

    source: SourceEquation
    leading: Jet
    solved_rhs: Expr

    @property
    def delta(self) -> Expr:
        return self.source.delta

    @property
    def context(self) -> Context:
        return self.source.context

    def on_shell(self, e: Expr) -> Expr:
        """Eliminate the leading jet and all of its derivatives from e."""
        return substitute(e, {self.leading: self.solved_rhs}, closed=True)

    def __str__(self) -> str:
        return f"{self.leading} = {print_expr(self.solved_rhs)}"


def linear_coefficient(delta: Expr, leading: Jet):
    """Coefficient of ``leading`` if delta is linear in it with a jet-free
    nonzero coefficient, else None."""
    if leading not in delta.atoms() or delta.degree(leading) != 1:
        return None
    if any(a == leading for a, _ in delta.dmono):
        return None
    c = partial_derive(delta, leading)
    if c.is_zero() or any(a[0] == JET for a in c.atoms(True)):
        return None
    return c


def to_solved_form(eq: SourceEquation, leading: Jet | None = None) -> EvolutionForm:
    """Solve the equation for ``leading`` (or the best automatic choice).

    Automatic choice: the highest-order jet occurring linearly with a
    jet-free coefficient, ties broken by the most x-derivatives.
    """
    delta = eq.delta
    if leading is None:
        cands = [a for a in eq.jets() if a.order > 0 and linear_coefficient(delta, a) is not None]
        if not cands:
            raise NotQuasiLinear(f"no derivative of {eq.dependent} occurs linearly in {delta}")
        leading = max(cands, key=lambda a: (a.order, a.counts))
    c = linear_coefficient(delta, leading)
    if c is None:
        raise NotQuasiLinear(f"{leading} does not occur linearly with a jet-free coefficient")
    rhs = Expr.atom(leading) - delta / c
    return EvolutionForm(eq, leading, rhs)
