import pytest

from jetsym.atoms import Jet, Var
from jetsym.determining import (AnsatzSpec, classical_symmetries, determining_system,
                                generator_vectors, generators_rank, on_shell_residual,
                                solve_ansatz, span_contains, span_equal)
from jetsym.equation import SourceEquation, to_solved_form
from jetsym.errors import NotQuasiLinear
from jetsym.expr import Expr, collect_by
from jetsym.models import model
from jetsym.report import parse_generator_literal as gen

from helpers import BBM, KDV, p

U = Jet("u", ("x", "t"))


def test_solved_forms():
    ef = to_solved_form(BBM)
    assert ef.leading == U.raised("x", 2).raised("t")
    assert ef.solved_rhs == p("u_t + u_x + u*u_x")
    ef = to_solved_form(KDV)
    assert ef.leading == U.raised("x", 3)
    assert ef.solved_rhs == p("-(u_t + u_x + u*u_x)")
    ef = to_solved_form(model("transport"), U.raised("t"))
    assert ef.solved_rhs == p("u_x")


def test_solved_form_invariant():
    for eq in (BBM, KDV):
        ef = to_solved_form(eq)
        ratio = eq.delta / (Expr.atom(ef.leading) - ef.solved_rhs)
        assert ratio.is_const() and not ratio.is_zero()


def test_not_quasilinear():
    eq = SourceEquation.parse("u_t + u_x^2 = 0")
    with pytest.raises(NotQuasiLinear):
        to_solved_form(eq, U.raised("x"))
    with pytest.raises(NotQuasiLinear):
        to_solved_form(SourceEquation.parse("u_t^2 + u_x^2 = 0"))


def test_determining_equations_are_jet_free():
    sys = determining_system(to_solved_form(BBM))
    assert sys.equations
    for e in sys.equations:
        assert all(a.order == 0 for a in e.atoms(True) if isinstance(a, Jet))


def test_known_solutions_satisfy_systems():
    ef = to_solved_form(model("transport"), U.raised("t"))
    assert on_shell_residual(ef, gen("-1, 1, 0")).is_zero()
    ef = to_solved_form(BBM)
    assert on_shell_residual(ef, gen("1, 0, 0")).is_zero()
    assert on_shell_residual(ef, gen("0, 1, 0")).is_zero()


def test_kdv_algebra():
    basis = classical_symmetries(to_solved_form(KDV), 1)
    assert basis.dimension == 4
    expected = [gen("x + 2*t, 3*t, -2*u"), gen("0, 1, 0"), gen("t, 0, 1"), gen("1, 0, 0")]
    assert span_equal(basis, expected)
    assert not span_equal(basis, expected[1:])


def test_bbm_algebra():
    ef = to_solved_form(BBM)
    basis = classical_symmetries(ef, 1)
    assert basis.dimension == 3
    for g in ("1, 0, 0", "0, 1, 0", "0, t, -u - 1"):
        assert span_contains(basis, gen(g))
    assert not span_contains(basis, gen("t, 0, 1"))
    for g in basis:
        assert on_shell_residual(ef, g).is_zero()


def test_bbm_degree_two_adds_nothing():
    basis = classical_symmetries(to_solved_form(BBM), 2)
    assert basis.dimension == 3


@pytest.mark.parametrize("name", ["bbm", "kdv", "transport"])
def test_degree_zero_contains_translations(name):
    basis = classical_symmetries(to_solved_form(model(name)), 0)
    assert span_contains(basis, gen("1, 0, 0")) and span_contains(basis, gen("0, 1, 0"))


def test_basis_is_independent():
    basis = classical_symmetries(to_solved_form(KDV), 2)
    assert generators_rank(basis) == len(basis)


def test_ansatz_unknown_count():
    spec = AnsatzSpec(2)
    assert len(spec.unknowns()) == 3 * 10
    assert len(AnsatzSpec(1).unknowns()) == 3 * 4


def test_reconstruction_from_split():
    sys = determining_system(to_solved_form(KDV))
    ansatz = AnsatzSpec(1)
    comps = ansatz.components()
    from jetsym.determining import function_substitution
    from jetsym.expr import substitute
    base = ansatz.base_atoms()
    for e in sys.equations:
        e = substitute(e, function_substitution([e], comps, base))
        parts = collect_by(e, base)
        total = Expr.const(0)
        for m, c in parts.items():
            term = c
            for a, k in m:
                term = term * Expr.atom(a) ** k
            total = total + term
        assert total == e


def test_span_vectors_reject_non_numeric():
    with pytest.raises(ValueError):
        generator_vectors([gen("1/x, 0, 0")])
