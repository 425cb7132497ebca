import pytest

from jetsym.atoms import Jet, Param, Var
from jetsym.determining import AnsatzSpec, classical_symmetries
from jetsym.equation import to_solved_form
from jetsym.expr import Expr, collect_by, substitute
from jetsym.models import model
from jetsym.nonclassical import (InvariantSurfaceCondition, NonclassicalFamily,
                                 bbm_governing_expression, governing_condition_eta0,
                                 governing_condition_eta1, nonclassical_solve_eta0,
                                 nonclassical_solve_eta1, phi_of_xt, reduce_on_surface,
                                 split_by_dependent)
from jetsym.report import parse_generator_literal as gen
from jetsym.verify import verify_solution

from helpers import BBM, CTX, KDV, p

EF = to_solved_form(BBM)


def test_surface_condition():
    g = gen("x, t, u")
    isc = InvariantSurfaceCondition(g)
    assert isc.condition == p("t*u_t + x*u_x - u")
    jet, value = isc.solved()
    assert jet == Jet("u", ("x", "t"), (0, 1)) and value == p("(u - x*u_x)/t")
    jet, value = InvariantSurfaceCondition(gen("2, 0, u")).solved()
    assert jet == Jet("u", ("x", "t"), (1, 0)) and value == p("u/2")
    assert InvariantSurfaceCondition(gen("0, 0, 1")).solved() is None


@pytest.mark.parametrize("xi, phi, zero", [
    ("c", "0", True),
    ("0", "0", True),
    ("x", "0", False),
    ("1", "u", False),
])
def test_governing_eta1(xi, phi, zero):
    assert governing_condition_eta1(EF, p(xi), p(phi)).is_zero() == zero


@pytest.mark.parametrize("xi, phi", [("1", "0"), ("c", "0"), ("x", "t*u"), ("u", "x + t"),
                                     ("xi(x, t, u)", "phi(x, t, u)")])
def test_two_routes_agree(xi, phi):
    """Direct coefficient formula and the generic route reduce to the same residual."""
    xi, phi = p(xi), p(phi)
    direct = bbm_governing_expression(xi, phi)
    g = gen("0, 1, 0")
    g = type(g)(xi, Expr.const(1), phi)
    from jetsym.nonclassical import surface_residual
    generic = governing_condition_eta1(EF, xi, phi)
    assert (surface_residual(EF, direct, g) - generic).is_zero()


def test_classical_rescaled_satisfy_eta1():
    for eq in (BBM, KDV):
        ef = to_solved_form(eq)
        for g in classical_symmetries(ef, 1):
            if not g.eta.is_zero():
                assert governing_condition_eta1(ef, g.xi / g.eta, g.phi / g.eta).is_zero()


def test_bbm_eta1_degree1():
    res = nonclassical_solve_eta1(EF)
    assert not res.unresolved
    assert res.constraint_set() == ["xi_x", "xi_t", "xi_u", "phi"]
    assert [str(c) for c in res.characteristics()] == ["u_t + u_x", "u_t"]
    assert res.contains(p("3"), p("0")) and res.contains(p("0"), p("0"))
    assert not res.contains(p("x"), p("0")) and not res.contains(p("1"), p("1"))


def test_bbm_eta1_degree0():
    res = nonclassical_solve_eta1(EF, AnsatzSpec(0))
    assert res.families
    for fam in res.families:
        assert fam.phi.is_zero()
        assert fam.xi.atoms() <= set(fam.free)


def test_transport_contains_characteristic_translation():
    ef = to_solved_form(model("transport"), Jet("u", ("x", "t"), (0, 1)))
    res = nonclassical_solve_eta1(ef)
    assert res.contains(p("-1"), p("0"))
    sigma = NonclassicalFamily(1, p("-1"), p("0"), ()).characteristic()
    assert sigma == p("u_t - u_x")


def test_kdv_eta1_family():
    res = nonclassical_solve_eta1(to_solved_form(KDV))
    assert res.contains(p("t"), p("1"))
    assert res.contains(p("5"), p("0"))


def test_bbm_eta0():
    res = nonclassical_solve_eta0(EF)
    assert [str(c) for c in res.characteristics()] == ["u_x"]
    assert res.constraint_set() == ["phi"]


def test_eta0_governing_expression_for_phi_of_xt():
    phi = phi_of_xt()
    out = governing_condition_eta0(EF, phi)
    expected = p("phi#0.1(x, t) + phi(x, t)^2 - phi#2.1(x, t) + phi#1.0(x, t) + u*phi#1.0(x, t)")
    assert (out - expected).is_zero()
    split = split_by_dependent(out)
    assert set(split) == {0, 1}
    assert split[1] == p("phi#1.0(x, t)")


@pytest.mark.parametrize("phi, zero", [("0", True), ("1/(t + c)", True), ("1", False),
                                       ("1/(c - 2*t)", False)])
def test_eta0_examples(phi, zero):
    assert governing_condition_eta0(EF, p(phi)).is_zero() == zero


@pytest.mark.parametrize("phi, ok", [("1/(t + c)", True), ("1/(c - 2*t)", False), ("1", False)])
def test_eta0_against_solution_oracle(phi, ok):
    """u_x = phi(t) integrates to u = x*phi + F(t); the x-part of the BBM
    residual must vanish exactly when phi passes the governing condition."""
    u = p(f"x*({phi}) + F(t)")
    residual = verify_solution(BBM.__class__(BBM.lhs, BBM.rhs, CTX), u).expr
    x_part = collect_by(residual.numerator(), [Var("x")])
    x_free = all(not m for m in x_part)
    assert x_free == ok
    assert governing_condition_eta0(EF, p(phi)).is_zero() == ok


def test_eta0_full_phi_is_unsplit():
    out = governing_condition_eta0(EF, p("phi(x, t, u)"))
    assert not out.is_zero()
    assert any(a[0] == 3 for a in out.atoms())


def test_surface_reduction_of_zero_generator():
    red = reduce_on_surface(EF, gen("0, 0, 0"))
    assert red.residual.is_zero()
