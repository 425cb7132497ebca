import pytest

from jetsym.atoms import Jet, Var
from jetsym.determining import classical_symmetries
from jetsym.equation import SourceEquation, to_solved_form
from jetsym.errors import InvalidInvariants, UnsupportedGenerator
from jetsym.expr import ZERO, Expr, collect_by, substitute
from jetsym.reduction import (CLEAN, PARAMETRIC_COMPATIBLE, PARAMETRIC_INCOMPATIBLE, UNKNOWN,
                              ReducedSystem, check_invariance, compatibility_check,
                              invariants_for_generator, invariants_from_text, reduce_by_generator,
                              reduce_with_invariants, reduced_context)
from jetsym.report import parse_generator_literal as gen
from jetsym.verify import verify_reduced_solution, verify_solution

from acceptance_support import make_rng
from helpers import BBM, KDV, p, pw

W = Jet("w", ("r",))


def inv(r, u):
    return invariants_from_text(r, u, reduced_context())


@pytest.mark.parametrize("g, r, u", [
    ("1, 1, 0", "x - t", "w"),
    ("x, 0, u", "t", "x*w"),
    ("t, 0, 1", "t", "x/t + w"),
    ("1, 0, 0", "t", "w"),
    ("0, 1, 0", "x", "w"),
    ("0, t, -u - 1", "x", "-1 + w/t"),
])
def test_catalog(g, r, u):
    pair = invariants_for_generator(gen(g))
    assert pair.r == p(r)
    assert pair.u_expression == pw(u)
    assert check_invariance(gen(g), pair.r, pair.u_expression)


def test_catalog_rejects_unknown_generator():
    with pytest.raises(UnsupportedGenerator):
        invariants_for_generator(gen("x + 2*t, 3*t, -2*u"))
    with pytest.raises(UnsupportedGenerator):
        invariants_for_generator(gen("u, 0, 0"))


def test_invariance_check_detects_wrong_pair():
    assert not check_invariance(gen("1, 1, 0"), p("x + t"), pw("w"))
    assert not check_invariance(gen("t, 1, 1"), p("t^2 - 2*x"), pw("t*w"))


def test_clean_translation():
    sys = reduce_by_generator(BBM, gen("1, 1, 0"))
    assert sys.status == CLEAN
    assert sys.equations == [sys.expression]
    assert sys.expression in (pw("w*w_r + w_rrr"), pw("-w*w_r - w_rrr"))
    assert not sys.parametric


def test_parametric_compatible():
    sys = reduce_by_generator(BBM, gen("x, 0, u"))
    assert sys.status == PARAMETRIC_COMPATIBLE
    assert sys.expression == pw("x*(w^2 + w_r) + w")
    assert sys.parametric == ("x",)
    x = Var("x")
    assert sys.split == {(): pw("w"), ((x, 1),): pw("w^2 + w_r")}
    assert verify_reduced_solution(sys, pw("0")).is_zero


def test_parametric_incompatible():
    sys = reduce_with_invariants(BBM, inv("x - t^2", "w + 4*t^2"))
    assert sys.status == PARAMETRIC_INCOMPATIBLE
    t = Var("t")
    assert sys.split[((t, 2),)] == pw("4*w_r")
    assert sys.split[()] == pw("w_r + w*w_r")
    lin = sys.split[((t, 1),)]
    assert lin.is_poly and lin.degree(W.raised("r")) == 1 and lin.degree(W.raised("r", 3)) == 1
    assert substitute(lin, {W.raised("r"): ZERO, W.raised("r", 3): ZERO}) == Expr.const(8)
    cert = sys.certificate
    assert cert.steps[0] == "coefficient of t^2 gives w_r = 0"
    assert cert.steps[-1] == "coefficient of t becomes 8 = 0"
    assert cert.contradiction[2] == Expr.const(8)


def test_reconstruction_of_split():
    sys = reduce_with_invariants(BBM, inv("x - t^2", "w + 4*t^2"))
    total = ZERO
    for m, c in sys.split.items():
        term = c
        for a, k in m:
            term = term * Expr.atom(a) ** k
        total = total + term
    assert total == sys.expression


def test_compatibility_examples():
    eqs = [pw("w_r"), pw("w_rrr + w_r - 4"), pw("w*w_r + w_r")]
    status, cert = compatibility_check(ReducedSystem(ZERO, eqs, ("t",)))
    assert status == PARAMETRIC_INCOMPATIBLE
    assert cert.contradiction[2] == Expr.const(-4)
    status, _ = compatibility_check(ReducedSystem(ZERO, [pw("w"), pw("w^2 + w_r")], ("x",)))
    assert status == PARAMETRIC_COMPATIBLE
    status, _ = compatibility_check(ReducedSystem(ZERO, [ZERO], ("x",)))
    assert status == PARAMETRIC_COMPATIBLE


def test_compatibility_is_sound_when_undecided():
    # w_rrr = 0 leaves a first-order ODE that need not be consistent with it
    eqs = [pw("w_rrr"), pw("w_r - w^2 - 1")]
    status, _ = compatibility_check(ReducedSystem(ZERO, eqs, ("t",)))
    assert status == UNKNOWN


def test_galilean_bbm_reduction():
    sys = reduce_by_generator(BBM, gen("t, 0, 1"))
    assert sys.status == CLEAN
    assert sys.expression in (pw("1 + w + r*w_r"), pw("-1 - w - r*w_r"))
    assert verify_reduced_solution(sys, pw("-1 + k/r")).is_zero


def test_both_variables_survive_gives_unknown():
    sys = reduce_with_invariants(BBM, inv("x^2 + t^2", "w"))
    assert sys.parametric == ("x", "t") and sys.status == UNKNOWN
    assert len(sys.split) > 1


def test_invalid_invariants():
    with pytest.raises(InvalidInvariants):
        reduce_with_invariants(BBM, inv("1", "w"))
    with pytest.raises(InvalidInvariants):
        invariants_from_text("x - t", "r*w", reduced_context())


@pytest.mark.parametrize("eq", [BBM, KDV], ids=["bbm", "kdv"])
def test_classical_reductions_never_incompatible(eq):
    seen = 0
    for g in classical_symmetries(to_solved_form(eq), 1):
        try:
            sys = reduce_by_generator(eq, g)
        except UnsupportedGenerator:
            continue
        seen += 1
        assert sys.status != PARAMETRIC_INCOMPATIBLE
    assert seen >= 2


@pytest.mark.parametrize("seed", range(10))
def test_chain_rule_against_direct_substitution(seed):
    """u = w(x - t) with a concrete w: the reduced expression evaluated at w
    must be a constant multiple of the residual of the composite function."""
    rng = make_rng(seed)
    coeffs = [rng.randint(-3, 3) for _ in range(4)]
    w_text = " + ".join(f"({c})*r^{i}" for i, c in enumerate(coeffs))
    sys = reduce_by_generator(BBM, gen("1, 1, 0"))
    reduced = verify_reduced_solution(sys, pw(w_text)).expr
    u_text = w_text.replace("r", "(x - t)")
    direct = verify_solution(BBM, p(u_text)).expr
    reduced_xt = substitute(reduced, {Var("r"): p("x - t")})
    if reduced_xt.is_zero():
        assert direct.is_zero()
    else:
        assert (direct / reduced_xt).is_const()
