import pytest
from hypothesis import given, settings, strategies as st

from jetsym.atoms import Param, Var
from jetsym.corpus import load_corpus
from jetsym.determining import on_shell_residual
from jetsym.equation import SourceEquation, to_solved_form
from jetsym.errors import InvalidCandidate, UnsupportedGenerator
from jetsym.expr import evaluate_at, exp
from jetsym.models import model
from jetsym.parser import parse_expr
from jetsym.reduction import reduce_by_generator, reduced_system_from_text
from jetsym.report import parse_generator_literal as gen
from jetsym.verify import (NONCLASSICAL, STRONG, WEAK_ONLY, classification_report,
                           classify_generator, find_witness, flow, flow_transform,
                           verify_reduced_solution, verify_solution)

from helpers import BBM, CTX, KDV, p, pw

BBM_CTX = SourceEquation(BBM.lhs, BBM.rhs, CTX, "bbm")
EF = to_solved_form(BBM)


@pytest.mark.parametrize("u, zero", [
    ("0", True),
    ("c", True),
    ("(x + k)/(t + c) - 1", True),
    ("(t*x + x^2 + c*x)/(t*(x + c))", False),
    ("x/(c - 2*t) + F(t)", False),
])
def test_verify_solution(u, zero):
    res = verify_solution(BBM_CTX, p(u))
    assert res.is_zero == zero
    assert (res.witness is None) == zero


def test_witness_is_a_genuine_nonzero_point():
    res = verify_solution(BBM_CTX, p("(t*x + x^2 + c*x)/(t*(x + c))"))
    assert evaluate_at(res.expr, res.witness) != 0
    assert res.as_dict()["is_zero"] is False and "witness" in res.as_dict()


def test_find_witness_none_for_zero():
    assert find_witness(p("0")) is None


def test_candidate_with_u_rejected():
    with pytest.raises(InvalidCandidate):
        verify_solution(BBM, p("u + x"))


def test_verify_reduced():
    ode = reduced_system_from_text(["r*w_r + w - 1"], params=["c", "k"])
    assert verify_reduced_solution(ode, pw("1 + k/r")).is_zero
    assert not verify_reduced_solution(ode, pw("r/(r + c)")).is_zero
    tw = reduce_by_generator(BBM, gen("1, 1, 0"))
    assert verify_reduced_solution(tw, pw("c")).is_zero


@pytest.mark.parametrize("g, expected", [
    ("1, 0, 0", STRONG),
    ("0, 1, 0", STRONG),
    ("1, 1, 0", STRONG),
    ("0, t, -u - 1", STRONG),
    ("x, 0, u", WEAK_ONLY),
    ("x, t, u", WEAK_ONLY),
    ("0, 0, 1", WEAK_ONLY),
    # u_x = 0 is compatible with the equation, so the surface test succeeds
    ("x, 0, 0", NONCLASSICAL),
])
def test_classify(g, expected):
    assert classify_generator(EF, gen(g)) == expected


def test_galilean_on_bbm_is_nonclassical():
    g = gen("t, 0, 1")
    assert not on_shell_residual(EF, g).is_zero()
    assert classify_generator(EF, g) == NONCLASSICAL
    rep = classification_report(EF, g)
    assert rep["class"] == NONCLASSICAL and rep["surface_residual"] == "0"


def test_galilean_on_kdv_is_strong():
    assert classify_generator(to_solved_form(KDV), gen("t, 0, 1")) == STRONG


def test_flow_of_scaling():
    x1, t1, u1 = flow(gen("0, t, -u - 1"), "epsilon")
    assert x1 == p("x")
    assert t1 == p("t") * exp(p("epsilon"))
    assert u1 == p("-1") + (p("u") + p("1")) * exp(-p("epsilon"))


@pytest.mark.parametrize("g, expected", [
    ("1, 0, 0", "f(x - epsilon, t)"),
    ("alpha, 1, 0", "f(x - alpha*epsilon, t - epsilon)"),
    ("0, t, -u - 1", "exp(-epsilon)*(1 + f(x, exp(-epsilon)*t)) - 1"),
])
def test_flow_transform(g, expected):
    out = flow_transform(p("f(x, t)"), gen(g, CTX), "epsilon")
    assert (out - p(expected)).is_zero()


def test_flow_of_zero_solution():
    assert flow_transform(p("0"), gen("1, 0, 0"), "epsilon").is_zero()


def test_flow_outside_catalog():
    with pytest.raises(UnsupportedGenerator):
        flow_transform(p("x"), gen("u, 0, 0"), "epsilon")
    with pytest.raises(UnsupportedGenerator):
        flow(gen("x^2, 0, 0"), "epsilon")


def _zero_corpus_solutions():
    out = []
    for entry in load_corpus():
        if entry["kind"] == "verify" and entry["expected_status"] == "pass":
            out.append(p(entry["u"]))
    return out


@pytest.mark.parametrize("g", ["1, 0, 0", "0, 1, 0", "0, t, -u - 1", "alpha, 1, 0"])
def test_strong_flows_preserve_solutions(g):
    g = gen(g, CTX)
    assert classify_generator(EF, g) == STRONG
    for u in _zero_corpus_solutions():
        assert verify_solution(BBM_CTX, flow_transform(u, g, "epsilon")).is_zero


candidates = st.sampled_from(["x*t", "x^2 - t", "1/(x + 1)", "(x + k)/(t + c) - 1", "c", "x/t",
                              "(t*x + x^2 + c*x)/(t*(x + c))", "F(t) + x", "t^3"])


@settings(max_examples=30, deadline=None)
@given(candidates)
def test_x_translation_preserves_verdict(u):
    u = p(u)
    moved = flow_transform(u, gen("1, 0, 0"), "epsilon")
    assert verify_solution(BBM_CTX, u).is_zero == verify_solution(BBM_CTX, moved).is_zero
