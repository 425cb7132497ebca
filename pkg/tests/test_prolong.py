import pytest
from hypothesis import given, settings, strategies as st

from jetsym.equation import to_solved_form
from jetsym.errors import NotPointGenerator
from jetsym.expr import Expr
from jetsym.prolong import (Generator, apply_prolonged, characteristic, prolong_coefficient,
                            translation, zero_generator)
from jetsym.report import parse_generator_literal

from acceptance_support import T, U, X, make_rng, random_poly
from helpers import BBM, KDV, p

X3 = parse_generator_literal("t, 0, 1")


def test_characteristic():
    assert characteristic(parse_generator_literal("1, 1, 0")) == p("-u_x - u_t")
    assert characteristic(zero_generator()).is_zero()
    assert characteristic(X3) == p("1 - t*u_x")


@pytest.mark.parametrize("J, expected", [("x", "0"), ("t", "-u_x"), ((1, 0), "0"), ({"t": 1}, "-u_x")])
def test_x3_coefficients(J, expected):
    assert prolong_coefficient(X3, J) == p(expected)


@pytest.mark.parametrize("J", ["x", "t", "xxt", "tttt", "xxxx"])
def test_zero_generator(J):
    assert prolong_coefficient(zero_generator(), J).is_zero()


def test_order_zero_rejected():
    with pytest.raises(ValueError):
        prolong_coefficient(X3, (0, 0))


def test_direction_order_irrelevant():
    g = parse_generator_literal("x*t, u^2, x*u")
    assert prolong_coefficient(g, "xxt") == prolong_coefficient(g, "txx")


def test_x3_is_kdv_symmetry():
    ef = to_solved_form(KDV)
    assert ef.on_shell(apply_prolonged(X3, KDV.delta, 3)).is_zero()


def test_x_translation_of_bbm():
    assert apply_prolonged(translation("x"), BBM.delta).is_zero()


def test_scaling_of_bbm_is_multiple_of_delta():
    g = parse_generator_literal("0, t, -u - 1")
    assert apply_prolonged(g, BBM.delta) == Expr.const(-2) * BBM.delta


def test_max_order_below_equation_order():
    with pytest.raises(ValueError):
        apply_prolonged(X3, BBM.delta, 2)


def test_generator_rejects_jets():
    with pytest.raises(NotPointGenerator):
        Generator(p("u_t"), p("0"), p("0"))


def test_bracket_closure_on_kdv_basis():
    x2, x4 = translation("t"), translation("x")
    assert x2.bracket(X3) == x4


def _random_gen(rng):
    return Generator(*(random_poly(rng, [X, T, U], 2, 3) for _ in range(3)))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(-3, 3), st.integers(-3, 3))
def test_linearity_in_generator(seed, a, b):
    rng = make_rng(seed)
    g1, g2 = _random_gen(rng), _random_gen(rng)
    combo = g1.scaled(a) + g2.scaled(b)
    for J in ("x", "t", "xt", "xxt"):
        lhs = prolong_coefficient(combo, J)
        rhs = Expr.const(a) * prolong_coefficient(g1, J) + Expr.const(b) * prolong_coefficient(g2, J)
        assert (lhs - rhs).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_translation_invariance(seed):
    rng = make_rng(seed)
    from acceptance_support import jets_up_to
    e = random_poly(rng, [T] + jets_up_to(3), 3, 4)
    assert apply_prolonged(translation("x"), e).is_zero()
