from jetsym.atoms import Param
from jetsym.expr import Expr, substitute
from jetsym.polysolve import solve_system

from helpers import p

A, B, C = Param("a"), Param("b"), Param("c")


def e(text):
    from jetsym.parser import DEFAULT_CONTEXT, parse_expr
    return parse_expr(text, DEFAULT_CONTEXT.with_symbols(["a", "b", "c"]))


def _check(eqs, sol):
    for fam in sol.families:
        for q in eqs:
            assert fam.apply(q).is_zero()


def test_linear_system():
    eqs = [e("a + b - 2"), e("a - b")]
    sol = solve_system(eqs, [A, B])
    assert len(sol.families) == 1
    fam = sol.families[0]
    assert fam.assignment == {A: Expr.const(1), B: Expr.const(1)} and not fam.free
    _check(eqs, sol)


def test_underdetermined_keeps_free_unknowns():
    sol = solve_system([e("a - 2*b")], [A, B])
    (fam,) = sol.families
    assert len(fam.free) == 1
    _check([e("a - 2*b")], sol)


def test_product_splits_into_cases():
    eqs = [e("a*b"), e("a + b - 1")]
    sol = solve_system(eqs, [A, B])
    values = sorted((str(f.apply(e("a"))), str(f.apply(e("b")))) for f in sol.families)
    assert values == [("0", "1"), ("1", "0")]
    _check(eqs, sol)


def test_nonzero_assumption_prunes():
    sol = solve_system([e("a*b")], [A, B], nonzero=[e("a")])
    assert all(f.apply(e("b")).is_zero() for f in sol.families)
    assert all(not f.apply(e("a")).is_zero() or A in f.free for f in sol.families)


def test_inconsistent():
    sol = solve_system([e("a - 1"), e("a - 2")], [A])
    assert not sol.families and not sol.unresolved


def test_symbolic_coefficient_case_split():
    # c*a = 1 forces c != 0; c = 0 branch is inconsistent
    eqs = [e("c*a - 1")]
    sol = solve_system(eqs, [A, C])
    assert sol.families
    _check(eqs, sol)
    for fam in sol.families:
        assert fam.nonzero


def test_specialize():
    sol = solve_system([e("a - 2*b")], [A, B])
    (fam,) = sol.families
    free = fam.free[0]
    full = fam.specialize({free: 3})
    assert substitute(e("a - 2*b"), full).is_zero()
