from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jetsym import kernels
from jetsym.atoms import Var

from conftest import BACKENDS

X, T, U = Var("x"), Var("t"), Var("u")


def mono(*pairs):
    return tuple(sorted(pairs))


monos = st.lists(st.tuples(st.sampled_from([X, T, U]), st.integers(1, 3)),
                 max_size=3, unique_by=lambda p: p[0]).map(lambda ps: tuple(sorted(ps)))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)
polys = st.dictionaries(monos, coeffs, max_size=5)
matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), max_size=5)
    .map(lambda rows: (rows, n)))


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_mono_mul_merges(kern):
    assert kern.mono_mul(mono((X, 1)), mono((X, 2), (T, 1))) == mono((T, 1), (X, 3))
    assert kern.mono_mul((), mono((U, 1))) == mono((U, 1))


def test_mono_div(kern):
    assert kern.mono_div(mono((X, 3), (T, 1)), mono((X, 1))) == mono((T, 1), (X, 2))
    assert kern.mono_div(mono((X, 1)), mono((T, 1))) is None


def test_poly_mul_and_divexact(kern):
    p = {mono((X, 1)): Fraction(1), mono((T, 1)): Fraction(-1)}
    q = {mono((X, 1)): Fraction(1), mono((T, 1)): Fraction(1)}
    prod = kern.poly_mul(p, q)
    assert prod == {mono((X, 2)): 1, mono((T, 2)): -1}
    assert kern.poly_divexact(prod, p) == q
    assert kern.poly_divexact(p, q) is None


def test_nullspace_simple(kern):
    # x + y = 0, z free
    basis = kern.nullspace([[1, 1, 0]], 3)
    assert len(basis) == 2
    for v in basis:
        assert v[0] + v[1] == 0


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_backends_agree_on_products(p, q):
    results = [b.poly_mul(p, q) for b in BACKENDS]
    assert all(r == results[0] for r in results)
    results = [b.poly_add(p, q, Fraction(-2)) for b in BACKENDS]
    assert all(r == results[0] for r in results)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_divexact_recovers_factor(p, q):
    if not q:
        return
    for b in BACKENDS:
        prod = b.poly_mul(p, q)
        if prod:
            assert b.poly_divexact(prod, q) == p


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_nullspace_vectors_annihilate(data):
    rows, n = data
    for b in BACKENDS:
        basis = b.nullspace([list(r) for r in rows], n)
        rank = len(b.echelon([list(r) for r in rows], n))
        assert len(basis) == n - rank
        for v in basis:
            for r in rows:
                assert sum(x * y for x, y in zip(r, v)) == 0
    outs = [b.nullspace([list(r) for r in rows], n) for b in BACKENDS]
    assert all(o == outs[0] for o in outs)


def test_pure_python_env_switch(monkeypatch):
    import importlib
    monkeypatch.setenv("JETSYM_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("JETSYM_PURE_PYTHON")
        importlib.reload(kernels)
