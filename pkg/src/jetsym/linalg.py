"""Exact linear algebra on rational matrices via fraction-free elimination."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import kernels as K


def integer_row(row) -> list:
    """Scale a rational row to coprime integers (sign preserved)."""
    den = 1
    for v in row:
        v = Fraction(v)
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(Fraction(v) * den) for v in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g > 1 else ints


def nullspace(rows, ncols: int) -> list[list[int]]:
    """Integer basis of {v : A v = 0}, in order of the free columns."""
    return K.nullspace([integer_row(r) for r in rows], ncols)


def rank(rows, ncols: int) -> int:
    mat = [integer_row(r) for r in rows if any(r)]
    return len(K.echelon(mat, ncols))


def same_span(a, b, ncols: int) -> bool:
    """True when two lists of vectors span the same rational subspace."""
    ra = rank(a, ncols)
    return ra == rank(b, ncols) == rank(list(a) + list(b), ncols)


def in_span(v, basis, ncols: int) -> bool:
    return rank(list(basis), ncols) == rank(list(basis) + [v], ncols)
