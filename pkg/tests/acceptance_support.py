"""Random generators and result bookkeeping shared by the acceptance suite."""
import random
from fractions import Fraction

from jetsym.atoms import Jet, Var
from jetsym.expr import Expr

RESULTS = {}

X, T = Var("x"), Var("t")
U = Jet("u", ("x", "t"))


def jets_up_to(order):
    return [U.raised("x", i).raised("t", j) if j else U.raised("x", i)
            for n in range(order + 1) for i in range(n + 1) for j in [n - i]
            if not (i == 0 and j == 0)] + [U]


def random_poly(rng, atoms, degree=3, terms=4, coeff=5):
    e = Expr.const(0)
    for _ in range(rng.randint(1, terms)):
        m = Expr.const(Fraction(rng.randint(-coeff, coeff), rng.randint(1, 3)))
        for _ in range(rng.randint(0, degree)):
            m = m * Expr.atom(rng.choice(atoms))
        e = e + m
    return e


def random_expr(rng, order=3, degree=3, rational=True):
    atoms = [X, T] + jets_up_to(order)
    e = random_poly(rng, atoms, degree)
    if rational and rng.random() < 0.3:
        d = random_poly(rng, [X, T, U], 1, 2) + Expr.const(rng.randint(1, 3))
        if not d.is_zero():
            e = e / d
    return e


def record(number, passed, label):
    RESULTS[number] = (passed, label)
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {label}"
    print(line)
    return line


def make_rng(seed):
    return random.Random(seed)
