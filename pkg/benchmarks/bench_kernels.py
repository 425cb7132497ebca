"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N] [--skip-e2e]

Micro benchmarks call both kernel modules directly on the same inputs.
End-to-end runs start a fresh interpreter per backend, with
JETSYM_PURE_PYTHON=1 forcing the fallback.
"""
import argparse
import importlib
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from jetsym import _pykernels
from jetsym.atoms import Jet, Var

ATOMS = [Var("x"), Var("t")] + [Jet("u", ("x", "t"), (i, j)) for i in range(3) for j in range(2)]

E2E = {
    "kdv symmetries, degree 2":
        "from jetsym.models import kdv; from jetsym.equation import to_solved_form;"
        "from jetsym.determining import classical_symmetries;"
        "classical_symmetries(to_solved_form(kdv()), 2)",
    "bbm non-classical eta=1, degree 1":
        "from jetsym.models import bbm; from jetsym.equation import to_solved_form;"
        "from jetsym.nonclassical import nonclassical_solve_eta1;"
        "nonclassical_solve_eta1(to_solved_form(bbm()))",
    "corpus":
        "from jetsym.corpus import run_corpus; run_corpus()",
}


def random_poly(rng, terms, degree):
    p = {}
    for _ in range(terms):
        m = {}
        for _ in range(rng.randint(0, degree)):
            a = rng.choice(ATOMS)
            m[a] = m.get(a, 0) + 1
        mono = tuple(sorted(m.items()))
        p[mono] = p.get(mono, 0) + Fraction(rng.randint(-9, 9) or 1, rng.choice((1, 1, 2, 3)))
    return {m: c for m, c in p.items() if c}


def micro_cases(rng):
    p, q = random_poly(rng, 30, 4), random_poly(rng, 30, 4)
    prod = _pykernels.poly_mul(p, q)
    rows = [[rng.randint(-5, 5) for _ in range(40)] for _ in range(30)]
    return {
        "poly_mul 30x30 terms": lambda k: k.poly_mul(p, q),
        "poly_divexact": lambda k: k.poly_divexact(prod, q),
        "poly_add": lambda k: k.poly_add(p, q, Fraction(-3, 2)),
        "nullspace 30x40": lambda k: k.nullspace([list(r) for r in rows], 40),
    }


def bench_micro(repeat):
    try:
        compiled = importlib.import_module("jetsym._kernels")
    except ImportError:
        print("compiled backend not available; build with: pip install -e . --no-build-isolation")
        return
    cases = micro_cases(random.Random(7))
    print(f"{'kernel':<26}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in cases.items():
        assert fn(compiled) == fn(_pykernels), name
        times = []
        for mod in (_pykernels, compiled):
            n = 20
            best = min(timeit.repeat(lambda: fn(mod), number=n, repeat=repeat)) / n
            times.append(best * 1e3)
        print(f"{name:<26}{times[0]:>12.3f}{times[1]:>12.3f}{times[0] / times[1]:>9.1f}x")


def run_e2e(code, pure):
    env = dict(os.environ)
    env.pop("JETSYM_PURE_PYTHON", None)
    if pure:
        env["JETSYM_PURE_PYTHON"] = "1"
    script = ("import time, jetsym.kernels as K; t = time.perf_counter(); "
              f"{code}; print(K.BACKEND, time.perf_counter() - t)")
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    return out[0], float(out[1])


def bench_e2e(repeat):
    print(f"\n{'workload':<36}{'python s':>10}{'cython s':>10}{'speedup':>10}")
    for name, code in E2E.items():
        py = min(run_e2e(code, True)[1] for _ in range(repeat))
        backend, cy = None, float("inf")
        for _ in range(repeat):
            backend, t = run_e2e(code, False)
            cy = min(cy, t)
        label = "cython s" if backend == "cython" else f"{backend} s"
        print(f"{name:<36}{py:>10.3f}{cy:>10.3f}{py / cy:>9.1f}x" + ("" if backend == "cython"
                                                                     else f"  ({label})"))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-e2e", action="store_true")
    args = ap.parse_args()
    bench_micro(args.repeat)
    if not args.skip_e2e:
        bench_e2e(args.repeat)


if __name__ == "__main__":
    main()
