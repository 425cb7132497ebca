"""Exact polynomial fractions over jet-space atoms.

An :class:`Expr` is ``num / (dmono * prod(f**k))``: ``num`` is a sparse
polynomial with :class:`~fractions.Fraction` coefficients, ``dmono`` a
monomial and each ``f`` a primitive integer polynomial with positive leading
coefficient.  Arithmetic keeps that form reduced: monomial contents cancel,
and every denominator factor that divides the numerator exactly is removed.
Zero testing is exact because it only looks at the numerator.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping

from . import kernels as K
from .atoms import EXP, FUNC, JET, PARAM, VAR, Exp, Func, Jet, Param, Var
from .errors import (DegenerateExpression, NotPolynomial, PoleAtPoint,
                     SubstitutionCycle)

ONE_MONO = ()


def _lex(m):
    return m[::-1]


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


# ---------------------------------------------------------------- polynomials

class Poly:
    """Immutable sparse polynomial, used for denominator factors."""

    __slots__ = ("terms", "_key", "_hash")

    def __init__(self, terms: dict):
        self.terms = terms
        self._key = None
        self._hash = None

    @property
    def key(self):
        if self._key is None:
            self._key = tuple(sorted(self.terms.items(), key=lambda mc: _lex(mc[0])))
        return self._key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return f"Poly({poly_str(self.terms)})"


def poly_atoms(p: dict) -> set:
    out = set()
    for m in p:
        for a, _ in m:
            out.add(a)
    return out


def poly_degree(p: dict, atom) -> int:
    d = 0
    for m in p:
        for a, e in m:
            if a == atom and e > d:
                d = e
    return d


def poly_mono_gcd(p: dict) -> tuple:
    it = iter(p)
    g = dict(next(it))
    for m in it:
        if not g:
            break
        md = dict(m)
        for a in list(g):
            e = md.get(a)
            if e is None:
                del g[a]
            elif e < g[a]:
                g[a] = e
    return tuple(sorted(g.items()))


def mono_gcd(a: tuple, b: tuple) -> tuple:
    bd = dict(b)
    out = []
    for atom, e in a:
        f = bd.get(atom)
        if f:
            out.append((atom, min(e, f)))
    return tuple(out)


def mono_lcm(a: tuple, b: tuple) -> tuple:
    d = dict(a)
    for atom, e in b:
        if d.get(atom, 0) < e:
            d[atom] = e
    return tuple(sorted(d.items()))


def poly_content(p: dict) -> Fraction:
    """Positive rational content: gcd of numerators over lcm of denominators."""
    n = 0
    d = 1
    for c in p.values():
        n = gcd(n, c.numerator)
        d = d * c.denominator // gcd(d, c.denominator)
    return Fraction(n, d)


def leading(p: dict):
    m = max(p, key=_lex)
    return m, p[m]


def split_poly(p: dict):
    """p = coeff * mono * prim with prim primitive, integral, positive leading."""
    coeff = poly_content(p)
    mono = poly_mono_gcd(p)
    _, lc = leading(p)
    if lc < 0:
        coeff = -coeff
    inv = 1 / coeff
    prim = {}
    for m, c in p.items():
        prim[K.mono_div(m, mono) if mono else m] = c * inv
    return coeff, mono, prim


def poly_pow(p: dict, k: int) -> dict:
    out = {ONE_MONO: Fraction(1)}
    base = p
    while k:
        if k & 1:
            out = K.poly_mul(out, base)
        k >>= 1
        if k:
            base = K.poly_mul(base, base)
    return out


def _maybe_divides(d: dict, n: dict) -> bool:
    da = {}
    for m in d:
        for a, e in m:
            if e > da.get(a, 0):
                da[a] = e
    for a, e in da.items():
        if poly_degree(n, a) < e:
            return False
    return len(d) <= len(n)


def divexact(n: dict, d: dict):
    if not _maybe_divides(d, n):
        return None
    return K.poly_divexact(n, d)


def poly_str(p: dict) -> str:
    from .printer import format_poly
    return format_poly(p)


# ---------------------------------------------------------------- expressions

def _insert_factor(fac: dict, p: Poly, k: int) -> None:
    """Add p**k to a factor map, splitting factors that divide one another."""
    stack = [(p, k)]
    while stack:
        p, k = stack.pop()
        if p in fac:
            fac[p] += k
            continue
        for g in list(fac):
            q = divexact(p.terms, g.terms)
            if q is not None:
                stack.append((g, k))
                stack.append((Poly(q), k))
                break
            q = divexact(g.terms, p.terms)
            if q is not None:
                kg = fac.pop(g)
                stack.append((p, kg + k))
                stack.append((Poly(q), kg))
                break
        else:
            fac[p] = k


class Expr:
    """Canonical exact-rational polynomial fraction.  Immutable."""

    __slots__ = ("num", "dmono", "dfac", "_key", "_hash")

    def __init__(self, num: dict, dmono: tuple = ONE_MONO, dfac: tuple = ()):
        self.num = num
        self.dmono = dmono
        self.dfac = dfac
        self._key = None
        self._hash = None

    # construction ---------------------------------------------------------
    @staticmethod
    def const(c) -> Expr:
        c = _frac(c)
        return Expr({ONE_MONO: c}) if c else ZERO

    @staticmethod
    def atom(a) -> Expr:
        return Expr({((a, 1),): Fraction(1)})

    @staticmethod
    def poly(terms: dict) -> Expr:
        return Expr({m: _frac(c) for m, c in terms.items() if c})

    @staticmethod
    def coerce(x) -> Expr:
        if isinstance(x, Expr):
            return x
        if isinstance(x, (int, Fraction)):
            return Expr.const(x)
        if isinstance(x, tuple) and x and isinstance(x[0], int):
            return Expr.atom(x)
        raise TypeError(f"cannot convert {x!r} to Expr")

    @staticmethod
    def _reduced(num: dict, dmono: tuple, fac: dict) -> Expr:
        if not num:
            return ZERO
        if dmono:
            g = mono_gcd(poly_mono_gcd(num), dmono)
            if g:
                num = {K.mono_div(m, g): c for m, c in num.items()}
                dmono = K.mono_div(dmono, g)
        if fac:
            if len(fac) > 1:
                merged = {}
                for f, k in fac.items():
                    if k:
                        _insert_factor(merged, f, k)
                fac = merged
            out = []
            for f, k in fac.items():
                while k:
                    q = divexact(num, f.terms)
                    if q is None:
                        break
                    num = q
                    k -= 1
                if k:
                    out.append((f, k))
            out.sort(key=lambda fk: fk[0].key)
            dfac = tuple(out)
        else:
            dfac = ()
        return Expr(num, dmono, dfac)

    # inspection -----------------------------------------------------------
    @property
    def key(self):
        if self._key is None:
            self._key = (tuple(sorted(self.num.items(), key=lambda mc: _lex(mc[0]))),
                         self.dmono, tuple((f.key, k) for f, k in self.dfac))
        return self._key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Expr):
            try:
                other = Expr.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.dmono == other.dmono and self.dfac == other.dfac

    def __lt__(self, other):
        return self.key < other.key

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_poly(self) -> bool:
        return not self.dmono and not self.dfac

    def is_const(self) -> bool:
        return self.is_poly and (not self.num or (len(self.num) == 1 and ONE_MONO in self.num))

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} is not a constant")
        return self.num.get(ONE_MONO, Fraction(0))

    def as_atom(self):
        """The atom if this Expr is exactly one atom, else None."""
        if self.is_poly and len(self.num) == 1:
            (m, c), = self.num.items()
            if c == 1 and len(m) == 1 and m[0][1] == 1:
                return m[0][0]
        return None

    def numerator(self) -> Expr:
        return Expr(self.num)

    def denominator(self) -> Expr:
        d = {self.dmono: Fraction(1)}
        for f, k in self.dfac:
            d = K.poly_mul(d, poly_pow(f.terms, k))
        return Expr(d)

    def atoms(self, deep: bool = False) -> set:
        """Atoms occurring at top level; with ``deep`` also inside function
        and exponential arguments."""
        out = poly_atoms(self.num)
        out.update(a for a, _ in self.dmono)
        for f, _ in self.dfac:
            out |= poly_atoms(f.terms)
        if deep:
            for a in list(out):
                if a[0] == FUNC:
                    for arg in a.args:
                        out |= arg.atoms(True)
                elif a[0] == EXP:
                    out |= a.arg.atoms(True)
        return out

    def jets(self) -> set:
        return {a for a in self.atoms(True) if a[0] == JET}

    def free_of(self, atoms: Iterable) -> bool:
        return not (self.atoms(True) & set(atoms))

    def degree(self, atom) -> int:
        return poly_degree(self.num, atom)

    # arithmetic -----------------------------------------------------------
    def __neg__(self):
        return Expr({m: -c for m, c in self.num.items()}, self.dmono, self.dfac)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            other = Expr.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.is_poly and other.is_poly:
            return Expr(K.poly_add(self.num, other.num))
        if self.dmono == other.dmono and self.dfac == other.dfac:
            return Expr._reduced(K.poly_add(self.num, other.num), self.dmono, dict(self.dfac))
        fa = dict(self.dfac)
        fb = dict(other.dfac)
        lfac = dict(fa)
        for f, k in fb.items():
            if lfac.get(f, 0) < k:
                lfac[f] = k
        lmono = mono_lcm(self.dmono, other.dmono)
        na = _lift(self.num, self.dmono, fa, lmono, lfac)
        nb = _lift(other.num, other.dmono, fb, lmono, lfac)
        return Expr._reduced(K.poly_add(na, nb), lmono, lfac)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Expr.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Expr.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Expr.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if other.is_const():
            c = other.num[ONE_MONO]
            return Expr({m: v * c for m, v in self.num.items()}, self.dmono, self.dfac)
        if self.is_const():
            return other * self
        num = K.poly_mul(self.num, other.num)
        if self.is_poly and other.is_poly:
            return Expr(num)
        fac = dict(self.dfac)
        for f, k in other.dfac:
            _insert_factor(fac, f, k)
        return Expr._reduced(num, K.mono_mul(self.dmono, other.dmono), fac)

    __rmul__ = __mul__

    def inverse(self) -> Expr:
        if not self.num:
            raise DegenerateExpression("division by an expression that is identically zero")
        coeff, mono, prim = split_poly(self.num)
        num = {self.dmono: 1 / coeff}
        for f, k in self.dfac:
            num = K.poly_mul(num, poly_pow(f.terms, k))
        fac = {}
        if len(prim) > 1 or ONE_MONO not in prim:
            fac[Poly(prim)] = 1
        return Expr._reduced(num, mono, fac)

    def __truediv__(self, other):
        try:
            other = Expr.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_const():
            c = other.const_value()
            if not c:
                raise DegenerateExpression("division by zero")
            return self * Expr.const(1 / c)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Expr.coerce(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        if self.is_poly:
            return Expr(poly_pow(self.num, k))
        dmono = tuple((a, e * k) for a, e in self.dmono)
        dfac = tuple((f, e * k) for f, e in self.dfac)
        return Expr(poly_pow(self.num, k), dmono, dfac)

    def __str__(self):
        from .printer import print_expr
        return print_expr(self)

    def __repr__(self):
        return f"Expr({self})"


def _lift(num, dmono, fac, lmono, lfac):
    """Multiply num so that num/den is expressed over the common denominator."""
    extra = K.mono_div(lmono, dmono)
    out = dict(num) if not extra else K.poly_mul_term(num, extra, 1)
    for f, k in lfac.items():
        d = k - fac.get(f, 0)
        if d:
            out = K.poly_mul(out, poly_pow(f.terms, d))
    return out


ZERO = Expr({})
ONE = Expr({ONE_MONO: Fraction(1)})


# ---------------------------------------------------------------- builders

def const(c) -> Expr:
    return Expr.const(c)


def var(name: str) -> Expr:
    return Expr.atom(Var(name))


def param(name: str) -> Expr:
    return Expr.atom(Param(name))


def jet(dep: str, dirs, counts=None) -> Expr:
    return Expr.atom(Jet(dep, dirs, counts))


def func(name: str, args, derivs=None) -> Expr:
    return Expr.atom(Func(name, tuple(Expr.coerce(a) for a in args), derivs))


def exp(arg) -> Expr:
    """exp(arg) with integer multiples pulled out as powers."""
    arg = Expr.coerce(arg)
    if arg.is_zero():
        return ONE
    if not arg.is_poly:
        return Expr.atom(Exp(arg))
    coeff, _, _ = split_poly(arg.num)
    base = arg * Expr.const(1 / coeff)
    sign = 1 if coeff > 0 else -1
    mag = abs(coeff)
    if mag.denominator == 1:
        out = Expr.atom(Exp(base)) ** int(mag)
    else:
        out = Expr.atom(Exp(base * Expr.const(mag)))
    return out if sign > 0 else out.inverse()


def mono_expr(mono: tuple) -> Expr:
    return Expr({mono: Fraction(1)})


# ---------------------------------------------------------------- normalize

def normalize(tree) -> Expr:
    """Evaluate a raw expression tree into canonical form.

    Trees are nested tuples: ``("num", q)``, ``("atom", a)``, ``("neg", t)``,
    ``("add"|"sub"|"mul"|"div", t1, t2)``, ``("pow", t, n)`` or an Expr.
    """
    if isinstance(tree, Expr):
        return tree
    op = tree[0]
    if op == "num":
        return Expr.const(tree[1])
    if op == "atom":
        return Expr.atom(tree[1])
    if op == "neg":
        return -normalize(tree[1])
    if op == "pow":
        return normalize(tree[1]) ** tree[2]
    a = normalize(tree[1])
    b = normalize(tree[2])
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DegenerateExpression("denominator is identically zero")
        return a * _reciprocal(tree[2], b)
    raise ValueError(f"unknown node {op!r}")


def _reciprocal(tree, value: Expr | None = None) -> Expr:
    """1/tree, inverting products and powers factor by factor so a printed
    denominator such as (f)^2*(g) keeps its factorization."""
    if not isinstance(tree, Expr):
        op = tree[0]
        if op == "mul":
            return _reciprocal(tree[1]) * _reciprocal(tree[2])
        if op == "pow" and tree[2] > 0:
            return _reciprocal(tree[1]) ** tree[2]
        if op == "div":
            return normalize(tree[2]) * _reciprocal(tree[1])
    return (value if value is not None else normalize(tree)).inverse()


def equals_zero(e: Expr) -> bool:
    return e.is_zero()


# ---------------------------------------------------------------- derivations

def _poly_partial(p: dict, atom) -> dict:
    out = {}
    for m, c in p.items():
        for i, (a, e) in enumerate(m):
            if a == atom:
                if e == 1:
                    nm = m[:i] + m[i + 1:]
                else:
                    nm = m[:i] + ((a, e - 1),) + m[i + 1:]
                v = out.get(nm, 0) + c * e
                if v:
                    out[nm] = v
                else:
                    out.pop(nm, None)
                break
    return out


def derivation(e: Expr, datom: Callable, _memo: dict | None = None) -> Expr:
    """Apply the derivation fixed by ``datom`` on primitive atoms.

    ``datom(a)`` returns the image of a variable, jet or parameter as an Expr
    (or None for zero).  Function and exponential atoms follow the chain rule
    through their arguments.
    """
    memo = {} if _memo is None else _memo

    def d(a):
        if a in memo:
            return memo[a]
        if a[0] == FUNC:
            r = ZERO
            for i, arg in enumerate(a.args):
                da = derivation(arg, datom, memo)
                if da:
                    r = r + Expr.atom(a.differentiated(i)) * da
        elif a[0] == EXP:
            da = derivation(a.arg, datom, memo)
            r = Expr.atom(a) * da if da else ZERO
        else:
            r = datom(a)
            r = ZERO if r is None else Expr.coerce(r)
        memo[a] = r
        return r

    def dpoly(p):
        total = ZERO
        for a in poly_atoms(p):
            da = d(a)
            if da:
                total = total + Expr(_poly_partial(p, a)) * da
        return total

    if not e.num:
        return ZERO
    top = dpoly(e.num)
    if e.is_poly:
        return top
    # d(N/D) = (dN - N * dlog D) / D
    dlog = ZERO
    for a, k in e.dmono:
        da = d(a)
        if da:
            dlog = dlog + Expr.const(k) * da / Expr.atom(a)
    for f, k in e.dfac:
        df = dpoly(f.terms)
        if df:
            dlog = dlog + Expr.const(k) * df / Expr(f.terms)
    den = Expr({ONE_MONO: Fraction(1)}, e.dmono, e.dfac)
    return (top - Expr(e.num) * dlog) * den


def partial_derive(e: Expr, v) -> Expr:
    """Formal partial derivative in atom ``v``; other atoms are constants."""
    v = _atom_of(v)

    def datom(a):
        return ONE if a == v else None

    if v[0] in (FUNC, EXP):
        # differentiate with respect to an opaque composite atom
        def dpoly(p):
            return Expr(_poly_partial(p, v))
        if e.is_poly:
            return dpoly(e.num)
        return derivation(e, datom)
    return derivation(e, datom)


def total_derive(e: Expr, xi) -> Expr:
    """Total derivative D_xi: jets depending on xi are raised, others are constant."""
    name = xi if isinstance(xi, str) else _atom_of(xi).name

    def datom(a):
        if a[0] == VAR:
            return ONE if a.name == name else None
        if a[0] == JET:
            if name in a.dirs:
                return Expr.atom(a.raised(name))
            return None
        return None

    return derivation(e, datom)


def total_derive_multi(e: Expr, counts: Mapping[str, int], order: Iterable[str]) -> Expr:
    for d in order:
        for _ in range(counts.get(d, 0)):
            e = total_derive(e, d)
    return e


def _atom_of(v):
    if isinstance(v, Expr):
        a = v.as_atom()
        if a is None:
            raise ValueError(f"{v} is not a single atom")
        return a
    if isinstance(v, str):
        return Var(v)
    return v


# ---------------------------------------------------------------- substitution

_MAX_DEPTH = 200


def substitute(e: Expr, rules: Mapping, closed: bool = False) -> Expr:
    """Replace atoms by expressions.

    ``rules`` maps atoms (or single-atom Exprs) to replacements.  With
    ``closed`` every jet that is a derivative of a rule's jet is replaced by
    the matching total derivative of the right-hand side, to fixpoint.
    Function and exponential arguments are substituted too.
    """
    rules = {_atom_of(k): Expr.coerce(v) for k, v in rules.items()}
    jet_rules = [(a, r) for a, r in rules.items() if a[0] == JET] if closed else []
    for lhs, rhs in rules.items():
        for a in rhs.atoms(True):
            if a == lhs or (closed and lhs[0] == JET and a[0] == JET and a.covers(lhs)):
                raise SubstitutionCycle(f"{lhs} occurs in its own replacement")
    return _Substituter(rules, jet_rules).expr(e)


class _Substituter:
    def __init__(self, rules, jet_rules):
        self.rules = rules
        self.jet_rules = jet_rules
        self.memo = {}
        self.depth = 0

    def rep(self, a):
        """Replacement Expr for atom a, or None if unchanged."""
        memo = self.memo
        if a in memo:
            return memo[a]
        r = self.rules.get(a)
        if r is None:
            if a[0] == JET and self.jet_rules:
                r = self._closure(a)
            elif a[0] == FUNC:
                new = [self.expr(arg) for arg in a.args]
                if any(n != o for n, o in zip(new, a.args)):
                    r = Expr.atom(Func(a.name, new, a.derivs))
            elif a[0] == EXP:
                new = self.expr(a.arg)
                if new != a.arg:
                    r = exp(new)
        memo[a] = r
        return r

    def _closure(self, a):
        for lhs, rhs in self.jet_rules:
            if a != lhs and a.covers(lhs):
                break
        else:
            return None
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise SubstitutionCycle(f"substitution for {a} does not terminate")
        try:
            for d, ca, cl in zip(a.dirs, a.counts, lhs.counts):
                if ca > cl:
                    lower = a.raised(d, -1)
                    prev = self.rules[lower] if lower == lhs else self.rep(lower)
                    if prev is None:
                        prev = Expr.atom(lower)
                    return self.expr(total_derive(prev, d))
        finally:
            self.depth -= 1

    def poly(self, p: dict) -> Expr:
        groups = {}
        changed = {}
        for m, c in p.items():
            keep = []
            move = []
            for a, k in m:
                if a not in changed:
                    changed[a] = self.rep(a)
                (keep if changed[a] is None else move).append((a, k))
            g = groups.setdefault(tuple(move), {})
            g[tuple(keep)] = c
        total = ZERO
        for move, rest in groups.items():
            term = Expr(rest)
            for a, k in move:
                term = term * changed[a] ** k
            total = total + term
        return total

    def expr(self, e: Expr) -> Expr:
        if not e.num:
            return e
        out = self.poly(e.num)
        if e.is_poly:
            return out
        den = ONE
        for a, k in e.dmono:
            r = self.rep(a)
            den = den * (Expr.atom(a) if r is None else r) ** k
        for f, k in e.dfac:
            den = den * self.poly(f.terms) ** k
        if den.is_zero():
            raise DegenerateExpression("substitution makes a denominator vanish")
        return out / den


# ---------------------------------------------------------------- splitting

def collect_by(e: Expr, atoms: Iterable) -> dict:
    """Split e into {monomial in ``atoms``: coefficient}.

    Monomials are tuples of ``(atom, exponent)``; the constant monomial is
    ``()``.  Coefficients are free of the listed atoms.
    """
    atoms = {_atom_of(a) for a in atoms}
    if not e.num:
        return {}
    den_atoms = {a for a, _ in e.dmono}
    for f, _ in e.dfac:
        den_atoms |= poly_atoms(f.terms)
    for a in den_atoms:
        if a in atoms:
            raise NotPolynomial(f"{e} is rational in {a}")
    for a in e.atoms(True) - e.atoms():
        if a in atoms:
            raise NotPolynomial(f"{a} occurs inside a function argument")
    groups = {}
    for m, c in e.num.items():
        key = []
        rest = []
        for a, k in m:
            (key if a in atoms else rest).append((a, k))
        groups.setdefault(tuple(key), {})[tuple(rest)] = c
    out = {}
    for key in sorted(groups, key=_lex):
        out[key] = Expr(groups[key], e.dmono, e.dfac)
    return out


def collect_jets(e: Expr) -> dict:
    """collect_by over every jet of positive order occurring in e."""
    return collect_by(e, [a for a in e.atoms() if a[0] == JET and a.order > 0])


# ---------------------------------------------------------------- evaluation

def _eval_poly(p: dict, point: Mapping) -> Fraction:
    total = Fraction(0)
    for m, c in p.items():
        v = c
        for a, k in m:
            try:
                v *= point[a] ** k
            except KeyError:
                raise KeyError(f"no value for atom {a}") from None
        total += v
    return total


def evaluate_at(e: Expr, assignment: Mapping) -> Fraction:
    """Exact value of e at a rational point covering all of its atoms."""
    point = {_atom_of(k): _frac(v) for k, v in assignment.items()}
    num = _eval_poly(e.num, point)
    den = Fraction(1)
    for a, k in e.dmono:
        den *= _eval_poly({((a, 1),): Fraction(1)}, point) ** k
    for f, k in e.dfac:
        den *= _eval_poly(f.terms, point) ** k
    if not den:
        raise PoleAtPoint(f"denominator of {e} vanishes at the point")
    return num / den
