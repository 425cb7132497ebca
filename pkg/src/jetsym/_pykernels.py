"""Pure-Python hot kernels: sparse polynomial arithmetic and integer elimination.

Polynomials are dicts mapping a monomial to a nonzero coefficient; a monomial
is a tuple of ``(atom, exponent)`` pairs sorted by atom.  ``_kernels.pyx``
mirrors this module function for function.
"""
from fractions import Fraction
from math import gcd

BACKEND = "python"


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la = len(a)
    lb = len(b)
    while i < la and j < lb:
        x = a[i]
        y = b[j]
        if x[0] == y[0]:
            out.append((x[0], x[1] + y[1]))
            i += 1
            j += 1
        elif x[0] < y[0]:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def mono_div(a, b):
    """a / b when b divides a, else None."""
    if not b:
        return a
    out = []
    i = 0
    la = len(a)
    for atom, e in b:
        while i < la and a[i][0] < atom:
            out.append(a[i])
            i += 1
        if i == la or a[i][0] != atom or a[i][1] < e:
            return None
        if a[i][1] > e:
            out.append((atom, a[i][1] - e))
        i += 1
    if i < la:
        out.extend(a[i:])
    return tuple(out)


def poly_add(p, q, scale=1):
    """p + scale*q."""
    out = dict(p)
    for m, c in q.items():
        v = out.get(m)
        if v is None:
            out[m] = c * scale
        else:
            v = v + c * scale
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def _integral(p):
    """(common denominator, {mono: integer numerator})."""
    den = 1
    for c in p.values():
        d = c.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    if den == 1:
        return 1, {m: c.numerator for m, c in p.items()}
    return den, {m: c.numerator * (den // c.denominator) for m, c in p.items()}


def poly_mul(p, q):
    # multiply over the integers, divide by the common denominator once per term
    if len(p) < len(q):
        p, q = q, p
    dp, ip = _integral(p)
    dq, iq = _integral(q)
    den = dp * dq
    out = {}
    for m2, c2 in iq.items():
        for m1, c1 in ip.items():
            m = mono_mul(m1, m2)
            out[m] = out.get(m, 0) + c1 * c2
    return {m: Fraction(c, den) for m, c in out.items() if c}


def poly_mul_term(p, mono, coeff):
    return {mono_mul(m, mono): c * coeff for m, c in p.items()}


def _lex(m):
    return m[::-1]


def poly_divexact(n, d):
    """Quotient n/d if d divides n exactly, else None (lex division)."""
    dl = max(d, key=_lex)
    dc = d[dl]
    r = dict(n)
    q = {}
    while r:
        rl = max(r, key=_lex)
        m = mono_div(rl, dl)
        if m is None:
            return None
        c = r[rl] / dc
        q[m] = c
        for md, cd in d.items():
            mm = mono_mul(m, md)
            v = r.get(mm, 0) - c * cd
            if v:
                r[mm] = v
            else:
                r.pop(mm, None)
    return q


def echelon(rows, ncols):
    """Fraction-free row echelon form of an integer matrix (rows modified).

    Pivot is the first nonzero entry of the lowest-indexed row in column order;
    every updated row is divided by the gcd of its entries.  Returns the list
    of pivot columns; rows beyond ``len(pivots)`` are zero.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r >= nrows:
            break
        p = -1
        for i in range(r, nrows):
            if rows[i][c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = rows[r]
        a = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            b = row[c]
            if not b:
                continue
            g = 0
            for k in range(ncols):
                v = a * row[k] - b * prow[k]
                row[k] = v
                g = gcd(g, v)
            if g > 1:
                for k in range(ncols):
                    row[k] //= g
        pivots.append(c)
        r += 1
    return pivots


def nullspace(rows, ncols):
    """Integer basis of the right null space of an integer matrix."""
    rows = [list(row) for row in rows if any(row)]
    pivots = echelon(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        lcm = 1
        for i, pc in enumerate(pivots):
            if rows[i][f]:
                a = abs(rows[i][pc])
                lcm = lcm * a // gcd(lcm, a)
        v = [0] * ncols
        v[f] = lcm
        for i, pc in enumerate(pivots):
            if rows[i][f]:
                v[pc] = -rows[i][f] * lcm // rows[i][pc]
        g = 0
        for x in v:
            g = gcd(g, x)
        basis.append([x // g for x in v])
    return basis
