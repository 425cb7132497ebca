# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of :mod:`jetsym._pykernels`; same signatures and results."""
from fractions import Fraction
from math import gcd

BACKEND = "cython"


cpdef tuple mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0, la, lb
    cdef tuple x, y
    cdef list out
    la = len(a)
    lb = len(b)
    if la == 0:
        return b
    if lb == 0:
        return a
    out = []
    while i < la and j < lb:
        x = <tuple>a[i]
        y = <tuple>b[j]
        if x[0] == y[0]:
            out.append((x[0], <long>x[1] + <long>y[1]))
            i += 1
            j += 1
        elif x[0] < y[0]:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    while i < la:
        out.append(a[i])
        i += 1
    while j < lb:
        out.append(b[j])
        j += 1
    return tuple(out)


cpdef object mono_div(tuple a, tuple b):
    cdef Py_ssize_t i = 0, la = len(a)
    cdef list out
    cdef long e, ea
    if len(b) == 0:
        return a
    out = []
    for atom, e in b:
        while i < la and (<tuple>a[i])[0] < atom:
            out.append(a[i])
            i += 1
        if i == la or (<tuple>a[i])[0] != atom:
            return None
        ea = (<tuple>a[i])[1]
        if ea < e:
            return None
        if ea > e:
            out.append((atom, ea - e))
        i += 1
    while i < la:
        out.append(a[i])
        i += 1
    return tuple(out)


cpdef dict poly_add(dict p, dict q, object scale=1):
    cdef dict out = dict(p)
    cdef object m, c, v
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


cdef tuple _integral(dict p):
    cdef object den = 1, d, c, m
    for c in p.values():
        d = c.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    if den == 1:
        return 1, {m: c.numerator for m, c in p.items()}
    return den, {m: c.numerator * (den // c.denominator) for m, c in p.items()}


cpdef dict poly_mul(dict p, dict q):
    cdef dict out = {}, ip, iq
    cdef object m1, c1, m2, c2, v, m, dp, dq, den
    if len(p) < len(q):
        p, q = q, p
    dp, ip = _integral(p)
    dq, iq = _integral(q)
    den = dp * dq
    for m2, c2 in iq.items():
        for m1, c1 in ip.items():
            m = mono_mul(<tuple>m1, <tuple>m2)
            v = out.get(m)
            if v is None:
                out[m] = c1 * c2
            else:
                out[m] = v + c1 * c2
    return {m: Fraction(v, den) for m, v in out.items() if v}


cpdef dict poly_mul_term(dict p, tuple mono, object coeff):
    cdef dict out = {}
    cdef object m, c
    for m, c in p.items():
        out[mono_mul(<tuple>m, mono)] = c * coeff
    return out


def _lex(m):
    return m[::-1]


cpdef object poly_divexact(dict n, dict d):
    cdef dict r = dict(n)
    cdef dict q = {}
    cdef object dl, dc, rl, m, c, md, cd, mm, v
    dl = max(d, key=_lex)
    dc = d[dl]
    while r:
        rl = max(r, key=_lex)
        m = mono_div(<tuple>rl, <tuple>dl)
        if m is None:
            return None
        c = r[rl] / dc
        q[m] = c
        for md, cd in d.items():
            mm = mono_mul(<tuple>m, <tuple>md)
            v = r.get(mm, 0) - c * cd
            if v:
                r[mm] = v
            else:
                r.pop(mm, None)
    return q


cpdef list echelon(list rows, Py_ssize_t ncols):
    cdef list pivots = []
    cdef Py_ssize_t r = 0, nrows = len(rows), c, i, k, p
    cdef list prow, row
    cdef object a, b, g, v
    for c in range(ncols):
        if r >= nrows:
            break
        p = -1
        for i in range(r, nrows):
            if (<list>rows[i])[c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = <list>rows[r]
        a = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>rows[i]
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
                    row[k] = row[k] // g
        pivots.append(c)
        r += 1
    return pivots


def nullspace(rows, Py_ssize_t ncols):
    cdef list mat = [list(row) for row in rows if any(row)]
    cdef list pivots = echelon(mat, ncols)
    cdef set pivset = set(pivots)
    cdef list basis = [], v
    cdef Py_ssize_t f, i, pc
    cdef object lcm, a, g, x
    for f in range(ncols):
        if f in pivset:
            continue
        lcm = 1
        for i, pc in enumerate(pivots):
            if mat[i][f]:
                a = abs(mat[i][pc])
                lcm = lcm * a // gcd(lcm, a)
        v = [0] * ncols
        v[f] = lcm
        for i, pc in enumerate(pivots):
            if mat[i][f]:
                v[pc] = -mat[i][f] * lcm // mat[i][pc]
        g = 0
        for x in v:
            g = gcd(g, x)
        basis.append([x // g for x in v])
    return basis
