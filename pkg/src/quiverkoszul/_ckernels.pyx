# cython: language_level=3, boundscheck=False, wraparound=False
# Compiled row reduction kernels; typed twin of _pykernels.py.
from fractions import Fraction
from math import gcd

from libc.stdlib cimport calloc, free

# dense mod-p elimination is used below this many matrix cells (8 bytes each)
DENSE_LIMIT = 4_000_000


cdef dict _primitive(dict v):
    cdef object g = 0
    cdef object x
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            break
    if v[min(v)] < 0:
        g = -g
    if g != 1:
        v = {k: x // g for k, x in v.items()}
    return v


cdef dict _integer_row(dict row):
    cdef object den = 1
    cdef object d, x
    for x in row.values():
        d = x.denominator
        if den % d:
            den = den * d // gcd(den, d)
    cdef dict out = {}
    for k, x in row.items():
        if x:
            out[k] = x.numerator * (den // x.denominator)
    return out


def rref_rational(rows):
    cdef dict piv = {}
    cdef dict v, P, row
    cdef Py_ssize_t c, k, j
    cdef object a, b, g, x, y
    for r in rows:
        v = _integer_row(dict(r))
        while v:
            c = min(v)
            P = piv.get(c)
            if P is None:
                piv[c] = _primitive(v)
                break
            a = P[c]
            b = v[c]
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                v = {kk: a * xx for kk, xx in v.items()}
            for k, x in P.items():
                y = v.get(k, 0) - b * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            if v:
                v = _primitive(v)
    cdef list cols = sorted(piv)
    cdef list others
    for c in reversed(cols):
        row = piv[c]
        others = [kk for kk in row if kk != c and kk in piv]
        if not others:
            continue
        for k in others:
            P = piv[k]
            a = P[k]
            b = row[k]
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                row = {jj: a * xx for jj, xx in row.items()}
            for j, x in P.items():
                y = row.get(j, 0) - b * x
                if y:
                    row[j] = y
                else:
                    row.pop(j, None)
        piv[c] = _primitive(row)
    cdef list out = []
    for c in cols:
        row = piv[c]
        lead = row[c]
        out.append({kk: Fraction(xx, lead) for kk, xx in sorted(row.items())})
    return out, cols


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, nt = 1, r = p, nr = a, q, tmp
    while nr:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    return t + p if t < 0 else t


def rref_modp(rows, long long p):
    rows = [r for r in rows if r]
    cdef Py_ssize_t ncols = 0
    for r in rows:
        ncols = max(ncols, max(r) + 1)
    if not rows or len(rows) * ncols > DENSE_LIMIT:
        return _rref_modp_sparse(rows, p)
    return _rref_modp_dense(rows, ncols, p)


cdef _rref_modp_dense(list rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    cdef long long *a = <long long *> calloc(nrows * ncols, sizeof(long long))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, col, rank = 0, piv_row
    cdef long long x, f, inv
    cdef long long *src
    cdef long long *dst
    cdef list cols = []
    cdef list out = []
    cdef dict d
    try:
        for i in range(nrows):
            for k, ox in (<dict> rows[i]).items():
                x = ox % p
                a[i * ncols + <Py_ssize_t> k] = x + p if x < 0 else x
        for col in range(ncols):
            if rank == nrows:
                break
            piv_row = -1
            for i in range(rank, nrows):
                if a[i * ncols + col]:
                    piv_row = i
                    break
            if piv_row < 0:
                continue
            if piv_row != rank:
                for j in range(col, ncols):
                    x = a[piv_row * ncols + j]
                    a[piv_row * ncols + j] = a[rank * ncols + j]
                    a[rank * ncols + j] = x
            src = a + rank * ncols
            inv = _inv_mod(src[col], p)
            for j in range(col, ncols):
                if src[j]:
                    src[j] = src[j] * inv % p
            for i in range(nrows):
                if i == rank:
                    continue
                dst = a + i * ncols
                f = dst[col]
                if not f:
                    continue
                for j in range(col, ncols):
                    if src[j]:
                        x = (dst[j] - f * src[j]) % p
                        dst[j] = x + p if x < 0 else x
            cols.append(col)
            rank += 1
        for i in range(rank):
            d = {}
            for j in range(cols[i], ncols):
                if a[i * ncols + j]:
                    d[j] = a[i * ncols + j]
            out.append(d)
    finally:
        free(a)
    return out, cols


cdef _rref_modp_sparse(list rows, long long p):
    cdef dict piv = {}
    cdef dict v, P, row
    cdef Py_ssize_t c, k, j
    cdef long long x, y, b, inv
    for r in rows:
        v = {}
        for k, ox in r.items():
            x = ox % p
            if x:
                v[k] = x
        while v:
            c = min(v)
            P = piv.get(c)
            if P is None:
                inv = pow(v[c], p - 2, p)
                piv[c] = {kk: (<long long> xx) * inv % p for kk, xx in v.items()}
                break
            b = v[c]
            for k, ox in P.items():
                x = ox
                y = ((<long long> v.get(k, 0)) - b * x) % p
                if y < 0:
                    y += p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    cdef list cols = sorted(piv)
    for c in reversed(cols):
        row = piv[c]
        for k in [kk for kk in row if kk != c and kk in piv]:
            b = row[k]
            for j, ox in (<dict> piv[k]).items():
                x = ox
                y = ((<long long> row.get(j, 0)) - b * x) % p
                if y < 0:
                    y += p
                if y:
                    row[j] = y
                else:
                    row.pop(j, None)
    return [dict(sorted((<dict> piv[cc]).items())) for cc in cols], cols
