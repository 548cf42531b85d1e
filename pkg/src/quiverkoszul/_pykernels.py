# Pure-Python row reduction kernels.  _ckernels.pyx is a typed copy of this
# file; the two must stay algorithmically identical (tests compare them).
from fractions import Fraction
from math import gcd


def _primitive(v):
    # divide by content, make the leading entry positive
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            break
    if v[min(v)] < 0:
        g = -g
    if g != 1:
        v = {k: x // g for k, x in v.items()}
    return v


def _integer_row(row):
    den = 1
    for x in row.values():
        d = x.denominator
        if den % d:
            den = den * d // gcd(den, d)
    out = {}
    for k, x in row.items():
        if x:
            out[k] = x.numerator * (den // x.denominator)
    return out


def rref_rational(rows):
    """Reduced row echelon form over Q.

    ``rows`` is an iterable of sparse rows ``{col: Fraction}``.  Returns the
    nonzero RREF rows (pivot entry 1) sorted by pivot, and the pivot list.
    Elimination is fraction-free on integer rows kept primitive.
    """
    piv = {}
    for row in rows:
        v = _integer_row(row)
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
                v = {k: a * x for k, x in v.items()}
            for k, x in P.items():
                y = v.get(k, 0) - b * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            if v:
                v = _primitive(v)
    cols = sorted(piv)
    for c in reversed(cols):
        row = piv[c]
        others = [k for k in row if k != c and k in piv]
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
                row = {j: a * x for j, x in row.items()}
            for j, x in P.items():
                y = row.get(j, 0) - b * x
                if y:
                    row[j] = y
                else:
                    row.pop(j, None)
        piv[c] = _primitive(row)
    out = []
    for c in cols:
        row = piv[c]
        lead = row[c]
        out.append({k: Fraction(x, lead) for k, x in sorted(row.items())})
    return out, cols


def rref_modp(rows, p):
    """Reduced row echelon form over F_p on rows ``{col: int}``."""
    piv = {}
    for row in rows:
        v = {}
        for k, x in row.items():
            x %= p
            if x:
                v[k] = x
        while v:
            c = min(v)
            P = piv.get(c)
            if P is None:
                inv = pow(v[c], p - 2, p)
                piv[c] = {k: x * inv % p for k, x in v.items()}
                break
            b = v[c]
            for k, x in P.items():
                y = (v.get(k, 0) - b * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    cols = sorted(piv)
    for c in reversed(cols):
        row = piv[c]
        for k in [k for k in row if k != c and k in piv]:
            b = row[k]
            for j, x in piv[k].items():
                y = (row.get(j, 0) - b * x) % p
                if y:
                    row[j] = y
                else:
                    row.pop(j, None)
    return [dict(sorted(piv[c].items())) for c in cols], cols
