"""Exact sparse linear algebra over Q or F_p.

Vectors are sparse dicts ``{index: scalar}`` with no zero entries.  Row
reduction runs in a compiled kernel when the extension module was built,
otherwise in the pure-Python twin; set ``QUIVERKOSZUL_PURE=1`` to force the
fallback.
"""
import os

from . import _pykernels
from .scalars import QQ, Mod

if os.environ.get("QUIVERKOSZUL_PURE"):
    _kernels = _pykernels
else:
    try:
        from . import _ckernels as _kernels
    except ImportError:
        _kernels = _pykernels

BACKEND = "compiled" if _kernels is not _pykernels else "python"

# C kernel multiplies two residues in a signed 64-bit word
_C_MODULUS_LIMIT = 2**31


class NotInSpan(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def rref_rows(rows, field=QQ):
    """RREF of sparse rows; returns ``(rows, pivots)`` with field scalars."""
    p = field.characteristic
    if p == 0:
        return _kernels.rref_rational(rows)
    kernels = _kernels if p < _C_MODULUS_LIMIT else _pykernels
    int_rows = [{k: field.to_int(x) for k, x in r.items()} for r in rows]
    out, pivots = kernels.rref_modp(int_rows, p)
    return [{k: Mod(x, p) for k, x in r.items()} for r in out], pivots


def clean(v):
    return {k: x for k, x in v.items() if x}


def add_scaled(v, w, s):
    """``v += s*w`` in place on sparse vectors."""
    if not s:
        return v
    for k, x in w.items():
        y = v.get(k, 0) + s * x
        if y:
            v[k] = y
        else:
            v.pop(k, None)
    return v


class Matrix:
    """Sparse matrix; entries absent from a row dict are zero."""

    def __init__(self, nrows, ncols, entries=None, field=QQ):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.rows = [{} for _ in range(nrows)]
        for (i, j), x in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError((i, j))
            x = field(x)
            if x:
                self.rows[i][j] = x

    @classmethod
    def from_rows(cls, rows, ncols=None, field=QQ):
        """Build from dense lists or sparse dicts."""
        m = cls(0, 0, field=field)
        sparse = []
        width = 0
        for r in rows:
            if isinstance(r, dict):
                d = {k: field(x) for k, x in r.items()}
            else:
                d = {k: field(x) for k, x in enumerate(r)}
                width = max(width, len(r))
            sparse.append(clean(d))
            if d:
                width = max(width, max(d) + 1)
        m.rows = sparse
        m.nrows = len(sparse)
        m.ncols = width if ncols is None else ncols
        return m

    @property
    def entries(self):
        return {(i, j): x for i, r in enumerate(self.rows) for j, x in r.items()}

    def to_dense(self):
        return [[r.get(j, self.field.zero) for j in range(self.ncols)] for r in self.rows]

    def transpose(self):
        t = Matrix(self.ncols, self.nrows, field=self.field)
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                t.rows[j][i] = x
        return t

    def apply(self, v):
        """Matrix times a sparse column vector."""
        out = {}
        for i, r in enumerate(self.rows):
            s = 0
            for j, x in r.items():
                y = v.get(j)
                if y:
                    s += x * y
            if s:
                out[i] = s
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.to_dense()})"


def rref(m):
    """Return ``(R, pivots, rank)`` where R is the unique RREF of m."""
    rows, pivots = rref_rows(m.rows, m.field)
    r = Matrix(0, m.ncols, field=m.field)
    r.rows = rows
    r.nrows = len(rows)
    return r, pivots, len(rows)


def nullspace(m):
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    rows, pivots = rref_rows(m.rows, m.field)
    pivset = set(pivots)
    one = m.field.one
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = {f: one}
        for r, c in zip(rows, pivots):
            x = r.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


class Subspace:
    """A subspace of k^ambient held as its canonical RREF basis."""

    __slots__ = ("ambient", "basis", "pivots", "field", "_pivot_row")

    def __init__(self, ambient, basis, pivots, field=QQ):
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots
        self.field = field
        self._pivot_row = dict(zip(pivots, basis))

    @classmethod
    def span(cls, vectors, ambient, field=QQ):
        vectors = list(vectors)
        for v in vectors:
            if v and (min(v) < 0 or max(v) >= ambient):
                raise DimensionMismatch(f"vector index outside ambient {ambient}")
        rows, pivots = rref_rows(vectors, field)
        return cls(ambient, rows, pivots, field)

    @classmethod
    def zero(cls, ambient, field=QQ):
        return cls(ambient, [], [], field)

    @property
    def dim(self):
        return len(self.basis)

    def matrix(self):
        m = Matrix(0, self.ambient, field=self.field)
        m.rows = [dict(r) for r in self.basis]
        m.nrows = len(m.rows)
        return m

    def reduce(self, v):
        """Residual of v after clearing every pivot column."""
        out = dict(v)
        for c, row in self._pivot_row.items():
            x = v.get(c)
            if x:
                add_scaled(out, row, -x)
        return out

    def __contains__(self, v):
        return not self.reduce(v)

    def coordinates(self, v):
        """Coordinates of v in the RREF basis; raises NotInSpan."""
        if self.reduce(v):
            raise NotInSpan("vector not in subspace")
        zero = self.field.zero
        return [v.get(c, zero) for c in self.pivots]

    def contains_subspace(self, other):
        return all(v in self for v in other.basis)

    def __add__(self, other):
        _check_ambient(self, other)
        return Subspace.span(self.basis + other.basis, self.ambient, self.field)

    def intersect(self, other):
        return intersect(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def _check_ambient(a, b):
    if a.ambient != b.ambient:
        raise DimensionMismatch(f"ambient {a.ambient} != {b.ambient}")


def intersect(a, b):
    """a ∩ b by Zassenhaus: reduce rows (x|x), (y|0) and keep rows with zero left half."""
    _check_ambient(a, b)
    n = a.ambient
    rows = []
    for x in a.basis:
        r = dict(x)
        for k, s in x.items():
            r[k + n] = s
        rows.append(r)
    rows.extend(dict(y) for y in b.basis)
    out, pivots = rref_rows(rows, a.field)
    vecs = [{k - n: s for k, s in r.items()} for r, c in zip(out, pivots) if c >= n]
    return Subspace.span(vecs, n, a.field)


def solve_in_span(vectors, target, field=QQ):
    """Coefficients x with Σ x_j vectors[j] = target, free variables set to 0."""
    m = len(vectors)
    eqs = {}
    for j, v in enumerate(vectors):
        for c, s in v.items():
            eqs.setdefault(c, {})[j] = s
    for c, s in target.items():
        if s:
            eqs.setdefault(c, {})[m] = s
    rows, pivots = rref_rows(eqs.values(), field)
    zero = field.zero
    x = [zero] * m
    for r, c in zip(rows, pivots):
        if c == m:
            raise NotInSpan("target outside the span")
        x[c] = r.get(m, zero)
    return x


def inverse(m):
    """Inverse of a square matrix; raises ZeroDivisionError when singular."""
    n = m.nrows
    if m.ncols != n:
        raise DimensionMismatch("inverse of a non-square matrix")
    one = m.field.one
    rows = []
    for i, r in enumerate(m.rows):
        row = dict(r)
        row[n + i] = one
        rows.append(row)
    out, pivots = rref_rows(rows, m.field)
    if pivots[:n] != list(range(n)) or len(pivots) != n:
        raise ZeroDivisionError("singular matrix")
    inv = Matrix(0, n, field=m.field)
    inv.rows = [{k - n: x for k, x in r.items() if k >= n} for r in out]
    inv.nrows = n
    return inv
