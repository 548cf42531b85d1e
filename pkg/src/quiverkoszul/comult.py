"""Comultiplicative structure constants c_{pq}(n, i, r).

For every level-n generator, ``f^n_i = Σ_{p,q} c_{pq}(n,i,r) f^r_p ⊗ f^{n-r}_q``.
The products f^r_p ⊗ f^{n-r}_q of two independent uniform sets are
independent, so the constants are unique.
"""
from .linalg import Matrix, NotInSpan, add_scaled, inverse, solve_in_span
from .presentation import compose, split
from .resolution import KoszulAssumptionViolated


class ComultSlice:
    """The constants for fixed (n, r): ``rows[i] = {(p, q): c}``."""

    def __init__(self, n, r, rows):
        self.n = n
        self.r = r
        self.rows = rows

    def row(self, i):
        return self.rows[i]

    def get(self, i, p, q):
        return self.rows[i].get((p, q), 0)

    def entries(self):
        return [(i, p, q, c) for i, row in enumerate(self.rows) for (p, q), c in sorted(row.items())]

    def to_json(self, field):
        return {
            "n": self.n,
            "r": self.r,
            "entries": [{"i": i, "p": p, "q": q, "coeff": field.format(c)} for i, p, q, c in self.entries()],
        }

    def __eq__(self, other):
        return isinstance(other, ComultSlice) and (self.n, self.r, self.rows) == (other.n, other.r, other.rows)


class Comultiplication:
    """Lazily computed, write-once cache of slices for one resolution."""

    def __init__(self, res):
        self.resolution = res
        self._slices = {}
        self._pivot_data = {}

    def table(self, n, r):
        s = self._slices.get((n, r))
        if s is None:
            s = self._slices.setdefault((n, r), compute_table(self.resolution, n, r, self._pivots))
        return s

    def coefficient(self, n, i, r, p, q):
        return self.table(n, r).get(i, p, q)

    def _pivots(self, level):
        """Pivot paths of K^level and the inverse of the generators restricted to them."""
        data = self._pivot_data.get(level)
        if data is None:
            res = self.resolution
            vecs = res.vectors(level)
            piv = res.level(level).space.pivots
            g = Matrix.from_rows([{k: v[c] for k, c in enumerate(piv) if c in v} for v in vecs],
                                 len(piv), res.algebra.field)
            position = {c: k for k, c in enumerate(piv)}
            data = self._pivot_data.setdefault(level, (position, inverse(g)))
        return data


def compute_table(res, n, r, pivots=None):
    """Slice (n, r) by restricting to pivot coordinates of K^r and K^{n-r}.

    With G_A, G_B the generators of levels r and n-r restricted to their
    pivot columns, the block M of f^n_i on those columns is G_A^T C G_B.
    The candidate C is accepted only if it reconstructs f^n_i exactly.
    """
    if pivots is None:
        pivots = Comultiplication(res)._pivots
    alg = res.algebra
    quiver = alg.quiver
    idx_r = alg.path_index(r)
    idx_s = alg.path_index(n - r)
    pos_a, inv_a = pivots(r)
    pos_b, inv_b = pivots(n - r)
    vec_a = res.vectors(r)
    vec_b = res.vectors(n - r)
    lev_a = res.level(r)
    lev_b = res.level(n - r)
    idx_n = alg.path_index(n)
    rows = []
    for i, f in enumerate(res.level(n).generators):
        m = {}
        for path, c in f.terms.items():
            alpha, beta = split(path, r, quiver)
            k = pos_a.get(idx_r.position[alpha])
            if k is None:
                continue
            j = pos_b.get(idx_s.position[beta])
            if j is None:
                continue
            m[k, j] = m.get((k, j), 0) + c
        # C = (G_A^{-1})^T M G_B^{-1}
        left = {}
        for (k, j), x in m.items():
            for p, y in inv_a.rows[k].items():
                row = left.setdefault(p, {})
                row[j] = row.get(j, 0) + y * x
        coeffs = {}
        for p, row in left.items():
            for j, x in row.items():
                if not x:
                    continue
                for q, y in inv_b.rows[j].items():
                    coeffs[p, q] = coeffs.get((p, q), 0) + x * y
        coeffs = {pq: c for pq, c in coeffs.items() if c}
        recon = {}
        for (p, q), c in coeffs.items():
            if lev_a.target(p) != lev_b.source(q):
                raise KoszulAssumptionViolated(f"non-composable pair in slice ({n},{r})")
            for a_path, x in _terms(vec_a[p], idx_r).items():
                for b_path, y in _terms(vec_b[q], idx_s).items():
                    rp = compose(a_path, b_path)
                    if rp is not None:
                        k = idx_n.position[rp]
                        recon[k] = recon.get(k, 0) + c * x * y
        recon = {k: x for k, x in recon.items() if x}
        if recon != idx_n.vector(f.terms):
            raise KoszulAssumptionViolated(
                f"f^{n}_{i} is not in the span of products f^{r}_p f^{n - r}_q")
        rows.append(coeffs)
    return ComultSlice(n, r, rows)


def _terms(vec, index):
    return {index.paths[k]: x for k, x in vec.items()}


def product_vectors(res, n, r, order=None):
    """The composable products f^r_p ⊗ f^{n-r}_q as vectors of V^{⊗n}."""
    alg = res.algebra
    idx = alg.path_index(n)
    a = res.level(r)
    b = res.level(n - r)
    pairs = [(p, q) for p in range(len(a)) for q in range(len(b)) if a.target(p) == b.source(q)]
    if order is not None:
        pairs = [pairs[k] for k in order]
    vecs = [idx.vector((a.generators[p] * b.generators[q]).terms) for p, q in pairs]
    return pairs, vecs


def compute_table_by_solve(res, n, r, order=None):
    """Slice (n, r) by solving in the span of all composable products."""
    alg = res.algebra
    idx = alg.path_index(n)
    pairs, vecs = product_vectors(res, n, r, order)
    rows = []
    for i, f in enumerate(res.level(n).generators):
        try:
            x = solve_in_span(vecs, idx.vector(f.terms), alg.field)
        except NotInSpan:
            raise KoszulAssumptionViolated(f"f^{n}_{i} outside the product span for r={r}") from None
        rows.append({pq: c for pq, c in zip(pairs, x) if c})
    return ComultSlice(n, r, rows)


def verify_reconstruction(table, res):
    """Return None if Σ c f^r_p f^{n-r}_q = f^n_i for every i, else the witness (n, i, r)."""
    n, r = table.n, table.r
    a = res.level(r).generators
    b = res.level(n - r).generators
    for i, f in enumerate(res.level(n).generators):
        total = {}
        for (p, q), c in table.row(i).items():
            add_scaled(total, (a[p] * b[q]).terms, c)
        if total != f.terms:
            return (n, i, r)
    return None


def verify_zero_pattern(table, res):
    """Nonzero constants only on vertex-compatible triples; returns a witness or None."""
    n, r = table.n, table.r
    top, a, b = res.level(n), res.level(r), res.level(n - r)
    for i, p, q, _ in table.entries():
        if not (a.source(p) == top.source(i) and a.target(p) == b.source(q) and b.target(q) == top.target(i)):
            return (n, i, r, p, q)
    return None


def verify_coassociativity(comult, n, r, s):
    """Σ_q c_pq(n,i,r) c_uv(n-r,q,s) = Σ_a c_av(n,i,r+s) c_pu(r+s,a,r) for all i,p,u,v.

    Returns None on success, else the witness (i, p, u, v).
    """
    left = {}
    outer = comult.table(n, r)
    inner = comult.table(n - r, s)
    for i, row in enumerate(outer.rows):
        for (p, q), c in row.items():
            for (u, v), d in inner.row(q).items():
                key = (i, p, u, v)
                left[key] = left.get(key, 0) + c * d
    right = {}
    first = comult.table(n, r + s)
    second = comult.table(r + s, r)
    for i, row in enumerate(first.rows):
        for (a, v), c in row.items():
            for (p, u), d in second.row(a).items():
                key = (i, p, u, v)
                right[key] = right.get(key, 0) + c * d
    for key in sorted(set(left) | set(right)):
        if left.get(key, 0) != right.get(key, 0):
            return key
    return None
