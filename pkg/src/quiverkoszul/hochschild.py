"""Hochschild cochains on the minimal bimodule resolution, cohomology and cup products.

A degree-n cochain is a tuple (λ_0, ..., λ_{t_n}) with λ_i in o(f^n_i) Λ t(f^n_i),
the value of the cochain on the i-th free generator.  Cochain spaces are
graded by weight: the Λ-degree of the values.  The coboundary raises both
the cohomological degree and the weight by one.
"""
from dataclasses import dataclass

from .algebra import AlgebraElement, TruncationError
from .comult import Comultiplication
from .linalg import Matrix, Subspace, add_scaled
from .presentation import PresentationError


class NotCocycle(ValueError):
    pass


class InfiniteDimensionalWeightRange(ValueError):
    pass


class Cochain:
    __slots__ = ("degree", "values")

    def __init__(self, degree, values):
        self.degree = degree
        self.values = tuple(values)

    @property
    def algebra(self):
        return self.values[0].algebra if self.values else None

    def weights(self):
        return sorted({p.length for lam in self.values for p in lam.terms})

    @property
    def weight(self):
        ws = self.weights()
        return ws[0] if len(ws) == 1 else None

    def component(self, w):
        return Cochain(self.degree, [lam.component(w) for lam in self.values])

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("adding cochains of different degrees")
        return Cochain(self.degree, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return Cochain(self.degree, [lam.scale(s) for lam in self.values])

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.degree == other.degree and self.values == other.values

    def __bool__(self):
        return any(self.values)

    def __repr__(self):
        return f"Cochain({self.degree}, {list(self.values)})"

    def to_json(self):
        out = []
        for lam in self.values:
            alg = lam.algebra
            out.append([
                {"path": alg.quiver.path_name(p), "coeff": alg.field.format(c)}
                for p, c in sorted(lam.terms.items(), key=lambda t: t[0].sort_key())
            ])
        return out


@dataclass(frozen=True)
class CohomologyClass:
    """Canonical coordinates of a class, one coordinate tuple per weight."""

    degree: int
    components: tuple

    @property
    def is_zero(self):
        return all(not any(coords) for _, coords in self.components)

    def weight_coordinates(self, w):
        return dict(self.components).get(w)


class Hochschild:
    """Cochain complex Hom(P, Λ) for a resolution; caches matrices per (n, w)."""

    def __init__(self, res, comult=None):
        self.resolution = res
        self.algebra = res.algebra
        self.comult = comult or Comultiplication(res)
        self._arrows = [self.algebra.element(f.terms) for f in res.level(1).generators]
        self._basis = {}
        self._cocycles = {}
        self._coboundaries = {}
        self._complements = {}

    # -- cochains ------------------------------------------------------
    def cochain(self, n, values):
        level = self.resolution.level(n)
        if len(values) != len(level):
            raise ValueError(f"degree-{n} cochains have {len(level)} values, got {len(values)}")
        vals = []
        for i, lam in enumerate(values):
            if not isinstance(lam, AlgebraElement):
                lam = self.algebra.element(lam)
            for p in lam.terms:
                if (p.source, p.target) != level.ends[i]:
                    raise ValueError(f"value {i} must lie in o(f)Λt(f) for f = f^{n}_{i}")
            vals.append(lam)
        return Cochain(n, vals)

    def zero(self, n):
        return Cochain(n, [self.algebra.zero()] * len(self.resolution.level(n)))

    def unit(self):
        return Cochain(0, [self.algebra.vertex(v) for v in range(len(self.resolution.level(0)))])

    def cochain_from_json(self, n, data):
        alg = self.algebra
        values = []
        for terms in data:
            t = {}
            for term in terms:
                try:
                    path = alg.quiver.path_from_names(term["path"].split("."))
                except (KeyError, PresentationError) as exc:
                    raise ValueError(f"bad cochain term {term!r}: {exc}") from None
                t[path] = t.get(path, 0) + alg.field(str(term.get("coeff", "1")))
            values.append(alg.element(t))
        return self.cochain(n, values)

    # -- maps ----------------------------------------------------------
    def coboundary(self, n, c):
        """(δ^{n+1})^*: value at l is Σ c_pj(n+1,l,1) f_p λ_j + (-1)^{n+1} Σ c_jq(n+1,l,n) λ_j f_q."""
        if n + 1 > self.resolution.maxdeg:
            raise TruncationError(f"level {n + 1} not computed")
        left = self.comult.table(n + 1, 1)
        right = self.comult.table(n + 1, n)
        sign = -1 if (n + 1) % 2 else 1
        alg = self.algebra
        out = []
        for l in range(len(self.resolution.level(n + 1))):
            acc = {}
            for (p, j), x in left.row(l).items():
                add_scaled(acc, alg.multiply(self._arrows[p], c.values[j]).terms, x)
            for (j, q), x in right.row(l).items():
                add_scaled(acc, alg.multiply(c.values[j], self._arrows[q]).terms, sign * x)
            out.append(AlgebraElement(alg, acc))
        return Cochain(n + 1, out)

    def cup(self, eta, theta):
        """(η∗θ)_i = Σ_{p,q} c_pq(n+m, i, n) λ_p λ'_q."""
        n, m = eta.degree, theta.degree
        table = self.comult.table(n + m, n)
        alg = self.algebra
        out = []
        for i in range(len(self.resolution.level(n + m))):
            acc = {}
            for (p, q), x in table.row(i).items():
                add_scaled(acc, alg.multiply(eta.values[p], theta.values[q]).terms, x)
            out.append(AlgebraElement(alg, acc))
        return Cochain(n + m, out)

    # -- weight-graded spaces -----------------------------------------
    def basis(self, n, w):
        """Coordinates of C^{n,w}: pairs (i, π) with π a normal path of Λ_w in o(f_i)Λt(f_i)."""
        key = (n, w)
        b = self._basis.get(key)
        if b is None:
            if w < 0 or n < 0 or n > self.resolution.maxdeg:
                b = ([], {})
            else:
                level = self.resolution.level(n)
                piece = self.algebra.graded_piece(w)
                items = [(i, p) for i in range(len(level)) for p in piece.block(*level.ends[i])]
                b = (items, {it: k for k, it in enumerate(items)})
            b = self._basis.setdefault(key, b)
        return b[0]

    def to_vector(self, c, w):
        self.basis(c.degree, w)
        pos = self._basis[c.degree, w][1]
        v = {}
        for i, lam in enumerate(c.values):
            for p, x in lam.terms.items():
                if p.length == w:
                    v[pos[i, p]] = x
        return v

    def from_vector(self, n, w, v):
        items = self.basis(n, w)
        vals = [{} for _ in range(len(self.resolution.level(n)))]
        for k, x in v.items():
            i, p = items[k]
            vals[i][p] = x
        return Cochain(n, [AlgebraElement(self.algebra, t) for t in vals])

    def coboundary_matrix(self, n, w):
        """Matrix of (δ^{n+1})^* : C^{n,w} → C^{n+1,w+1}."""
        src = self.basis(n, w)
        self.basis(n + 1, w + 1)
        tpos = self._basis[n + 1, w + 1][1]
        m = Matrix(len(tpos), len(src), field=self.algebra.field)
        if not src or not tpos:
            return m
        left = self.comult.table(n + 1, 1)
        right = self.comult.table(n + 1, n)
        by_left = {}
        for l, row in enumerate(left.rows):
            for (p, j), x in row.items():
                by_left.setdefault(j, []).append((l, p, x))
        by_right = {}
        for l, row in enumerate(right.rows):
            for (j, q), x in row.items():
                by_right.setdefault(j, []).append((l, q, x))
        sign = -1 if (n + 1) % 2 else 1
        alg = self.algebra
        for col, (j, pi) in enumerate(src):
            lam = AlgebraElement(alg, {pi: alg.field.one})
            image = {}
            for l, p, x in by_left.get(j, ()):
                for path, s in alg.multiply(self._arrows[p], lam).terms.items():
                    key = tpos[l, path]
                    image[key] = image.get(key, 0) + x * s
            for l, q, x in by_right.get(j, ()):
                for path, s in alg.multiply(lam, self._arrows[q]).terms.items():
                    key = tpos[l, path]
                    image[key] = image.get(key, 0) + sign * x * s
            for k, y in image.items():
                if y:
                    m.rows[k][col] = y
        return m

    def cocycle_space(self, n, w):
        """ker (δ^{n+1})^* on C^{n,w}, as a subspace of coordinates."""
        key = (n, w)
        z = self._cocycles.get(key)
        if z is None:
            from .linalg import nullspace
            m = self.coboundary_matrix(n, w)
            z = Subspace.span(nullspace(m), len(self.basis(n, w)), self.algebra.field)
            z = self._cocycles.setdefault(key, z)
        return z

    def coboundary_space(self, n, w):
        """im (δ^n)^* inside C^{n,w}."""
        key = (n, w)
        b = self._coboundaries.get(key)
        if b is None:
            ambient = len(self.basis(n, w))
            if n == 0 or w == 0:
                b = Subspace.zero(ambient, self.algebra.field)
            else:
                m = self.coboundary_matrix(n - 1, w - 1)
                b = Subspace.span(m.transpose().rows, ambient, self.algebra.field)
            b = self._coboundaries.setdefault(key, b)
        return b

    def _complement(self, n, w):
        h = self._complements.get((n, w))
        if h is None:
            z = self.cocycle_space(n, w)
            b = self.coboundary_space(n, w)
            h = Subspace.span([b.reduce(v) for v in z.basis], z.ambient, self.algebra.field)
            h = self._complements.setdefault((n, w), h)
        return h

    def weights(self, n=None):
        top = self.algebra.top_degree()
        if top is None:
            raise InfiniteDimensionalWeightRange(
                "Λ is not known to be finite-dimensional below maxdeg; give an explicit weight")
        return range(top + 1)

    def cohomology_dims(self, n, w=None):
        """``{"n", "weight", "dim_ker", "dim_im", "dim_hh"}``; summed over weights when w is None."""
        if w is None:
            rows = [self.cohomology_dims(n, ww) for ww in self.weights()]
            return {
                "n": n,
                "weight": None,
                "dim_ker": sum(r["dim_ker"] for r in rows),
                "dim_im": sum(r["dim_im"] for r in rows),
                "dim_hh": sum(r["dim_hh"] for r in rows),
            }
        ker = self.cocycle_space(n, w).dim
        im = self.coboundary_space(n, w).dim
        return {"n": n, "weight": w, "dim_ker": ker, "dim_im": im, "dim_hh": ker - im}

    def image_dimension(self, n):
        """Σ_w dim im (δ^n)^* over all weights (finite-dimensional Λ only)."""
        return sum(self.coboundary_space(n, w).dim for w in self.weights())

    def cohomology_basis(self, n, w):
        """Cocycle representatives of a basis of HH^{n,w}."""
        return [self.from_vector(n, w, v) for v in self._complement(n, w).basis]

    def is_cocycle(self, c):
        return not self.coboundary(c.degree, c)

    def reduce_class(self, c):
        """Canonical coordinates of the class of c, weight by weight."""
        if not self.is_cocycle(c):
            raise NotCocycle(f"degree-{c.degree} cochain is not a cocycle")
        comps = []
        for w in c.weights():
            v = self.to_vector(c.component(w), w)
            residual = self.coboundary_space(c.degree, w).reduce(v)
            coords = self._complement(c.degree, w).coordinates(residual)
            comps.append((w, tuple(coords)))
        return CohomologyClass(c.degree, tuple(comps))

    def is_coboundary(self, c):
        return self.reduce_class(c).is_zero

    # -- checks --------------------------------------------------------
    def _apply_delta(self, k, element):
        """δ^k on an element {(j, a, b): coeff} of P^k, meaning Σ coeff · a ε^k_j b."""
        alg = self.algebra
        out = {}
        if k == 0:
            for (j, a, b), x in element.items():
                prod = alg.multiply(AlgebraElement(alg, {a: 1}), AlgebraElement(alg, {b: 1}))
                for path, s in prod.terms.items():
                    key = (None, path, None)
                    out[key] = out.get(key, 0) + x * s
            return {kk: x for kk, x in out.items() if x}
        left = self.comult.table(k, 1)
        right = self.comult.table(k, k - 1)
        sign = -1 if k % 2 else 1
        for (j, a, b), x in element.items():
            a_el = AlgebraElement(alg, {a: 1})
            b_el = AlgebraElement(alg, {b: 1})
            for (p, jj), c in left.row(j).items():
                for path, s in alg.multiply(a_el, self._arrows[p]).terms.items():
                    key = (jj, path, b)
                    out[key] = out.get(key, 0) + x * c * s
            for (jj, q), c in right.row(j).items():
                for path, s in alg.multiply(self._arrows[q], b_el).terms.items():
                    key = (jj, a, path)
                    out[key] = out.get(key, 0) + sign * x * c * s
        return {kk: x for kk, x in out.items() if x}

    def verify_complex(self, N=None):
        """δ^{n-1} δ^n (ε^n_i) = 0 for 1 ≤ n ≤ N; returns None or the witness (n, i)."""
        from .presentation import Path
        res = self.resolution
        N = res.maxdeg if N is None else N
        for n in range(1, N + 1):
            level = res.level(n)
            for i in range(len(level)):
                u, v = level.ends[i]
                gen = {(i, Path(u, u, ()), Path(v, v, ())): self.algebra.field.one}
                if self._apply_delta(n - 1, self._apply_delta(n, gen)):
                    return (n, i)
        return None


def centre_dimension(alg, w):
    """dim Z(Λ)_w by solving λa = aλ for all arrows a and e_v λ = λ e_v directly."""
    from .linalg import nullspace
    piece = alg.graded_piece(w)
    # e_v λ = λ e_v forces λ into the diagonal blocks
    basis = [p for p in piece.normal if p.source == p.target]
    arrows = [alg.arrow(i) for i in range(len(alg.quiver.arrows))]
    rows = {}
    for col, p in enumerate(basis):
        lam = AlgebraElement(alg, {p: alg.field.one})
        for a_idx, a in enumerate(arrows):
            diff = alg.multiply(lam, a) - alg.multiply(a, lam)
            for path, s in diff.terms.items():
                rows.setdefault((a_idx, path), {})[col] = s
    m = Matrix(0, len(basis), field=alg.field)
    m.rows = list(rows.values())
    m.nrows = len(m.rows)
    return len(nullspace(m))
