"""The Koszul dual E(Λ) = Ext*_Λ(Λ_0, Λ_0) on the dual basis f̂^n_i.

Products come straight from the comultiplication constants:

    f̂^m_i · f̂^n_j = Σ_l c_{ji}(m+n, l, n) f̂^{m+n}_l.
"""
from .algebra import TruncationError
from .hochschild import Cochain, CohomologyClass
from .linalg import Matrix, Subspace, nullspace


class ExtElement:
    """Σ α_i f̂^n_i, a homogeneous element of E(Λ)_n."""

    __slots__ = ("degree", "coords")

    def __init__(self, degree, coords):
        self.degree = degree
        self.coords = tuple(coords)

    def __add__(self, other):
        _same_degree(self, other)
        return ExtElement(self.degree, (a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return ExtElement(self.degree, (s * a for a in self.coords))

    def __eq__(self, other):
        return isinstance(other, ExtElement) and (self.degree, self.coords) == (other.degree, other.coords)

    def __hash__(self):
        return hash((self.degree, self.coords))

    def __bool__(self):
        return any(self.coords)

    def support(self):
        return {i: a for i, a in enumerate(self.coords) if a}

    def __repr__(self):
        terms = [f"{a}*F{self.degree}_{i}" for i, a in self.support().items()]
        return " + ".join(terms) or f"0 (degree {self.degree})"


def _same_degree(a, b):
    if a.degree != b.degree:
        raise ValueError(f"degree {a.degree} and degree {b.degree} elements cannot be added")


class KoszulDual:
    def __init__(self, hh_or_res, comult=None):
        # accept either a Hochschild session (sharing its tables) or a bare resolution
        if hasattr(hh_or_res, "comult"):
            self.resolution = hh_or_res.resolution
            self.comult = hh_or_res.comult
        else:
            from .comult import Comultiplication
            self.resolution = hh_or_res
            self.comult = comult or Comultiplication(hh_or_res)
        self.algebra = self.resolution.algebra
        self.field = self.algebra.field
        self._centres = {}

    @property
    def maxdeg(self):
        return self.resolution.maxdeg

    def dim(self, n):
        return len(self.resolution.level(n))

    def _check(self, n):
        if n > self.maxdeg:
            raise TruncationError(f"E_{n} needs resolution level {n}, computed up to {self.maxdeg}")

    def element(self, n, coords):
        self._check(n)
        coords = [self.field(a) for a in coords]
        if len(coords) != self.dim(n):
            raise ValueError(f"E_{n} has dimension {self.dim(n)}, got {len(coords)} coordinates")
        return ExtElement(n, coords)

    def basis_element(self, n, i):
        self._check(n)
        zero, one = self.field.zero, self.field.one
        return ExtElement(n, (one if k == i else zero for k in range(self.dim(n))))

    def zero(self, n):
        self._check(n)
        return ExtElement(n, [self.field.zero] * self.dim(n))

    def one(self):
        return ExtElement(0, [self.field.one] * self.dim(0))

    def product(self, a, b):
        """a · b for homogeneous a of degree m and b of degree n."""
        m, n = a.degree, b.degree
        self._check(m + n)
        out = [self.field.zero] * self.dim(m + n)
        if not (a and b):
            return ExtElement(m + n, out)
        table = self.comult.table(m + n, n)
        for l, row in enumerate(table.rows):
            s = 0
            for (j, i), c in row.items():
                x = a.coords[i]
                if x:
                    y = b.coords[j]
                    if y:
                        s += c * x * y
            if s:
                out[l] = s
        return ExtElement(m + n, out)

    def structure_constants(self, m, n):
        """Nonzero (i, j, l, coeff) with f̂^m_i f̂^n_j = Σ_l coeff f̂^{m+n}_l, sorted."""
        self._check(m + n)
        table = self.comult.table(m + n, n)
        out = [(i, j, l, c) for l, row in enumerate(table.rows) for (j, i), c in row.items()]
        out.sort(key=lambda t: t[:3])
        return out

    def structure_json(self, m, n):
        fmt = self.field.format
        return {
            "m": m,
            "n": n,
            "entries": [{"i": i, "j": j, "l": l, "coeff": fmt(c)} for i, j, l, c in self.structure_constants(m, n)],
        }

    def verify_associativity(self, N=None):
        """(ab)c = a(bc) on basis triples of total degree ≤ N; None or (m, i, n, j, p, k)."""
        N = self.maxdeg if N is None else N
        for m in range(N + 1):
            for n in range(N + 1 - m):
                for p in range(N + 1 - m - n):
                    for i in range(self.dim(m)):
                        a = self.basis_element(m, i)
                        for j in range(self.dim(n)):
                            b = self.basis_element(n, j)
                            ab = self.product(a, b)
                            for k in range(self.dim(p)):
                                c = self.basis_element(p, k)
                                if self.product(ab, c) != self.product(a, self.product(b, c)):
                                    return (m, i, n, j, p, k)
        return None

    # -- graded centre -------------------------------------------------
    def graded_centre(self, n):
        """Z_gr(E)_n as a subspace of coordinates α on f̂^n_i.

        E is generated in degrees 0 and 1, so z is graded-central iff it
        commutes with the vertex idempotents and f̂^1_j z = (-1)^n z f̂^1_j.
        """
        z = self._centres.get(n)
        if z is not None:
            return z
        self._check(n + 1)
        level = self.resolution.level(n)
        size = len(level)
        rows = []
        one = self.field.one
        for i in range(size):
            if level.source(i) != level.target(i):
                rows.append({i: one})
        left = self.comult.table(n + 1, n)   # f̂^1_j z: c_{ij}(n+1, l, n)
        right = self.comult.table(n + 1, 1)  # z f̂^1_j: c_{ji}(n+1, l, 1)
        sign = -1 if n % 2 else 1
        eqs = {}
        for l, row in enumerate(left.rows):
            for (i, j), c in row.items():
                r = eqs.setdefault((l, j), {})
                r[i] = r.get(i, 0) + c
        for l, row in enumerate(right.rows):
            for (j, i), c in row.items():
                r = eqs.setdefault((l, j), {})
                r[i] = r.get(i, 0) - sign * c
        for key in sorted(eqs):
            r = {i: x for i, x in eqs[key].items() if x}
            if r:
                rows.append(r)
        m = Matrix.from_rows(rows, size, self.field)
        z = Subspace.span(nullspace(m), size, self.field)
        return self._centres.setdefault(n, z)

    def centre_basis(self, n):
        z = self.graded_centre(n)
        zero = self.field.zero
        return [ExtElement(n, (v.get(i, zero) for i in range(z.ambient))) for v in z.basis]

    def centre_json(self, n):
        fmt = self.field.format
        return {"degree": n, "dim": self.graded_centre(n).dim,
                "basis": [[fmt(a) for a in z.coords] for z in self.centre_basis(n)]}

    def verify_centre_full(self, n, N=None):
        """Check z y = (-1)^{nd} y z for every central basis z and every basis y of degree d ≤ N - n."""
        N = self.maxdeg if N is None else N
        for z in self.centre_basis(n):
            for d in range(N - n + 1):
                sign = -1 if (n * d) % 2 else 1
                for k in range(self.dim(d)):
                    y = self.basis_element(d, k)
                    if self.product(z, y) != self.product(y, z).scale(sign):
                        return (z, d, k)
        return None

    # -- the map from Hochschild cohomology --------------------------------
    def phi(self, x):
        """Weight-0 coefficients of a cochain (or cocycle representative)."""
        if isinstance(x, CohomologyClass):
            raise TypeError("phi needs a representative cochain, not reduced coordinates")
        if not isinstance(x, Cochain):
            raise TypeError(f"expected a Cochain, got {type(x).__name__}")
        level = self.resolution.level(x.degree)
        zero = self.field.zero
        coords = []
        for i, lam in enumerate(x.values):
            u, v = level.ends[i]
            s = zero
            if u == v:
                for p, c in lam.terms.items():
                    if p.length == 0:
                        s = c
            coords.append(s)
        return ExtElement(x.degree, coords)

    def phi_image(self, hh, n):
        """span φ(HH^n) as a coordinate subspace: φ only sees weight-0 cocycles."""
        z = hh.cocycle_space(n, 0)
        vecs = [self.phi(hh.from_vector(n, 0, v)).support() for v in z.basis]
        return Subspace.span(vecs, self.dim(n), self.field)

    def verify_image_equals_graded_centre(self, hh, n):
        """None when span φ(HH^n) = Z_gr(E)_n, else a witness vector in one but not the other."""
        image = self.phi_image(hh, n)
        centre = self.graded_centre(n)
        for v in image.basis:
            if v not in centre:
                return ("image-not-central", v)
        for v in centre.basis:
            if v not in image:
                return ("central-not-in-image", v)
        return None

    def verify_lifting_identity(self, n, r):
        """Σ_p c_jy(n+r,p,n) c_pq(n+r+1,l,n+r) = Σ_v c_jv(n+r+1,l,n) c_yq(r+1,v,r).

        Returns None or the witness (j, y, q, l).
        """
        self._check(n + r + 1)
        a = self.comult.table(n + r, n)
        b = self.comult.table(n + r + 1, n + r)
        c = self.comult.table(n + r + 1, n)
        d = self.comult.table(r + 1, r)
        left = {}
        for l, row in enumerate(b.rows):
            for (p, q), x in row.items():
                for (j, y), w in a.row(p).items():
                    key = (j, y, q, l)
                    left[key] = left.get(key, 0) + w * x
        right = {}
        for l, row in enumerate(c.rows):
            for (j, v), x in row.items():
                for (y, q), w in d.row(v).items():
                    key = (j, y, q, l)
                    right[key] = right.get(key, 0) + x * w
        for key in sorted(set(left) | set(right)):
            if left.get(key, 0) != right.get(key, 0):
                return key
        return None
