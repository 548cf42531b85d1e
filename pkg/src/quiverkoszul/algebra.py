"""Path bases of V^{⊗n}, graded pieces Λ_d of Λ = kQ/I, and multiplication in Λ.

Normal forms are taken relative to the length-lexicographic path order by
arrow declaration index: the ideal piece I_d is row reduced in that column
order and its non-pivot paths form the basis of Λ_d.
"""
from dataclasses import dataclass
from .linalg import Subspace, add_scaled
from .presentation import Path, TensorElement, compose


class TruncationError(ArithmeticError):
    """A computation needed Λ_d with d beyond the session's maxdeg."""


@dataclass(frozen=True)
class FiniteDim:
    total: int


@dataclass(frozen=True)
class NotDecidedBy:
    maxdeg: int


class PathIndex:
    """All paths of one length in canonical order, with their positions."""

    def __init__(self, paths):
        self.paths = paths
        self.position = {p: i for i, p in enumerate(paths)}

    def __len__(self):
        return len(self.paths)

    def vector(self, terms):
        pos = self.position
        return {pos[p]: c for p, c in terms.items() if c}

    def terms(self, vector):
        paths = self.paths
        return {paths[i]: c for i, c in vector.items()}


class GradedPiece:
    """Λ_d: normal-path basis and the projection V^{⊗d} → Λ_d."""

    def __init__(self, degree, index, ideal):
        self.degree = degree
        self.index = index
        self.ideal = ideal
        pivset = set(ideal.pivots)
        self.normal = [p for i, p in enumerate(index.paths) if i not in pivset]
        self.blocks = {}
        for p in self.normal:
            self.blocks.setdefault((p.source, p.target), []).append(p)
        self._pivot_row = dict(zip(ideal.pivots, ideal.basis))

    @property
    def dim(self):
        return len(self.normal)

    def block(self, u, v):
        return self.blocks.get((u, v), [])

    def project_path(self, p):
        """Normal form of a single path as ``{normal path: coeff}``."""
        i = self.index.position[p]
        row = self._pivot_row.get(i)
        if row is None:
            return {p: 1}
        paths = self.index.paths
        return {paths[j]: -c for j, c in row.items() if j != i}


class AlgebraElement:
    """An element of Λ stored on normal paths (possibly of mixed degree)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {p: c for p, c in terms.items() if c}

    def __add__(self, other):
        t = dict(self.terms)
        for p, c in other.terms.items():
            t[p] = t.get(p, 0) + c
        return AlgebraElement(self.algebra, t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        return AlgebraElement(self.algebra, {p: s * c for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degrees(self):
        return sorted({p.length for p in self.terms})

    def component(self, d):
        return AlgebraElement(self.algebra, {p: c for p, c in self.terms.items() if p.length == d})

    def __repr__(self):
        q = self.algebra.quiver
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*{q.path_name(p)}" for p, c in sorted(self.terms.items(), key=lambda t: t[0].sort_key())
        )


class Algebra:
    """A computation session for Λ = kQ/I with truncation degree maxdeg.

    Graded pieces are cached write-once per degree.
    """

    def __init__(self, pres):
        self.presentation = pres
        self.quiver = pres.quiver
        self.field = pres.field
        self.maxdeg = pres.maxdeg
        self._paths = {}
        self._ideal = {}
        self._pieces = {}
        self._zero_from = None
        self._project_cache = {}
        # kQ·r·kQ contains e_u r e_v, so relations are split into uniform parts
        self.relations = []
        for rel in pres.relations:
            parts = {}
            for p, c in rel.terms.items():
                parts.setdefault((p.source, p.target), {})[p] = c
            self.relations.extend(TensorElement(2, t) for _, t in sorted(parts.items()))

    # -- paths ---------------------------------------------------------
    def path_index(self, n):
        idx = self._paths.get(n)
        if idx is None:
            q = self.quiver
            if n == 0:
                paths = [Path(v, v, ()) for v in range(len(q.vertices))]
            elif n == 1:
                paths = [q.arrow_path(i) for i in range(len(q.arrows))]
            else:
                # extending in arrow order keeps the lexicographic order
                arrows = [q.arrow_path(i) for i in range(len(q.arrows))]
                paths = [r for p in self.path_index(n - 1).paths for a in arrows
                         if (r := compose(p, a)) is not None]
            idx = self._paths.setdefault(n, PathIndex(paths))
        return idx

    def path_basis(self, n, u, v):
        """Paths of length n from u to v in length-lexicographic order."""
        if n == 0:
            return [Path(u, u, ())] if u == v else []
        return [p for p in self.path_index(n).paths if p.source == u and p.target == v]

    # -- graded pieces -------------------------------------------------
    def relation_space(self):
        return self.ideal_piece(2)

    def ideal_piece(self, d):
        """I_d = Σ V^{⊗i} ⊗ R ⊗ V^{⊗(d-2-i)} as a subspace of V^{⊗d}."""
        sub = self._ideal.get(d)
        if sub is not None:
            return sub
        idx = self.path_index(d)
        if d < 2:
            sub = Subspace.zero(len(idx), self.field)
        elif d == 2:
            rels = [idx.vector(r.terms) for r in self.relations]
            sub = Subspace.span(rels, len(idx), self.field)
        else:
            prev = self.ideal_piece(d - 1)
            prev_idx = self.path_index(d - 1)
            rows = []
            # I_d = I_{d-1} ⊗ V + V^{⊗(d-2)} ⊗ R
            arrows = [self.quiver.arrow_path(i) for i in range(len(self.quiver.arrows))]
            for row in prev.basis:
                terms = prev_idx.terms(row)
                for a in arrows:
                    t = {}
                    for p, c in terms.items():
                        r = compose(p, a)
                        if r is not None:
                            t[r] = c
                    if t:
                        rows.append(idx.vector(t))
            for w in self.path_index(d - 2).paths:
                for rel in self.relations:
                    t = {}
                    for p, c in rel.terms.items():
                        r = compose(w, p)
                        if r is not None:
                            t[r] = c
                    if t:
                        rows.append(idx.vector(t))
            sub = Subspace.span(rows, len(idx), self.field)
        return self._ideal.setdefault(d, sub)

    def graded_piece(self, d):
        piece = self._pieces.get(d)
        if piece is not None:
            return piece
        if self._zero_from is not None and d >= self._zero_from:
            piece = GradedPiece(d, PathIndex([]), Subspace.zero(0, self.field))
            return self._pieces.setdefault(d, piece)
        if d > self.maxdeg:
            for e in range(self.maxdeg + 1):
                if self.graded_piece(e).dim == 0:
                    return self.graded_piece(d)
            raise TruncationError(f"Λ_{d} needed but maxdeg is {self.maxdeg}")
        piece = GradedPiece(d, self.path_index(d), self.ideal_piece(d))
        if piece.dim == 0 and (self._zero_from is None or d < self._zero_from):
            # Λ_{d+1} = Λ_d · V
            self._zero_from = d
        return self._pieces.setdefault(d, piece)

    def dims(self, upto=None):
        upto = self.maxdeg if upto is None else upto
        return [self.graded_piece(d).dim for d in range(upto + 1)]

    def finite_dimensionality(self):
        total = 0
        for d in range(self.maxdeg + 1):
            dim = self.graded_piece(d).dim
            if dim == 0:
                return FiniteDim(total)
            total += dim
        return NotDecidedBy(self.maxdeg)

    def top_degree(self):
        """Largest d with Λ_d ≠ 0, or None when not finite below maxdeg."""
        fd = self.finite_dimensionality()
        if isinstance(fd, NotDecidedBy):
            return None
        d = 0
        while self.graded_piece(d + 1).dim:
            d += 1
        return d

    # -- elements ------------------------------------------------------
    def project(self, p):
        """Normal form of an arbitrary path as ``{normal path: coeff}``."""
        nf = self._project_cache.get(p)
        if nf is None:
            piece = self.graded_piece(p.length)
            if piece.dim == 0:
                nf = {}
            else:
                nf = {q: self.field(c) for q, c in piece.project_path(p).items()}
            nf = self._project_cache.setdefault(p, nf)
        return nf

    def element(self, terms):
        """Element of Λ from arbitrary (not necessarily normal) path terms."""
        out = {}
        for p, c in terms.items():
            if c:
                add_scaled(out, self.project(p), self.field(c))
        return AlgebraElement(self, out)

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return AlgebraElement(self, {Path(v, v, ()): self.field.one for v in range(len(self.quiver.vertices))})

    def vertex(self, v):
        return AlgebraElement(self, {Path(v, v, ()): self.field.one})

    def arrow(self, i):
        return self.element({self.quiver.arrow_path(i): 1})

    def from_names(self, names, coeff=1):
        return self.element({self.quiver.path_from_names(names): coeff})

    def multiply(self, a, b):
        out = {}
        for p, x in a.terms.items():
            for q, y in b.terms.items():
                r = compose(p, q)
                if r is not None:
                    add_scaled(out, self.project(r), x * y)
        return AlgebraElement(self, out)

    def basis(self, d, u=None, v=None):
        """Normal paths of Λ_d, optionally restricted to the block u Λ_d v."""
        piece = self.graded_piece(d)
        if u is None:
            return list(piece.normal)
        return piece.block(u, v)
