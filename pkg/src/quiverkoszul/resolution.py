"""Linear minimal resolution of Λ_0 over a quadratic algebra Λ.

Level n is a basis f^n_0, ..., f^n_{t_n} of the syzygy space
K^n = (K^{n-1} ⊗ V) ∩ (V^{⊗(n-2)} ⊗ R) inside V^{⊗n}.  Each basis vector is
uniform: it lies in a single (source, target) block.
"""
from dataclasses import dataclass

from .linalg import Matrix, Subspace, add_scaled, nullspace
from .presentation import TensorElement, compose, split


class SpanMismatch(ValueError):
    pass


class ExactnessFailure(RuntimeError):
    def __init__(self, n, d, homology):
        self.n = n
        self.d = d
        self.homology = homology
        super().__init__(f"resolution not exact at homological degree {n}, internal degree {d} "
                         f"(homology dimension {homology}); the algebra is not Koszul")


class KoszulAssumptionViolated(RuntimeError):
    pass


@dataclass(frozen=True)
class ResolutionLevel:
    n: int
    generators: tuple
    ends: tuple
    space: Subspace

    @property
    def t(self):
        return len(self.generators) - 1

    def __len__(self):
        return len(self.generators)

    def source(self, i):
        return self.ends[i][0]

    def target(self, i):
        return self.ends[i][1]


class Resolution:
    """The levels 0..N of a linear resolution, immutable once built."""

    def __init__(self, algebra, levels):
        self.algebra = algebra
        self.levels = tuple(levels)

    @property
    def maxdeg(self):
        return len(self.levels) - 1

    def level(self, n):
        return self.levels[n]

    def t(self):
        return [lev.t for lev in self.levels]

    def vectors(self, n):
        idx = self.algebra.path_index(n)
        return [idx.vector(f.terms) for f in self.levels[n].generators]


def _blocked(rows, index):
    """Order RREF rows by (source, target) block, keeping pivot order inside blocks."""
    keyed = []
    for pos, row in enumerate(rows):
        p = index.paths[min(row)]
        keyed.append(((p.source, p.target), pos, row))
    keyed.sort(key=lambda t: (t[0], t[1]))
    return [row for _, _, row in keyed]


def _level(n, rows, index, space):
    gens = []
    ends = []
    for row in rows:
        f = TensorElement(n, index.terms(row))
        e = f.endpoints()
        if e is None:
            raise KoszulAssumptionViolated(f"level {n} basis vector is not uniform")
        gens.append(f)
        ends.append(e)
    return ResolutionLevel(n, tuple(gens), tuple(ends), space)


def _next_space(alg, prev, n):
    """K^n from K^{n-1}: kernel of K^{n-1} ⊗ V → V^{⊗(n-2)} ⊗ (V^{⊗2}/R), per block."""
    quiver = alg.quiver
    field = alg.field
    quad = alg.graded_piece(2)
    index = alg.path_index(n)
    arrows = [quiver.arrow_path(i) for i in range(len(quiver.arrows))]
    nverts = len(quiver.vertices)
    vectors = []
    for u in range(nverts):
        left = [f for f, (s, _) in zip(prev.generators, prev.ends) if s == u]
        for v in range(nverts):
            unknowns = []
            for f in left:
                for a in arrows:
                    if a.target != v:
                        continue
                    prod = {}
                    for p, c in f.terms.items():
                        r = compose(p, a)
                        if r is not None:
                            prod[r] = c
                    if prod:
                        unknowns.append(prod)
            if not unknowns:
                continue
            coords = {}
            cols = {}
            for j, prod in enumerate(unknowns):
                for path, c in prod.items():
                    head, tail = split(path, n - 2, quiver)
                    for nf, s in quad.project_path(tail).items():
                        key = coords.setdefault((head, nf), len(coords))
                        cols.setdefault(key, {})
                        cols[key][j] = cols[key].get(j, 0) + c * s
            m = Matrix(0, len(unknowns), field=field)
            m.rows = [{j: field(x) for j, x in row.items() if x} for row in cols.values()]
            m.nrows = len(m.rows)
            for sol in nullspace(m):
                vec = {}
                for j, s in sol.items():
                    add_scaled(vec, index.vector(unknowns[j]), s)
                vectors.append(vec)
    return Subspace.span(vectors, len(index), field)


def compute_levels(alg, N=None):
    """Levels 0..N of the resolution (N defaults to the session maxdeg)."""
    N = alg.maxdeg if N is None else N
    if N < 2:
        raise ValueError("maxdeg must be at least 2")
    field = alg.field
    idx0 = alg.path_index(0)
    lev0_rows = [{i: field.one} for i in range(len(idx0))]
    levels = [_level(0, lev0_rows, idx0, Subspace(len(idx0), lev0_rows, list(range(len(idx0))), field))]
    idx1 = alg.path_index(1)
    lev1_rows = [{i: field.one} for i in range(len(idx1))]
    levels.append(_level(1, lev1_rows, idx1, Subspace(len(idx1), lev1_rows, list(range(len(idx1))), field)))
    rel = alg.relation_space()
    levels.append(_level(2, _blocked(rel.basis, alg.path_index(2)), alg.path_index(2), rel))
    for n in range(3, N + 1):
        prev = levels[-1]
        if not prev.generators:
            space = Subspace.zero(len(alg.path_index(n)), field)
        else:
            space = _next_space(alg, prev, n)
        idx = alg.path_index(n)
        levels.append(_level(n, _blocked(space.basis, idx), idx, space))
    return Resolution(alg, levels)


def override_basis(res, n, elements):
    """Replace the level-n basis by user elements spanning the same K^n."""
    alg = res.algebra
    idx = alg.path_index(n)
    level = res.level(n)
    vecs = []
    for f in elements:
        if not isinstance(f, TensorElement) or f.degree != n:
            raise SpanMismatch(f"element is not a degree-{n} tensor")
        if not f.is_uniform():
            raise SpanMismatch("override elements must be uniform")
        vecs.append(idx.vector({p: alg.field(c) for p, c in f.terms.items()}))
    span = Subspace.span(vecs, len(idx), alg.field)
    if span.dim != len(vecs):
        raise SpanMismatch(f"{len(vecs)} elements span only {span.dim} dimensions")
    if span != level.space:
        raise SpanMismatch(f"elements span a {span.dim}-dim space, K^{n} has dimension {level.space.dim}"
                           if span.dim != level.space.dim else f"elements do not span K^{n}")
    gens = tuple(TensorElement(n, idx.terms(v)) for v in vecs)
    new = ResolutionLevel(n, gens, tuple(f.endpoints() for f in gens), level.space)
    levels = list(res.levels)
    levels[n] = new
    return Resolution(alg, levels)


def differential_matrix(res, comult, n, d):
    """d^n : F^n_d → F^{n-1}_d on the bases {(i, π)} with π a normal path of Λ_{d-n} at t(f^n_i)."""
    alg = res.algebra
    src = fiber_basis(res, n, d)
    tgt = fiber_basis(res, n - 1, d)
    tpos = {b: k for k, b in enumerate(tgt)}
    table = comult.table(n, n - 1)
    arrows = [alg.element(f.terms) for f in res.level(1).generators]
    m = Matrix(len(tgt), len(src), field=alg.field)
    for col, (i, pi) in enumerate(src):
        lam = alg.element({pi: 1})
        for (p, q), c in table.row(i).items():
            img = alg.multiply(arrows[q], lam)
            for path, s in img.terms.items():
                k = tpos[(p, path)]
                y = m.rows[k].get(col, 0) + c * s
                if y:
                    m.rows[k][col] = y
                else:
                    m.rows[k].pop(col, None)
    return m


def fiber_basis(res, n, d):
    alg = res.algebra
    level = res.level(n)
    if d < n:
        return []
    piece = alg.graded_piece(d - n)
    out = []
    for i in range(len(level)):
        t = level.target(i)
        out.extend((i, p) for p in piece.normal if p.source == t)
    return out


def exactness_report(res, comult=None, N=None):
    """Homology of F^{n+1}_d → F^n_d → F^{n-1}_d for 0 ≤ n < N, n ≤ d ≤ N."""
    from .comult import Comultiplication
    from .linalg import rref

    comult = comult or Comultiplication(res)
    N = res.maxdeg if N is None else N
    ranks = {}

    def rank(n, d):
        if (n, d) not in ranks:
            if n == 0 or n > res.maxdeg or d < n:
                ranks[n, d] = 0
            else:
                ranks[n, d] = rref(differential_matrix(res, comult, n, d))[2]
        return ranks[n, d]

    report = []
    for n in range(0, N):
        for d in range(n, N + 1):
            dim = len(fiber_basis(res, n, d))
            ker = dim - rank(n, d)
            im = rank(n + 1, d)
            report.append({"n": n, "d": d, "dim": dim, "ker": ker, "im": im, "homology": ker - im})
    return report


def verify_exactness(res, comult=None, N=None):
    """Raise ExactnessFailure unless homology vanishes away from (n, d) = (0, 0)."""
    for f in (g for lev in res.levels for g in lev.generators):
        if any(p.length != f.degree for p in f.terms):
            raise ExactnessFailure(f.degree, None, None)
    report = exactness_report(res, comult, N)
    for row in report:
        expected = len(res.level(0)) if (row["n"], row["d"]) == (0, 0) else 0
        if row["homology"] != expected:
            raise ExactnessFailure(row["n"], row["d"], row["homology"])
    return report
