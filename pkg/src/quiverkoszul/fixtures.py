"""Built-in example presentations and hand-chosen resolution bases for them."""
from importlib import resources

from .algebra import Algebra
from .presentation import TensorElement, compose, parse
from .resolution import compute_levels, override_basis

NAMES = ("ex51", "ex52", "ex53", "ex53_c2", "ex53_cm1", "nonkoszul")


def text(name):
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files(__package__).joinpath("fixtures", f"{name}.kz").read_text(encoding="utf-8")


def load(name, maxdeg=None):
    pres = parse(text(name))
    if maxdeg is not None:
        pres.maxdeg = maxdeg
    return pres


def quantum_exterior(a, b, c, field="Q", maxdeg=6):
    """k<x,y,z>/(x², y², z², xy + a yx, xz + b zx, yz + c zy) as a Presentation."""
    lines = [f"field {field}", "vertex o"]
    lines += [f"arrow {v} : o -> o" for v in "xyz"]
    lines += [f"param a = {a}", f"param b = {b}", f"param c = {c}"]
    lines += ["relation x.x", "relation y.y", "relation z.z",
              "relation x.y + a*y.x", "relation x.z + b*z.x", "relation y.z + c*z.y",
              f"maxdeg {maxdeg}"]
    return parse("\n".join(lines) + "\n")


def _word(quiver, names):
    return quiver.path_from_names(list(names))


def ex51_basis(alg, n):
    """f^n_0 = xⁿ and f^n_1 = Σ_{a+b=n-1} xᵃ y xᵇ."""
    q = alg.quiver
    one = alg.field.one
    first = TensorElement(n, {_word(q, "x" * n): one})
    second = TensorElement(n, {_word(q, "x" * a + "y" + "x" * (n - 1 - a)): one for a in range(n)})
    return [first, second]


def pinned(res, basis_fn, start=2):
    """Replace every level ≥ start by basis_fn(alg, n)."""
    for n in range(start, res.maxdeg + 1):
        res = override_basis(res, n, basis_fn(res.algebra, n))
    return res


def triples(n):
    """(u, v, w) with u+v+w = n, ordered with large powers of x first."""
    return [(u, v, n - u - v) for u in range(n, -1, -1) for v in range(n - u, -1, -1)]


def ex53_basis(alg, n):
    """f^n_{u,v,w} = a^v b^w f^{n-1}_{u-1,v,w} x + c^w f^{n-1}_{u,v-1,w} y + f^{n-1}_{u,v,w-1} z."""
    a, b, c = (alg.presentation.params[k] for k in "abc")
    q = alg.quiver
    x, y, z = (q.arrow_path(i) for i in range(3))
    level = {(0, 0, 0): {q.vertex_path(0): alg.field.one}}
    for m in range(1, n + 1):
        new = {}
        for u, v, w in triples(m):
            t = {}
            for prev, arrow, coeff in (((u - 1, v, w), x, a ** v * b ** w),
                                       ((u, v - 1, w), y, c ** w),
                                       ((u, v, w - 1), z, 1)):
                for p, s in level.get(prev, {}).items():
                    r = compose(p, arrow)
                    t[r] = t.get(r, 0) + coeff * s
            new[u, v, w] = {p: s for p, s in t.items() if s}
        level = new
    return [TensorElement(n, level[key]) for key in triples(n)]


def ex53_coefficients(params, n, r):
    """c_{pq}(n, i, r) from the closed formula, indexed by positions in triples()."""
    a, b, c = params
    top, left, right = triples(n), triples(r), triples(n - r)
    lpos = {t: k for k, t in enumerate(left)}
    rpos = {t: k for k, t in enumerate(right)}
    out = []
    for u, v, w in top:
        row = {}
        for s in range(max(0, u + r - n), min(u, r) + 1):
            for t in range(max(0, v + r - n), min(v, r) + 1):
                if r - s - t < 0 or w + s + t - r < 0:
                    continue
                coeff = a ** ((u - s) * t) * b ** ((u - s) * (r - s - t)) * c ** ((v - t) * (r - s - t))
                row[lpos[s, t, r - s - t], rpos[u - s, v - t, w + s + t - r]] = coeff
        out.append(row)
    return out


def resolution(name_or_pres, maxdeg=None, pin=True):
    """Algebra and resolution for a fixture, with the hand-chosen bases where known."""
    pres = load(name_or_pres, maxdeg) if isinstance(name_or_pres, str) else name_or_pres
    alg = Algebra(pres)
    res = compute_levels(alg)
    if pin and isinstance(name_or_pres, str):
        if name_or_pres == "ex51":
            res = pinned(res, ex51_basis)
        elif name_or_pres.startswith("ex53"):
            res = pinned(res, ex53_basis)
    return res
