from math import comb

import pytest

from quiverkoszul.algebra import Algebra, TruncationError
from quiverkoszul.hochschild import Hochschild
from quiverkoszul.koszul_dual import ExtElement, KoszulDual
from quiverkoszul.linalg import Matrix, nullspace
from quiverkoszul.presentation import parse
from quiverkoszul.resolution import compute_levels

from conftest import KOSZUL, session


def test_ex51_degree_one_products():
    E = session("ex51")[2]
    X, Y = E.basis_element(1, 0), E.basis_element(1, 1)
    assert E.product(X, X) == E.basis_element(2, 0)
    assert E.product(X, Y) == E.product(Y, X) == E.basis_element(2, 1)
    assert not E.product(Y, Y)


def test_vertex_idempotents():
    alg = Algebra(parse("vertex u\nvertex v\nvertex w\narrow a : u -> v\narrow b : v -> w\n"
                        "relation a.b\nmaxdeg 3\n"))
    E = KoszulDual(compute_levels(alg))
    level = E.resolution.level(1)
    for l in range(3):
        e = E.basis_element(0, l)
        for i in range(2):
            f = E.basis_element(1, i)
            assert E.product(e, f) == (f if level.target(i) == l else E.zero(1))
            assert E.product(f, e) == (f if level.source(i) == l else E.zero(1))
    one = E.one()
    assert all(E.product(one, E.basis_element(2, 0)) == E.basis_element(2, 0) for _ in range(1))


def test_ex52_is_the_opposite_path_algebra():
    res, _, E = session("ex52")
    assert [E.dim(n) for n in range(7)] == [2 ** n for n in range(7)]
    deg1 = [E.basis_element(1, i) for i in range(2)]
    prods = [E.product(a, b).coords for a in deg1 for b in deg1]
    m = Matrix.from_rows([list(p) for p in prods], 4)
    assert not nullspace(m.transpose())
    # f̂ of the path j1...jn is the reversed product f̂_jn ... f̂_j1
    for n in (2, 3, 4):
        for i, path in enumerate(res.algebra.path_index(n).paths):
            x = E.one()
            for j in reversed(path.arrows):
                x = E.product(x, E.basis_element(1, j))
            assert x == E.basis_element(n, i)


@pytest.mark.parametrize("name", KOSZUL)
def test_associativity(name):
    E = session(name)[2]
    assert E.verify_associativity(6) is None


def test_dimensions():
    assert [session("ex53")[2].dim(n) for n in range(7)] == [comb(n + 2, 2) for n in range(7)]


def brute_centre_dim(E, n, N):
    """Solve z y = (-1)^{nd} y z against every basis y of degree ≤ N - n."""
    rows = []
    for d in range(N - n + 1):
        sign = -1 if (n * d) % 2 else 1
        for k in range(E.dim(d)):
            y = E.basis_element(d, k)
            cols = [E.product(E.basis_element(n, i), y) - E.product(y, E.basis_element(n, i)).scale(sign)
                    for i in range(E.dim(n))]
            for l in range(E.dim(n + d)):
                rows.append({i: c.coords[l] for i, c in enumerate(cols) if c.coords[l]})
    return len(nullspace(Matrix.from_rows(rows, E.dim(n), E.field)))


@pytest.mark.parametrize("name, dims", [
    ("ex53_c2", [1, 0, 1, 0, 1]),
    ("ex53", [1, 0, 0, 0, 0]),
    ("ex51", [1, 0, 2, 0, 2]),
    ("ex52", [1, 0, 0, 0, 0]),
])
def test_graded_centre(name, dims):
    E = session(name)[2]
    assert [E.graded_centre(n).dim for n in range(5)] == dims
    for n in range(5):
        assert brute_centre_dim(E, n, 6) == dims[n]
        assert E.verify_centre_full(n) is None


def test_graded_centre_root_of_unity():
    E = session("ex53_cm1")[2]
    assert E.graded_centre(2).dim == 3
    assert E.graded_centre(4).dim == 6


def test_centre_needs_next_level():
    E = session("ex53")[2]
    with pytest.raises(TruncationError):
        E.graded_centre(E.maxdeg)


def test_phi_on_scalar_cochains():
    res, hh, E = session("ex53_c2")
    level = res.level(2)
    alphas = [3, 0, -1, 0, 0, 2]
    c = hh.cochain(2, [hh.algebra.vertex(level.target(i)).scale(a) for i, a in enumerate(alphas)])
    assert E.phi(c) == E.element(2, alphas)


def test_phi_kills_coboundaries_and_theta():
    res, hh, E = session("ex51")
    alg = hh.algebra
    theta = hh.cochain(1, [alg.zero(), alg.from_names(["y"])])
    assert not E.phi(theta)
    for n in range(3):
        for w in range(3):
            for k in range(len(hh.basis(n, w))):
                assert not E.phi(hh.coboundary(n, hh.from_vector(n, w, {k: 1})))
    with pytest.raises(TypeError):
        E.phi(hh.reduce_class(theta))


@pytest.mark.parametrize("name", KOSZUL)
def test_phi_image_is_graded_centre(name):
    res, hh, E = session(name)
    for n in range(5):
        assert E.verify_image_equals_graded_centre(hh, n) is None


def test_phi_image_dimensions_ex51():
    res, hh, E = session("ex51")
    assert E.phi_image(hh, 2).dim == E.graded_centre(2).dim == 2


@pytest.mark.parametrize("name", KOSZUL)
def test_phi_is_multiplicative(name):
    res, hh, E = session(name)
    reps = {n: [hh.from_vector(n, 0, v) for v in hh.cocycle_space(n, 0).basis] for n in range(3)}
    for n, xs in reps.items():
        for m, ys in reps.items():
            if n + m > 4:
                continue
            for x in xs:
                for y in ys:
                    assert E.phi(hh.cup(x, y)) == E.product(E.phi(x), E.phi(y))


@pytest.mark.parametrize("name", KOSZUL)
def test_lifting_identity(name):
    res, _, E = session(name)
    for n in range(res.maxdeg):
        for r in range(res.maxdeg - n):
            assert E.verify_lifting_identity(n, r) is None, (n, r)


def test_lifting_identity_detects_corruption():
    from quiverkoszul.comult import ComultSlice, Comultiplication
    res = session("ex51")[0]
    comult = Comultiplication(res)
    good = comult.table(3, 1)
    comult._slices[3, 1] = ComultSlice(3, 1, [good.rows[0], {(0, 1): 1, (1, 0): 3}])
    assert KoszulDual(res, comult).verify_lifting_identity(1, 1) is not None


def test_structure_json():
    E = session("ex51")[2]
    assert E.structure_json(1, 1) == {"m": 1, "n": 1, "entries": [
        {"i": 0, "j": 0, "l": 0, "coeff": "1"},
        {"i": 0, "j": 1, "l": 1, "coeff": "1"},
        {"i": 1, "j": 0, "l": 1, "coeff": "1"}]}
    assert E.centre_json(2) == {"degree": 2, "dim": 2, "basis": [["1", "0"], ["0", "1"]]}


def test_ext_element_arithmetic():
    E = session("ex53")[2]
    a, b = E.basis_element(1, 0), E.basis_element(1, 2)
    assert (a + b - a) == b and a.scale(0) == E.zero(1)
    with pytest.raises(ValueError):
        a + E.basis_element(2, 0)
    with pytest.raises(ValueError):
        E.element(1, [1, 2])
    with pytest.raises(TruncationError):
        E.product(E.basis_element(4, 0), E.basis_element(3, 0))
    assert isinstance(E.product(a, b), ExtElement)


def test_hochschild_and_dual_share_tables():
    res, hh, _ = session("ex53")
    assert KoszulDual(hh).comult is hh.comult
    assert KoszulDual(res).comult is not hh.comult
    assert isinstance(hh, Hochschild)
