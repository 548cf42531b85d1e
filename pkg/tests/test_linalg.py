import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quiverkoszul import _pykernels, linalg
from quiverkoszul.linalg import (DimensionMismatch, Matrix, NotInSpan, Subspace, intersect, inverse,
                                 nullspace, rref, solve_in_span)
from quiverkoszul.scalars import QQ, Field

F2 = Field(2)


def test_rref_examples():
    r, piv, rank = rref(Matrix.from_rows([[2, 4], [1, 2]]))
    assert r.to_dense() == [[1, 2]] and piv == [0] and rank == 1
    eye = Matrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert rref(eye)[0] == eye and rref(eye)[2] == 3
    r, _, rank = rref(Matrix.from_rows([[1, 1], [1, -1]], field=F2))
    assert r.to_dense() == [[1, 1]] and rank == 1


def test_intersection_examples():
    def span(*vs):
        return Subspace.span([dict(enumerate(v)) for v in vs], 3)
    e1, e2, e3 = [1, 0, 0], [0, 1, 0], [0, 0, 1]
    assert intersect(span(e1, e2), span(e2, e3)) == span(e2)
    x = span([1, 2, 3], [0, 1, 1])
    assert x.intersect(x) == x
    assert intersect(span(e1), span(e2)).dim == 0
    with pytest.raises(DimensionMismatch):
        intersect(span(e1), Subspace.zero(4))


def test_solve_examples():
    assert solve_in_span([{0: 1, 1: 1}, {1: 1}], {0: 1}) == [1, -1]
    assert solve_in_span([], {}) == []
    with pytest.raises(NotInSpan):
        solve_in_span([{0: 1}], {1: 1})


def test_nullspace_and_inverse():
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6]])
    for v in nullspace(m):
        assert m.apply(v) == {}
    assert len(nullspace(m)) == 2
    a = Matrix.from_rows([[2, 1], [1, 1]])
    inv = inverse(a)
    assert inv.to_dense() == [[1, -1], [-1, 2]]
    with pytest.raises(ZeroDivisionError):
        inverse(Matrix.from_rows([[1, 2], [2, 4]]))


def test_coordinates_and_reduce():
    s = Subspace.span([{0: 1, 2: 1}, {1: 1, 2: 2}], 3)
    assert s.coordinates({0: 2, 1: 1, 2: 4}) == [2, 1]
    assert {0: 1} not in s
    with pytest.raises(NotInSpan):
        s.coordinates({2: 1})


def matrices(field_values=st.integers(-3, 3), max_rows=6, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(field_values, min_size=c, max_size=c), min_size=1, max_size=max_rows)
        .map(lambda rows: (rows, c)))


@given(matrices())
def test_rref_is_idempotent_and_keeps_row_space(data):
    rows, ncols = data
    m = Matrix.from_rows(rows, ncols)
    r, piv, rank = rref(m)
    assert rref(r)[0] == r
    assert piv == sorted(piv) and rank == len(piv)
    for row in m.rows:
        solve_in_span(r.rows, row)
    for row in r.rows:
        solve_in_span(m.rows, row)


@given(matrices(), matrices())
def test_dimension_formula(a, b):
    n = max(a[1], b[1])
    sa = Subspace.span(Matrix.from_rows(a[0], n).rows, n)
    sb = Subspace.span(Matrix.from_rows(b[0], n).rows, n)
    meet = intersect(sa, sb)
    assert meet.dim + (sa + sb).dim == sa.dim + sb.dim
    assert sa.contains_subspace(meet) and sb.contains_subspace(meet)


@given(matrices(), st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_solve_recombines_exactly(data, coeffs):
    rows, ncols = data
    vecs = Matrix.from_rows(rows, ncols).rows
    target = {}
    for v, c in zip(vecs, coeffs):
        linalg.add_scaled(target, v, Fraction(c))
    x = solve_in_span(vecs, target)
    back = {}
    for v, c in zip(vecs, x):
        linalg.add_scaled(back, v, c)
    assert back == target


@given(matrices(st.integers(0, 4)))
def test_mod_p_rank_bounded_by_rational_rank(data):
    rows, ncols = data
    q = rref(Matrix.from_rows(rows, ncols))[2]
    p = rref(Matrix.from_rows(rows, ncols, field=Field(5)))[2]
    assert p <= q



def _compiled():
    try:
        from quiverkoszul import _ckernels
    except ImportError:
        pytest.skip("compiled kernels not built")
    return _ckernels


def test_backend_selected():
    assert linalg.BACKEND in ("compiled", "python")


@settings(max_examples=60)
@given(matrices(st.integers(-9, 9), 8, 8), st.sampled_from([2, 3, 7, 32003, 2147483647]))
def test_compiled_kernels_agree_with_python(data, p):
    ck = _compiled()
    rows, _ = data
    sparse = [{k: x for k, x in enumerate(r) if x} for r in rows]
    assert ck.rref_modp(sparse, p) == _pykernels.rref_modp(sparse, p)
    frac = [{k: Fraction(x, 1 + abs(k)) for k, x in r.items()} for r in sparse]
    assert ck.rref_rational(frac) == _pykernels.rref_rational(frac)


def test_compiled_sparse_path_agrees():
    ck = _compiled()
    rng = random.Random(3)
    rows = [{rng.randrange(3000): rng.randrange(1, 101) for _ in range(4)} for _ in range(1500)]
    assert ck.rref_modp(rows, 101) == _pykernels.rref_modp(rows, 101)


def test_large_modulus_uses_python_kernel():
    F = Field(2**61 - 1)
    r, piv, rank = rref(Matrix.from_rows([[2, 3], [4, 6 + 1]], field=F))
    assert rank == 2 and r.to_dense() == [[1, 0], [0, 1]]


def test_rational_rref_is_canonical():
    m = Matrix.from_rows([[Fraction(1, 3), 2, 0], [0, Fraction(-1, 7), 5], [1, 0, 1]])
    r, _, _ = rref(m)
    assert r == rref(Matrix.from_rows(list(reversed(m.to_dense()))))[0]
    assert all(row[c] == 1 for row, c in zip(r.rows, rref(m)[1]))
    assert r.field == QQ
