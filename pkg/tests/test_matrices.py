from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternlat.errors import SingularMatrix
from ternlat.matrices import (
    Mat,
    hnf_rows,
    intersect_row_modules,
    module_key,
    smith_normal_form,
)

ints = st.integers(min_value=-30, max_value=30)
rows3 = st.lists(st.lists(ints, min_size=3, max_size=3), min_size=3, max_size=3)


def test_identity_and_product():
    m = Mat([[1, 2], [3, 4]])
    assert Mat.identity(2) * m == m
    assert m * Mat.identity(2) == m


def test_inverse_round_trip():
    m = Mat([[2, 1, 0], [1, 4, 1], [0, 1, 6]])
    assert m * m.inv() == Mat.identity(3)


def test_singular_inverse_raises():
    with pytest.raises(SingularMatrix):
        Mat([[1, 2], [2, 4]]).inv()


def test_det_known():
    assert Mat([[2, 0, 0], [0, 2, 0], [0, 0, 32]]).det() == 128
    assert Mat([[0, 1], [1, 0]]).det() == -1


@given(rows3)
@settings(max_examples=60, deadline=None)
def test_det_transpose_invariant(rows):
    m = Mat(rows)
    assert m.det() == m.t.det()


@given(rows3, rows3)
@settings(max_examples=40, deadline=None)
def test_det_multiplicative(ra, rb):
    a, b = Mat(ra), Mat(rb)
    assert (a * b).det() == a.det() * b.det()


@given(rows3)
@settings(max_examples=60, deadline=None)
def test_rank_bounds_and_det(rows):
    m = Mat(rows)
    r = m.rank()
    assert 0 <= r <= 3
    assert (r == 3) == (m.det() != 0)


def test_apply_matches_product():
    m = Mat([[1, 2, 3], [0, 1, 4], [5, 0, 1]])
    v = (7, -2, 3)
    col = m * Mat([[x] for x in v])
    assert m.apply(v) == tuple(col[i, 0] for i in range(3))


def test_smith_form_divisibility():
    d = smith_normal_form(Mat([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]))
    assert len(d) == 3
    for a, b in zip(d, d[1:]):
        assert b % a == 0
    prod = d[0] * d[1] * d[2]
    assert prod == abs(int(Mat([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]).det()))


def test_smith_form_diag():
    assert smith_normal_form(Mat([[1, 0, 0], [0, 3, 0], [0, 0, 3]])) == (1, 3, 3)


def test_hnf_canonical_under_row_ops():
    base = [[2, 1, 0], [0, 3, 1], [0, 0, 5]]
    mixed = [
        [2, 1, 0],
        [2, 4, 1],            # r0 + r1
        [-2, -1, 5],          # r2 - r0
    ]
    assert hnf_rows(base) == hnf_rows(mixed)


@given(rows3)
@settings(max_examples=60, deadline=None)
def test_hnf_pivots_reduced(rows):
    form = hnf_rows(rows)
    pcols = [next(j for j, x in enumerate(r) if x) for r in form]
    assert pcols == sorted(pcols)
    for k, r in enumerate(form):
        assert r[pcols[k]] > 0
        for above in form[:k]:
            assert 0 <= above[pcols[k]] < r[pcols[k]]


def test_module_key_scales_out_denominator():
    a = [[Fraction(1, 2), 0], [0, Fraction(1, 2)]]
    b = [[Fraction(1, 2), 0], [Fraction(1, 2), Fraction(1, 2)]]
    assert module_key(a) == module_key(b)


def test_intersect_modules_simple():
    a = [[2, 0, 0], [0, 1, 0], [0, 0, 1]]
    b = [[1, 0, 0], [0, 3, 0], [0, 0, 1]]
    assert intersect_row_modules(a, b) == ((2, 0, 0), (0, 3, 0), (0, 0, 1))


def test_intersect_modules_skew():
    a = [[1, 1, 0], [0, 2, 0], [0, 0, 1]]
    got = intersect_row_modules(a, [[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    # x + y even and both even forces membership of exactly these rows
    assert got == hnf_rows([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
