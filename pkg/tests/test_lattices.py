import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternlat.catalog import DIAG_1_1_16, TWIN_1_1_16
from ternlat.errors import NonIntegralScale, PreconditionViolated
from ternlat.lattices import (
    TernaryLattice,
    canonical_key,
    lattice_from_dict,
    lattice_to_dict,
    load_form,
)

coeff = st.integers(min_value=1, max_value=12)


def test_diagonal_constructor():
    lat = TernaryLattice.diagonal(1, 1, 16)
    assert lat.gram2 == ((2, 0, 0), (0, 2, 0), (0, 0, 32))
    assert lat.det2 == 128
    assert lat.disc == 16
    assert lat.disc4 == 64


def test_ctor_rejects_bad_grams():
    with pytest.raises(ValueError):
        TernaryLattice(((1, 0, 0), (0, 2, 0), (0, 0, 2)))   # odd diagonal
    with pytest.raises(ValueError):
        TernaryLattice(((2, 1, 0), (0, 2, 0), (0, 0, 2)))   # asymmetric
    with pytest.raises(ValueError):
        TernaryLattice(((2, 0, 0), (0, -2, 0), (0, 0, 2)))  # indefinite


def test_quad_values():
    lat = TWIN_1_1_16
    assert lat.quad((1, 0, 0)) == lat.gram2[0][0] // 2
    assert lat.quad((0, 0, 0)) == 0


@given(coeff, coeff, coeff)
@settings(max_examples=40, deadline=None)
def test_quad_parallelogram_law(a, b, c):
    lat = TernaryLattice.diagonal(a, b, c)
    x, y = (1, 2, -1), (0, 3, 1)
    s = tuple(u + v for u, v in zip(x, y))
    d = tuple(u - v for u, v in zip(x, y))
    assert lat.quad(s) + lat.quad(d) == 2 * lat.quad(x) + 2 * lat.quad(y)


def test_scale_integer_and_fraction():
    lat = TernaryLattice.diagonal(1, 1, 2)
    assert lat.scale(3).gram2 == ((6, 0, 0), (0, 6, 0), (0, 0, 12))
    tripled = lat.scale(3)
    assert tripled.scale(Fraction(1, 3)) == lat


def test_scale_rejections():
    lat = TernaryLattice.diagonal(1, 1, 2)
    with pytest.raises(NonIntegralScale):
        lat.scale(Fraction(1, 3))
    with pytest.raises(PreconditionViolated):
        lat.scale(0)


def test_transformed_det_preserved():
    lat = TernaryLattice.diagonal(2, 3, 5)
    u = ((1, 1, 0), (0, 1, 0), (0, 2, 1))
    assert lat.transformed(u).det2 == lat.det2


def test_dual_round_trip():
    lat = TernaryLattice.diagonal(1, 1, 16)
    dl = lat.dual()
    assert dl.disc * lat.disc == 1
    back = dl.dual().as_integral()
    assert back == lat


def test_dual_as_integral_rejects_denominators():
    lat = TernaryLattice.diagonal(1, 1, 16)
    with pytest.raises(NonIntegralScale):
        lat.dual().as_integral()


def test_canonical_form_isometry_invariant():
    lat = TernaryLattice.diagonal(2, 3, 5)
    u = ((0, 1, 0), (1, 0, 1), (2, 1, 1))   # det -1 change of basis
    assert lat.transformed(u).canonical_form() == lat.canonical_form()


def test_canonical_key_separates_classes():
    # same discriminant, inequivalent forms
    assert canonical_key(DIAG_1_1_16) != canonical_key(TWIN_1_1_16)
    assert canonical_key(DIAG_1_1_16) == canonical_key(
        DIAG_1_1_16.transformed(((1, 0, 4), (0, 1, 0), (0, 0, 1))))


@given(coeff, coeff, coeff)
@settings(max_examples=30, deadline=None)
def test_reduced_gram_diagonal_sorted(a, b, c):
    lat = TernaryLattice.diagonal(a, b, c)
    red = lat.reduced_gram()
    diag = [red[i][i] for i in range(3)]
    assert diag == sorted(diag)
    assert diag[0] == 2 * min(a, b, c)


def test_dict_round_trip():
    lat = TWIN_1_1_16
    assert lattice_from_dict(lattice_to_dict(lat)) == lat
    assert lattice_from_dict({"diag": [1, 1, 16]}) == DIAG_1_1_16


def test_load_form(tmp_path):
    path = tmp_path / "form.json"
    path.write_text(json.dumps({"gram2": [list(r) for r in TWIN_1_1_16.gram2]}))
    assert load_form(str(path)) == TWIN_1_1_16


def test_from_dict_rejects_garbage():
    with pytest.raises(ValueError):
        lattice_from_dict({"rows": [[2]]})
    with pytest.raises(ValueError):
        lattice_from_dict({"diag": [1, 1]})
