from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from ternlat.catalog import DIAG_1_1_16, TWIN_1_1_16
from ternlat.counting import (
    aut_order,
    clear_theta_caches,
    embed_count,
    is_isometric,
    rep_count,
    rep_count_q,
    theta_prefix,
    theta_vector,
    vectors_of_norm,
)
from ternlat.lattices import TernaryLattice

coeff = st.integers(min_value=1, max_value=10)

# classical three-squares counts
R3 = {0: 1, 1: 6, 2: 12, 3: 8, 4: 6, 5: 24, 6: 24, 7: 0, 8: 12, 9: 30}


def test_sum_of_three_squares_table():
    cube = TernaryLattice.diagonal(1, 1, 1)
    vec = theta_vector(cube, 9)
    assert list(vec) == [R3[n] for n in range(10)]


def test_rep_count_basics():
    lat = DIAG_1_1_16
    assert rep_count(lat, 0) == 1
    assert rep_count(lat, 1) == 4
    assert rep_count(lat, -3) == 0


def test_rep_count_q_off_integers():
    lat = DIAG_1_1_16
    assert rep_count_q(lat, Fraction(1, 2)) == 0
    assert rep_count_q(lat, Fraction(4, 2)) == rep_count(lat, 2)


def test_theta_prefix_drops_constant_term():
    cube = TernaryLattice.diagonal(1, 1, 1)
    assert theta_prefix(cube, 4) == (6, 12, 8, 6)


@given(coeff, coeff, coeff, st.integers(min_value=0, max_value=25))
@settings(max_examples=40, deadline=None)
def test_count_matches_enumeration(a, b, c, n):
    lat = TernaryLattice.diagonal(a, b, c)
    vecs = vectors_of_norm(lat, n)
    assert rep_count(lat, n) == len(vecs)
    assert all(lat.quad(v) == n for v in vecs)


@given(coeff, coeff, coeff, st.sampled_from([2, 3, 5]),
       st.integers(min_value=0, max_value=20))
@settings(max_examples=40, deadline=None)
def test_scaled_counts_transport(a, b, c, p, n):
    lat = TernaryLattice.diagonal(a, b, c)
    assert rep_count(lat.scale(p), p * n) == rep_count(lat, n)
    if n % p:
        assert rep_count(lat.scale(p), n) == 0


def test_cache_growth_consistency():
    clear_theta_caches()
    lat = TernaryLattice.diagonal(2, 3, 7)
    small = list(theta_vector(lat, 5))
    big = list(theta_vector(lat, 40))
    assert big[:6] == small
    clear_theta_caches()
    assert list(theta_vector(lat, 40)) == big


def test_aut_orders():
    assert aut_order(TernaryLattice.diagonal(1, 1, 1)) == 48
    assert aut_order(TernaryLattice.diagonal(1, 2, 3)) == 8
    assert aut_order(DIAG_1_1_16) == 16
    assert aut_order(TWIN_1_1_16) == 16


def test_self_embeddings_are_automorphisms():
    for lat in (DIAG_1_1_16, TernaryLattice.diagonal(1, 2, 3)):
        assert embed_count(lat, lat) == aut_order(lat)


def test_isometry_detects_basis_change():
    lat = TernaryLattice.diagonal(2, 3, 5)
    u = ((1, 0, 1), (0, 1, 0), (1, 1, 2))
    assert is_isometric(lat, lat.transformed(u))
    assert not is_isometric(DIAG_1_1_16, TWIN_1_1_16)


def test_sublattice_embeds_but_not_back():
    big = TernaryLattice.diagonal(1, 1, 2)
    small = big.scale(9)
    assert embed_count(small, big) > 0
    assert embed_count(big, small) == 0
