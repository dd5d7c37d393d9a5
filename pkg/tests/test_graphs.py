"""Multigraph construction against the hand-checked matrix data."""

import pytest

from ternlat.catalog import DIAG_1_1_2, DIAG_1_1_16
from ternlat.errors import EndpointNotFound, PreconditionViolated
from ternlat.graphs import (
    ClassGraph,
    anzahlmatrix,
    bipartition,
    build_graph,
    classify_type,
    components,
    extended_n_matrix,
    has_walk_of_length,
    incidence_counts,
    n_matrix,
    neighbor_count_matrix,
    spinor_partition,
    walk_parities,
)
from ternlat.towers import GenusLevel, genus_tower


@pytest.fixture(scope="module")
def tower11():
    return genus_tower(DIAG_1_1_16, 11, 1)


@pytest.fixture(scope="module")
def tower3():
    return genus_tower(DIAG_1_1_2, 3, 3)


@pytest.fixture(scope="module")
def graph11(tower11):
    return build_graph(tower11[0], tower11[1])


def test_graph_shape_eleven(graph11):
    assert graph11.order == 2 and graph11.size == 2
    assert graph11.incidence == ((1, 1), (1, 1))
    assert set(graph11.endpoints) == {(0, 1)}


def test_incidence_against_embedding_counts(graph11):
    assert incidence_counts(graph11) == graph11.incidence


def test_n_matrix_eleven(graph11):
    mat = n_matrix(graph11)
    assert sorted(mat[0], reverse=True) == [8, 4]
    assert mat[0] == mat[1]


def test_anzahl_eleven(tower11):
    pi = anzahlmatrix(tower11[0], 11)
    assert pi == ((0, 12), (12, 0))
    assert neighbor_count_matrix(tower11[0], 11) == pi


def test_prop_identity_eleven(tower11, graph11):
    pi = anzahlmatrix(tower11[0], 11)
    nm = n_matrix(graph11)
    mm = graph11.incidence
    prod = [[sum(mm[i][k] * nm[j][k] for k in range(graph11.size))
             for j in range(2)] for i in range(2)]
    for i in range(2):
        for j in range(2):
            assert pi[i][j] + (12 if i == j else 0) == prod[i][j]


def test_type_eleven(graph11):
    assert classify_type(graph11) == "E-type"
    part = spinor_partition(graph11)
    assert part.cspn == ((0, 1),)
    assert sorted(part.spn) == [(0,), (1,)]


def test_extended_n_matrix_eleven(graph11):
    sides = bipartition(graph11, (0, 1))
    ext = extended_n_matrix(graph11, sides)
    assert ext[0][:-1] == ext[1][:-1]
    assert ext[0][-1] == 16 and ext[1][-1] == -16


def test_ground_graph_three_is_loop(tower3):
    g = build_graph(tower3[0], tower3[1])
    assert g.incidence == ((2,),)
    assert g.endpoints == ((0, 0),)
    assert classify_type(g) == "O-type"


def test_level_one_graph_three(tower3):
    g = build_graph(tower3[1], tower3[2])
    assert g.order == 1 and g.size == 2
    assert classify_type(g, ground_type="O-type") == "O-type"


def test_level_two_graph_three(tower3):
    g = build_graph(tower3[2], tower3[3])
    assert g.order == 2 and g.size == 4
    assert classify_type(g, ground_type="O-type") == "O-type"
    assert components(g) == ((0, 1),)
    for i in range(2):
        for j in range(2):
            assert walk_parities(g, i, j) == frozenset({0, 1})
    assert has_walk_of_length(g, 0, 0, 4)
    assert has_walk_of_length(g, 0, 1, 4)


def test_mismatched_levels_rejected(tower11, tower3):
    with pytest.raises(PreconditionViolated):
        build_graph(tower11[0], tower3[1])
    with pytest.raises(PreconditionViolated):
        build_graph(tower3[0], tower3[2])


def test_missing_endpoint_detected(tower11):
    crippled = GenusLevel(DIAG_1_1_16, 11, 0, tower11[0].classes[:1])
    with pytest.raises(EndpointNotFound):
        build_graph(crippled, tower11[1])


def test_anzahl_rejects_bad_calls(tower11, tower3):
    with pytest.raises(PreconditionViolated):
        anzahlmatrix(tower11[1], 11)
    with pytest.raises(PreconditionViolated):
        anzahlmatrix(tower3[0], 2)
