"""
Tests for triangle and quadrangle counts and the structural coefficients,
checked against exhaustive enumeration.
"""

import time
from itertools import combinations

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from semnet_analyzer.graph import Graph, build_graph
from semnet_analyzer.motifs import (coefficient_table,
                                    complementarity_coefficients,
                                    graph_coefficients,
                                    graph_level_coefficients,
                                    motif_counts,
                                    similarity_coefficients,
                                    structural_coefficients)
from semnet_analyzer.test_utils import (brute_force_quadruples,
                                        brute_force_triples,
                                        count_chordless_quadrangles,
                                        count_triangles,
                                        random_graph)
from semnet_analyzer.utils import make_rng


def _complete_graph(n):
    rows, cols = np.triu_indices(n, k=1)
    return Graph.from_arrays(n, rows, cols)


def _complete_bipartite(a, b):
    rows, cols = np.meshgrid(np.arange(a), np.arange(a, a + b), indexing='ij')
    return Graph.from_arrays(a + b, rows.ravel(), cols.ravel())


def _cycle(n):
    return Graph.from_arrays(n, np.arange(n), (np.arange(n) + 1) % n)


def _all_graphs(n_nodes):
    pairs = np.array(list(combinations(range(n_nodes), 2)))
    for mask in range(2 ** len(pairs)):
        chosen = pairs[[bool(mask >> bit & 1) for bit in range(len(pairs))]].reshape(-1, 2)
        yield Graph.from_arrays(n_nodes, chosen[:, 0], chosen[:, 1])


def _check_against_enumeration(g):
    similarity, complementarity = structural_coefficients(g)
    triples = brute_force_triples(g)
    quadruples = brute_force_quadruples(g)

    assert_array_equal(similarity.T, triples['T'])
    assert_array_equal(similarity.t_wedge, triples['t_wedge'])
    assert_array_equal(similarity.t_head, triples['t_head'])
    assert_array_equal(complementarity.Q, quadruples['Q'])
    assert_array_equal(complementarity.q_wedge, quadruples['q_wedge'])
    assert_array_equal(complementarity.q_head, quadruples['q_head'])

    denominator = quadruples['q_wedge'] + quadruples['q_head']
    expected_c = np.divide(4. * quadruples['Q'], denominator,
                           out=np.zeros(g.n_nodes), where=denominator > 0)
    assert_allclose(complementarity.c, expected_c, rtol=0, atol=1e-12)


class TestEnumeration:

    def test_random_graphs(self):

        rng = make_rng(0)
        for seed in range(500):
            n_nodes = int(rng.integers(2, 9))
            _check_against_enumeration(random_graph(n_nodes, rng.uniform(0.2, 0.8), seed))

    @pytest.mark.parametrize('n_nodes', [3, 4, 5])
    def test_all_small_graphs(self, n_nodes):

        for g in _all_graphs(n_nodes):
            _check_against_enumeration(g)

    def test_totals(self):

        for seed in range(20):
            g = random_graph(9, 0.45, seed)
            T, Q = motif_counts(g)

            assert T.sum() == 3 * count_triangles(g)
            assert Q.sum() == 4 * count_chordless_quadrangles(g)


@pytest.mark.parametrize('n', range(3, 9))
def test_complete_graph_is_fully_similar(n):

    similarity, complementarity = structural_coefficients(_complete_graph(n))

    assert_allclose(similarity.s, 1.0)
    assert_allclose(similarity.s_wedge, 1.0)
    assert_allclose(similarity.s_head, 1.0)
    assert_array_equal(complementarity.Q, 0)
    assert complementarity.c_G == 0.0


@pytest.mark.parametrize('a', range(2, 6))
@pytest.mark.parametrize('b', range(2, 6))
def test_complete_bipartite_graph_is_fully_complementary(a, b):

    similarity, complementarity = structural_coefficients(_complete_bipartite(a, b))

    assert_array_equal(complementarity.Q[:a], (a - 1) * b * (b - 1) // 2)
    assert_array_equal(complementarity.Q[a:], (b - 1) * a * (a - 1) // 2)
    assert_allclose(complementarity.c, 1.0)
    assert similarity.s_G == 0.0


def test_square():

    complementarity = complementarity_coefficients(_cycle(4))

    assert_array_equal(complementarity.Q, 1)
    assert_array_equal(complementarity.q_wedge, 2)
    assert_array_equal(complementarity.q_head, 2)
    assert_allclose(complementarity.c, 1.0)
    assert_array_equal(complementarity.n_ij, [0] * 8)


def test_long_cycle_has_no_motifs():

    similarity, complementarity = structural_coefficients(_cycle(7))

    assert similarity.s_G == 0.0
    assert complementarity.c_G == 0.0
    assert_array_equal(complementarity.q_wedge, 2)


def test_vanishing_denominators_give_zero():

    similarity, complementarity = structural_coefficients(build_graph([('a', 'b')], nodes=['z']))

    assert_array_equal(similarity.s, 0.0)
    assert_array_equal(complementarity.c, 0.0)
    assert not np.any(np.isnan(similarity.s_head))


def test_graph_level_coefficients_match_node_means():

    g = random_graph(60, 0.1, 5)
    similarity, complementarity = structural_coefficients(g)

    assert graph_level_coefficients(g) == pytest.approx(graph_coefficients(similarity, complementarity))
    assert similarity_coefficients(g).s_G == pytest.approx(similarity.s_G)


def test_graph_level_coefficients_of_empty_graph():

    assert graph_level_coefficients(build_graph([])) == (0.0, 0.0)


def test_coefficients_ignore_node_order():

    g = random_graph(40, 0.15, 9)
    perm = make_rng(2).permutation(g.n_nodes)
    edges = g.edges()
    shuffled = Graph.from_arrays(g.n_nodes, perm[edges[:, 0]], perm[edges[:, 1]])
    similarity, complementarity = structural_coefficients(g)
    shuffled_similarity, shuffled_complementarity = structural_coefficients(shuffled)

    assert_allclose(shuffled_similarity.s[perm], similarity.s, rtol=0, atol=1e-12)
    assert_allclose(shuffled_complementarity.c[perm], complementarity.c, rtol=0, atol=1e-12)


def test_chunked_counts_match_serial_counts():

    g = random_graph(120, 0.06, 8)
    serial = motif_counts(g)
    chunked = motif_counts(g, n_jobs=2, chunk_size=25)

    assert_array_equal(serial[0], chunked[0])
    assert_array_equal(serial[1], chunked[1])


def test_triangles_only():

    T, Q = motif_counts(_complete_bipartite(2, 2), quadrangles=False)

    assert_array_equal(T, 0)
    assert_array_equal(Q, 0)


def test_coefficient_table():

    g = _cycle(4)
    table = coefficient_table(g, *structural_coefficients(g))

    assert table.columns.tolist() == ['node', 'T', 'Q', 's', 'c']
    assert table['node'].tolist() == ['0', '1', '2', '3']
    assert table['c'].tolist() == [1.0] * 4


@pytest.mark.slow
def test_large_sparse_graph():

    n_nodes, n_links = 100000, 500000
    rng = make_rng(42)
    g = Graph.from_arrays(n_nodes, rng.integers(0, n_nodes, n_links), rng.integers(0, n_nodes, n_links))

    start = time.perf_counter()
    s_G, c_G = graph_level_coefficients(g, n_jobs=4)
    elapsed = time.perf_counter() - start

    assert 0 <= s_G <= 1
    assert 0 <= c_G <= 1
    assert elapsed < 600
