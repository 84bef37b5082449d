"""
Tests for the Graph class, components and edge-list I/O.
"""

import networkx as nx
import numpy as np
import pytest
from numpy.testing import assert_array_equal

from semnet_analyzer.graph import (Graph,
                                   build_graph,
                                   component_size_distribution,
                                   connected_components,
                                   extract_lcc,
                                   read_edge_list,
                                   write_edge_list)
from semnet_analyzer.test_utils import bfs_components, random_graph
from semnet_analyzer.utils import make_rng


def test_build_graph_collapses_duplicates_and_self_loops():

    g = build_graph([('car', 'vehicle'),
                     ('vehicle', 'car'),
                     ('car', 'vehicle'),
                     ('car', 'car'),
                     ('bus', 'vehicle')])

    assert g.n_nodes == 3
    assert g.n_links == 2
    assert g.labels == ('car', 'vehicle', 'bus')
    assert_array_equal(g.degrees, [1, 2, 1])
    assert_array_equal(g.edges(), [[0, 1], [1, 2]])


def test_build_graph_keeps_isolated_nodes():

    g = build_graph([('a', 'b')], nodes=['z', 'a'])

    assert g.labels == ('z', 'a', 'b')
    assert_array_equal(g.degrees, [0, 1, 1])


def test_build_graph_empty():

    g = build_graph([])

    assert g.n_nodes == 0
    assert g.n_links == 0
    assert g.d_max == 0
    assert g.mean_degree == 0.0


def test_build_graph_rejects_empty_labels():

    with pytest.raises(ValueError):
        build_graph([('a', '')])


def test_from_arrays_is_symmetric_and_sorted():

    g = Graph.from_arrays(4, [3, 0, 2, 0], [0, 2, 1, 3])

    assert g.adjacency_list() == [[2, 3], [2], [0, 1], [0]]
    assert g.n_links == 3
    adjacency = g.adjacency_matrix().toarray()
    assert_array_equal(adjacency, adjacency.T)


def test_constructor_rejects_non_canonical_input():

    # node 0 lists node 1, which lists nothing
    with pytest.raises(AssertionError):
        Graph([0, 1, 1, 2], [1, 0])


def test_degrees_are_read_only():

    g = build_graph([('a', 'b')])

    with pytest.raises(ValueError):
        g.degrees[0] = 5


def test_mean_degree_and_d_max():

    star = build_graph([('hub', leaf) for leaf in 'abcde'])

    assert star.d_max == 5
    assert star.mean_degree == pytest.approx(10 / 6)


def test_common_neighbor_counts_on_k4():

    k4 = Graph.from_arrays(4, [0, 0, 0, 1, 1, 2], [1, 2, 3, 2, 3, 3])

    assert_array_equal(k4.common_neighbor_counts(), np.full(12, 2))


def test_subgraph_relabels_in_id_order():

    g = build_graph([('a', 'b'), ('b', 'c'), ('c', 'd')])
    sub = g.subgraph([3, 1, 2])

    assert sub.labels == ('b', 'c', 'd')
    assert sub.edge_labels() == [('b', 'c'), ('c', 'd')]


class TestConnectedComponents:

    def test_components_match_breadth_first_search(self):

        for seed in range(20):
            g = random_graph(30, 0.05, seed)
            report = connected_components(g)
            expected = sorted(bfs_components(g), key=lambda nodes: (-len(nodes), min(nodes)))

            assert_array_equal(report.sizes, [len(nodes) for nodes in expected])
            assert_array_equal(report.lcc_node_ids, sorted(expected[0]))
            assert report.sizes.sum() == g.n_nodes

    def test_components_match_networkx(self):

        g = random_graph(200, 0.006, 3)
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(g.n_nodes))
        nx_graph.add_edges_from(g.edges().tolist())

        expected = sorted((len(c) for c in nx.connected_components(nx_graph)), reverse=True)
        assert_array_equal(connected_components(g).sizes, expected)

    def test_tie_goes_to_lowest_node_id(self):

        g = Graph.from_arrays(6, [4, 0, 2], [5, 1, 3])
        report = connected_components(g)

        assert_array_equal(report.lcc_node_ids, [0, 1])
        assert report.n_components == 3
        assert report.lcc_fraction == pytest.approx(1 / 3)

    def test_extract_lcc(self):

        g = build_graph([('a', 'b'), ('b', 'c'), ('x', 'y')], nodes=['lonely'])
        lcc = extract_lcc(g)

        assert lcc.labels == ('a', 'b', 'c')
        assert lcc.n_links == 2

    def test_extract_lcc_is_idempotent(self):

        for seed in range(20):
            lcc = extract_lcc(random_graph(40, 0.05, seed))

            assert extract_lcc(lcc) == lcc

    def test_sizes_ignore_node_order(self):

        rng = make_rng(3)
        for seed in range(20):
            g = random_graph(50, 0.04, seed)
            perm = rng.permutation(g.n_nodes)
            edges = g.edges()
            shuffled = Graph.from_arrays(g.n_nodes, perm[edges[:, 0]], perm[edges[:, 1]])

            assert_array_equal(connected_components(shuffled).sizes, connected_components(g).sizes)

    def test_extract_lcc_of_empty_graph(self):

        with pytest.raises(ValueError):
            extract_lcc(build_graph([]))

    def test_component_size_distribution(self):

        g = build_graph([('a', 'b'), ('b', 'c'), ('x', 'y'), ('p', 'q')], nodes=['lonely'])
        distribution = component_size_distribution(connected_components(g))

        assert distribution['size'].tolist() == [1, 2, 3]
        assert distribution['count'].tolist() == [1, 2, 1]


def test_edge_list_round_trip(tmp_path):

    g = build_graph([('car', 'vehicle'), ('bus', 'vehicle'), ('vehicle', 'road')])
    path = tmp_path / 'edges.tsv'
    write_edge_list(g, path)

    assert path.read_text(encoding='utf-8') == 'car\tvehicle\nvehicle\tbus\nvehicle\troad\n'
    assert read_edge_list(path) == g


def test_read_edge_list_rejects_bad_rows(tmp_path):

    path = tmp_path / 'edges.tsv'
    path.write_text('a\tb\nc\n', encoding='utf-8')

    with pytest.raises(ValueError):
        read_edge_list(path)
