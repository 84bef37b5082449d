"""
Tests for degree-preserving rewiring and rewired ensembles.
"""

from itertools import combinations

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_array_equal

from semnet_analyzer.degree_stats import annd, clustering
from semnet_analyzer.graph import Graph, build_graph
from semnet_analyzer.rewiring import (RewireConfig,
                                      evaluate_metric,
                                      rewire,
                                      rewired_ensemble,
                                      rewired_ensemble_stats)
from semnet_analyzer.test_utils import graphs_with_degrees, random_graph


def _ring_lattice(n_nodes, reach=2):
    rows = np.repeat(np.arange(n_nodes), reach)
    cols = (rows + np.tile(np.arange(1, reach + 1), n_nodes)) % n_nodes
    return Graph.from_arrays(n_nodes, rows, cols)


def _triangle():
    return build_graph([('a', 'b'), ('b', 'c'), ('a', 'c')])


@pytest.mark.filterwarnings('ignore::UserWarning')
def test_degrees_are_preserved():

    cfg = RewireConfig(multiplier=2, attempt_factor=50)
    checked = 0
    for seed in range(1000):
        g = random_graph(12, 0.3, seed)
        if g.n_links < 2:
            continue
        result = rewire(g, cfg, seed=seed)
        checked += 1

        assert_array_equal(result.graph.degrees, g.degrees)
        assert result.graph.n_links == g.n_links
        assert result.graph.labels == g.labels

    assert checked > 990


def _edge_set(g):
    return frozenset((int(min(i, j)), int(max(i, j))) for i, j in g.edges())


@pytest.mark.filterwarnings('ignore::UserWarning')
def test_rewired_graphs_stay_in_the_degree_class():

    g = Graph.from_arrays(6, [0, 1, 2, 3, 4], [1, 2, 3, 4, 5])
    allowed = {_edge_set(graph) for graph in graphs_with_degrees(g.degrees)}
    reached = {_edge_set(rewire(g, RewireConfig(), seed=seed).graph) for seed in range(200)}

    assert reached <= allowed
    assert len(reached) > 1


def _label_set(g):
    return {frozenset(pair) for pair in g.edge_labels()}


def _valid_swaps(g):
    existing = {tuple(edge) for edge in g.edges().tolist()}
    count = 0
    for (a, b), (c, d) in combinations(sorted(existing), 2):
        if len({a, b, c, d}) < 4:
            continue
        for new1, new2 in [((a, c), (b, d)), ((a, d), (b, c))]:
            if tuple(sorted(new1)) not in existing and tuple(sorted(new2)) not in existing:
                count += 1
    return count


def _hubs_leaves_and_lattice():
    # hubs on a ring with ten leaves each, beside a separate 3-regular lattice
    rows, cols = [], []
    for hub in range(20):
        rows += [hub] * 11
        cols += [(hub + 1) % 20] + list(range(20 + 10 * hub, 30 + 10 * hub))
    lattice = 220 + np.arange(100)
    rows += lattice.tolist() + lattice[:50].tolist()
    cols += (220 + (np.arange(100) + 1) % 100).tolist() + lattice[50:].tolist()
    return Graph.from_arrays(320, rows, cols)


def _annd_slope(curve):
    return np.polyfit(np.log(curve.index.to_numpy(dtype=float)), np.log(curve.to_numpy()), 1)[0]


def test_path_of_four_nodes_has_a_single_swap():

    path = build_graph([('a', 'b'), ('b', 'c'), ('c', 'd')])
    swapped = {frozenset('ac'), frozenset('bc'), frozenset('bd')}

    for seed in range(20):
        odd = rewire(path, RewireConfig(multiplier=1), seed=seed)
        even = rewire(path, RewireConfig(multiplier=2), seed=seed)

        assert odd.swaps == 3
        assert _label_set(odd.graph) == swapped
        assert _label_set(even.graph) == _label_set(path)


def test_ensemble_matches_enumerated_graphs():

    hexagon = Graph.from_arrays(6, np.arange(6), (np.arange(6) + 1) % 6)
    graphs = graphs_with_degrees(hexagon.degrees)
    # counting successful swaps only visits each graph in proportion to its valid swaps
    weights = np.array([_valid_swaps(graph) for graph in graphs], dtype=float)
    values = np.array([clustering(graph).c_G for graph in graphs])
    expected = weights @ values / weights.sum()
    stats = rewired_ensemble_stats(hexagon, RewireConfig(realizations=400), 'c_G')

    assert len(graphs) == 70
    assert expected == pytest.approx(0.2)
    assert abs(stats.mean - expected) <= 3 * stats.std / np.sqrt(400)


def test_rewiring_flattens_disassortative_annd():

    g = _hubs_leaves_and_lattice()
    before = annd(g).annd_by_degree
    after = rewired_ensemble_stats(g, RewireConfig(realizations=5), 'annd_by_degree').mean

    assert_array_equal(before.index, [1, 3, 12])
    assert _annd_slope(before) < -0.5
    assert abs(_annd_slope(after)) < abs(_annd_slope(before)) / 2


def test_swap_budget_is_met():

    g = _ring_lattice(100)
    result = rewire(g, RewireConfig(multiplier=3), seed=1)

    assert result.swaps == 3 * g.n_links
    assert result.attempts >= result.swaps
    assert not result.cap_reached


def test_triangle_hits_attempt_cap():

    with pytest.warns(UserWarning):
        result = rewire(_triangle(), RewireConfig(attempt_factor=2))

    assert result.cap_reached
    assert result.swaps == 0
    assert result.attempts == 24
    assert result.graph == _triangle()


def test_explicit_attempt_cap():

    cfg = RewireConfig(multiplier=1, max_attempts=5)

    assert cfg.attempt_cap(4) == 5
    with pytest.raises(ValueError):
        cfg.attempt_cap(10)


def test_rewiring_is_deterministic():

    g = random_graph(80, 0.08, 4)

    first = rewire(g, RewireConfig(), seed=17).graph
    second = rewire(g, RewireConfig(), seed=17).graph
    other = rewire(g, RewireConfig(), seed=18).graph

    assert first == second
    assert first != other


def test_rewiring_needs_two_links():

    with pytest.raises(ValueError):
        rewire(build_graph([('a', 'b')]), RewireConfig())


@pytest.mark.parametrize('field', ['multiplier', 'attempt_factor', 'realizations'])
def test_config_rejects_zero(field):

    with pytest.raises(ValueError):
        RewireConfig(**{field: 0})


def test_rewiring_destroys_lattice_clustering():

    g = _ring_lattice(400)
    rewired = rewire(g, RewireConfig(), seed=3).graph

    assert clustering(g).c_G == pytest.approx(0.5)
    assert clustering(rewired).c_G < 0.1


def test_evaluate_metric_rejects_unknown_name():

    with pytest.raises(ValueError):
        evaluate_metric(_triangle(), 'diameter')


class TestEnsemble:

    def test_seeds_and_scalar_statistics(self):

        g = random_graph(60, 0.1, 2)
        cfg = RewireConfig(seed=5, realizations=4)
        stats = rewired_ensemble(g, cfg, ['c_G', 'lcc_fraction'])

        assert stats['c_G'].seeds == [5, 6, 7, 8]
        assert stats['c_G'].n_cap_reached == 0
        assert 0 <= stats['c_G'].mean <= 1
        assert stats['c_G'].std >= 0
        assert 0 < stats['lcc_fraction'].mean <= 1

    def test_single_metric_matches_ensemble(self):

        g = random_graph(60, 0.1, 2)
        cfg = RewireConfig(seed=9, realizations=3)
        mean, std = rewired_ensemble_stats(g, cfg, 'annd')
        stats = rewired_ensemble(g, cfg, ['c_G', 'annd'])['annd']

        assert mean == pytest.approx(stats.mean)
        assert std == pytest.approx(stats.std)

    def test_by_degree_statistics_are_series(self):

        g = random_graph(60, 0.1, 2)
        stats = rewired_ensemble_stats(g, RewireConfig(realizations=3), 'c_by_degree')

        assert isinstance(stats.mean, pd.Series)
        assert stats.mean.index.equals(stats.std.index)
        assert (stats.std >= 0).all()

    def test_parallel_workers_give_the_same_result(self):

        g = random_graph(60, 0.1, 2)
        cfg = RewireConfig(seed=1, realizations=4)

        serial = rewired_ensemble_stats(g, cfg, 'c_G', n_jobs=1)
        parallel = rewired_ensemble_stats(g, cfg, 'c_G', n_jobs=2)

        assert serial.mean == pytest.approx(parallel.mean)
        assert serial.std == pytest.approx(parallel.std)

    def test_reports_capped_realizations(self):

        with pytest.warns(UserWarning):
            stats = rewired_ensemble_stats(_triangle(), RewireConfig(realizations=2, attempt_factor=1), 'c_G')

        assert stats.n_cap_reached == 2
        assert stats.mean == 1.0
        assert stats.std == 0.0

    def test_rejects_unknown_metric(self):

        with pytest.raises(ValueError):
            rewired_ensemble(_triangle(), RewireConfig(), ['c_G', 'diameter'])
