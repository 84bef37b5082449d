"""
Degree-preserving randomization by repeated swaps of link endpoints,
and statistics averaged over several rewired realizations.

:organization: semnet_analyzer developers
:date: 2026-10-19
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from .degree_stats import annd, clustering
from .graph import Graph, connected_components
from .utils import RNG_ALGORITHM, make_rng, sample_std

logger = logging.getLogger(__name__)

POSSIBLE_METRICS = ['lcc_fraction', 'annd_by_degree', 'c_by_degree', 'c_G', 'annd']

_DRAW_BATCH = 4096


@dataclass(frozen=True)
class RewireConfig:
    """
    Parameters of degree-preserving rewiring.

    Attributes
    ----------
    multiplier : int
        The swap budget per link; ``T = multiplier * L`` successful swaps.
    attempt_factor : int
        The attempt cap as a multiple of ``T``, unless
        `max_attempts` is given.
    max_attempts : int or None
        An explicit attempt cap, at least ``T``.
    seed : int
        The base seed; realization ``r`` uses ``seed + r``.
    realizations : int
        The number of realizations in an ensemble.
    """

    multiplier: int = 4
    attempt_factor: int = 100
    max_attempts: int = None
    seed: int = 0
    realizations: int = 10

    def __post_init__(self):
        if self.multiplier < 1:
            raise ValueError(f'The rewiring multiplier must be at least 1, not {self.multiplier}.')
        if self.attempt_factor < 1:
            raise ValueError(f'The attempt factor must be at least 1, not {self.attempt_factor}.')
        if self.realizations < 1:
            raise ValueError(f'The number of realizations must be at least 1, not {self.realizations}.')

    def budget(self, n_links):
        """The number of successful swaps T for a graph with `n_links` links."""
        return self.multiplier * n_links

    def attempt_cap(self, n_links):
        """The maximum number of swap attempts."""
        budget = self.budget(n_links)
        if self.max_attempts is None:
            return self.attempt_factor * budget
        if self.max_attempts < budget:
            raise ValueError(f'The attempt cap {self.max_attempts} is below the swap budget {budget}.')
        return self.max_attempts


@dataclass(frozen=True)
class RewireResult:
    """
    A rewired graph with its bookkeeping.

    Attributes
    ----------
    graph : Graph
        The rewired graph (same node ids and labels).
    swaps : int
        The successful swaps performed.
    attempts : int
        The swap attempts made.
    cap_reached : bool
        True if the attempt cap stopped the run before T swaps.
    seed : int
        The seed used.
    """

    graph: Graph
    swaps: int
    attempts: int
    cap_reached: bool
    seed: int

    def to_dict(self):
        return {'swaps': self.swaps,
                'attempts': self.attempts,
                'cap_reached': self.cap_reached,
                'seed': self.seed,
                'rng': RNG_ALGORITHM}


def rewire(g, cfg, seed=None):
    """
    Randomize a graph while keeping every node degree.

    Repeatedly pick two links uniformly at random and one endpoint
    ``a`` of the first and ``c`` of the second, each uniformly; with
    ``b`` and ``d`` the other endpoints, replace ``(a, b), (c, d)`` by
    ``(c, b), (a, d)``. A swap is rejected when the links share a node
    or a new link already exists. Only successful swaps count toward
    ``T = multiplier * L``.

    Parameters
    ----------
    g : Graph
        The graph, with at least two links.
    cfg : RewireConfig
        The rewiring parameters.
    seed : int, optional
        Overrides ``cfg.seed``.
        Defaults to None.

    Returns
    -------
    result : RewireResult
        The rewired graph and whether the attempt cap was reached.

    Raises
    ------
    ValueError
        If the graph has fewer than two links.
    """
    n_links = g.n_links
    if n_links < 2:
        raise ValueError(f'Rewiring requires at least two links, not {n_links}.')

    seed = cfg.seed if seed is None else seed
    rng = make_rng(seed)
    budget = cfg.budget(n_links)
    cap = cfg.attempt_cap(n_links)

    edges = g.edges()
    first = edges[:, 0].tolist()
    second = edges[:, 1].tolist()
    existing = set(zip(first, second))

    swaps = attempts = 0
    while swaps < budget and attempts < cap:
        picks = rng.integers(0, n_links, size=(_DRAW_BATCH, 2)).tolist()
        flips = rng.integers(0, 2, size=(_DRAW_BATCH, 2)).tolist()
        for (e1, e2), (flip1, flip2) in zip(picks, flips):
            if swaps >= budget or attempts >= cap:
                break
            attempts += 1

            a, b = (second[e1], first[e1]) if flip1 else (first[e1], second[e1])
            c, d = (second[e2], first[e2]) if flip2 else (first[e2], second[e2])
            if len({a, b, c, d}) < 4:
                continue

            new1 = (c, b) if c < b else (b, c)
            new2 = (a, d) if a < d else (d, a)
            if new1 in existing or new2 in existing:
                continue

            existing.discard((first[e1], second[e1]))
            existing.discard((first[e2], second[e2]))
            existing.add(new1)
            existing.add(new2)
            first[e1], second[e1] = new1
            first[e2], second[e2] = new2
            swaps += 1

    cap_reached = swaps < budget
    if cap_reached:
        warnings.warn(f'Rewiring stopped at the attempt cap ({attempts} attempts) '
                      f'after {swaps} of {budget} swaps.')

    rewired = Graph.from_arrays(g.n_nodes, first, second, g.labels)
    assert np.array_equal(rewired.degrees, g.degrees), 'rewiring must preserve every degree'
    assert rewired.n_links == n_links, 'rewiring must preserve the number of links'
    logger.debug('Rewired %r with %d swaps in %d attempts.', g, swaps, attempts)
    return RewireResult(rewired, swaps, attempts, cap_reached, seed)


def evaluate_metric(g, metric):
    """
    Evaluate a named statistic on a graph.

    Parameters
    ----------
    g : Graph
        The graph.
    metric : str
        One of `POSSIBLE_METRICS`.

    Returns
    -------
    value : float or pandas Series
        A scalar, or a Series indexed by degree for the
        ``*_by_degree`` metrics.
    """
    if metric not in POSSIBLE_METRICS:
        raise ValueError(f'The metric must be one of the following: {POSSIBLE_METRICS}')
    if metric == 'lcc_fraction':
        return float(connected_components(g).lcc_fraction)
    if metric == 'c_G':
        return clustering(g).c_G
    if metric == 'c_by_degree':
        return clustering(g).c_by_degree

    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        mixing = annd(g)
    return mixing.annd_by_degree if metric == 'annd_by_degree' else mixing.mean_annd


@dataclass(frozen=True)
class EnsembleStats:
    """
    A statistic averaged over rewired realizations.
    Unpacks as ``mean, std``.

    Attributes
    ----------
    mean : float or pandas Series
    std : float or pandas Series
        The sample standard deviation.
    metric : str
    seeds : list of int
    n_cap_reached : int
        The realizations that stopped at the attempt cap.
    """

    mean: object
    std: object
    metric: str
    seeds: list
    n_cap_reached: int

    def __iter__(self):
        return iter((self.mean, self.std))


def _realization(g, cfg, seed, metrics):
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        result = rewire(g, cfg, seed=seed)
    return [evaluate_metric(result.graph, metric) for metric in metrics], result.cap_reached


def _aggregate(values, metric):
    if isinstance(values[0], pd.Series):
        frame = pd.concat(values, axis=1)
        mean = frame.mean(axis=1).rename(metric)
        std = frame.std(axis=1, ddof=1).fillna(0.0).rename(metric)
        return mean, std
    return float(np.mean(values)), sample_std(values)


def rewired_ensemble(g, cfg, metrics, n_jobs=1):
    """
    Evaluate several statistics on the same ``cfg.realizations``
    independent rewirings, seeded ``cfg.seed + r``.

    Parameters
    ----------
    g : Graph
        The graph.
    cfg : RewireConfig
        The rewiring parameters.
    metrics : list of str
        Names from `POSSIBLE_METRICS`.
    n_jobs : int, optional
        The number of joblib workers, one realization each.
        Defaults to 1.

    Returns
    -------
    stats : dict
        An EnsembleStats per metric.
    """
    for metric in metrics:
        if metric not in POSSIBLE_METRICS:
            raise ValueError(f'The metric must be one of the following: {POSSIBLE_METRICS}')

    seeds = [cfg.seed + r for r in range(cfg.realizations)]
    outcomes = Parallel(n_jobs=n_jobs)(delayed(_realization)(g, cfg, seed, metrics) for seed in seeds)
    n_cap_reached = sum(cap_reached for _, cap_reached in outcomes)
    if n_cap_reached:
        warnings.warn(f'{n_cap_reached} of {len(seeds)} rewirings stopped at the attempt cap.')

    stats = {}
    for position, metric in enumerate(metrics):
        mean, std = _aggregate([values[position] for values, _ in outcomes], metric)
        stats[metric] = EnsembleStats(mean, std, metric, seeds, n_cap_reached)
    return stats


def rewired_ensemble_stats(g, cfg, metric, n_jobs=1):
    """
    Evaluate one statistic on ``cfg.realizations`` independent rewirings
    and aggregate it.

    Parameters
    ----------
    g : Graph
        The graph.
    cfg : RewireConfig
        The rewiring parameters.
    metric : str
        One of `POSSIBLE_METRICS`.
    n_jobs : int, optional
        Defaults to 1.

    Returns
    -------
    stats : EnsembleStats
        Mean and sample standard deviation over realizations.
    """
    return rewired_ensemble(g, cfg, [metric], n_jobs=n_jobs)[metric]
