"""
Degree distributions with logarithmic binning, average nearest
neighbor degree (ANND), degree assortativity and clustering.

:organization: semnet_analyzer developers
:date: 2026-10-19
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.stats import pearsonr

logger = logging.getLogger(__name__)

_EDGE_TOLERANCE = 1e-9

SUMMARY_FIELDS = ['N', 'L', 'd_max', 'mean_degree', 'annd', 'c_G', 'rho_D']


def degree_counts(g):
    """
    Count the nodes of each degree.

    Parameters
    ----------
    g : Graph
        The graph.

    Returns
    -------
    counts : pandas Series
        Node counts indexed by degree, in increasing degree order.
    """
    degrees, counts = np.unique(g.degrees, return_counts=True)
    return pd.Series(counts, index=pd.Index(degrees, name='degree'), name='count')


def degree_density(g):
    """
    Calculate the degree distribution density Pr[D = k].

    Parameters
    ----------
    g : Graph
        The graph.

    Returns
    -------
    density : pandas Series
        Probabilities indexed by the distinct degrees;
        they sum to one.

    Raises
    ------
    ValueError
        If the graph has no nodes.

    Examples
    --------
    >>> from semnet_analyzer import build_graph
    >>> from semnet_analyzer.degree_stats import degree_density
    >>> star = build_graph([('hub', leaf) for leaf in 'abcd'])
    >>> degree_density(star).to_dict()
    {1: 0.8, 4: 0.2}
    """
    if g.n_nodes == 0:
        raise ValueError('The degree density of an empty graph is undefined.')
    counts = degree_counts(g)
    return (counts / g.n_nodes).rename('density')


def default_log_width(d_max, n_bins=20):
    """
    Choose the logarithmic bin width so that about
    `n_bins` bins span the degrees ``[1, d_max]``.
    """
    return float(np.log(max(d_max, 2)) / n_bins)


@dataclass(frozen=True)
class BinnedDensity:
    """
    A logarithmically binned degree distribution.

    Bin ``i`` covers the degrees ``edges[i] <= k < edges[i + 1]``
    and ``edges[i + 1] / edges[i] = exp(log_width)`` for every bin.

    Attributes
    ----------
    edges : numpy array
        The bin edges, strictly increasing.
    counts : numpy array
        The raw weight (count or probability mass) in every bin.
    widths : numpy array
        The linear width of every bin, i.e. the number of
        integer degrees in ``[edges[i], edges[i + 1])``.
    heights : numpy array
        The normalized heights ``counts / widths`` (zero for
        bins covering no integer degree).
    centers : numpy array
        The representative degree of every bin, the geometric mean
        of the smallest and largest integer degree it covers.
    first, last : numpy array
        The smallest and largest integer degree every bin covers
        (``first > last`` for bins covering none).
    log_width : float
        The logarithmic bin width b.
    """

    edges: np.ndarray
    counts: np.ndarray
    widths: np.ndarray
    heights: np.ndarray
    centers: np.ndarray
    first: np.ndarray
    last: np.ndarray
    log_width: float

    @property
    def n_bins(self):
        return len(self.counts)

    @property
    def total_mass(self):
        return float(np.sum(self.heights * self.widths))

    def to_frame(self):
        """The bins as a pandas DataFrame, one row per bin."""
        return pd.DataFrame({'k_left': self.edges[:-1],
                             'k_right': self.edges[1:],
                             'k': self.centers,
                             'count': self.counts,
                             'width': self.widths,
                             'height': self.heights})


def log_bin(density, log_width, k_range=None):
    """
    Bin a degree distribution into bins of equal logarithmic width.
    Each bin height is the weight it holds normalized by its linear width.

    Parameters
    ----------
    density : dict or pandas Series
        Non-negative weights (counts or probabilities) indexed by degree.
    log_width : float
        The logarithmic bin width b, which must be positive.
    k_range : tuple of float, optional
        The degrees ``(k_lo, k_hi)`` the bins start at and must cover,
        so that several densities share the same bins. If None,
        the smallest and largest degree of `density`.
        Defaults to None.

    Returns
    -------
    binned : BinnedDensity
        The binned density; empty if `density` is empty.

    Raises
    ------
    ValueError
        If the width is not positive, a degree is below one or
        outside `k_range`, or a weight is negative.
    """
    if not log_width > 0:
        raise ValueError(f'The logarithmic bin width must be positive, not {log_width}.')

    density = pd.Series(density, dtype=float)
    if density.empty:
        empty = np.zeros(0)
        return BinnedDensity(empty, empty, empty, empty, empty, empty, empty, float(log_width))

    degrees = density.index.to_numpy(dtype=float)
    weights = density.to_numpy()
    if np.any(degrees < 1):
        raise ValueError('Log-binning requires degrees of at least one.')
    if np.any(weights < 0):
        raise ValueError('Log-binning requires non-negative weights.')

    k_min, k_max = (degrees.min(), degrees.max()) if k_range is None else map(float, k_range)
    if k_min < 1 or np.any(degrees < k_min) or np.any(degrees > k_max):
        raise ValueError(f'The degrees must lie inside {(k_min, k_max)}.')
    n_bins = int(np.floor(np.log(k_max / k_min) / log_width + _EDGE_TOLERANCE)) + 1
    edges = k_min * np.exp(log_width * np.arange(n_bins + 1))
    # edges landing on an integer up to rounding are that integer
    snapped = np.round(edges)
    edges = np.where(np.abs(edges - snapped) <= _EDGE_TOLERANCE * edges, snapped, edges)

    bin_of = np.clip(np.searchsorted(edges, degrees, side='right') - 1, 0, n_bins - 1)
    counts = np.bincount(bin_of, weights=weights, minlength=n_bins)

    # every integer degree in [edges[i], edges[i + 1]), also past k_max in the top bin
    first = np.ceil(edges[:-1])
    last = np.ceil(edges[1:]) - 1
    widths = np.maximum(last - first + 1, 0)

    heights = np.divide(counts, widths, out=np.zeros(n_bins), where=widths > 0)
    centers = np.where(widths > 0,
                       np.sqrt(first * np.maximum(last, first)),
                       np.sqrt(edges[:-1] * edges[1:]))
    return BinnedDensity(edges, counts, widths, heights, centers, first, last, float(log_width))


def default_window(density):
    """
    The default regression window: from the mode of
    the degree density to the largest degree.

    Parameters
    ----------
    density : pandas Series
        Weights indexed by degree.

    Returns
    -------
    window : tuple of float
        ``(k_lo, k_hi)``.
    """
    density = pd.Series(density, dtype=float)
    return float(density.idxmax()), float(density.index.max())


@dataclass(frozen=True)
class MixingStats:
    """
    Degree mixing of a graph.

    Attributes
    ----------
    annd_by_degree : pandas Series
        For each degree k, the mean over degree-k nodes
        of their average neighbor degree.
    rho_D : float
        Pearson degree correlation over both orientations of every link.
    rho_degenerate : bool
        True when ``rho_D`` is undefined (zero degree variance)
        and reported as 0.
    annd_per_node : numpy array
        The average neighbor degree of every node (NaN for isolated nodes).
    """

    annd_by_degree: pd.Series
    rho_D: float
    rho_degenerate: bool
    annd_per_node: np.ndarray

    @property
    def mean_annd(self):
        """The average neighbor degree averaged over non-isolated nodes."""
        return float(np.nanmean(self.annd_per_node))


def annd(g):
    """
    Calculate the average nearest neighbor degree as a function
    of the degree, and the degree correlation coefficient.

    The ANND of each node is computed first and then
    averaged over the nodes of every degree class.

    Parameters
    ----------
    g : Graph
        The graph, with at least one link.

    Returns
    -------
    mixing : MixingStats
        The ANND curve and the degree correlation.

    Raises
    ------
    ValueError
        If the graph has no links.
    """
    if g.n_links == 0:
        raise ValueError('The ANND requires at least one link.')

    degrees = g.degrees.astype(float)
    neighbor_degree_sums = g.adjacency_matrix() @ degrees
    per_node = np.divide(neighbor_degree_sums, degrees,
                         out=np.full(g.n_nodes, np.nan), where=degrees > 0)

    present = degrees > 0
    by_degree = (pd.Series(per_node[present], index=pd.Index(g.degrees[present], name='k'))
                 .groupby(level='k')
                 .mean()
                 .rename('annd'))

    source = degrees[g.entry_rows()]
    target = degrees[g.indices]
    if np.ptp(source) == 0:
        warnings.warn('The degree correlation is undefined for a graph whose '
                      'links all join nodes of equal degree; reporting 0.')
        rho, degenerate = 0.0, True
    else:
        rho, degenerate = float(pearsonr(source, target)[0]), False
    return MixingStats(by_degree, rho, degenerate, per_node)


@dataclass(frozen=True)
class ClusteringStats:
    """
    Local and global clustering.

    Attributes
    ----------
    c_i : numpy array
        The clustering coefficient of every node (0 for degree below 2).
    c_G : float
        The mean of `c_i` over all nodes.
    c_by_degree : pandas Series
        The mean of `c_i` over the nodes of every degree k.
    """

    c_i: np.ndarray
    c_G: float
    c_by_degree: pd.Series


def connected_neighbor_pairs(g):
    """
    Count the links between the neighbors of every node
    by scanning the common neighbors of every link.

    Parameters
    ----------
    g : Graph
        The graph.

    Returns
    -------
    y : numpy array
        The number of connected neighbor pairs of every node.
    """
    per_entry = g.common_neighbor_counts()
    return np.bincount(g.entry_rows(), weights=per_entry, minlength=g.n_nodes).astype(np.int64) // 2


def clustering(g):
    """
    Calculate clustering coefficients ``c_i = 2 y_i / (d_i (d_i - 1))``,
    where ``y_i`` counts the links among the neighbors of node ``i``.

    Parameters
    ----------
    g : Graph
        The graph.

    Returns
    -------
    stats : ClusteringStats
        Per-node, global and per-degree clustering.
    """
    if g.n_nodes == 0:
        empty = pd.Series([], dtype=float, index=pd.Index([], dtype=np.int64, name='k'), name='mean_c')
        return ClusteringStats(np.zeros(0), 0.0, empty)

    degrees = g.degrees.astype(float)
    pairs = degrees * (degrees - 1)
    c_i = np.divide(2.0 * connected_neighbor_pairs(g), pairs,
                    out=np.zeros(g.n_nodes), where=pairs > 0)
    by_degree = (pd.Series(c_i, index=pd.Index(g.degrees, name='k'))
                 .groupby(level='k')
                 .mean()
                 .rename('mean_c'))
    return ClusteringStats(c_i, float(c_i.mean()), by_degree)


def graph_summary(g, mixing=None, clust=None):
    """
    Summarize a graph with the statistics reported per network.

    Parameters
    ----------
    g : Graph
        The graph.
    mixing : MixingStats, optional
        Precomputed degree mixing.
        Defaults to None.
    clust : ClusteringStats, optional
        Precomputed clustering.
        Defaults to None.

    Returns
    -------
    summary : dict
        The keys in `SUMMARY_FIELDS`. ``annd`` and ``rho_D``
        are None for a graph without links.
    """
    if mixing is None and g.n_links > 0:
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            mixing = annd(g)
    if clust is None:
        clust = clustering(g)

    return {'N': g.n_nodes,
            'L': g.n_links,
            'd_max': g.d_max,
            'mean_degree': g.mean_degree,
            'annd': None if mixing is None else mixing.mean_annd,
            'c_G': clust.c_G,
            'rho_D': None if mixing is None else mixing.rho_D}


def network_table(summaries):
    """
    Lay out several network summaries as one table with
    a row per statistic and a column per network.

    Parameters
    ----------
    summaries : dict
        Summaries (as returned by :func:`graph_summary`,
        possibly with extra keys) keyed by network name.

    Returns
    -------
    table : pandas DataFrame
        The statistics table.
    """
    table = pd.DataFrame(summaries)
    extra = [row for row in table.index if row not in SUMMARY_FIELDS]
    rows = [row for row in SUMMARY_FIELDS if row in table.index] + extra
    table = table.loc[rows]
    table.index.name = 'statistic'
    return table
