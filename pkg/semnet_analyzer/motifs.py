"""
Exact per-node triangle and quadrangle counts, the structural
similarity coefficients built on triangles and the structural
complementarity coefficients built on chordless quadrangles.

For a node ``i`` with degree ``d_i``:

* ``T_i`` triangles, ``t_i^W = d_i (d_i - 1)`` wedge triples and
  ``t_i^H = sum_{j in adj(i)} (d_j - 1)`` head triples give
  ``s_i = 4 T_i / (t_i^W + t_i^H)``;
* ``Q_i`` chordless quadrangles, ``q_i^W`` wedge quadruples and
  ``q_i^H`` head quadruples give ``c_i = 4 Q_i / (q_i^W + q_i^H)``.

Nodes whose denominators vanish get coefficient 0.

:organization: semnet_analyzer developers
:date: 2026-10-19
"""

import logging
from dataclasses import dataclass
from itertools import combinations

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimilarityCoefficients:
    """
    Triangle counts and structural similarity coefficients per node.

    Attributes
    ----------
    T : numpy array
        Triangles including every node.
    t_wedge : numpy array
        Wedge triples ``t_i^W``.
    t_head : numpy array
        Head triples ``t_i^H``.
    s_wedge, s_head, s : numpy array
        The local clustering, local closure and structural
        similarity coefficients.
    """

    T: np.ndarray
    t_wedge: np.ndarray
    t_head: np.ndarray
    s_wedge: np.ndarray
    s_head: np.ndarray
    s: np.ndarray

    @property
    def s_G(self):
        """The graph-level coefficient, the mean of `s` over all nodes."""
        return float(self.s.mean()) if len(self.s) else 0.0


@dataclass(frozen=True)
class ComplementarityCoefficients:
    """
    Chordless quadrangle counts and structural complementarity
    coefficients per node.

    Attributes
    ----------
    Q : numpy array
        Chordless quadrangles including every node.
    q_wedge : numpy array
        Wedge quadruples ``q_i^W``.
    q_head : numpy array
        Head quadruples ``q_i^H``.
    c_wedge, c_head, c : numpy array
        The quadruple clustering, quadruple closure and
        structural complementarity coefficients.
    n_ij : numpy array
        The common-neighbor count of every adjacency entry,
        aligned with ``Graph.indices``.
    """

    Q: np.ndarray
    q_wedge: np.ndarray
    q_head: np.ndarray
    c_wedge: np.ndarray
    c_head: np.ndarray
    c: np.ndarray
    n_ij: np.ndarray

    @property
    def c_G(self):
        """The graph-level coefficient, the mean of `c` over all nodes."""
        return float(self.c.mean()) if len(self.c) else 0.0


def _ratio(numerator, denominator):
    numerator = np.asarray(numerator, dtype=float)
    denominator = np.asarray(denominator, dtype=float)
    return np.divide(numerator, denominator, out=np.zeros_like(numerator), where=denominator > 0)


def _count_motifs(indptr, indices, start, stop, quadrangles=True):
    """
    Count twice the triangles and twice the chordless quadrangles
    of the nodes ``start <= i < stop``.

    For every node ``i`` the two-step walks ``i - j - l`` are grouped by
    their end ``l``: ends inside ``adj(i)`` close triangles, and every
    other end ``l`` reached through ``c`` distinct neighbors closes
    ``c (c - 1)`` ordered quadrangles, minus those whose two middle
    nodes are adjacent (which have a chord).
    """
    adjacency = [indices[indptr[i]:indptr[i + 1]].tolist() for i in range(len(indptr) - 1)]
    neighbor_sets = [set(neighbors) for neighbors in adjacency]

    n_nodes = stop - start
    triangles2 = np.zeros(n_nodes, dtype=np.int64)
    quadrangles2 = np.zeros(n_nodes, dtype=np.int64)

    for i in range(start, stop):
        own = neighbor_sets[i]
        if len(own) < 2:
            continue

        closed = 0
        ends = {}
        for j in adjacency[i]:
            for l in adjacency[j]:
                if l == i:
                    continue
                if l in own:
                    closed += 1
                elif quadrangles:
                    ends.setdefault(l, []).append(j)
        triangles2[i - start] = closed

        total = 0
        for middles in ends.values():
            c = len(middles)
            if c < 2:
                continue
            chords = sum(1 for j, k in combinations(middles, 2) if k in neighbor_sets[j])
            total += c * (c - 1) - 2 * chords
        quadrangles2[i - start] = total

    return triangles2, quadrangles2


def motif_counts(g, quadrangles=True, n_jobs=1, chunk_size=10000):
    """
    Count triangles and chordless quadrangles for every node.

    Parameters
    ----------
    g : Graph
        The graph.
    quadrangles : bool, optional
        Whether to count quadrangles as well.
        Defaults to True.
    n_jobs : int, optional
        The number of joblib workers; nodes are split into
        contiguous chunks and the counts concatenated in order.
        Defaults to 1.
    chunk_size : int, optional
        The number of nodes per chunk when ``n_jobs != 1``.
        Defaults to 10000.

    Returns
    -------
    T : numpy array
        Triangles including every node.
    Q : numpy array
        Chordless quadrangles including every node
        (zeros if `quadrangles` is False).
    """
    n_nodes = g.n_nodes
    if n_jobs == 1 or n_nodes <= chunk_size:
        triangles2, quadrangles2 = _count_motifs(g.indptr, g.indices, 0, n_nodes, quadrangles)
    else:
        bounds = list(range(0, n_nodes, chunk_size)) + [n_nodes]
        parts = Parallel(n_jobs=n_jobs)(
            delayed(_count_motifs)(g.indptr, g.indices, start, stop, quadrangles)
            for start, stop in zip(bounds[:-1], bounds[1:]))
        triangles2 = np.concatenate([part[0] for part in parts])
        quadrangles2 = np.concatenate([part[1] for part in parts])

    logger.debug('Counted motifs on %r.', g)
    return triangles2 // 2, quadrangles2 // 2


def _similarity_from_counts(g, T):
    degrees = g.degrees.astype(np.int64)
    t_wedge = degrees * (degrees - 1)
    t_head = g.adjacency_matrix() @ (degrees - 1)
    return SimilarityCoefficients(T=T,
                                  t_wedge=t_wedge,
                                  t_head=t_head,
                                  s_wedge=_ratio(2 * T, t_wedge),
                                  s_head=_ratio(2 * T, t_head),
                                  s=_ratio(4 * T, t_wedge + t_head))


def _complementarity_from_counts(g, T, Q):
    degrees = g.degrees.astype(np.int64)
    adjacency = g.adjacency_matrix()
    t_head = adjacency @ (degrees - 1)

    # sum_j a_ij [(d_i - 1)(d_j - 1) - n_ij], with sum_j n_ij = 2 T_i
    q_wedge = (degrees - 1) * t_head - 2 * T
    # sum_j a_ij sum_{k != i} a_jk (d_k - 1 - a_ik)
    q_head = adjacency @ t_head - degrees * (degrees - 1) - 2 * T
    return ComplementarityCoefficients(Q=Q,
                                       q_wedge=q_wedge,
                                       q_head=q_head,
                                       c_wedge=_ratio(2 * Q, q_wedge),
                                       c_head=_ratio(2 * Q, q_head),
                                       c=_ratio(4 * Q, q_wedge + q_head),
                                       n_ij=g.common_neighbor_counts())


def similarity_coefficients(g, n_jobs=1):
    """
    Calculate the structural similarity coefficients of every node.

    Parameters
    ----------
    g : Graph
        The graph.
    n_jobs : int, optional
        The number of joblib workers.
        Defaults to 1.

    Returns
    -------
    similarity : SimilarityCoefficients
        Triangle counts, triples and coefficients.

    Examples
    --------
    >>> from semnet_analyzer import build_graph
    >>> from semnet_analyzer.motifs import similarity_coefficients
    >>> k4 = build_graph([(a, b) for a in 'wxyz' for b in 'wxyz' if a < b])
    >>> similarity_coefficients(k4).s
    array([1., 1., 1., 1.])
    """
    T, _ = motif_counts(g, quadrangles=False, n_jobs=n_jobs)
    return _similarity_from_counts(g, T)


def complementarity_coefficients(g, n_jobs=1):
    """
    Calculate the structural complementarity coefficients of every node.

    Parameters
    ----------
    g : Graph
        The graph.
    n_jobs : int, optional
        The number of joblib workers.
        Defaults to 1.

    Returns
    -------
    complementarity : ComplementarityCoefficients
        Quadrangle counts, quadruples and coefficients.
    """
    T, Q = motif_counts(g, n_jobs=n_jobs)
    return _complementarity_from_counts(g, T, Q)


def structural_coefficients(g, n_jobs=1):
    """
    Calculate both coefficient families from a single motif count.

    Parameters
    ----------
    g : Graph
        The graph.
    n_jobs : int, optional
        The number of joblib workers.
        Defaults to 1.

    Returns
    -------
    similarity : SimilarityCoefficients
    complementarity : ComplementarityCoefficients
    """
    T, Q = motif_counts(g, n_jobs=n_jobs)
    return _similarity_from_counts(g, T), _complementarity_from_counts(g, T, Q)


def graph_coefficients(similarity, complementarity):
    """
    Average the node coefficients over all nodes.

    Parameters
    ----------
    similarity : SimilarityCoefficients
    complementarity : ComplementarityCoefficients

    Returns
    -------
    s_G : float
        The structural similarity of the graph.
    c_G : float
        The structural complementarity of the graph.
    """
    return similarity.s_G, complementarity.c_G


def graph_level_coefficients(g, n_jobs=1):
    """
    Calculate only ``s(G)`` and ``c(G)``, skipping the per-link
    common-neighbor counts kept by :func:`complementarity_coefficients`.

    Returns
    -------
    s_G : float
    c_G : float
    """
    T, Q = motif_counts(g, n_jobs=n_jobs)
    degrees = g.degrees.astype(np.int64)
    t_wedge = degrees * (degrees - 1)
    t_head = g.adjacency_matrix() @ (degrees - 1)
    q_wedge = (degrees - 1) * t_head - 2 * T
    q_head = g.adjacency_matrix() @ t_head - t_wedge - 2 * T
    if g.n_nodes == 0:
        return 0.0, 0.0
    return (float(_ratio(4 * T, t_wedge + t_head).mean()),
            float(_ratio(4 * Q, q_wedge + q_head).mean()))


def coefficient_table(g, similarity, complementarity):
    """
    Lay out the per-node counts and coefficients.

    Returns
    -------
    table : pandas DataFrame
        Columns ``node``, ``T``, ``Q``, ``s`` and ``c``.
    """
    return pd.DataFrame({'node': list(g.labels),
                         'T': similarity.T,
                         'Q': complementarity.Q,
                         's': similarity.s,
                         'c': complementarity.c})
