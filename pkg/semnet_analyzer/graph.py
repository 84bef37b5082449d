"""
Immutable undirected simple graphs, connected components
and extraction of the largest connected component (LCC).

:organization: semnet_analyzer developers
:date: 2026-10-19
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import pandas as pd
from scipy import sparse
from scipy.sparse.csgraph import connected_components as _csgraph_components

logger = logging.getLogger(__name__)


class Graph:
    """
    An immutable undirected simple graph with contiguous
    integer node ids and a string label per node.

    The adjacency is stored in compressed sparse row form:
    the neighbors of node ``i`` are ``indices[indptr[i]:indptr[i + 1]]``,
    sorted ascending. Every undirected link appears twice,
    once per orientation.

    Parameters
    ----------
    indptr : array-like
        Row pointer array of length ``N + 1``.
    indices : array-like
        Concatenated, sorted neighbor lists.
    labels : sequence of str, optional
        The node labels. If None, the node ids are used.
        Defaults to None.

    Notes
    -----
    Use :func:`build_graph` or :meth:`Graph.from_arrays` rather than
    the constructor; they canonicalize arbitrary input, whereas the
    constructor only checks that its input is already canonical.

    Examples
    --------
    >>> from semnet_analyzer import build_graph
    >>> g = build_graph([('car', 'vehicle'), ('vehicle', 'car')])
    >>> g
    Graph(N=2, L=1)
    >>> g.degrees
    array([1, 1])
    """

    def __init__(self, indptr, indices, labels=None):

        self._indptr = np.asarray(indptr, dtype=np.int64)
        self._indices = np.asarray(indices, dtype=np.int64)
        n_nodes = len(self._indptr) - 1
        if labels is None:
            labels = [str(i) for i in range(n_nodes)]
        self._labels = tuple(labels)

        self._indptr.flags.writeable = False
        self._indices.flags.writeable = False
        self._check_invariants()

    @classmethod
    def from_arrays(cls, n_nodes, rows, cols, labels=None):
        """
        Build a graph from two parallel arrays of link endpoints.

        Self-loops are dropped and duplicate or reversed links are
        collapsed into a single undirected link.

        Parameters
        ----------
        n_nodes : int
            The number of nodes.
        rows : array-like
            The first endpoint of every link.
        cols : array-like
            The second endpoint of every link.
        labels : sequence of str, optional
            The node labels.
            Defaults to None.

        Returns
        -------
        graph : Graph
            The canonical graph.
        """
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        keep = rows != cols
        rows, cols = rows[keep], cols[keep]

        data = np.ones(2 * len(rows), dtype=np.int32)
        mtx = sparse.csr_matrix((data,
                                 (np.concatenate([rows, cols]),
                                  np.concatenate([cols, rows]))),
                                shape=(n_nodes, n_nodes))
        mtx.sum_duplicates()
        mtx.sort_indices()
        return cls(mtx.indptr, mtx.indices, labels)

    def _check_invariants(self):
        n_nodes = self.n_nodes
        assert self._indptr[0] == 0, 'indptr must start at zero'
        assert self._indptr[-1] == len(self._indices), 'indptr must end at the number of entries'
        assert len(self._labels) == n_nodes, 'one label per node is required'
        if n_nodes == 0:
            return

        degrees = self.degrees
        assert np.all(degrees >= 0), 'indptr must be non-decreasing'
        assert len(self._indices) % 2 == 0, 'the sum of degrees must equal 2L'

        rows = np.repeat(np.arange(n_nodes), degrees)
        assert not np.any(rows == self._indices), 'self-loops are not allowed'

        # neighbor lists strictly increasing inside each row
        row_starts = np.zeros(len(self._indices), dtype=bool)
        row_starts[self._indptr[:-1][degrees > 0]] = True
        assert np.all(np.diff(self._indices)[~row_starts[1:]] > 0), \
            'neighbor lists must be sorted and free of duplicates'

        adjacency = self.adjacency_matrix()
        assert (adjacency != adjacency.T).nnz == 0, 'adjacency must be symmetric'

    def __repr__(self):
        return f'Graph(N={self.n_nodes}, L={self.n_links})'

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self._labels == other._labels and
                np.array_equal(self._indptr, other._indptr) and
                np.array_equal(self._indices, other._indices))

    __hash__ = None

    @property
    def n_nodes(self):
        """The number of nodes, N."""
        return len(self._indptr) - 1

    @property
    def n_links(self):
        """The number of undirected links, L."""
        return len(self._indices) // 2

    @property
    def labels(self):
        """The node labels, indexed by node id."""
        return self._labels

    @property
    def indptr(self):
        return self._indptr

    @property
    def indices(self):
        return self._indices

    @cached_property
    def degrees(self):
        """The degree sequence, indexed by node id."""
        degrees = np.diff(self._indptr)
        degrees.flags.writeable = False
        return degrees

    @property
    def d_max(self):
        return int(self.degrees.max()) if self.n_nodes else 0

    @property
    def mean_degree(self):
        return 2 * self.n_links / self.n_nodes if self.n_nodes else 0.0

    @cached_property
    def label_index(self):
        """A dictionary mapping every label to its node id."""
        return {label: i for i, label in enumerate(self._labels)}

    @cached_property
    def neighbor_sets(self):
        """The neighbors of every node as a list of frozensets."""
        return [frozenset(self._indices[start:stop].tolist())
                for start, stop in zip(self._indptr[:-1], self._indptr[1:])]

    def neighbors(self, node):
        """
        Get the sorted neighbor ids of a node.

        Parameters
        ----------
        node : int
            The node id.

        Returns
        -------
        neighbors : numpy array
            The (read-only) neighbor ids.
        """
        return self._indices[self._indptr[node]:self._indptr[node + 1]]

    def adjacency_list(self):
        """The adjacency as a list of sorted Python lists."""
        return [self.neighbors(i).tolist() for i in range(self.n_nodes)]

    def entry_rows(self):
        """The source node of every adjacency entry."""
        return np.repeat(np.arange(self.n_nodes), self.degrees)

    def edges(self):
        """
        Get every undirected link once, as ``(i, j)`` with ``i < j``.

        Returns
        -------
        edges : numpy array
            An ``L x 2`` array of node ids, in row-major order.
        """
        rows = self.entry_rows()
        upper = rows < self._indices
        return np.column_stack([rows[upper], self._indices[upper]])

    def edge_labels(self):
        """Every undirected link once, as a list of label pairs."""
        return [(self._labels[i], self._labels[j]) for i, j in self.edges()]

    def adjacency_matrix(self):
        """
        Get the adjacency matrix.

        Returns
        -------
        adjacency : scipy.sparse.csr_matrix
            The symmetric 0/1 adjacency matrix.
        """
        data = np.ones(len(self._indices), dtype=np.int64)
        return sparse.csr_matrix((data, self._indices, self._indptr),
                                 shape=(self.n_nodes, self.n_nodes))

    def common_neighbor_counts(self):
        """
        Count the common neighbors of the two endpoints of every
        adjacency entry, i.e. ``n_ij = |adj(i) & adj(j)|``.

        Returns
        -------
        counts : numpy array
            One count per entry of :attr:`indices`.
        """
        sets = self.neighbor_sets
        counts = np.zeros(len(self._indices), dtype=np.int64)
        for i in range(self.n_nodes):
            start, stop = self._indptr[i], self._indptr[i + 1]
            own = sets[i]
            counts[start:stop] = [len(own & sets[j]) for j in self._indices[start:stop].tolist()]
        return counts

    def subgraph(self, node_ids):
        """
        Get the subgraph induced by a set of nodes. The kept
        nodes are relabeled contiguously in increasing id order.

        Parameters
        ----------
        node_ids : array-like
            The ids of the nodes to keep.

        Returns
        -------
        subgraph : Graph
            The induced subgraph, keeping the original labels.
        """
        node_ids = np.unique(np.asarray(node_ids, dtype=np.int64))
        new_ids = np.full(self.n_nodes, -1, dtype=np.int64)
        new_ids[node_ids] = np.arange(len(node_ids))

        edges = self.edges()
        mapped = new_ids[edges] if len(edges) else np.empty((0, 2), dtype=np.int64)
        keep = np.all(mapped >= 0, axis=1)
        labels = [self._labels[i] for i in node_ids]
        return Graph.from_arrays(len(node_ids), mapped[keep, 0], mapped[keep, 1], labels)


def build_graph(edge_list, nodes=None):
    """
    Build a canonical simple graph from labeled links.

    Self-loops are dropped, duplicate and reversed links are collapsed,
    and node ids are assigned in first-seen label order.

    Parameters
    ----------
    edge_list : iterable of (str, str)
        The labeled links.
    nodes : iterable of str, optional
        Labels seen before any link; isolated nodes are kept.
        Defaults to None.

    Returns
    -------
    graph : Graph
        The canonical graph.

    Raises
    ------
    ValueError
        If a label is not a non-empty string.
    """
    pairs = [tuple(pair) for pair in edge_list]
    nodes = [] if nodes is None else list(nodes)
    flat = nodes + [label for pair in pairs for label in pair]
    if any(not isinstance(label, str) or not label for label in flat):
        raise ValueError('Node labels must be non-empty strings.')
    if not flat:
        return Graph(np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int64), [])

    codes, uniques = pd.factorize(pd.Series(flat, dtype=object), sort=False)
    link_codes = codes[len(nodes):].reshape(-1, 2)
    return Graph.from_arrays(len(uniques),
                             link_codes[:, 0],
                             link_codes[:, 1],
                             list(uniques))


@dataclass(frozen=True)
class ComponentReport:
    """
    The connected components of a graph.

    Attributes
    ----------
    sizes : numpy array
        The component sizes, largest first.
    component_of : numpy array
        The component index of every node, matching the order of `sizes`
        (component 0 is the LCC).
    lcc_node_ids : numpy array
        The sorted node ids of the largest connected component.
    lcc_fraction : float
        The share of nodes inside the LCC.
    """

    sizes: np.ndarray
    component_of: np.ndarray
    lcc_node_ids: np.ndarray
    lcc_fraction: float

    @property
    def n_components(self):
        return len(self.sizes)


def connected_components(g):
    """
    Partition the nodes of a graph by reachability.

    When several components share the largest size,
    the one containing the lowest node id is the LCC.

    Parameters
    ----------
    g : Graph
        The graph.

    Returns
    -------
    report : ComponentReport
        The component sizes, memberships and the LCC.
    """
    n_nodes = g.n_nodes
    if n_nodes == 0:
        empty = np.zeros(0, dtype=np.int64)
        return ComponentReport(empty, empty, empty, 0.0)

    n_components, labels = _csgraph_components(g.adjacency_matrix(), directed=False)
    sizes = np.bincount(labels, minlength=n_components)
    lowest_member = np.full(n_components, n_nodes, dtype=np.int64)
    np.minimum.at(lowest_member, labels, np.arange(n_nodes))

    # largest first, ties broken by lowest member id
    order = np.lexsort((lowest_member, -sizes))
    rank = np.empty(n_components, dtype=np.int64)
    rank[order] = np.arange(n_components)

    component_of = rank[labels]
    sizes = sizes[order]
    lcc_node_ids = np.flatnonzero(component_of == 0)
    logger.debug('Found %d components, LCC of %d nodes.', n_components, sizes[0])
    return ComponentReport(sizes, component_of, lcc_node_ids, sizes[0] / n_nodes)


def extract_lcc(g):
    """
    Extract the largest connected component as a graph
    with contiguous node ids; labels are preserved.

    Parameters
    ----------
    g : Graph
        The graph.

    Returns
    -------
    lcc : Graph
        The induced subgraph on the LCC.

    Raises
    ------
    ValueError
        If the graph has no nodes.
    """
    if g.n_nodes == 0:
        raise ValueError('Cannot extract the LCC of an empty graph.')
    return g.subgraph(connected_components(g).lcc_node_ids)


def component_size_distribution(report):
    """
    Count how many components have each size.

    Parameters
    ----------
    report : ComponentReport
        The components of a graph.

    Returns
    -------
    distribution : pandas DataFrame
        Columns ``size`` and ``count``, by increasing size.
    """
    sizes, counts = np.unique(report.sizes, return_counts=True)
    return pd.DataFrame({'size': sizes, 'count': counts})


def read_edge_list(path):
    """
    Read a tab-separated edge list (``label1<TAB>label2``, UTF-8,
    no header) and canonicalize it with :func:`build_graph`.

    Parameters
    ----------
    path : str
        The file path.

    Returns
    -------
    graph : Graph
        The graph.
    """
    edges = []
    with open(path, encoding='utf-8') as edge_file:
        for line_number, line in enumerate(edge_file, start=1):
            line = line.rstrip('\n')
            if not line:
                continue
            fields = line.split('\t')
            if len(fields) != 2:
                raise ValueError(f'Line {line_number} of {path} does not have two columns.')
            edges.append((fields[0], fields[1]))
    return build_graph(edges)


def write_edge_list(g, path):
    """
    Write every link of a graph once, in node-id order,
    as a tab-separated edge list.

    Parameters
    ----------
    g : Graph
        The graph.
    path : str
        The output file path.
    """
    with open(path, 'w', encoding='utf-8', newline='\n') as edge_file:
        edge_file.writelines(f'{first}\t{second}\n' for first, second in g.edge_labels())
