"""
Reading ConceptNet assertion dumps into one semantic network per
language and relation, the Union network, and the merging of
inflected forms through the Form-Of relation.

:organization: semnet_analyzer developers
:date: 2026-10-19
"""

import gzip
import logging
from dataclasses import dataclass, field

import pandas as pd

from .graph import build_graph, connected_components

logger = logging.getLogger(__name__)

RELATION_URIS = {'HasA': '/r/HasA',
                 'PartOf': '/r/PartOf',
                 'IsA': '/r/IsA',
                 'RelatedTo': '/r/RelatedTo',
                 'Antonym': '/r/Antonym',
                 'Synonym': '/r/Synonym',
                 'FormOf': '/r/FormOf'}

UNION = 'Union'

UNION_MEMBERS = ['HasA', 'PartOf', 'IsA', 'RelatedTo']

POSSIBLE_RELATIONS = list(RELATION_URIS) + [UNION]

POS_TAGS = {'n': 'noun', 'v': 'verb', 'a': 'adjective', 's': 'adjective', 'r': 'adverb'}

MAX_WORDS = 5

_URI_RELATIONS = {uri: name for name, uri in RELATION_URIS.items()}


@dataclass(frozen=True)
class RelationSpec:
    """
    A language and one of `POSSIBLE_RELATIONS`.

    Examples
    --------
    >>> RelationSpec('en', 'IsA').uri
    '/r/IsA'
    """

    language: str
    relation: str

    def __post_init__(self):
        if self.relation not in POSSIBLE_RELATIONS:
            raise ValueError(f'The relation must be one of the following: {POSSIBLE_RELATIONS}')
        if not self.language:
            raise ValueError('The language code must be a non-empty string.')

    @property
    def is_union(self):
        return self.relation == UNION

    @property
    def uri(self):
        if self.is_union:
            raise ValueError('The Union network is built from other relations, not read.')
        return RELATION_URIS[self.relation]


@dataclass(frozen=True)
class ConceptNode:
    """
    A ConceptNet term.

    Attributes
    ----------
    label : str
        The term, with ``_`` between words.
    language : str
        The language code.
    pos : str or None
        ``'noun'``, ``'verb'``, ``'adjective'`` or ``'adverb'`` when
        the URI carries a part-of-speech tag.
    """

    label: str
    language: str
    pos: str = None

    @property
    def word_count(self):
        return self.label.count('_') + 1


def parse_concept(uri):
    """
    Parse a concept URI such as ``/c/en/car/n``.

    Parameters
    ----------
    uri : str
        The URI.

    Returns
    -------
    node : ConceptNode

    Raises
    ------
    ValueError
        If the URI is not a concept URI.
    """
    parts = uri.split('/')
    if len(parts) < 4 or parts[0] or parts[1] != 'c' or not parts[2] or not parts[3]:
        raise ValueError(f'Not a concept URI: {uri!r}')
    pos = POS_TAGS.get(parts[4]) if len(parts) > 4 else None
    return ConceptNode(parts[3], parts[2], pos)


def _parse_row(line):
    fields = line.rstrip('\r\n').split('\t')
    if len(fields) < 4 or not fields[1].startswith('/r/'):
        raise ValueError(f'Malformed assertion row: {line[:80]!r}')
    return fields[1], parse_concept(fields[2]), parse_concept(fields[3])


@dataclass
class IngestReport:
    """
    Row counts of one ingest.

    Attributes
    ----------
    rows_read : int
        Non-blank rows read.
    rows_kept : int
        Rows turned into links.
    rows_malformed : int
        Rows that could not be parsed.
    dropped_labels : set
        The distinct terms dropped for having more than
        `MAX_WORDS` words.
    """

    rows_read: int = 0
    rows_kept: int = 0
    rows_malformed: int = 0
    dropped_labels: set = field(default_factory=set, repr=False)

    @property
    def nodes_dropped_long_phrase(self):
        return len(self.dropped_labels)

    def to_dict(self):
        return {'rows_read': self.rows_read,
                'rows_kept': self.rows_kept,
                'rows_malformed': self.rows_malformed,
                'nodes_dropped_long_phrase': self.nodes_dropped_long_phrase}


def _too_long(start, end, report):
    too_long = False
    for node in (start, end):
        if node.word_count > MAX_WORDS:
            report.dropped_labels.add(node.label)
            too_long = True
    return too_long


def _read_rows(lines, report):
    """Parse the non-blank rows, counting read and malformed rows in `report`."""
    for line in lines:
        if not line.strip():
            continue
        report.rows_read += 1
        try:
            row = _parse_row(line)
        except ValueError:
            report.rows_malformed += 1
            continue
        yield row


def _is_link(start, end, report):
    """
    Whether two endpoints of a matching row make a link: one language,
    distinct terms and no term over `MAX_WORDS` words, which `report` records.
    """
    if start.language != end.language or start.label == end.label:
        return False
    return not _too_long(start, end, report)


def parse_assertions(lines, spec, report=None):
    """
    Extract the links of one language and relation from assertion rows.

    Rows are tab-separated: assertion URI, relation URI, start URI,
    end URI and metadata. A row is kept when its relation matches and
    both endpoints are in the language and differ; endpoints of more
    than `MAX_WORDS` words drop the row. Malformed rows are counted and skipped.

    Parameters
    ----------
    lines : iterable of str
        The rows.
    spec : RelationSpec
        The language and relation; not the Union.
    report : IngestReport, optional
        Updated in place with the row counts.
        Defaults to None.

    Returns
    -------
    pairs : list of (ConceptNode, ConceptNode)
        The kept links in row order; their direction carries no meaning.

    Examples
    --------
    >>> rows = ['/a/1\\t/r/IsA\\t/c/en/car/n\\t/c/en/vehicle\\t{}']
    >>> [(a.label, b.label) for a, b in parse_assertions(rows, RelationSpec('en', 'IsA'))]
    [('car', 'vehicle')]
    """
    uri = spec.uri
    report = IngestReport() if report is None else report
    pairs = []
    for relation, start, end in _read_rows(lines, report):
        if relation == uri and start.language == spec.language and _is_link(start, end, report):
            pairs.append((start, end))
            report.rows_kept += 1
    return pairs


def open_dump(path):
    """Open a plain or gzip-compressed dump for reading text."""
    if str(path).endswith('.gz'):
        return gzip.open(path, 'rt', encoding='utf-8')
    return open(path, encoding='utf-8')


@dataclass
class IngestResult:
    """
    Everything read from a dump in one pass.

    Attributes
    ----------
    graphs : dict
        A Graph per ``(language, relation)``, the Union included.
    reports : dict
        An IngestReport per ``(language, relation)`` read from the dump.
    pos_tags : dict
        Per language, the first part-of-speech tag seen for every term.
    """

    graphs: dict
    reports: dict
    pos_tags: dict


def ingest_dump(path, languages, relations):
    """
    Build the requested networks from a ConceptNet dump in a single pass.

    Parameters
    ----------
    path : str
        The dump, plain or ``.gz``.
    languages : list of str
        The language codes.
    relations : list of str
        Names from `POSSIBLE_RELATIONS`. Requesting the Union also reads
        its member relations.

    Returns
    -------
    result : IngestResult

    Raises
    ------
    ValueError
        If a relation is unknown.
    OSError
        If the dump cannot be read.
    """
    for relation in relations:
        if relation not in POSSIBLE_RELATIONS:
            raise ValueError(f'The relation must be one of the following: {POSSIBLE_RELATIONS}')

    languages = list(dict.fromkeys(languages))
    direct = [relation for relation in relations if relation != UNION]
    if UNION in relations:
        direct += [relation for relation in UNION_MEMBERS if relation not in direct]

    wanted = set(languages)
    reports = {(language, relation): IngestReport() for language in languages for relation in direct}
    pairs = {key: [] for key in reports}
    pos_tags = {language: {} for language in languages}
    totals = IngestReport()

    with open_dump(path) as dump:
        for uri, start, end in _read_rows(dump, totals):
            for node in (start, end):
                if node.pos is not None and node.language in wanted:
                    pos_tags[node.language].setdefault(node.label, node.pos)

            key = (start.language, _URI_RELATIONS.get(uri))
            if key in reports and _is_link(start, end, reports[key]):
                pairs[key].append((start.label, end.label))

    graphs = {}
    for key, report in reports.items():
        report.rows_read = totals.rows_read
        report.rows_malformed = totals.rows_malformed
        report.rows_kept = len(pairs[key])
        graphs[key] = build_graph(pairs[key])
        logger.info('%s %s: %d rows kept, %r.', key[0], key[1], report.rows_kept, graphs[key])

    if UNION in relations:
        for language in languages:
            members = [graphs[(language, relation)] for relation in UNION_MEMBERS]
            graphs[(language, UNION)] = build_union(members)

    if totals.rows_malformed:
        logger.warning('Skipped %d malformed rows of %d in %s.', totals.rows_malformed, totals.rows_read, path)
    return IngestResult(graphs, reports, pos_tags)


def build_union(graphs):
    """
    Unite graphs over their node labels: the union of the node sets
    and of the link sets. Empty graphs, such as a relation missing
    for a language, contribute nothing.

    Parameters
    ----------
    graphs : list of Graph
        Graphs of one language.

    Returns
    -------
    union : Graph
    """
    nodes = [label for g in graphs for label in g.labels]
    edges = [pair for g in graphs for pair in g.edge_labels()]
    return build_graph(edges, nodes=nodes)


class MergeMap:
    """
    Maps every term to the representative of its merge group;
    terms outside every group map to themselves.

    Parameters
    ----------
    representatives : dict, optional
        Representative label keyed by label.
        Defaults to None.
    """

    def __init__(self, representatives=None):
        self._representatives = dict(representatives or {})

    def __getitem__(self, label):
        return self._representatives.get(label, label)

    def __len__(self):
        return len(self._representatives)

    def __repr__(self):
        return f'MergeMap(groups={len(self.groups())}, labels={len(self)})'

    @property
    def is_identity(self):
        return all(label == rep for label, rep in self._representatives.items())

    def groups(self):
        """The sorted members of every group with more than one member, by representative."""
        groups = {}
        for label, rep in self._representatives.items():
            groups.setdefault(rep, []).append(label)
        return {rep: sorted(members) for rep, members in sorted(groups.items()) if len(members) > 1}

    def to_frame(self):
        return pd.DataFrame(sorted(self._representatives.items()), columns=['label', 'representative'])


def build_merge_map(form_of):
    """
    Group every term with its inflected forms: the groups are
    the connected components of the Form-Of graph and each is
    represented by its lexicographically smallest label.

    Parameters
    ----------
    form_of : Graph
        The Form-Of graph of a language.

    Returns
    -------
    merge_map : MergeMap

    Examples
    --------
    >>> from semnet_analyzer import build_graph
    >>> merge_map = build_merge_map(build_graph([('amaba', 'amar'), ('amas', 'amar')]))
    >>> merge_map['amas']
    'amaba'
    """
    if form_of.n_nodes == 0:
        return MergeMap()
    frame = pd.DataFrame({'label': list(form_of.labels),
                          'component': connected_components(form_of).component_of})
    frame['representative'] = frame.groupby('component')['label'].transform('min')
    return MergeMap(dict(zip(frame['label'], frame['representative'])))


def apply_merge(g, merge_map):
    """
    Replace every label by its representative. Merged nodes keep all
    their links; resulting self-loops and duplicate links are removed.

    Parameters
    ----------
    g : Graph
        The graph.
    merge_map : MergeMap

    Returns
    -------
    merged : Graph
    """
    nodes = [merge_map[label] for label in g.labels]
    edges = [(merge_map[first], merge_map[second]) for first, second in g.edge_labels()]
    merged = build_graph(edges, nodes=nodes)
    logger.debug('Merged %r into %r.', g, merged)
    return merged


def write_pos_tags(pos_tags, path):
    """Write ``label<TAB>pos`` rows sorted by label."""
    with open(path, 'w', encoding='utf-8', newline='\n') as pos_file:
        pos_file.writelines(f'{label}\t{pos}\n' for label, pos in sorted(pos_tags.items()))


def read_pos_tags(path):
    """Read the file written by :func:`write_pos_tags`."""
    pos_tags = {}
    with open(path, encoding='utf-8') as pos_file:
        for line in pos_file:
            label, _, pos = line.rstrip('\n').partition('\t')
            if label:
                pos_tags[label] = pos
    return pos_tags
