"""
Peaks in the tail of degree distributions caused by grammatical
inflection: detection, comparison with the number of inflected forms
of a language, part-of-speech breakdowns and the effect of merging
inflected forms.

:organization: semnet_analyzer developers
:date: 2026-10-19
"""

import json
import logging
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import pandas as pd
from scipy.stats import theilslopes

from .conceptnet import apply_merge
from .degree_stats import degree_density, log_bin

logger = logging.getLogger(__name__)

POSSIBLE_POS = ['verb', 'noun', 'adjective', 'adverb']

PEAK_LOG_WIDTH = 0.1

GRAMMAR_FILE = os.path.join(os.path.dirname(__file__), 'data', 'grammar.json')


@lru_cache(maxsize=None)
def load_grammar(path=GRAMMAR_FILE):
    """
    Load the number of grammatical variations per language.

    Returns
    -------
    grammar : dict
        Per language code, a dict with ``name``, ``m``,
        ``rule`` and ``derivation``.
    """
    with open(path, encoding='utf-8') as grammar_file:
        return json.load(grammar_file)


def grammar_expectation(language, grammar=None):
    """
    Get the number of grammatical variations m of a language.

    Parameters
    ----------
    language : str
        The language code.
    grammar : dict, optional
        A table like the one returned by :func:`load_grammar`.
        Defaults to None, the packaged table.

    Returns
    -------
    m : int or None
        None for a language without an entry.

    Examples
    --------
    >>> grammar_expectation('es')
    54
    """
    grammar = load_grammar() if grammar is None else grammar
    entry = grammar.get(language)
    return None if entry is None else int(entry['m'])


def grammar_table(languages=None, grammar=None):
    """Lay out the grammar entries, one row per language."""
    grammar = load_grammar() if grammar is None else grammar
    languages = sorted(grammar) if languages is None else [lang for lang in languages if lang in grammar]
    rows = [{'language': lang, **grammar[lang]} for lang in languages]
    return pd.DataFrame(rows, columns=['language', 'name', 'm', 'rule', 'derivation'])


def positive_degree_density(g):
    """The degree density restricted to degrees of at least one."""
    density = degree_density(g)
    return density[density.index >= 1]


def detect_peak(binned, window=None, threshold=3.0, min_bins=2, min_mass=1e-3):
    """
    Find an anomalous peak in a log-binned degree density.

    A robust power-law baseline (Theil-Sen regression of the log height
    on the log degree) is fitted over the window. Peak candidates are
    runs of consecutive bins whose height is at least `threshold` times
    the baseline; a run needs `min_bins` bins and a `min_mass` share of
    the total weight. The heaviest run is the peak.

    Parameters
    ----------
    binned : BinnedDensity
        The binned density.
    window : tuple of float, optional
        The degrees ``(k_lo, k_hi)`` of the baseline fit and of the search.
        If None, from the highest bin to the last bin.
        Defaults to None.
    threshold : float, optional
        The height ratio over the baseline.
        Defaults to 3.0.
    min_bins : int, optional
        Defaults to 2.
    min_mass : float, optional
        Defaults to 1e-3.

    Returns
    -------
    bounds : tuple of int or None
        The smallest and largest degree covered by the peak,
        or None if there is no peak.
    """
    if not threshold > 1:
        raise ValueError(f'The peak threshold must exceed 1, not {threshold}.')
    occupied = binned.heights > 0
    if occupied.sum() < 3:
        return None

    if window is None:
        k_lo, k_hi = binned.centers[np.argmax(binned.heights)], np.inf
    else:
        k_lo, k_hi = window
    inside = occupied & (binned.centers >= k_lo) & (binned.centers <= k_hi)
    if inside.sum() < 3:
        return None

    log_k = np.log(binned.centers[inside])
    log_height = np.log(binned.heights[inside])
    slope, intercept = theilslopes(log_height, log_k)[:2]
    baseline = np.exp(intercept + slope * np.log(binned.centers))

    above = inside & (binned.heights >= threshold * baseline)
    total = binned.counts.sum()
    best, best_mass = None, 0.0
    start = None
    for i in range(len(above) + 1):
        if i < len(above) and above[i]:
            start = i if start is None else start
            continue
        if start is not None:
            mass = binned.counts[start:i].sum()
            if i - start >= min_bins and mass >= min_mass * total and mass > best_mass:
                best, best_mass = (start, i - 1), mass
            start = None

    if best is None:
        return None
    return int(binned.first[best[0]]), int(binned.last[best[1]])


def is_matched(m, bounds, tolerance=2):
    """
    Whether m lies inside the peak bounds or within
    `tolerance` degrees of the nearest bound.
    """
    if m is None or bounds is None:
        return False
    k_min, k_max = bounds
    return k_min - tolerance <= m <= k_max + tolerance


def pos_percentages(labels, pos_tags):
    """
    Calculate the percentage of every part of speech
    among the tagged labels.

    Parameters
    ----------
    labels : iterable of str
        The words.
    pos_tags : dict
        The part of speech of every tagged word.

    Returns
    -------
    percentages : pandas Series
        Percent per tag in `POSSIBLE_POS`, all NaN if no word is tagged.
    """
    tags = pd.Series([pos_tags.get(label) for label in labels], dtype=object).dropna()
    if tags.empty:
        return pd.Series(np.nan, index=POSSIBLE_POS, name='percent')
    counts = tags.value_counts().reindex(POSSIBLE_POS, fill_value=0)
    return (100.0 * counts / len(tags)).rename('percent')


def peak_nodes(g, bounds):
    """The ids of the nodes whose degree lies inside the peak bounds."""
    k_min, k_max = bounds
    return np.flatnonzero((g.degrees >= k_min) & (g.degrees <= k_max))


@dataclass(frozen=True)
class PosBreakdown:
    """
    Part-of-speech composition of peak words and of their neighbors.

    Attributes
    ----------
    peak : pandas Series
        Percent per tag among the tagged peak words.
    neighbors_mean, neighbors_std : pandas Series
        Mean and sample standard deviation over peak words of the
        percent per tag among their tagged neighbors.
    empty : bool
        True if no peak word is tagged.
    """

    peak: pd.Series
    neighbors_mean: pd.Series
    neighbors_std: pd.Series
    empty: bool

    def to_frame(self):
        return pd.DataFrame({'peak': self.peak,
                             'neighbors_mean': self.neighbors_mean,
                             'neighbors_std': self.neighbors_std})


def peak_pos_breakdown(g, node_ids, pos_tags):
    """
    Break the peak words and their neighbors down by part of speech.

    Parameters
    ----------
    g : Graph
        The graph.
    node_ids : array-like
        The peak words.
    pos_tags : dict
        The part of speech of every tagged word.

    Returns
    -------
    breakdown : PosBreakdown
    """
    labels = g.labels
    peak = pos_percentages([labels[i] for i in node_ids], pos_tags)

    per_word = [pos_percentages([labels[j] for j in g.neighbors(i)], pos_tags) for i in node_ids]
    per_word = [row for row in per_word if not row.isna().all()]
    if per_word:
        frame = pd.concat(per_word, axis=1)
        neighbors_mean = frame.mean(axis=1).rename('percent')
        neighbors_std = frame.std(axis=1, ddof=1).fillna(0.0).rename('percent')
    else:
        neighbors_mean = neighbors_std = pd.Series(np.nan, index=POSSIBLE_POS, name='percent')
    return PosBreakdown(peak, neighbors_mean, neighbors_std, bool(peak.isna().all()))


def formof_coverage(g, node_ids, form_of_labels):
    """
    Measure how well the Form-Of network covers the peak words.

    Parameters
    ----------
    g : Graph
        The graph.
    node_ids : array-like
        The peak words.
    form_of_labels : iterable of str
        The words of the Form-Of network.

    Returns
    -------
    coverage : dict
        ``peak``: percent of peak words in the Form-Of network;
        ``neighbors_mean`` and ``neighbors_std``: mean and sample
        standard deviation over peak words of the percent of their
        neighbors in it.
    """
    covered = set(form_of_labels)
    labels = g.labels
    node_ids = list(node_ids)
    if not node_ids:
        return {'peak': np.nan, 'neighbors_mean': np.nan, 'neighbors_std': np.nan}

    peak = 100.0 * np.mean([labels[i] in covered for i in node_ids])
    shares = [100.0 * np.mean([labels[j] in covered for j in g.neighbors(i)])
              for i in node_ids if g.degrees[i] > 0]
    shares = pd.Series(shares, dtype=float)
    return {'peak': float(peak),
            'neighbors_mean': float(shares.mean()) if len(shares) else np.nan,
            'neighbors_std': float(shares.std(ddof=1)) if len(shares) > 1 else 0.0}


@dataclass(frozen=True)
class PeakReport:
    """
    An anomalous peak and its relation to inflection.

    Attributes
    ----------
    k_min, k_max : int
        The degree bounds of the peak.
    m_expected : int or None
        The number of grammatical variations of the language.
    matched : bool
        Whether `m_expected` lies in (or within two degrees of) the peak.
    node_ids : numpy array
        The peak words.
    formof : dict or None
        The Form-Of coverage, see :func:`formof_coverage`.
    pos : PosBreakdown or None
    """

    k_min: int
    k_max: int
    m_expected: int
    matched: bool
    node_ids: np.ndarray
    formof: dict = None
    pos: PosBreakdown = None

    def to_dict(self):
        report = {'k_min': self.k_min,
                  'k_max': self.k_max,
                  'm_expected': self.m_expected,
                  'matched': self.matched,
                  'n_peak_words': len(self.node_ids),
                  'formof_coverage': self.formof}
        if self.pos is not None:
            report['pos'] = {'empty': self.pos.empty,
                             'peak': self.pos.peak.to_dict(),
                             'neighbors_mean': self.pos.neighbors_mean.to_dict(),
                             'neighbors_std': self.pos.neighbors_std.to_dict()}
        return report


def analyze_peak(g, language=None, pos_tags=None, form_of_labels=None,
                 log_width=PEAK_LOG_WIDTH, threshold=3.0, grammar=None):
    """
    Detect the peak of a network and describe it.

    Parameters
    ----------
    g : Graph
        The graph, usually a Related-To LCC.
    language : str, optional
        The language code for the grammar lookup.
    pos_tags : dict, optional
        Tags for the breakdown.
    form_of_labels : iterable of str, optional
        The Form-Of words for the coverage.
    log_width : float, optional
        Defaults to 0.1.
    threshold : float, optional
        Defaults to 3.0.
    grammar : dict, optional
        Defaults to the packaged table.

    Returns
    -------
    report : PeakReport or None
        None if no peak is found.
    """
    bounds = detect_peak(log_bin(positive_degree_density(g), log_width), threshold=threshold)
    if bounds is None:
        logger.info('No peak in %r.', g)
        return None

    m = grammar_expectation(language, grammar) if language is not None else None
    node_ids = peak_nodes(g, bounds)
    logger.info('Peak at k in [%d, %d] with %d words (m = %s).', *bounds, len(node_ids), m)
    return PeakReport(k_min=bounds[0],
                      k_max=bounds[1],
                      m_expected=m,
                      matched=is_matched(m, bounds),
                      node_ids=node_ids,
                      formof=None if form_of_labels is None else formof_coverage(g, node_ids, form_of_labels),
                      pos=None if pos_tags is None else peak_pos_breakdown(g, node_ids, pos_tags))


@dataclass(frozen=True)
class MergeComparison:
    """
    Degree densities before and after merging inflected forms,
    binned over the same bins.

    Attributes
    ----------
    before, after : BinnedDensity
    peak_before, peak_after : tuple of int or None
    peak_mass_before, peak_mass_after : float
        The probability mass inside the bounds of `peak_before`,
        before and after merging (0 without a peak).
    links_before, links_after : int
    """

    before: object
    after: object
    peak_before: tuple
    peak_after: tuple
    peak_mass_before: float
    peak_mass_after: float
    links_before: int
    links_after: int

    @property
    def reduction(self):
        """The relative loss of peak mass, NaN without a peak."""
        if not self.peak_mass_before:
            return np.nan
        return 1.0 - self.peak_mass_after / self.peak_mass_before

    def to_frame(self):
        return pd.DataFrame({'k': self.before.centers,
                             'density_before': self.before.heights,
                             'density_after': self.after.heights})


def _mass_between(density, bounds):
    if bounds is None:
        return 0.0
    k_min, k_max = bounds
    return float(density[(density.index >= k_min) & (density.index <= k_max)].sum())


def merge_and_compare(g, merge_map, log_width=PEAK_LOG_WIDTH, threshold=3.0):
    """
    Merge inflected forms and compare the degree densities.

    Parameters
    ----------
    g : Graph
        The graph.
    merge_map : MergeMap
        Groups of inflected forms.
    log_width : float, optional
        Defaults to 0.1.
    threshold : float, optional
        Defaults to 3.0.

    Returns
    -------
    comparison : MergeComparison
    """
    merged = apply_merge(g, merge_map)
    density_before = positive_degree_density(g)
    density_after = positive_degree_density(merged)

    k_range = (1, max(density_before.index.max(), density_after.index.max(), 1))
    before = log_bin(density_before, log_width, k_range=k_range)
    after = log_bin(density_after, log_width, k_range=k_range)
    peak_before = detect_peak(before, threshold=threshold)
    peak_after = detect_peak(after, threshold=threshold)

    comparison = MergeComparison(before=before,
                                 after=after,
                                 peak_before=peak_before,
                                 peak_after=peak_after,
                                 peak_mass_before=_mass_between(density_before, peak_before),
                                 peak_mass_after=_mass_between(density_after, peak_before),
                                 links_before=g.n_links,
                                 links_after=merged.n_links)
    logger.info('Merging %r into %r: peak %s -> %s.', g, merged, peak_before, peak_after)
    return comparison
