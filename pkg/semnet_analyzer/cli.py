"""
The ``semnet-analyzer`` command line: ingest ConceptNet networks,
analyze them, calibrate their structural coefficients and study
inflection peaks.

Every command reads one JSON run configuration (flags override its
fields), echoes the effective configuration into the output directory
and exits with 0 on success, 2 on a usage or input error, 3 when
nothing was produced and 4 when some networks failed.

:organization: semnet_analyzer developers
:date: 2026-10-19
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field, fields

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from .conceptnet import POSSIBLE_RELATIONS, build_merge_map, ingest_dump, read_pos_tags, write_pos_tags
from .degree_stats import annd, clustering, default_log_width, degree_density, graph_summary, log_bin, network_table
from .graph import component_size_distribution, connected_components, extract_lcc, read_edge_list, write_edge_list
from .inflection import (analyze_peak, grammar_expectation, grammar_table, load_grammar, merge_and_compare,
                         pos_percentages, positive_degree_density)
from .motifs import graph_level_coefficients
from .rewiring import RewireConfig, rewired_ensemble
from .tail_estimation import TailEstimator, gamma_table
from .ubcm import (POSSIBLE_METRICS, UBCM, CalibrationError, ConvergenceError, calibrate_from_samples,
                   calibration_sample_count, sample_coefficients)
from .utils import RNG_ALGORITHM, config_hash, write_json, write_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_EMPTY = 3
EXIT_PARTIAL = 4

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# fields left out of the configuration hash
WORKER_FIELDS = ('n_jobs', 'network_jobs')


@dataclass
class RunConfig:
    """
    The configuration of a run.

    Attributes
    ----------
    dataset : str
        The ConceptNet assertions dump, plain or gzip.
    languages : list of str
        The language codes.
    relations : list of str
        Names from `POSSIBLE_RELATIONS`.
    seed : int
        The base seed of every randomized result.
    log_width : float or None
        The logarithmic bin width of the slope estimate; None
        spreads about 20 bins over the degrees.
    windows : dict
        Regression windows ``[k_lo, k_hi]`` keyed by ``"language/relation"``.
    rewire_multiplier, rewire_attempt_factor, rewire_realizations : int
        See :class:`~semnet_analyzer.rewiring.RewireConfig`.
    calibration_samples : int or None
        The number of UBCM samples R; None picks 500, or 100 above
        `large_network_nodes` nodes.
    large_network_nodes, min_calibration_nodes, max_calibration_nodes : int
        The LCC sizes that switch R and bound calibration.
    peak_threshold : float
        The peak height ratio over the power-law baseline.
    peak_log_width : float
        The logarithmic bin width of peak detection.
    out : str
        The output directory.
    graph_dir : str or None
        Where edge lists are written and read; None means ``<out>/graphs``.
    n_jobs : int
        The number of joblib workers inside one network.
    network_jobs : int
        The number of joblib workers across networks; results keep
        the order of `languages` and `relations`.
    """

    dataset: str = None
    languages: list = field(default_factory=lambda: ['en'])
    relations: list = field(default_factory=lambda: list(POSSIBLE_RELATIONS))
    seed: int = 0
    log_width: float = None
    windows: dict = field(default_factory=dict)
    rewire_multiplier: int = 4
    rewire_attempt_factor: int = 100
    rewire_realizations: int = 10
    calibration_samples: int = None
    large_network_nodes: int = 500000
    min_calibration_nodes: int = 100
    max_calibration_nodes: int = 1200000
    peak_threshold: float = 3.0
    peak_log_width: float = 0.1
    out: str = 'out'
    graph_dir: str = None
    n_jobs: int = 1
    network_jobs: int = 1

    @classmethod
    def from_dict(cls, values):
        """
        Build a configuration from a dict.

        Raises
        ------
        ValueError
            If a key is unknown or a value is invalid.
        """
        known = {config_field.name for config_field in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ValueError(f'Unknown configuration keys: {unknown}')
        config = cls(**values)
        config.validate()
        return config

    def validate(self):
        for relation in self.relations:
            if relation not in POSSIBLE_RELATIONS:
                raise ValueError(f'The relation must be one of the following: {POSSIBLE_RELATIONS}')
        if not self.languages:
            raise ValueError('At least one language is required.')
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or not 0 <= self.seed < 2**64:
            raise ValueError(f'The seed must be a non-negative 64-bit integer, not {self.seed!r}.')
        for key, window in self.windows.items():
            if len(window) != 2 or not window[0] < window[1]:
                raise ValueError(f'The window of {key} must be a pair k_lo < k_hi.')
        if self.calibration_samples is not None and self.calibration_samples < 1:
            raise ValueError('The number of calibration samples must be at least 1.')
        if self.n_jobs == 0 or self.network_jobs == 0:
            raise ValueError('The number of workers must not be 0.')
        self.rewire_config()

    def to_dict(self):
        return asdict(self)

    @property
    def hash(self):
        return config_hash({name: value for name, value in self.to_dict().items() if name not in WORKER_FIELDS})

    @property
    def graphs_path(self):
        return self.graph_dir or os.path.join(self.out, 'graphs')

    def graph_file(self, language, relation):
        return os.path.join(self.graphs_path, language, f'{relation}.tsv')

    def pos_file(self, language):
        return os.path.join(self.graphs_path, language, 'pos.tsv')

    def window(self, language, relation):
        window = self.windows.get(f'{language}/{relation}')
        return None if window is None else tuple(window)

    def rewire_config(self):
        return RewireConfig(multiplier=self.rewire_multiplier,
                            attempt_factor=self.rewire_attempt_factor,
                            seed=self.seed,
                            realizations=self.rewire_realizations)

    def provenance(self):
        """The fields stamped on every randomized output."""
        return {'seed': self.seed, 'rng': RNG_ALGORITHM, 'config_hash': self.hash}


def _networks(config):
    return [(language, relation) for language in config.languages for relation in config.relations]


def _write_summary(config, command, failures, **extra):
    summary = {'command': command, 'failures': failures, **config.provenance(), **extra}
    write_json(summary, os.path.join(config.out, f'run_summary_{command}.json'))


def _exit_code(n_done, failures):
    if n_done == 0:
        return EXIT_EMPTY
    return EXIT_PARTIAL if failures else EXIT_OK


def cmd_ingest(config):
    """
    Read the dump and write one edge list per language and relation,
    the part-of-speech tags and the ingest report.
    """
    if config.dataset is None or not os.path.isfile(config.dataset):
        logger.error('The dataset %r is not a readable file.', config.dataset)
        return EXIT_USAGE

    result = ingest_dump(config.dataset, config.languages, config.relations)

    report = {}
    n_kept = 0
    for language, relation in _networks(config):
        g = result.graphs[(language, relation)]
        path = config.graph_file(language, relation)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        write_edge_list(g, path)
        entry = {'N': g.n_nodes, 'L': g.n_links}
        if (language, relation) in result.reports:
            entry.update(result.reports[(language, relation)].to_dict())
        report.setdefault(language, {})[relation] = entry
        n_kept += g.n_links

    for language in config.languages:
        path = config.pos_file(language)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        write_pos_tags(result.pos_tags[language], path)

    write_json(report, os.path.join(config.graphs_path, 'ingest_report.json'))
    _write_summary(config, 'ingest', [])
    if n_kept == 0:
        logger.error('No rows of %s matched the requested languages and relations.', config.dataset)
        return EXIT_EMPTY
    return EXIT_OK


def _curve_frame(observed, rewired, name):
    frame = pd.DataFrame({name: observed})
    frame[f'{name}_rewired_mean'] = rewired.mean
    frame[f'{name}_rewired_std'] = rewired.std
    frame.index.name = 'k'
    return frame.reset_index()


def _mean_std(stats):
    return {'mean': stats.mean, 'std': stats.std}


def analyze_network(g, config, language, relation):
    """
    Analyze one network: statistics of the full graph and of its LCC,
    the four tail exponents, rewired-ensemble statistics and curves.

    Returns
    -------
    result : dict
        JSON-ready statistics.
    curves : dict
        DataFrames keyed by curve name.
    estimate : TailEstimate or None
        None if the LCC is too small for tail estimation.
    """
    components = connected_components(g)
    lcc = extract_lcc(g)
    if lcc.n_links == 0:
        raise ValueError('The LCC has no links.')
    mixing = annd(lcc)
    clust = clustering(lcc)
    estimator = TailEstimator(log_width=config.log_width,
                              window=config.window(language, relation)).fit(lcc.degrees)

    result = {'language': language,
              'relation': relation,
              'full': graph_summary(g),
              'lcc': graph_summary(lcc, mixing, clust),
              'lcc_fraction': components.lcc_fraction,
              'n_components': components.n_components,
              'tail': None if estimator.skipped_ else estimator.estimate_.to_dict(),
              'tail_skipped': estimator.skipped_,
              'rewired': None,
              **config.provenance()}

    density = degree_density(lcc)
    curves = {'density': density.rename_axis('k').reset_index(),
              'binned': log_bin(density, config.log_width or default_log_width(lcc.d_max)).to_frame(),
              'components': component_size_distribution(components)}

    if lcc.n_links >= 2:
        cfg = config.rewire_config()
        full = rewired_ensemble(g, cfg, ['lcc_fraction'], n_jobs=config.n_jobs)
        rewired = rewired_ensemble(lcc, cfg, ['c_G', 'annd', 'annd_by_degree', 'c_by_degree'],
                                   n_jobs=config.n_jobs)
        result['rewired'] = {'lcc_fraction': _mean_std(full['lcc_fraction']),
                             'c_G': _mean_std(rewired['c_G']),
                             'annd': _mean_std(rewired['annd']),
                             'realizations': cfg.realizations,
                             'multiplier': cfg.multiplier,
                             'cap_reached': full['lcc_fraction'].n_cap_reached + rewired['c_G'].n_cap_reached}
        curves['annd'] = _curve_frame(mixing.annd_by_degree, rewired['annd_by_degree'], 'annd')
        curves['clustering'] = _curve_frame(clust.c_by_degree, rewired['c_by_degree'], 'mean_c')
    return result, curves, estimator.estimate_


def _lcc_row(result):
    rewired = result['rewired']
    row = {'language': result['language'],
           'relation': result['relation'],
           'N': result['full']['N'],
           'N_lcc': result['lcc']['N'],
           'lcc_percent': 100.0 * result['lcc_fraction'],
           'rewired_lcc_percent': np.nan,
           'rewired_lcc_percent_std': np.nan}
    if rewired is not None:
        row['rewired_lcc_percent'] = 100.0 * rewired['lcc_fraction']['mean']
        row['rewired_lcc_percent_std'] = 100.0 * rewired['lcc_fraction']['std']
    return row


def _write_analysis_tables(config, results, estimates, components, pos_rows):
    tables = os.path.join(config.out, 'tables')
    for language in config.languages:
        full = {rel: res['full'] for (lang, rel), res in results.items() if lang == language}
        if not full:
            continue
        lcc = {rel: res['lcc'] for (lang, rel), res in results.items() if lang == language}
        write_table(network_table(full), os.path.join(tables, f'full_{language}.tsv'), index=True)
        write_table(network_table(lcc), os.path.join(tables, f'lcc_{language}.tsv'), index=True)
        sizes = pd.concat([frame for (lang, _), frame in components.items() if lang == language],
                          ignore_index=True)
        write_table(sizes, os.path.join(tables, f'components_{language}.tsv'))
        pos = {rel: row for (lang, rel), row in pos_rows.items() if lang == language}
        if pos:
            write_table(pd.DataFrame(pos).rename_axis('pos'), os.path.join(tables, f'pos_{language}.tsv'),
                        index=True)

    rows = pd.DataFrame([_lcc_row(result) for result in results.values()])
    write_table(rows, os.path.join(tables, 'lcc.tsv'))
    write_table(rows.pivot(index='language', columns='relation', values='N_lcc'),
                os.path.join(tables, 'nodes.tsv'), index=True)
    mean_degree = pd.DataFrame([{'language': lang, 'relation': rel, 'mean_degree': res['lcc']['mean_degree']}
                                for (lang, rel), res in results.items()])
    write_table(mean_degree.pivot(index='language', columns='relation', values='mean_degree'),
                os.path.join(tables, 'mean_degree.tsv'), index=True)
    write_table(gamma_table(estimates), os.path.join(tables, 'gamma.tsv'))


def _analyze_file(config, language, relation):
    """
    Read and analyze one network.

    Returns
    -------
    reason : str or None
        Why the network was skipped.
    outcome : tuple or None
        The result, curves and tail estimate of :func:`analyze_network`
        and the part-of-speech percentages of the LCC, or None when no
        tags were ingested.
    """
    path = config.graph_file(language, relation)
    try:
        g = read_edge_list(path)
        if g.n_nodes == 0:
            raise ValueError(f'{path} holds no links.')
        result, curves, estimate = analyze_network(g, config, language, relation)
    except (OSError, ValueError) as error:
        return str(error), None

    pos_row = None
    pos_path = config.pos_file(language)
    if os.path.isfile(pos_path):
        pos_row = pos_percentages(extract_lcc(g).labels, read_pos_tags(pos_path))
    return None, (result, curves, estimate, pos_row)


def cmd_analyze(config):
    """Analyze every requested network and write per-network results and summary tables."""
    failures = []
    results = {}
    estimates = {}
    components = {}
    pos_rows = {}

    networks = _networks(config)
    outcomes = Parallel(n_jobs=config.network_jobs)(
        delayed(_analyze_file)(config, language, relation) for language, relation in networks)

    for (language, relation), (reason, outcome) in zip(networks, outcomes):
        if reason is not None:
            logger.warning('Skipping %s/%s: %s', language, relation, reason)
            failures.append({'language': language, 'relation': relation, 'reason': reason})
            continue

        result, curves, estimate, pos_row = outcome
        key = (language, relation)
        results[key] = result
        estimates[key] = estimate
        components[key] = curves['components'].assign(relation=relation)

        out_dir = os.path.join(config.out, 'analysis', language)
        write_json(result, os.path.join(out_dir, f'{relation}.json'))
        for name, frame in curves.items():
            write_table(frame, os.path.join(out_dir, f'{relation}_{name}.tsv'))

        if pos_row is not None:
            pos_rows[key] = pos_row

    if results:
        _write_analysis_tables(config, results, estimates, components, pos_rows)
    _write_summary(config, 'analyze', failures, analyzed=len(results))
    return _exit_code(len(results), failures)


def calibrate_network(lcc, config):
    """
    Calibrate ``s(G)`` and ``c(G)`` of an LCC against the UBCM.

    Returns
    -------
    row : dict
        The calibrated values, their dispersion, R and the
        excluded samples; a failed metric carries its reason.
    """
    R = config.calibration_samples or calibration_sample_count(lcc.n_nodes, config.large_network_nodes)
    model = UBCM().fit(lcc.degrees)
    observed = dict(zip(POSSIBLE_METRICS, graph_level_coefficients(lcc, n_jobs=config.n_jobs)))
    values = sample_coefficients(model, R, seed=config.seed, n_jobs=config.n_jobs)

    row = {'N': lcc.n_nodes, 'R': R, 'residual': model.residual_}
    reasons = []
    for column, metric in enumerate(POSSIBLE_METRICS):
        try:
            result = calibrate_from_samples(metric, observed[metric], values[:, column], config.seed)
        except CalibrationError as error:
            reasons.append(str(error))
            row.update({f'C_{metric}': None, f'std_{metric}': None, f'excluded_{metric}': None})
            continue
        row.update({f'C_{metric}': result.calibrated,
                    f'std_{metric}': result.std,
                    f'excluded_{metric}': result.excluded})
    row['status'] = 'failed' if reasons else 'ok'
    row['reason'] = '; '.join(reasons)
    return row


def _calibrate_file(config, language, relation):
    """
    Read one network and calibrate its LCC.

    Returns
    -------
    row : dict
        The calibration row, with status ``"ok"``, ``"skipped"`` or
        ``"failed"``; status ``"unreadable"`` when the edge list
        could not be read.
    """
    row = {'language': language, 'relation': relation}
    try:
        lcc = extract_lcc(read_edge_list(config.graph_file(language, relation)))
    except (OSError, ValueError) as error:
        return {**row, 'status': 'unreadable', 'reason': str(error)}

    if lcc.n_nodes < config.min_calibration_nodes:
        return {**row, 'N': lcc.n_nodes, 'status': 'skipped', 'reason': f'N < {config.min_calibration_nodes}'}
    if lcc.n_nodes > config.max_calibration_nodes:
        return {**row, 'N': lcc.n_nodes, 'status': 'skipped', 'reason': f'N > {config.max_calibration_nodes}'}

    try:
        row.update(calibrate_network(lcc, config))
    except ConvergenceError as error:
        row.update({'N': lcc.n_nodes, 'status': 'failed', 'reason': str(error)})
    return row


def cmd_calibrate(config):
    """Calibrate the structural coefficients of every requested LCC."""
    failures = []
    rows = []
    outcomes = Parallel(n_jobs=config.network_jobs)(
        delayed(_calibrate_file)(config, language, relation) for language, relation in _networks(config))

    for row in outcomes:
        language, relation = row['language'], row['relation']
        if row['status'] == 'unreadable':
            failures.append({'language': language, 'relation': relation, 'reason': row['reason']})
            continue
        if row['status'] == 'failed':
            logger.warning('Calibration of %s/%s failed: %s', language, relation, row['reason'])
            failures.append({'language': language, 'relation': relation, 'reason': row['reason']})
        rows.append(row)

    columns = ['language', 'relation', 'N', 'C_similarity', 'C_complementarity', 'std_similarity',
               'std_complementarity', 'R', 'excluded_similarity', 'excluded_complementarity',
               'residual', 'status', 'reason']
    table = pd.DataFrame(rows, columns=columns)
    if rows:
        table['seed'] = config.seed
        table['rng'] = RNG_ALGORITHM
        table['config_hash'] = config.hash
        write_table(table, os.path.join(config.out, 'tables', 'calibration.tsv'))
    n_done = int(np.sum(table['status'] == 'ok')) if rows else 0
    _write_summary(config, 'calibrate', failures, calibrated=n_done)
    return _exit_code(n_done, failures)


def inflection_language(config, language, grammar):
    """
    Study the Related-To peak of one language.

    Returns
    -------
    result : dict
        The peak report, the merge comparison and flags.
    density : pandas DataFrame
        The binned densities before (and after) merging.
    report : PeakReport or None
    """
    g = extract_lcc(read_edge_list(config.graph_file(language, 'RelatedTo')))
    pos_path = config.pos_file(language)
    pos_tags = read_pos_tags(pos_path) if os.path.isfile(pos_path) else None

    flags = []
    if language not in grammar:
        flags.append('no_grammar_entry')
    form_of_path = config.graph_file(language, 'FormOf')
    form_of = read_edge_list(form_of_path) if os.path.isfile(form_of_path) else None
    if form_of is None or form_of.n_nodes == 0:
        form_of = None
        flags.append('no_form_of')
    if pos_tags is None:
        flags.append('no_pos_tags')

    report = analyze_peak(g, language,
                          pos_tags=pos_tags,
                          form_of_labels=None if form_of is None else form_of.labels,
                          log_width=config.peak_log_width,
                          threshold=config.peak_threshold,
                          grammar=grammar)
    if report is None:
        flags.append('no_peak')
    elif report.pos is not None and report.pos.empty:
        flags.append('no_tagged_peak_words')

    result = {'language': language,
              'grammar': grammar.get(language),
              'peak': None if report is None else report.to_dict(),
              'merge': None,
              'flags': flags,
              'peak_threshold': config.peak_threshold,
              'peak_log_width': config.peak_log_width}

    if form_of is not None:
        comparison = merge_and_compare(g, build_merge_map(form_of),
                                       log_width=config.peak_log_width,
                                       threshold=config.peak_threshold)
        result['merge'] = {'peak_before': comparison.peak_before,
                           'peak_after': comparison.peak_after,
                           'peak_mass_before': comparison.peak_mass_before,
                           'peak_mass_after': comparison.peak_mass_after,
                           'reduction': comparison.reduction,
                           'links_before': comparison.links_before,
                           'links_after': comparison.links_after}
        density = comparison.to_frame()
    else:
        binned = log_bin(positive_degree_density(g), config.peak_log_width)
        density = pd.DataFrame({'k': binned.centers, 'density_before': binned.heights})
    return result, density, report


def cmd_inflection(config):
    """Detect and explain inflection peaks in the Related-To network of every language."""
    grammar = load_grammar()
    failures = []
    rows = []
    pos_frames = []
    coverage_rows = []
    for language in config.languages:
        try:
            result, density, report = inflection_language(config, language, grammar)
        except (OSError, ValueError) as error:
            logger.warning('Skipping %s: %s', language, error)
            failures.append({'language': language, 'reason': str(error)})
            continue

        out_dir = os.path.join(config.out, 'inflection', language)
        write_json(result, os.path.join(out_dir, 'peak.json'))
        write_table(density, os.path.join(out_dir, 'density.tsv'))
        rows.append({'language': language,
                     'm': grammar_expectation(language, grammar),
                     'k_min': None if report is None else report.k_min,
                     'k_max': None if report is None else report.k_max,
                     'matched': False if report is None else report.matched})
        if report is not None and report.pos is not None:
            pos_frames.append(report.pos.to_frame().rename_axis('pos').reset_index().assign(language=language))
        if report is not None and report.formof is not None:
            coverage_rows.append({'language': language, **report.formof})

    tables = os.path.join(config.out, 'tables')
    if rows:
        write_table(pd.DataFrame(rows), os.path.join(tables, 'kmatch.tsv'))
        write_table(grammar_table(config.languages, grammar), os.path.join(tables, 'grammar.tsv'))
    if pos_frames:
        write_table(pd.concat(pos_frames, ignore_index=True), os.path.join(tables, 'peak_pos.tsv'))
    if coverage_rows:
        write_table(pd.DataFrame(coverage_rows), os.path.join(tables, 'formof_coverage.tsv'))
    _write_summary(config, 'inflection', failures, studied=len(rows))
    return _exit_code(len(rows), failures)


COMMANDS = {'ingest': cmd_ingest,
            'analyze': cmd_analyze,
            'calibrate': cmd_calibrate,
            'inflection': cmd_inflection}


def build_parser():
    """Build the argument parser with one subcommand per pipeline stage."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='a JSON run configuration')
    common.add_argument('--seed', type=int, help='the base seed')
    common.add_argument('--out', help='the output directory')
    common.add_argument('--graph-dir', dest='graph_dir', help='the edge-list directory')
    common.add_argument('--languages', nargs='+', help='language codes, e.g. en es')
    common.add_argument('--relations', nargs='+', help=f'any of {POSSIBLE_RELATIONS}')
    common.add_argument('--n-jobs', dest='n_jobs', type=int, help='the number of joblib workers inside one network')
    common.add_argument('--network-jobs', dest='network_jobs', type=int,
                        help='the number of networks processed at once')
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help='log debug messages')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='log warnings and errors only')

    parser = argparse.ArgumentParser(prog='semnet-analyzer',
                                     description='Topology of ConceptNet semantic networks.')
    subparsers = parser.add_subparsers(dest='command', required=True)

    ingest = subparsers.add_parser('ingest', parents=[common], help='build networks from a dump')
    ingest.add_argument('--dataset', help='the ConceptNet assertions dump')

    analyze = subparsers.add_parser('analyze', parents=[common], help='network statistics')
    analyze.add_argument('--rewire-multiplier', dest='rewire_multiplier', type=int,
                         help='successful swaps per link')
    analyze.add_argument('--rewire-realizations', dest='rewire_realizations', type=int,
                         help='rewired realizations per network')

    calibrate = subparsers.add_parser('calibrate', parents=[common], help='calibrated structural coefficients')
    calibrate.add_argument('--samples', dest='calibration_samples', type=int, help='UBCM samples R')

    inflection = subparsers.add_parser('inflection', parents=[common], help='inflection peaks')
    inflection.add_argument('--peak-threshold', dest='peak_threshold', type=float,
                            help='peak height over the power-law baseline')
    return parser


def load_config(args):
    """
    Merge the JSON configuration named by ``args.config`` with the flags.

    Raises
    ------
    ValueError
        If the configuration is invalid.
    OSError
        If the configuration file cannot be read.
    """
    values = {}
    if args.config:
        with open(args.config, encoding='utf-8') as config_file:
            values = json.load(config_file)
        if not isinstance(values, dict):
            raise ValueError('The configuration must be a JSON object.')
    overrides = {name: value for name, value in vars(args).items()
                 if name not in ('command', 'config', 'verbose', 'quiet') and value is not None}
    return RunConfig.from_dict({**values, **overrides})


def main(argv=None):
    """
    Run a command.

    Parameters
    ----------
    argv : list of str, optional
        The arguments; None reads ``sys.argv``.

    Returns
    -------
    code : int
        The exit code.
    """
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.captureWarnings(True)

    try:
        config = load_config(args)
    except (OSError, ValueError) as error:
        logger.error('Invalid configuration: %s', error)
        return EXIT_USAGE

    os.makedirs(config.out, exist_ok=True)
    write_json({**config.to_dict(), 'config_hash': config.hash},
               os.path.join(config.out, 'effective_config.json'))
    logger.info('Running %s with configuration %s.', args.command, config.hash)
    return COMMANDS[args.command](config)


if __name__ == '__main__':
    sys.exit(main())
