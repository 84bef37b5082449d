# License: GPL2
"""
Topology of semantic networks: graph construction from ConceptNet,
degree statistics, power-law tail estimation, null models and
inflection peaks.

:organization: semnet_analyzer developers
:date: 2026-10-19
"""

from .conceptnet import (MergeMap,
                         RelationSpec,
                         apply_merge,
                         build_merge_map,
                         build_union,
                         ingest_dump,
                         parse_assertions)
from .degree_stats import annd, clustering, degree_density, graph_summary, log_bin
from .graph import Graph, build_graph, connected_components, extract_lcc, read_edge_list, write_edge_list
from .inflection import analyze_peak, detect_peak, grammar_expectation, merge_and_compare, peak_pos_breakdown
from .motifs import complementarity_coefficients, graph_level_coefficients, similarity_coefficients
from .rewiring import RewireConfig, rewire, rewired_ensemble, rewired_ensemble_stats
from .tail_estimation import TailEstimator, Verdict, hill_xi, kernel_xi, moments_xi, slope_exponent
from .ubcm import UBCM, CalibrationError, ConvergenceError, calibrate, calibrate_coefficients, fit_ubcm, sample_ubcm
