"""
The undirected binary configuration model (UBCM): the maximum-entropy
ensemble of simple graphs whose expected degrees match a degree sequence,
and the calibration of structural coefficients against it.

Every pair of distinct nodes is linked independently with probability
``p_ij = x_i x_j / (1 + x_i x_j)``.

:organization: semnet_analyzer developers
:date: 2026-10-19
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from scipy.optimize import root
from scipy.special import expit
from sklearn.base import BaseEstimator
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .graph import Graph
from .motifs import graph_level_coefficients
from .utils import RNG_ALGORITHM, make_rng, sample_std

logger = logging.getLogger(__name__)

POSSIBLE_SAMPLERS = ['sparse', 'dense']

POSSIBLE_METRICS = ['similarity', 'complementarity']

MIN_CALIBRATION_NODES = 100


class ConvergenceError(RuntimeError):
    """
    Raised when the UBCM fit does not reach the tolerance.

    Attributes
    ----------
    residual : float
        The largest absolute difference between an expected
        and an observed degree at the end of the fit.
    """

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class CalibrationError(RuntimeError):
    """Raised when a calibrated coefficient is undefined."""


def _class_probabilities(log_x):
    return expit(log_x[:, None] + log_x[None, :])


def _class_residuals(log_x, degrees, counts):
    probabilities = _class_probabilities(log_x)
    return probabilities @ counts - np.diag(probabilities) - degrees


def _class_jacobian(log_x, degrees, counts):
    probabilities = _class_probabilities(log_x)
    slopes = probabilities * (1. - probabilities)
    jacobian = slopes * counts[None, :]
    jacobian[np.diag_indices_from(jacobian)] += slopes @ counts - 2. * np.diag(slopes)
    return jacobian


class UBCM(BaseEstimator):
    """
    Fit the undirected binary configuration model to a degree sequence.

    Nodes sharing a degree share a parameter, so the system is solved
    over the distinct degrees only. The parameters are first refined by
    the damped fixed-point update
    ``x_i <- d_i / sum_{j != i} x_j / (1 + x_i x_j)`` and, if that does not
    reach `tol`, the constraint equations are solved for ``log x`` with
    a Levenberg-Marquardt root finder.

    Parameters
    ----------
    tol : float, optional
        The largest accepted absolute difference between an
        expected and an observed degree.
        Defaults to 1e-8.
    max_iter : int, optional
        The number of fixed-point iterations before root finding.
        Defaults to 1000.
    damping : float, optional
        The weight of the previous parameters in each update, in [0, 1).
        Defaults to 0.5.
    n_restarts : int, optional
        The root-finder runs, each starting from the previous solution.
        Defaults to 5.

    Attributes
    ----------
    x_ : numpy array
        The fitted parameter of every node.
    log_x_ : numpy array
        The natural logarithm of `x_`.
    residual_ : float
        The final largest absolute degree difference.
    n_iter_ : int
        The fixed-point iterations used.
    degree_classes_ : numpy array
        The distinct degrees.
    class_log_x_ : numpy array
        The logarithm of the parameter of every degree class.
    class_of_ : numpy array
        The degree class of every node.

    Examples
    --------
    >>> from semnet_analyzer import UBCM
    >>> model = UBCM().fit([3, 3, 3, 3, 3, 3, 3])
    >>> round(model.probability(0, 1), 6)
    0.5
    """

    def __init__(self, tol=1e-8, max_iter=1000, damping=0.5, n_restarts=5):

        self.tol = tol
        self.max_iter = max_iter
        self.damping = damping
        self.n_restarts = n_restarts

    def _arg_checker(self):
        if not self.tol > 0:
            raise ValueError(f'The tolerance must be positive, not {self.tol}.')
        if self.max_iter < 0:
            raise ValueError(f'The iteration cap must be non-negative, not {self.max_iter}.')
        if not 0 <= self.damping < 1:
            raise ValueError(f'The damping must be in [0, 1), not {self.damping}.')

    def fit(self, X, y=None):
        """
        Fit the model to a degree sequence.

        Parameters
        ----------
        X : array-like
            The degree of every node; all degrees must be at least one
            and below the number of nodes.
        y : ignored

        Returns
        -------
        self

        Raises
        ------
        ValueError
            If the degree sequence violates the preconditions.
        ConvergenceError
            If the tolerance is not reached.
        """
        self._arg_checker()
        degrees = check_array(X, ensure_2d=False, dtype=np.float64).ravel()
        n_nodes = len(degrees)
        if n_nodes < 2:
            raise ValueError('The UBCM requires at least two nodes.')
        if np.any(degrees < 1):
            raise ValueError('Every degree must be at least one to fit the UBCM.')
        if np.any(degrees > n_nodes - 1):
            raise ValueError('No degree can exceed the number of other nodes.')
        if np.any(degrees != np.round(degrees)):
            raise ValueError('Degrees must be integers.')

        classes, inverse, counts = np.unique(degrees, return_inverse=True, return_counts=True)
        counts = counts.astype(float)

        # damped fixed point on the degree classes
        x = classes / np.sqrt(degrees.sum())
        residual = np.inf
        n_iter = 0
        for n_iter in range(1, self.max_iter + 1):
            log_x = np.log(x)
            residual = np.max(np.abs(_class_residuals(log_x, classes, counts)))
            if residual < self.tol:
                break
            products = np.outer(x, x)
            weights = x[None, :] / (1. + products)
            sums = weights @ counts - np.diag(weights)
            x = self.damping * x + (1. - self.damping) * classes / sums
        log_x = np.log(x)
        residual = np.max(np.abs(_class_residuals(log_x, classes, counts)))

        for _ in range(self.n_restarts):
            if residual < self.tol:
                break
            logger.debug('Residual %.3g after the fixed point; solving for log x.', residual)
            solution = root(_class_residuals, log_x, args=(classes, counts),
                            jac=_class_jacobian, method='lm',
                            options={'xtol': 1e-15, 'ftol': 1e-15, 'maxiter': 2000})
            candidate = np.max(np.abs(_class_residuals(solution.x, classes, counts)))
            if not candidate < residual:
                break
            log_x, residual = solution.x, candidate

        if not residual < self.tol:
            raise ConvergenceError(f'The UBCM fit did not converge: the largest degree '
                                   f'residual is {residual:.3g} > {self.tol}.', residual)

        self.degree_classes_ = classes
        self.class_log_x_ = log_x
        self.class_of_ = inverse
        self.log_x_ = log_x[inverse]
        self.x_ = np.exp(self.log_x_)
        self.residual_ = float(residual)
        self.n_iter_ = n_iter
        logger.info('Fitted the UBCM on %d nodes (%d degree classes), residual %.3g.',
                    n_nodes, len(classes), residual)
        return self

    @classmethod
    def from_parameters(cls, x):
        """
        Build a fitted model from explicit node parameters.
        ``x = inf`` links a node to every other node with
        ``x > 0`` and ``x = 0`` isolates it.

        Parameters
        ----------
        x : array-like
            The non-negative parameter of every node.

        Returns
        -------
        model : UBCM
        """
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            raise ValueError('UBCM parameters must be non-negative.')
        model = cls()
        with np.errstate(divide='ignore'):
            log_x = np.log(x)
        classes, inverse = np.unique(log_x, return_inverse=True)
        model.degree_classes_ = None
        model.class_log_x_ = classes
        model.class_of_ = inverse
        model.log_x_ = log_x
        model.x_ = x
        model.residual_ = 0.0
        model.n_iter_ = 0
        return model

    def probability(self, i, j):
        """The link probability of two distinct nodes."""
        check_is_fitted(self, 'log_x_')
        if i == j:
            return 0.0
        return float(expit(self.log_x_[i] + self.log_x_[j]))

    def expected_degrees(self):
        """
        Get the expected degree of every node.

        Returns
        -------
        expected : numpy array
            ``sum_{j != i} p_ij`` for every node.
        """
        check_is_fitted(self, 'log_x_')
        class_of = self.class_of_
        counts = np.bincount(class_of, minlength=len(self.class_log_x_)).astype(float)
        probabilities = np.nan_to_num(_class_probabilities(self.class_log_x_))
        expected = probabilities @ counts - np.diag(probabilities)
        return expected[class_of]

    def sample(self, seed, method='sparse', labels=None):
        """
        Draw a graph, linking every pair independently.

        Parameters
        ----------
        seed : int or numpy.random.SeedSequence
            The seed.
        method : {'sparse', 'dense'}, optional
            ``'sparse'`` draws the number of links between every pair of
            degree classes and then picks that many distinct node pairs;
            ``'dense'`` draws one uniform number per node pair.
            Both produce the same distribution.
            Defaults to 'sparse'.
        labels : sequence of str, optional
            The node labels of the sample.
            Defaults to None.

        Returns
        -------
        sample : Graph
            A simple graph on the model's nodes.
        """
        check_is_fitted(self, 'log_x_')
        if method not in POSSIBLE_SAMPLERS:
            raise ValueError(f'The method must be one of the following: {POSSIBLE_SAMPLERS}')
        rng = make_rng(seed)
        n_nodes = len(self.log_x_)
        if method == 'dense':
            rows, cols = self._sample_dense(rng)
        else:
            rows, cols = self._sample_sparse(rng)
        return Graph.from_arrays(n_nodes, rows, cols, labels)

    def _sample_dense(self, rng):
        probabilities = expit(self.log_x_[:, None] + self.log_x_[None, :])
        draws = rng.random(probabilities.shape)
        return np.nonzero(np.triu(draws < probabilities, k=1))

    def _sample_sparse(self, rng):
        class_of = self.class_of_
        n_classes = len(self.class_log_x_)
        members = [np.flatnonzero(class_of == a) for a in range(n_classes)]
        sizes = np.array([len(m) for m in members], dtype=np.int64)

        pair_counts = np.outer(sizes, sizes)
        pair_counts[np.diag_indices(n_classes)] = sizes * (sizes - 1) // 2
        probabilities = np.nan_to_num(_class_probabilities(self.class_log_x_))
        link_counts = np.triu(rng.binomial(pair_counts, probabilities))

        rows, cols = [], []
        for a, b in zip(*np.nonzero(link_counts)):
            chosen = rng.choice(pair_counts[a, b], size=link_counts[a, b], replace=False)
            if a == b:
                size = sizes[a]
                row_starts = np.arange(size) * size - np.arange(size) * (np.arange(size) + 1) // 2
                first = np.searchsorted(row_starts, chosen, side='right') - 1
                second = chosen - row_starts[first] + first + 1
            else:
                first, second = np.divmod(chosen, sizes[b])
            rows.append(members[a][first])
            cols.append(members[b][second])

        if not rows:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        return np.concatenate(rows), np.concatenate(cols)


def fit_ubcm(degrees, tol=1e-8, max_iter=1000):
    """
    Fit the UBCM to a degree sequence; see :class:`UBCM`.

    Returns
    -------
    model : UBCM
        The fitted model.
    """
    return UBCM(tol=tol, max_iter=max_iter).fit(degrees)


def sample_ubcm(model, seed, method='sparse'):
    """Draw one graph from a fitted UBCM; see :meth:`UBCM.sample`."""
    return model.sample(seed, method=method)


@dataclass(frozen=True)
class CalibrationResult:
    """
    A structural coefficient calibrated against UBCM samples.

    Attributes
    ----------
    metric : str
        ``'similarity'`` or ``'complementarity'``.
    observed : float
        The coefficient of the observed graph.
    samples : numpy array
        The coefficient of every sample, zeros included.
    calibrated : float
        The mean of ``log(observed / sample)`` over non-zero samples.
    std : float
        The sample standard deviation of those log ratios.
    R : int
        The number of samples drawn.
    excluded : int
        The samples excluded for a zero coefficient.
    seed : int
        The seed the sample seeds were derived from.
    """

    metric: str
    observed: float
    samples: np.ndarray
    calibrated: float
    std: float
    R: int
    excluded: int
    seed: int

    @property
    def standard_error(self):
        used = self.R - self.excluded
        return self.std / np.sqrt(used) if used else np.nan

    def to_dict(self):
        return {'metric': self.metric,
                'observed': self.observed,
                'calibrated': self.calibrated,
                'std': self.std,
                'standard_error': self.standard_error,
                'R': self.R,
                'excluded_samples': self.excluded,
                'seed': self.seed,
                'rng': RNG_ALGORITHM}


def calibration_sample_count(n_nodes, large_threshold=500000, default=500, large=100):
    """
    Choose the number of samples R: `default` for most networks
    and `large` above `large_threshold` nodes.
    """
    return large if n_nodes > large_threshold else default


def calibrate_from_samples(metric, observed, samples, seed=0):
    """
    Calibrate an observed coefficient against the coefficients
    of null-model samples.

    Parameters
    ----------
    metric : str
        The coefficient name.
    observed : float
        The coefficient of the observed graph.
    samples : array-like
        The coefficient of every sample.
    seed : int, optional
        Recorded in the result.
        Defaults to 0.

    Returns
    -------
    result : CalibrationResult

    Raises
    ------
    CalibrationError
        If the observed coefficient or every sample coefficient is zero.
    """
    samples = np.asarray(samples, dtype=float)
    if observed <= 0:
        raise CalibrationError(f'The observed {metric} coefficient is zero; '
                               'its calibrated value is undefined.')
    positive = samples > 0
    excluded = int(np.sum(~positive))
    if excluded == len(samples):
        raise CalibrationError(f'All {len(samples)} samples have a zero {metric} coefficient.')
    if excluded:
        warnings.warn(f'Excluded {excluded} of {len(samples)} samples with a zero {metric} coefficient.')
    log_ratios = np.log(observed / samples[positive])
    return CalibrationResult(metric=metric,
                             observed=float(observed),
                             samples=samples,
                             calibrated=float(np.mean(log_ratios)),
                             std=sample_std(log_ratios),
                             R=len(samples),
                             excluded=excluded,
                             seed=seed)


def _sample_coefficients(model, seed_sequence):
    return graph_level_coefficients(model.sample(seed_sequence))


def sample_coefficients(model, R, seed=0, n_jobs=1):
    """
    Draw R graphs from a fitted UBCM and measure ``s(G)`` and ``c(G)``
    on each; sample ``r`` is seeded with the r-th child of
    ``numpy.random.SeedSequence(seed)``.

    Returns
    -------
    values : numpy array
        An ``(R, 2)`` array, columns ordered as `POSSIBLE_METRICS`.
    """
    if R < 1:
        raise ValueError(f'The number of samples must be at least 1, not {R}.')
    children = np.random.SeedSequence(seed).spawn(R)
    values = Parallel(n_jobs=n_jobs)(delayed(_sample_coefficients)(model, child) for child in children)
    return np.array(values, dtype=float).reshape(R, 2)


def calibrate_coefficients(g, R=500, seed=0, model=None, n_jobs=1, min_nodes=MIN_CALIBRATION_NODES):
    """
    Calibrate both ``s(G)`` and ``c(G)`` on the same R UBCM samples.

    Parameters
    ----------
    g : Graph
        The observed graph (usually an LCC).
    R : int, optional
        The number of samples.
        Defaults to 500.
    seed : int, optional
        The seed; sample ``r`` uses the r-th child of
        ``numpy.random.SeedSequence(seed)``.
        Defaults to 0.
    model : UBCM, optional
        A fitted model to sample from. If None, the UBCM
        is fitted to the degrees of `g`.
        Defaults to None.
    n_jobs : int, optional
        The number of joblib workers, one sample each.
        Defaults to 1.
    min_nodes : int, optional
        The smallest graph calibrated.
        Defaults to 100.

    Returns
    -------
    results : dict
        A CalibrationResult keyed by metric name.

    Raises
    ------
    CalibrationError
        If the graph is too small or a calibration is undefined.
    ConvergenceError
        If the UBCM fit fails.
    """
    if g.n_nodes < min_nodes:
        raise CalibrationError(f'Calibration requires at least {min_nodes} nodes, not {g.n_nodes}.')
    if model is None:
        model = UBCM().fit(g.degrees)

    observed = dict(zip(POSSIBLE_METRICS, graph_level_coefficients(g)))
    values = sample_coefficients(model, R, seed=seed, n_jobs=n_jobs)
    logger.info('Calibrated %r against %d UBCM samples.', g, R)

    results = {}
    for column, metric in enumerate(POSSIBLE_METRICS):
        results[metric] = calibrate_from_samples(metric, observed[metric], values[:, column], seed)
    return results


def calibrate(g, metric='similarity', R=500, seed=0, model=None, n_jobs=1, min_nodes=MIN_CALIBRATION_NODES):
    """
    Calibrate one structural coefficient:
    ``C(x)_G = (1/R) sum_r log(x(G) / x(G_r))`` over UBCM samples ``G_r``.
    Samples with ``x(G_r) = 0`` are excluded and counted.

    Parameters
    ----------
    g : Graph
        The observed graph.
    metric : {'similarity', 'complementarity'}, optional
        The coefficient.
        Defaults to 'similarity'.
    R, seed, model, n_jobs, min_nodes
        See :func:`calibrate_coefficients`.

    Returns
    -------
    result : CalibrationResult
    """
    if metric not in POSSIBLE_METRICS:
        raise ValueError(f'The metric must be one of the following: {POSSIBLE_METRICS}')
    if g.n_nodes < min_nodes:
        raise CalibrationError(f'Calibration requires at least {min_nodes} nodes, not {g.n_nodes}.')
    if model is None:
        model = UBCM().fit(g.degrees)

    column = POSSIBLE_METRICS.index(metric)
    observed = graph_level_coefficients(g)[column]
    values = sample_coefficients(model, R, seed=seed, n_jobs=n_jobs)
    return calibrate_from_samples(metric, observed, values[:, column], seed)
