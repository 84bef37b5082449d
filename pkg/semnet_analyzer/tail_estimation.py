"""
Estimate the tail exponent of a degree distribution by
linear regression on the log-binned density and by the
Hill, moments and kernel-type extreme value index estimators,
then classify the distribution as power-law or not.

The relation between the extreme value index and the exponent
of the density ``Pr[D = k] ~ k^(-gamma)`` is ``xi = 1 / (gamma - 1)``.

:organization: semnet_analyzer developers
:date: 2026-10-19
"""

import logging
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
import pandas as pd
from scipy.stats import kstest, linregress
from sklearn.base import BaseEstimator
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .degree_stats import default_log_width, default_window, log_bin

logger = logging.getLogger(__name__)

POWER_LAW_THRESHOLD = 0.25

ESTIMATOR_NAMES = ['slope', 'hill', 'moments', 'kernel']


class EstimationError(ValueError):
    """Raised when an estimate cannot be computed from the data provided."""


class Verdict(str, Enum):
    POWER_LAW = 'power-law'
    HARDLY_POWER_LAW = 'hardly power-law'
    NOT_POWER_LAW = 'not power-law'


def xi_to_gamma(xi):
    """The exponent ``1 + 1 / xi``, or None when ``xi <= 0``."""
    if xi is None or not xi > 0:
        return None
    return 1.0 + 1.0 / xi


def gamma_to_xi(gamma):
    """The extreme value index ``1 / (gamma - 1)``, or None when ``gamma <= 1``."""
    if gamma is None or not gamma > 1:
        return None
    return 1.0 / (gamma - 1.0)


def _check_ordered(ordered_data):
    ordered_data = np.asarray(ordered_data, dtype=float)
    if ordered_data.ndim != 1:
        raise ValueError('The sample must be one-dimensional.')
    if np.any(ordered_data <= 0):
        raise ValueError('The sample must contain positive values only.')
    if np.any(np.diff(ordered_data) > 0):
        raise ValueError('The sample must be sorted in decreasing order.')
    return ordered_data


def _check_tail_size(k, n):
    if not 2 <= k < n:
        raise EstimationError(f'The tail size must satisfy 2 <= k < n = {n}, not {k}.')


def slope_exponent(binned, window=None):
    """
    Estimate the exponent as minus the least-squares slope
    of the log normalized height against the log degree.

    Parameters
    ----------
    binned : BinnedDensity
        The log-binned density.
    window : tuple of float, optional
        The degree range ``(k_lo, k_hi)`` of bins (by representative
        degree) used in the regression. If None, all bins are used.
        Defaults to None.

    Returns
    -------
    gamma : float
        The estimated exponent.

    Raises
    ------
    EstimationError
        If fewer than three non-empty bins fall inside the window.
    """
    k_lo, k_hi = (-np.inf, np.inf) if window is None else window
    inside = ((binned.centers >= k_lo) &
              (binned.centers <= k_hi) &
              (binned.heights > 0))
    if inside.sum() < 3:
        raise EstimationError(f'At least 3 non-empty bins are required inside the '
                              f'window {window}, found {inside.sum()}.')
    fit = linregress(np.log(binned.centers[inside]), np.log(binned.heights[inside]))
    return 0.0 - float(fit.slope)


def get_moments(ordered_data):
    """
    Calculate the first and second log-excess moments for
    every possible tail size. Decreasing ordering is required.

    Parameters
    ----------
    ordered_data : numpy array
        The sample, sorted in decreasing order.

    Returns
    -------
    M1 : numpy array
        ``M1[k - 1]`` is the Hill estimate over the top k values.
    M2 : numpy array
        ``M2[k - 1]`` is the mean squared log-excess over the top k values.
    """
    logs = np.log(ordered_data)
    logs_2 = logs**2
    logs_cumsum = np.cumsum(logs[:-1])
    logs_2_cumsum = np.cumsum(logs_2[:-1])
    k_vector = np.arange(1, len(ordered_data))
    M1 = logs_cumsum / k_vector - logs[1:]
    M2 = logs_2_cumsum / k_vector - (2. * logs[1:] / k_vector) * logs_cumsum + logs_2[1:]
    return M1, M2


def hill_xi(ordered_data, k):
    """
    Calculate the Hill estimate of the extreme value index,
    ``(1/k) sum_{i<k} log(X[i] / X[k])`` over a decreasing sample.

    Parameters
    ----------
    ordered_data : array-like
        The positive sample, sorted in decreasing order.
    k : int
        The number of upper order statistics used.

    Returns
    -------
    xi : float
        The Hill estimate.

    Raises
    ------
    EstimationError
        If ``k`` is not in ``[2, n)``.
    """
    ordered_data = _check_ordered(ordered_data)
    _check_tail_size(k, len(ordered_data))
    return float(np.mean(np.log(ordered_data[:k] / ordered_data[k])))


def moments_xi(ordered_data, k):
    """
    Calculate the moments (Dekkers-Einmahl-de Haan) estimate
    ``M1 + 1 - 1 / (2 (1 - M1^2 / M2))``.

    Parameters
    ----------
    ordered_data : array-like
        The positive sample, sorted in decreasing order.
    k : int
        The number of upper order statistics used.

    Returns
    -------
    xi : float
        The moments estimate, 0 when degenerate.
    degenerate : bool
        True if the second moment vanishes (or equals
        ``M1^2``), which leaves the estimate undefined.

    Raises
    ------
    EstimationError
        If ``k`` is not in ``[2, n)``.
    """
    ordered_data = _check_ordered(ordered_data)
    _check_tail_size(k, len(ordered_data))
    log_excess = np.log(ordered_data[:k] / ordered_data[k])
    M1 = np.mean(log_excess)
    M2 = np.mean(log_excess**2)
    if M2 == 0 or M1 * M1 >= M2:
        warnings.warn(f'The moments estimate is degenerate for k={k}; reporting 0.')
        return 0.0, True
    return float(M1 + 1. - 0.5 / (1. - M1 * M1 / M2)), False


def kernel_xi(ordered_data, bandwidth, alpha=0.6):
    """
    Calculate the biweight kernel-type estimate of the extreme value index.
    The biweight kernel is ``phi(u) = (15/8) (1 - u^2)^2``.

    Parameters
    ----------
    ordered_data : array-like
        The positive sample, sorted in decreasing order.
    bandwidth : float
        The fraction h of order statistics included, in (0, 1).
    alpha : float, optional
        The smoothing parameter, greater than 0.5.
        Defaults to 0.6.

    Returns
    -------
    xi : float
        The kernel-type estimate; 0 for a constant sample.

    Raises
    ------
    ValueError
        If the bandwidth is outside (0, 1).
    EstimationError
        If the bandwidth covers fewer than two log-spacings.
    """
    if not 0 < bandwidth < 1:
        raise ValueError(f'The bandwidth fraction must be in (0, 1), not {bandwidth}.')
    ordered_data = _check_ordered(ordered_data)
    n = len(ordered_data)
    max_i = int(np.floor(n * bandwidth)) - 2
    if max_i < 1:
        raise EstimationError(f'The bandwidth {bandwidth} is too small for {n} values.')

    h = bandwidth
    logs = np.log(ordered_data)
    differences = logs[:-1] - logs[1:]
    i_arr = np.arange(1, n) / float(n)

    t1 = np.cumsum(i_arr * differences)[max_i]
    t2 = np.cumsum(i_arr**3 * differences)[max_i]
    t3 = np.cumsum(i_arr**5 * differences)[max_i]
    t4 = np.cumsum(i_arr**alpha * differences)[max_i]
    t5 = np.cumsum(i_arr**(2. + alpha) * differences)[max_i]
    t6 = np.cumsum(i_arr**(4. + alpha) * differences)[max_i]

    gamma_pos = (15. / (8 * h)) * t1 - (15. / (4 * h**3)) * t2 + (15. / (8 * h**5)) * t3
    q1 = (15. / (8 * h)) * t4 + (15. / (8 * h**5)) * t6 - (15. / (4 * h**3)) * t5
    q2 = ((15. * (1 + alpha) / (8 * h)) * t4 +
          (15. * (5 + alpha) / (8 * h**5)) * t6 -
          (15. * (3 + alpha) / (4 * h**3)) * t5)

    if q1 == 0:
        return 0.0
    return float(gamma_pos - 1. + q2 / q1)


def select_tail_size(ordered_data, k_min=10, grid_size=50):
    """
    Choose the tail size minimizing the Kolmogorov-Smirnov
    distance between the empirical tail and a Pareto tail
    fitted by the Hill estimator.

    The candidates form a log-spaced grid on ``[k_min, n / 2]``.

    Parameters
    ----------
    ordered_data : array-like
        The positive sample, sorted in decreasing order.
    k_min : int, optional
        The smallest tail size considered.
        Defaults to 10.
    grid_size : int, optional
        The number of grid points before de-duplication.
        Defaults to 50.

    Returns
    -------
    k_star : int
        The selected tail size. When no candidate yields a
        positive Hill estimate, the largest candidate is returned.

    Raises
    ------
    EstimationError
        If ``n / 2 < k_min``.
    """
    ordered_data = _check_ordered(ordered_data)
    k_max = len(ordered_data) // 2
    if k_max < k_min:
        raise EstimationError(f'At least {2 * k_min} values are needed to select a tail size.')

    grid = np.unique(np.round(np.geomspace(k_min, k_max, grid_size)).astype(int))
    M1, _ = get_moments(ordered_data)

    best_k, best_distance = int(grid[-1]), np.inf
    for k in grid:
        xi = M1[k - 1]
        if not xi > 0:
            continue
        excess = ordered_data[:k] / ordered_data[k]
        distance = kstest(excess, 'pareto', args=(1. / xi,)).statistic
        if distance < best_distance:
            best_k, best_distance = int(k), distance
    logger.debug('Selected tail size %d (KS distance %.4g).', best_k, best_distance)
    return best_k


def classify(xi_hill, xi_mom, xi_kern):
    """
    Classify a distribution from its three consistent estimates.

    Parameters
    ----------
    xi_hill, xi_mom, xi_kern : float
        The Hill, moments and kernel-type estimates.

    Returns
    -------
    verdict : Verdict
        ``POWER_LAW`` if all estimates exceed 1/4, ``NOT_POWER_LAW``
        if any is negative and ``HARDLY_POWER_LAW`` otherwise
        (so an estimate of exactly zero is hardly power-law).

    Raises
    ------
    ValueError
        If an estimate is missing or not a number.
    """
    estimates = np.array([xi_hill, xi_mom, xi_kern], dtype=float)
    if np.any(np.isnan(estimates)):
        raise ValueError('All three estimates are required for classification.')
    if np.any(estimates < 0):
        return Verdict.NOT_POWER_LAW
    if np.all(estimates > POWER_LAW_THRESHOLD):
        return Verdict.POWER_LAW
    return Verdict.HARDLY_POWER_LAW


@dataclass(frozen=True)
class TailEstimate:
    """
    The four tail exponent estimates of a degree sequence.

    Attributes
    ----------
    gamma_slope : float or None
        The regression-slope exponent (None if the window
        held fewer than three bins).
    xi_hill, xi_mom, xi_kern : float
        The consistent extreme value index estimates.
    verdict : Verdict
        The power-law classification.
    k_star : int
        The tail size used by the Hill and moments estimators.
    bandwidth : float
        The kernel bandwidth fraction, ``k_star / n``.
    n : int
        The sample size.
    moments_degenerate : bool
        Whether the moments estimate was degenerate.
    window : tuple of float
        The regression window of the slope estimate.
    """

    gamma_slope: float
    xi_hill: float
    xi_mom: float
    xi_kern: float
    verdict: Verdict
    k_star: int
    bandwidth: float
    n: int
    moments_degenerate: bool = False
    window: tuple = None

    @property
    def gamma_hill(self):
        return xi_to_gamma(self.xi_hill)

    @property
    def gamma_mom(self):
        return xi_to_gamma(self.xi_mom)

    @property
    def gamma_kern(self):
        return xi_to_gamma(self.xi_kern)

    @property
    def gammas(self):
        """The four exponents keyed by estimator name."""
        return dict(zip(ESTIMATOR_NAMES,
                        [self.gamma_slope, self.gamma_hill, self.gamma_mom, self.gamma_kern]))

    @property
    def scale_free(self):
        """True for a power law whose median consistent exponent is in (2, 3)."""
        if self.verdict is not Verdict.POWER_LAW:
            return False
        median = np.median([self.gamma_hill, self.gamma_mom, self.gamma_kern])
        return bool(2 < median < 3)

    def to_dict(self):
        return {'gamma_slope': self.gamma_slope,
                'gamma_hill': self.gamma_hill,
                'gamma_mom': self.gamma_mom,
                'gamma_kern': self.gamma_kern,
                'xi_hill': self.xi_hill,
                'xi_mom': self.xi_mom,
                'xi_kern': self.xi_kern,
                'verdict': self.verdict.value,
                'scale_free': self.scale_free,
                'k_star': self.k_star,
                'bandwidth': self.bandwidth,
                'n': self.n,
                'moments_degenerate': self.moments_degenerate,
                'window': None if self.window is None else list(self.window)}


class TailEstimator(BaseEstimator):
    """
    Estimate the tail exponent of a degree sequence with
    four methods and classify it as power-law or not.

    The Hill and moments estimators use the tail size chosen by
    :func:`select_tail_size`; the kernel-type estimator uses the
    bandwidth fraction ``k_star / n``; the slope estimator regresses
    the log-binned density over a window, by default from the
    density mode to the largest degree.

    Parameters
    ----------
    min_nodes : int, optional
        Samples of this size or smaller are not estimated.
        Defaults to 1000.
    k_min : int, optional
        The smallest candidate tail size.
        Defaults to 10.
    grid_size : int, optional
        The number of candidate tail sizes.
        Defaults to 50.
    kernel_alpha : float, optional
        The smoothing parameter of the kernel-type estimator.
        Defaults to 0.6.
    log_width : float, optional
        The logarithmic bin width for the slope estimate. If None,
        about 20 bins span the degrees.
        Defaults to None.
    window : tuple of float, optional
        The regression window ``(k_lo, k_hi)``.
        Defaults to None.

    Attributes
    ----------
    estimate_ : TailEstimate or None
        The estimate; None if the sample was too small.
    skipped_ : bool
        Whether the estimation was skipped.

    Examples
    --------
    >>> import numpy as np
    >>> from semnet_analyzer import TailEstimator
    >>> rng = np.random.default_rng(0)
    >>> degrees = np.floor(rng.pareto(1.5, 100000) + 1)
    >>> tail = TailEstimator().fit(degrees)
    >>> tail.get_verdict()
    <Verdict.POWER_LAW: 'power-law'>
    """

    def __init__(self,
                 min_nodes=1000,
                 k_min=10,
                 grid_size=50,
                 kernel_alpha=0.6,
                 log_width=None,
                 window=None):

        self.min_nodes = min_nodes
        self.k_min = k_min
        self.grid_size = grid_size
        self.kernel_alpha = kernel_alpha
        self.log_width = log_width
        self.window = window

    def _arg_checker(self):
        if self.kernel_alpha <= 0.5:
            raise ValueError(f'The kernel alpha must be greater than 0.5, not {self.kernel_alpha}.')
        if self.k_min < 2:
            raise ValueError(f'The smallest tail size must be at least 2, not {self.k_min}.')
        if self.log_width is not None and self.log_width <= 0:
            raise ValueError(f'The log width must be positive, not {self.log_width}.')
        if self.window is not None and len(self.window) != 2:
            raise ValueError('The window must be a pair (k_lo, k_hi).')

    def fit(self, X, y=None):
        """
        Estimate the tail of a degree sequence.

        Parameters
        ----------
        X : array-like
            The degrees (or any positive sample).
        y : ignored

        Returns
        -------
        self
        """
        self._arg_checker()
        degrees = check_array(X, ensure_2d=False, dtype=np.float64)
        degrees = degrees.ravel()
        if np.any(degrees < 1):
            raise ValueError('Tail estimation requires degrees of at least one.')

        n = len(degrees)
        self.skipped_ = n <= self.min_nodes
        self.estimate_ = None
        if self.skipped_:
            logger.info('Skipping tail estimation for %d <= %d values.', n, self.min_nodes)
            return self

        ordered = np.sort(degrees)[::-1]
        k_star = select_tail_size(ordered, k_min=self.k_min, grid_size=self.grid_size)
        xi_hill = hill_xi(ordered, k_star)
        xi_mom, degenerate = moments_xi(ordered, k_star)
        bandwidth = k_star / n
        xi_kern = kernel_xi(ordered, bandwidth, alpha=self.kernel_alpha)

        values, counts = np.unique(degrees, return_counts=True)
        density = pd.Series(counts / n, index=values)
        log_width = self.log_width or default_log_width(values.max())
        window = tuple(self.window) if self.window is not None else default_window(density)
        try:
            gamma_slope = slope_exponent(log_bin(density, log_width), window)
        except EstimationError as error:
            warnings.warn(f'No slope estimate: {error}')
            gamma_slope = None

        self.estimate_ = TailEstimate(gamma_slope=gamma_slope,
                                      xi_hill=xi_hill,
                                      xi_mom=xi_mom,
                                      xi_kern=xi_kern,
                                      verdict=classify(xi_hill, xi_mom, xi_kern),
                                      k_star=k_star,
                                      bandwidth=bandwidth,
                                      n=n,
                                      moments_degenerate=degenerate,
                                      window=window)
        return self

    def get_verdict(self):
        """
        Get the power-law verdict.

        Returns
        -------
        verdict : Verdict or None
            The verdict, or None if the estimation was skipped.
        """
        check_is_fitted(self, 'skipped_')
        return None if self.estimate_ is None else self.estimate_.verdict


def gamma_table(estimates):
    """
    Lay out exponent estimates with one row per network and one
    column per estimator, values rounded to one decimal. Networks
    that are not power-law get ``X`` in every column and skipped
    networks get empty cells.

    Parameters
    ----------
    estimates : dict
        Maps ``(language, relation)`` to a TailEstimate or None.

    Returns
    -------
    table : pandas DataFrame
        The exponent table.
    """
    rows = []
    for (language, relation), estimate in sorted(estimates.items()):
        row = {'language': language, 'relation': relation}
        for name in ESTIMATOR_NAMES:
            if estimate is None:
                row[name] = ''
            elif estimate.verdict is not Verdict.POWER_LAW:
                row[name] = 'X'
            else:
                gamma = estimate.gammas[name]
                row[name] = '' if gamma is None else f'{gamma:.1f}'
        rows.append(row)
    return pd.DataFrame(rows, columns=['language', 'relation'] + ESTIMATOR_NAMES)
