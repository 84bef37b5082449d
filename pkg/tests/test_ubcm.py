"""
Tests for fitting and sampling the UBCM and for calibrating
the structural coefficients against it.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from semnet_analyzer.graph import extract_lcc
from semnet_analyzer.test_utils import power_law_graph, random_graph
from semnet_analyzer.ubcm import (UBCM,
                                  CalibrationError,
                                  ConvergenceError,
                                  calibrate,
                                  calibrate_coefficients,
                                  calibrate_from_samples,
                                  calibration_sample_count,
                                  fit_ubcm,
                                  sample_coefficients,
                                  sample_ubcm)
from semnet_analyzer.utils import make_rng


class TestFit:

    def test_regular_degrees(self):

        model = UBCM(tol=1e-12).fit(np.full(11, 4))

        assert_allclose(model.probability(0, 1), 0.4, rtol=0, atol=1e-9)
        assert_allclose(model.expected_degrees(), 4.0, rtol=0, atol=1e-9)
        assert_array_equal(model.degree_classes_, [4])

    def test_heterogeneous_degrees(self):

        degrees = extract_lcc(power_law_graph(2000, 2.5, 0)).degrees
        model = fit_ubcm(degrees)

        assert model.residual_ < 1e-8
        assert_allclose(model.expected_degrees(), degrees, rtol=0, atol=1e-8)
        assert len(model.degree_classes_) == len(np.unique(degrees))

    def test_ten_thousand_heterogeneous_degrees(self):

        weights = 2.0 * make_rng(1).random(10000) ** (-1 / 1.5)
        sample = UBCM.from_parameters(weights / np.sqrt(weights.sum())).sample(2)
        degrees = extract_lcc(sample).degrees
        model = fit_ubcm(degrees)

        assert len(degrees) > 5000
        assert model.residual_ < 1e-8
        assert_allclose(model.expected_degrees(), degrees, rtol=0, atol=1e-8)

    def test_star_degrees(self):

        model = fit_ubcm([5, 1, 1, 1, 1, 1])

        assert_allclose(model.expected_degrees(), [5, 1, 1, 1, 1, 1], rtol=0, atol=1e-6)

    def test_equal_degrees_share_parameters(self):

        model = UBCM().fit([1, 2, 2, 3, 2, 1, 3])

        assert model.x_[1] == model.x_[2] == model.x_[4]
        assert model.x_[0] == model.x_[5]
        assert model.x_[0] < model.x_[1] < model.x_[3]

    def test_self_probability_is_zero(self):

        assert UBCM().fit([2, 2, 2]).probability(1, 1) == 0.0

    @pytest.mark.parametrize('degrees', [[0, 1, 1], [3, 1, 1], [1.5, 1, 1], [1]])
    def test_rejects_bad_degrees(self, degrees):

        with pytest.raises(ValueError):
            UBCM().fit(degrees)

    def test_rejects_bad_damping(self):

        with pytest.raises(ValueError):
            UBCM(damping=1.0).fit([1, 1])

    def test_convergence_error(self):

        with pytest.raises(ConvergenceError) as error:
            UBCM(tol=1e-12, max_iter=0, n_restarts=0).fit([1, 2, 2, 3, 4, 1, 1])

        assert error.value.residual > 1e-12


class TestFromParameters:

    def test_probabilities(self):

        model = UBCM.from_parameters(np.full(10, 1 / 3))

        assert model.probability(2, 7) == pytest.approx(0.1)
        assert_allclose(model.expected_degrees(), 0.9)

    def test_infinite_and_zero_parameters(self):

        model = UBCM.from_parameters([np.inf, 1.0, 1.0, 0.0])

        assert_allclose(model.expected_degrees(), [2.0, 1.5, 1.5, 0.0])
        for seed in range(10):
            sample = model.sample(seed)
            assert sample.degrees[0] == 2
            assert sample.degrees[3] == 0

    def test_rejects_negative_parameters(self):

        with pytest.raises(ValueError):
            UBCM.from_parameters([1.0, -1.0])


class TestSample:

    @pytest.mark.parametrize('method', ['sparse', 'dense'])
    def test_mean_link_count(self, method):

        model = UBCM.from_parameters([0.2] * 50 + [1.0] * 30 + [3.0] * 20)
        expected_links = model.expected_degrees().sum() / 2
        links = [model.sample(seed, method=method).n_links for seed in range(300)]

        assert np.mean(links) == pytest.approx(expected_links, abs=4 * np.std(links) / np.sqrt(300))

    @pytest.mark.parametrize('method', ['sparse', 'dense'])
    def test_samples_are_deterministic(self, method):

        model = UBCM.from_parameters(np.linspace(0.1, 2.0, 40))

        assert sample_ubcm(model, 3, method) == sample_ubcm(model, 3, method)

    def test_sparse_sample_is_simple(self):

        model = UBCM.from_parameters([0.5] * 30 + [2.0] * 10)
        sample = model.sample(1)

        assert sample.n_nodes == 40
        assert sample.degrees.max() <= 39

    def test_labels(self):

        model = UBCM.from_parameters([1.0, 1.0])

        assert model.sample(0, labels=['a', 'b']).labels == ('a', 'b')

    def test_rejects_unknown_method(self):

        with pytest.raises(ValueError):
            UBCM.from_parameters([1.0, 1.0]).sample(0, method='exact')


class TestCalibrateFromSamples:

    def test_zero_samples_are_excluded(self):

        with pytest.warns(UserWarning):
            result = calibrate_from_samples('similarity', 0.2, [0.1, 0.4, 0.0])

        assert result.calibrated == pytest.approx(0.0)
        assert result.std == pytest.approx(np.log(2) * np.sqrt(2))
        assert result.excluded == 1
        assert result.R == 3
        assert result.standard_error == pytest.approx(np.log(2))

    def test_zero_observed_coefficient(self):

        with pytest.raises(CalibrationError):
            calibrate_from_samples('complementarity', 0.0, [0.1, 0.2])

    def test_all_samples_zero(self):

        with pytest.raises(CalibrationError):
            calibrate_from_samples('complementarity', 0.1, [0.0, 0.0])

    def test_to_dict(self):

        report = calibrate_from_samples('similarity', 0.4, [0.1, 0.1], seed=7).to_dict()

        assert report['calibrated'] == pytest.approx(np.log(4))
        assert report['seed'] == 7
        assert report['rng'] == 'PCG64'


def test_calibration_sample_count():

    assert calibration_sample_count(500000) == 500
    assert calibration_sample_count(500001) == 100


def test_sample_coefficients_are_deterministic():

    model = UBCM.from_parameters(np.full(50, 0.5))
    first = sample_coefficients(model, 4, seed=11)

    assert first.shape == (4, 2)
    assert_array_equal(first, sample_coefficients(model, 4, seed=11))
    assert not np.array_equal(first, sample_coefficients(model, 4, seed=12))


def test_calibrating_a_null_model_sample_gives_zero():

    model = UBCM.from_parameters(np.full(120, 1 / 3))
    similarity, complementarity = [], []
    for trial in range(30):
        results = calibrate_coefficients(model.sample(trial), R=20, seed=1000 + trial, model=model)
        similarity.append(results['similarity'].calibrated)
        complementarity.append(results['complementarity'].calibrated)

    for values in [similarity, complementarity]:
        assert abs(np.mean(values)) <= 3 * np.std(values, ddof=1) / np.sqrt(30)


def test_calibrate_matches_both_coefficients():

    g = extract_lcc(random_graph(150, 0.05, 3))
    both = calibrate_coefficients(g, R=5, seed=2)
    single = calibrate(g, 'complementarity', R=5, seed=2)

    assert single.calibrated == pytest.approx(both['complementarity'].calibrated)
    assert_array_equal(single.samples, both['complementarity'].samples)


def test_calibrate_rejects_small_graphs():

    with pytest.raises(CalibrationError):
        calibrate(random_graph(50, 0.2, 0), R=2)


def test_calibrate_rejects_unknown_metric():

    with pytest.raises(ValueError):
        calibrate(random_graph(150, 0.05, 0), 'assortativity', R=2)
