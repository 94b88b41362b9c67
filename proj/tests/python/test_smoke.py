"""Smoke tests for the python extension module."""

import math

import numpy as np
import pytest

import permcorr


def k3():
    m = np.ones((3, 3)) - np.eye(3)
    return permcorr.CoefficientMatrix(m, symmetry="symmetric", hollow=True)


def test_gamma_on_k3_pair():
    b = np.zeros((3, 3))
    b[0, 1] = b[1, 0] = 1.0
    bm = permcorr.CoefficientMatrix(b, symmetry="symmetric", hollow=True)
    assert permcorr.gamma(k3(), bm, permcorr.Permutation.identity(3)) == 2.0
    assert permcorr.exact_mean(k3(), bm) == pytest.approx(2.0)


def test_wilcoxon_example_values():
    a = permcorr.sign_diff_matrix([1.0, 2.0, 3.0])
    b = permcorr.sign_diff_matrix([0.0, 0.0, 1.0])
    assert permcorr.gamma(a, b, permcorr.Permutation.identity(3)) == 4.0
    assert permcorr.exact_mean(a, b) == pytest.approx(0.0, abs=1e-14)
    assert permcorr.normalizer(a, b, "daniels") == pytest.approx(8.0 / 3.0)
    assert permcorr.standardize(4.0, a, b, "daniels") == pytest.approx(1.5)
    assert permcorr.normalizer(a, b, "pham3") == pytest.approx(math.sqrt(160.0 / 27.0))


def test_enumeration_and_p_value():
    a = permcorr.sign_diff_matrix([1.0, 2.0, 3.0])
    b = permcorr.sign_diff_matrix([0.0, 0.0, 1.0])
    dist = permcorr.enumerate_exact(a, b)
    assert dist.kind == "exact"
    assert dist.sample_count == 6
    assert dist.mean == pytest.approx(0.0, abs=1e-14)
    assert permcorr.p_value(dist, 4.0, "greater") == pytest.approx(2.0 / 6.0)


def test_sampler_determinism():
    rng = np.random.default_rng(0)
    x = rng.normal(size=12)
    a = permcorr.sign_diff_matrix(list(x))
    b = permcorr.sign_diff_matrix([0.0] * 6 + [1.0] * 6)
    d1 = permcorr.sample_null(a, b, draws=500, seed=7)
    d2 = permcorr.sample_null(a, b, draws=500, seed=7, workers=4)
    assert np.array_equal(d1.values, d2.values)


def test_moments_against_enumeration():
    rng = np.random.default_rng(1)
    m = rng.uniform(-1, 1, size=(5, 5))
    m = np.triu(m, 1)
    m = m + m.T
    a = permcorr.CoefficientMatrix(m, symmetry="symmetric", hollow=True)
    m2 = rng.uniform(-1, 1, size=(5, 5))
    m2 = np.triu(m2, 1)
    m2 = m2 + m2.T
    b = permcorr.CoefficientMatrix(m2, symmetry="symmetric", hollow=True)
    assert permcorr.exact_mean(a, b) == pytest.approx(permcorr.exact_moment(a, b, 1), rel=1e-10)
    assert permcorr.exact_second_moment(a, b) == pytest.approx(
        permcorr.exact_moment(a, b, 2), rel=1e-9
    )


def test_builders_and_diagnose():
    pts = np.array([[0.0], [1.0], [3.0]])
    mst = permcorr.mst_adjacency(pts)
    arr = mst.to_numpy()
    assert arr[0, 1] == 1.0 and arr[1, 2] == 1.0 and arr[0, 2] == 0.0

    cd = permcorr.centered_distance_matrix(np.array([0.0, 1.0, 3.0]))
    report = permcorr.diagnose(cd, cd, "main")
    assert report["theorem"] == "main"
    assert report["structural_checks"]["a_zero_total_sum"] is True
    assert isinstance(report["ratio_diagnostics"]["h_a"], float)

    labels = [0, 0, 1, 1]
    mmd_b = permcorr.mmd_label_matrix(labels)
    assert mmd_b.to_numpy()[0, 1] == pytest.approx(0.5)


def test_degenerate_error_is_typed():
    b = np.zeros((3, 3))
    b[0, 1] = b[1, 0] = 1.0
    bm = permcorr.CoefficientMatrix(b, symmetry="symmetric", hollow=True)
    with pytest.raises(permcorr.DegenerateError):
        permcorr.standardize(2.0, k3(), bm, "exact_sd")
