import numpy as np
import pytest
from hypothesis import given, strategies as st

from gpgcd.kernels import (RankDeficiency, least_squares_min_norm, pinv_apply, saddle_solve,
                           svd)
from gpgcd.polynomial import UniPoly
from gpgcd.structmat import convolution_matrix, subresultant_matrix


def closed_form(J, g, q):
    """d = -P g - J^+ q with J^+ = J^T (J J^T)^{-1}, via normal equations."""
    JJt = J @ J.T
    Jp = J.T @ np.linalg.inv(JJt)
    P = np.eye(J.shape[1]) - Jp @ J
    return -P @ g - Jp @ q, np.linalg.solve(JJt, J @ g - q)


def test_svd_examples():
    np.testing.assert_allclose(svd(np.eye(3)).s, 1.0)
    r = svd(np.diag([3.0, 2.0, 0.0]))
    np.testing.assert_allclose(r.s, [3, 2, 0])
    np.testing.assert_allclose(np.abs(r.smallest_right_vector), [0, 0, 1])
    N = subresultant_matrix(UniPoly([1, 0, -1]), UniPoly([1, -1]), 0)
    assert svd(N).sigma_min <= 1e-14
    assert abs(np.linalg.det(N)) <= 1e-14


def test_svd_wide_matrix_exposes_null_vector():
    M = np.random.default_rng(0).standard_normal((3, 5))
    r = svd(M)
    assert r.s.size == 5 and r.sigma_min == 0
    assert np.linalg.norm(M @ r.smallest_right_vector) <= 1e-12


def test_svd_triples_and_order():
    rng = np.random.default_rng(1)
    for shape in [(6, 4), (4, 6), (5, 5)]:
        M = rng.standard_normal(shape)
        r = svd(M)
        k = min(shape)
        assert np.all(np.diff(r.s) <= 0)
        for i in range(k):
            np.testing.assert_allclose(M @ r.vt[i], r.s[i] * r.u[:, i], atol=1e-10 * r.s[0])
        np.testing.assert_allclose(r.vt @ r.vt.T, np.eye(r.vt.shape[0]), atol=1e-10)


def test_least_squares_examples():
    rng = np.random.default_rng(2)
    M = rng.standard_normal((4, 4))
    b = rng.standard_normal(4)
    x = least_squares_min_norm(M, b)
    assert np.linalg.norm(M @ x - b) <= 1e-12 * np.linalg.norm(b) * np.linalg.cond(M)
    C = convolution_matrix(UniPoly([1, -1]), 1)
    np.testing.assert_allclose(least_squares_min_norm(C, [1, -6, 5]), [1, -5], atol=1e-14)
    # b orthogonal to range(M)
    M = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]])
    np.testing.assert_array_equal(least_squares_min_norm(M, [0.0, 1.0, 2.0]), [0.0, 0.0])


def test_least_squares_minimum_norm_on_rank_deficient():
    M = np.array([[1.0, 1.0], [1.0, 1.0]])
    np.testing.assert_allclose(least_squares_min_norm(M, [2.0, 2.0]), [1.0, 1.0], atol=1e-14)
    with pytest.raises(ValueError):
        least_squares_min_norm(M, [1.0])


def test_pinv_apply_examples():
    b = np.array([3.0, 4.0])
    np.testing.assert_allclose(pinv_apply(np.eye(2), b), b)
    np.testing.assert_allclose(pinv_apply(np.diag([1.0, 2.0]), b), [3.0, 2.0])
    np.testing.assert_allclose(pinv_apply(np.array([[1.0, 1.0]]), [2.0]), [1.0, 1.0])


def test_pinv_apply_rank_deficient():
    with pytest.raises(RankDeficiency) as ei:
        pinv_apply(np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]]), [1.0, 2.0])
    assert ei.value.ratio is not None and ei.value.ratio <= 1e-10
    with pytest.raises(RankDeficiency):
        pinv_apply(np.ones((3, 2)), np.ones(3))


@given(st.integers(0, 10_000))
def test_pinv_apply_identity_on_row_space(seed):
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((3, 7))
    x = M.T @ rng.standard_normal(3)  # a row-space vector
    np.testing.assert_allclose(pinv_apply(M, M @ x), x, atol=1e-10 * (1 + np.linalg.norm(x)))


def test_saddle_tangent_gradient():
    J = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    g = np.array([0.0, 0.0, 2.5])
    d, lam = saddle_solve(J, g, np.zeros(2))
    np.testing.assert_allclose(d, -g)
    np.testing.assert_allclose(lam, 0, atol=1e-15)


def test_saddle_normal_gradient():
    rng = np.random.default_rng(3)
    J = rng.standard_normal((3, 6))
    w = rng.standard_normal(3)
    d, lam = saddle_solve(J, J.T @ w, np.zeros(3))
    np.testing.assert_allclose(d, 0, atol=1e-12)
    np.testing.assert_allclose(lam, w, atol=1e-12)


def test_saddle_matches_closed_form_100_systems():
    rng = np.random.default_rng(4)
    for _ in range(100):
        mc = int(rng.integers(1, 6))
        nv = int(rng.integers(mc, 12))
        J = rng.standard_normal((mc, nv))
        g, q = rng.standard_normal(nv), rng.standard_normal(mc)
        d, lam = saddle_solve(J, g, q)
        d0, lam0 = closed_form(J, g, q)
        np.testing.assert_allclose(d, d0, atol=1e-10)
        np.testing.assert_allclose(lam, lam0, atol=1e-10)
        scale = 1 + np.linalg.norm(g) + np.linalg.norm(q)
        assert np.linalg.norm(d - J.T @ lam + g) <= 1e-10 * scale
        assert np.linalg.norm(J @ d + q) <= 1e-9 * scale


def test_saddle_pinv_route_agrees():
    # second independent route: closed form built from pinv_apply
    rng = np.random.default_rng(5)
    J = rng.standard_normal((4, 9))
    g, q = rng.standard_normal(9), rng.standard_normal(4)
    d_ref = -(g - pinv_apply(J, J @ g)) - pinv_apply(J, q)
    np.testing.assert_allclose(saddle_solve(J, g, q)[0], d_ref, atol=1e-10)


def test_saddle_rank_deficient_raises():
    rng = np.random.default_rng(6)
    caught = 0
    for _ in range(50):
        J = rng.standard_normal((4, 9))
        J[3] = J[1] * rng.standard_normal()
        with pytest.raises(RankDeficiency):
            saddle_solve(J, rng.standard_normal(9), rng.standard_normal(4))
        caught += 1
    assert caught == 50
    J = rng.standard_normal((3, 5))
    J[2] = 0.0
    with pytest.raises(RankDeficiency):
        saddle_solve(J, np.ones(5), np.ones(3))
    with pytest.raises(RankDeficiency):
        saddle_solve(np.ones((4, 3)), np.ones(3), np.ones(4))


def test_saddle_accepts_badly_scaled_full_rank():
    # rows of wildly different scale: ill-conditioned, not singular
    rng = np.random.default_rng(7)
    J = rng.standard_normal((3, 8)) * np.array([[1e-8], [1.0], [1e8]])
    g, q = rng.standard_normal(8), rng.standard_normal(3)
    d, _ = saddle_solve(J, g, q)
    r = np.linalg.norm(J, axis=1)
    Js, qs = J / r[:, None], q / r  # same direction, well-conditioned oracle
    d0 = -(g - pinv_apply(Js, Js @ g)) - pinv_apply(Js, qs)
    np.testing.assert_allclose(d, d0, rtol=1e-6, atol=1e-6)
