import numpy as np
import pytest

from motifcut.analysis.gradcheck import (
    TIGHT,
    exact_gradient,
    f_value_function,
    finite_difference_gradient,
)
from motifcut.graph.weighted import num_pairs
from motifcut.mechanism.gradient import estimate_gradient
from motifcut.privacy.noise import NoiseStream
from motifcut.sdp.domain import SdpPoint, project_domain
from motifcut.sdp.objective import SaddleContext
from motifcut.sdp.solver import inner_sdp_solve


def test_empty_iterate_gives_zero_gradient():
    n = 4
    N = num_pairs(n)
    zeta = NoiseStream(0).gaussian(2 * n)
    g = estimate_gradient(np.zeros(N), SdpPoint.identity(n), zeta, np.zeros(N), np.ones(N))
    np.testing.assert_array_equal(g, np.zeros(N))


def test_triangle_with_all_ones_sketch():
    w = np.ones(3)
    g = estimate_gradient(w, SdpPoint.identity(3), np.ones(6), w, np.full(3, 2.0))
    np.testing.assert_allclose(g, [12.0, 12.0, 12.0])


def test_quadratic_term():
    n = 3
    w = np.array([1.0, 2.0, 0.5])
    w_tilde = np.array([0.5, 2.0, 1.0])
    u = np.array([1.0, 1.0, 3.0])
    g = estimate_gradient(w, SdpPoint.identity(n), np.zeros(2 * n), w_tilde, u)
    # pair (0,1): s = 2 contributes u_02 + u_12 = 4; pair (1,2): u_01 + u_02 = 2
    np.testing.assert_allclose(g, [6.0 * 4.0 * 0.5, 0.0, 6.0 * 2.0 * -0.5])


def test_batched_sketches_match_single_calls():
    rng = np.random.default_rng(3)
    n = 4
    N = num_pairs(n)
    w = rng.uniform(0.2, 1.0, N)
    B = rng.standard_normal((2 * n, 2 * n))
    X = project_domain(0.5 * (B + B.T))
    zetas = rng.standard_normal((5, 2 * n))
    w_tilde = w + 0.1
    u = w + 1.0
    batch = estimate_gradient(w, X, zetas, w_tilde, u)
    assert batch.shape == (5, N)
    np.testing.assert_allclose(batch[2], estimate_gradient(w, X, zetas[2], w_tilde, u))


def saddle_instance(seed: int, n: int, lam: float):
    rng = np.random.default_rng(seed)
    N = num_pairs(n)
    w = rng.uniform(0.5, 1.5, N)
    w_bar = w + 0.2 * rng.standard_normal(N)
    w_tilde = w_bar + 0.1 * rng.standard_normal(N)
    caps = np.maximum(w, w_bar) + 1.0
    return w, SaddleContext.build(w_bar, w_tilde, caps, lam)


def test_sketch_gradient_is_unbiased():
    n = 4
    w, ctx = saddle_instance(5, n, 1.0)
    X = inner_sdp_solve(ctx.saddle_matrix(w), ctx.lam, TIGHT).point
    exact = exact_gradient(w, ctx, X=X)

    samples = 20_000
    zetas = NoiseStream(11).gaussian(2 * n, rows=samples)
    draws = estimate_gradient(w, X, zetas, ctx.reference_weights, ctx.caps)
    mean = draws.mean(axis=0)
    stderr = draws.std(axis=0) / np.sqrt(samples)
    assert np.all(np.abs(mean - exact) <= 3.0 * stderr + 1e-12)


def test_exact_gradient_matches_finite_differences():
    w, ctx = saddle_instance(2, 3, 1.0)
    fun = f_value_function(ctx, TIGHT)
    fd = finite_difference_gradient(fun, w, h=1e-4)
    exact = exact_gradient(w, ctx)
    scale = max(1.0, float(np.max(np.abs(exact))))
    assert np.max(np.abs(fd - exact)) / scale <= 1e-3


def test_gradient_rejects_mismatched_shapes():
    with pytest.raises(ValueError):
        estimate_gradient(np.ones(3), SdpPoint.identity(3), np.ones(5), np.ones(3), np.ones(3))
    with pytest.raises(ValueError):
        estimate_gradient(np.ones(3), SdpPoint.identity(3), np.ones(6), np.ones(4), np.ones(3))
