"""Shared helpers for the test suite: seeded instance generators."""

import numpy as np


def random_instance(seed, d, n, scale=1.0):
    rng = np.random.default_rng(seed)
    return scale * rng.standard_normal((d, n))


def random_row_stochastic(seed, n, k):
    rng = np.random.default_rng(seed)
    M = rng.random((n, k)) + 1e-3
    return M / M.sum(axis=1, keepdims=True)


def random_orthogonal(seed, m):
    rng = np.random.default_rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((m, m)))
    return Q * np.sign(np.diag(R))


def decomposable_instance(seed, d, n, k):
    """X = F0 G0^T with row-stochastic G0, so centered rank is at most k-1."""
    rng = np.random.default_rng(seed)
    F0 = rng.standard_normal((d, k)) * 2.0
    G0 = rng.random((n, k)) + 1e-3
    G0 /= G0.sum(axis=1, keepdims=True)
    return F0 @ G0.T, F0, G0
