"""Minimal-volume soft k-means.

Adds a log-volume penalty on the prototype simplex to the reconstruction
objective,

    L(F, G) = ||Xc - F G^T||_F^2 + (lambda/2) * sum_i log(sigma_i(F)^2 + eps),

with the sum over all k singular values (zeros included when rank(F) < k)
and eps > 0 keeping the penalty finite. The closed-form optimum of the
unregularized problem is unique only up to a rotation that rescales the
simplex; the penalty selects the smallest simplex compatible with the data,
pulling prototypes toward the samples. Minimization alternates an exact
F-update against a tangent majorizer of the log term (built from the
reweight matrix D) with per-sample membership solves, and the objective
trace never increases.

The solver centers the data internally and reports prototypes with the mean
added back.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import DataMatrix, Solution, as_matrix, center
from .errors import DegenerateSimplex, InvalidInput, NumericalFailure, PreconditionViolated
from .simplex import solve_membership

__all__ = [
    "MvskmOptions",
    "MvskmState",
    "volume_regularizer",
    "log_simplex_volume",
    "reweight_matrix",
    "mvskm_objective",
    "solve_mvskm",
]


@dataclass(frozen=True)
class MvskmOptions:
    """Settings for the minimal-volume solver.

    lam weighs the volume penalty (the objective carries lam/2), epsilon
    smooths the log and must be strictly positive, init mirrors AmOptions:
    "random_points" or an explicit d x k array in original coordinates.
    """

    lam: float
    epsilon: float = 1e-8
    max_outer_iters: int = 300
    rel_obj_tol: float = 1e-8
    init: object = "random_points"
    seed: int = 0

    def __post_init__(self):
        if not self.lam >= 0:
            raise InvalidInput("lam must be nonnegative")
        if not self.epsilon > 0:
            raise InvalidInput("epsilon must be strictly positive")
        if self.max_outer_iters < 1:
            raise InvalidInput("max_outer_iters must be at least 1")
        if not self.rel_obj_tol >= 0:
            raise InvalidInput("rel_obj_tol must be nonnegative")


@dataclass(frozen=True)
class MvskmState:
    """Final iterate of the solver: centered prototypes F, membership G,
    the reweight matrix D and singular values sigma of F (k entries, zero
    padded), plus the full objective trace."""

    F: np.ndarray
    G: np.ndarray
    D: np.ndarray
    sigma: np.ndarray
    objective_trace: list[float] = field(default_factory=list)


def _padded_singular_values(F: np.ndarray) -> np.ndarray:
    k = F.shape[1]
    s = np.linalg.svd(F, compute_uv=False)
    out = np.zeros(k)
    out[: s.size] = s
    return out


def volume_regularizer(F, epsilon: float) -> float:
    """sum_{i=1}^{k} log(sigma_i(F)^2 + epsilon), zeros included.

    F is d x k; when d < k the missing singular values count as zero, so
    the rank-deficient directions contribute log(epsilon) each.
    """
    if not epsilon > 0:
        raise InvalidInput("epsilon must be strictly positive")
    F = as_matrix(F, "prototypes")
    s = _padded_singular_values(F)
    return float(np.log(s * s + epsilon).sum())


def log_simplex_volume(F) -> float:
    """Log volume (up to the fixed 1/(k-1)! factor) of the simplex spanned
    by the columns of a centered prototype matrix.

    Requires F ones = 0 within 1e-8 relative and rank(F) = k - 1; equals
    log(sqrt(k)) + sum_{i<k} log(sigma_i(F)).
    """
    F = as_matrix(F, "prototypes")
    k = F.shape[1]
    if k < 2:
        raise InvalidInput("simplex volume needs k >= 2")
    fro = float(np.linalg.norm(F))
    colsum = float(np.linalg.norm(F @ np.ones(k)))
    if colsum > 1e-8 * max(fro, np.finfo(float).tiny):
        raise PreconditionViolated("prototype columns must sum to zero")
    s = _padded_singular_values(F)[: k - 1]
    if s[0] <= 0.0 or s[-1] <= 1e-10 * s[0]:
        raise DegenerateSimplex("prototypes do not span a (k-1)-dimensional simplex")
    return float(np.log(np.sqrt(k)) + np.log(s).sum())


def reweight_matrix(F, epsilon: float) -> np.ndarray:
    """D = V diag(1/(sigma_i^2 + epsilon)) V^T over all k right singular
    directions of F, computed from the eigendecomposition of F^T F.

    D is symmetric positive definite with eigenvalues in (0, 1/epsilon] and
    satisfies trace(D F^T F) = sum_i sigma_i^2 / (sigma_i^2 + epsilon).
    """
    if not epsilon > 0:
        raise InvalidInput("epsilon must be strictly positive")
    F = as_matrix(F, "prototypes")
    M = F.T @ F
    w, V = np.linalg.eigh(M)
    w = np.clip(w, 0.0, None)
    D = (V / (w + epsilon)) @ V.T
    return 0.5 * (D + D.T)


def mvskm_objective(Xc, F, G, lam: float, epsilon: float) -> float:
    """Regularized objective on centered data Xc (a plain d x n array)."""
    Xc = as_matrix(Xc, "centered data")
    F = as_matrix(F, "prototypes")
    G = np.asarray(G, dtype=float)
    R = Xc - F @ G.T
    return float(np.sum(R * R)) + 0.5 * lam * volume_regularizer(F, epsilon)


def solve_mvskm(X, k: int, opts: MvskmOptions) -> tuple[Solution, MvskmState]:
    """Minimize the volume-regularized objective by alternating updates.

    Each outer iteration reweights D from the current F and solves the
    linear F-update F (G^T G + (lam/2) D) = Xc G exactly. That system is
    the minimizer of the tangent majorizer of L at the current F: the log
    term carries lam/2 in L, so its linearization tr(D F^T F) must carry
    lam/2 as well or the step can overshoot and the trace loses
    monotonicity. G is then refreshed with warm-started membership solves,
    so the trace of L(F, G) values never increases (within round-off).
    Stops when |L_prev - L| falls below rel_obj_tol * max(1, |L_prev|);
    L can be negative, hence the absolute floor.

    Returns the Solution in original coordinates (mean added back to F,
    objective is the plain reconstruction error) plus the final MvskmState
    in centered coordinates with the full trace.
    """
    if opts is None or not isinstance(opts, MvskmOptions):
        raise InvalidInput("solve_mvskm requires MvskmOptions")
    if not isinstance(X, DataMatrix):
        X = center(X)
    if not isinstance(k, (int, np.integer)) or k < 2 or k > X.n:
        raise InvalidInput(f"k must be in [2, {X.n}], got {k}")
    lam, eps = float(opts.lam), float(opts.epsilon)
    Xc = X.centered

    if isinstance(opts.init, str):
        if opts.init != "random_points":
            raise InvalidInput(f"unknown init {opts.init!r}")
        rng = np.random.default_rng(opts.seed)
        idx = rng.choice(X.n, size=k, replace=False)
        F = Xc[:, np.sort(idx)].copy()
    else:
        F = as_matrix(opts.init, "initial prototypes")
        if F.shape != (X.d, k):
            raise InvalidInput(f"initial prototypes must be {X.d}x{k}")
        F = F - X.mean[:, None]  # original coordinates, centered internally

    Xc_dm = center(Xc)
    G = solve_membership(F, Xc_dm)
    trace = [mvskm_objective(Xc, F, G, lam, eps)]
    for _ in range(opts.max_outer_iters):
        D = reweight_matrix(F, eps)
        M = G.T @ G + 0.5 * lam * D
        try:
            F = np.linalg.solve(M, (Xc @ G).T).T
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(f"singular system in F-update: {exc}") from exc
        if not np.all(np.isfinite(F)):
            raise NumericalFailure("non-finite prototypes in F-update")
        G = solve_membership(F, Xc_dm, warm=G)
        L = mvskm_objective(Xc, F, G, lam, eps)
        if not np.isfinite(L):
            raise NumericalFailure("non-finite objective value")
        trace.append(L)
        prev = trace[-2]
        if abs(prev - L) <= opts.rel_obj_tol * max(1.0, abs(prev)):
            break
    F_out = F + X.mean[:, None]
    R = X.values - F_out @ G.T
    sol = Solution(F_out, G, float(np.sum(R * R)))
    state = MvskmState(
        F=F,
        G=G,
        D=reweight_matrix(F, eps),
        sigma=_padded_singular_values(F),
        objective_trace=trace,
    )
    return sol, state
