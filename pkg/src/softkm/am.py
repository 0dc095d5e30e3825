"""Alternating-minimization baseline for the soft k-means objective.

Alternates the exact prototype update F = X G (G^T G + ridge I)^{-1} with
per-sample membership solves. Converges to a stationary point only; the
closed-form solver gives the global reference the trace can be checked
against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DataMatrix, Solution, as_matrix, center
from .errors import InvalidInput, NumericalFailure
from .global_solver import objective
from .simplex import solve_membership

__all__ = ["AmOptions", "solve_am"]


@dataclass(frozen=True)
class AmOptions:
    """Loop controls for the alternating solver.

    init is either the string "random_points" (k distinct data columns,
    drawn with the given seed) or an explicit d x k prototype array. The
    ridge is scaled by trace(G^T G)/k before being added to the normal
    equations.
    """

    max_outer_iters: int = 200
    rel_obj_tol: float = 1e-8
    ridge: float = 1e-10
    init: object = "random_points"
    seed: int = 0

    def __post_init__(self):
        if self.max_outer_iters < 1:
            raise InvalidInput("max_outer_iters must be at least 1")
        if not self.rel_obj_tol >= 0:
            raise InvalidInput("rel_obj_tol must be nonnegative")
        if not self.ridge >= 0:
            raise InvalidInput("ridge must be nonnegative")


def _initial_prototypes(X: DataMatrix, k: int, init, seed: int) -> np.ndarray:
    if isinstance(init, str):
        if init != "random_points":
            raise InvalidInput(f"unknown init {init!r}")
        rng = np.random.default_rng(seed)
        idx = rng.choice(X.n, size=k, replace=False)
        return X.values[:, np.sort(idx)].copy()
    F = as_matrix(init, "initial prototypes")
    if F.shape != (X.d, k):
        raise InvalidInput(f"initial prototypes must be {X.d}x{k}")
    if not np.all(np.isfinite(F)):
        raise InvalidInput("initial prototypes contain non-finite entries")
    return F.copy()


def solve_am(X, k: int, opts: AmOptions | None = None) -> tuple[Solution, list[float]]:
    """Run alternating minimization from a seeded start.

    Parameters
    ----------
    X : DataMatrix or array_like
    k : int, 1 <= k <= n
    opts : AmOptions, optional

    Returns
    -------
    (Solution, trace)
        trace[0] is the objective after the initial membership solve and
        one entry follows per outer iteration; it is non-increasing up to
        round-off. Stops when the relative decrease falls below
        rel_obj_tol or max_outer_iters is reached.
    """
    opts = opts or AmOptions()
    if not isinstance(X, DataMatrix):
        X = center(X)
    if not isinstance(k, (int, np.integer)) or k < 1 or k > X.n:
        raise InvalidInput(f"k must be in [1, {X.n}], got {k}")
    F = _initial_prototypes(X, k, opts.init, opts.seed)
    G = solve_membership(F, X)
    trace = [objective(X, F, G)]
    tiny = float(np.finfo(float).tiny)
    for _ in range(opts.max_outer_iters):
        M = G.T @ G
        M[np.diag_indices_from(M)] += opts.ridge * np.trace(M) / k
        try:
            F = np.linalg.solve(M, (X.values @ G).T).T
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(f"singular normal equations in F-update: {exc}") from exc
        if not np.all(np.isfinite(F)):
            raise NumericalFailure("non-finite prototypes in F-update")
        G = solve_membership(F, X, warm=G)
        obj = objective(X, F, G)
        trace.append(obj)
        prev = trace[-2]
        if prev - obj <= opts.rel_obj_tol * max(prev, tiny):
            break
    return Solution(F, G, trace[-1]), trace
