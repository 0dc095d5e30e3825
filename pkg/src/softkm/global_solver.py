"""Closed-form global solver for the soft k-means factorization.

The factorization min_{F, G} ||X - F G^T||_F^2 with row-stochastic G is
solved exactly: center the data, take the leading (k-1) singular directions,
and place the k prototypes on a regular simplex spanned by those directions,
scaled so that every projected sample stays inside it. The optimum is unique
only up to a rotation of the simplex basis, which `rotate_solution` exposes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DataMatrix,
    GlobalFactors,
    Solution,
    as_matrix,
    center,
    simplex_complement_basis,
    truncated_svd,
)
from .errors import InvalidInput

__all__ = [
    "RotationMatrix",
    "solve_global",
    "rotate_solution",
    "objective",
    "infinity_bound",
]


@dataclass(frozen=True)
class RotationMatrix:
    """A square orthogonal matrix, validated on construction."""

    R: np.ndarray

    def __post_init__(self):
        R = np.asarray(self.R, dtype=float)
        if R.ndim != 2 or R.shape[0] != R.shape[1] or R.shape[0] < 1:
            raise InvalidInput("rotation must be a square matrix")
        if np.linalg.norm(R.T @ R - np.eye(R.shape[0])) > 1e-10:
            raise InvalidInput("rotation matrix is not orthogonal")
        object.__setattr__(self, "R", R)
        R.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.R.shape[0]


def objective(X, F, G) -> float:
    """Squared Frobenius reconstruction error ||X - F G^T||_F^2."""
    A = X.values if isinstance(X, DataMatrix) else as_matrix(X, "data matrix")
    F = as_matrix(F, "prototypes")
    G = np.asarray(G, dtype=float)
    if G.ndim != 2:
        raise InvalidInput("membership must be a 2-d array")
    d, n = A.shape
    if F.shape[0] != d or G.shape[0] != n or F.shape[1] != G.shape[1]:
        raise InvalidInput(
            f"shape mismatch: X is {d}x{n}, F is {F.shape[0]}x{F.shape[1]}, "
            f"G is {G.shape[0]}x{G.shape[1]}"
        )
    R = A - F @ G.T
    return float(np.sum(R * R))


def infinity_bound(k: int) -> float:
    """Max-norm bound sqrt(k(k-1))/k for unit vectors orthogonal to ones."""
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise InvalidInput(f"bound needs k >= 2, got {k}")
    return float(np.sqrt(k * (k - 1.0)) / k)


def solve_global(X, k: int) -> tuple[Solution, GlobalFactors]:
    """Solve the soft k-means factorization exactly.

    Parameters
    ----------
    X : DataMatrix or array_like
        Feature-by-sample data; raw arrays are centered internally.
    k : int
        Number of prototypes. Requires k >= 1 and k - 1 <= min(d, n).

    Returns
    -------
    (Solution, GlobalFactors)
        The optimal factors plus the SVD/basis bundle needed to enumerate
        the rotation family of alternative optima. The objective equals the
        energy of the singular values of the centered data beyond the
        leading k - 1.

    Notes
    -----
    k = 1 is forced analytically: the single prototype is the data mean.
    Data with all samples identical yields the mean prototype replicated
    and a uniform membership.
    """
    if not isinstance(X, DataMatrix):
        X = center(X)
    d, n = X.d, X.n
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidInput(f"k must be a positive integer, got {k}")
    if k == 1:
        F = X.mean.reshape(d, 1).copy()
        G = np.ones((n, 1))
        gf = GlobalFactors(
            U=np.zeros((d, 0)),
            sigma=np.zeros(0),
            V=np.zeros((n, 0)),
            B=np.zeros((1, 0)),
            r=0.0,
            a=0.0,
            S=np.zeros((0, 1)),
        )
        return Solution(F, G, objective(X, F, G)), gf
    if k - 1 > min(d, n):
        raise InvalidInput(f"k - 1 = {k - 1} exceeds min(d, n) = {min(d, n)}")

    U, sigma, V = truncated_svd(X.centered, k - 1)
    B = simplex_complement_basis(k)
    W = sigma[:, None] * V.T  # equals U^T Xc, (k-1) x n
    r = float(np.sqrt((W * W).sum(axis=0)).max())
    if r <= 0.0:
        # every sample equals the mean; the simplex collapses onto it
        F = np.repeat(X.mean[:, None], k, axis=1)
        G = np.full((n, k), 1.0 / k)
        gf = GlobalFactors(U=U, sigma=sigma, V=V, B=B, r=0.0, a=0.0,
                           S=np.zeros((k - 1, k)))
        return Solution(F, G, objective(X, F, G)), gf
    a = r * np.sqrt(k * (k - 1.0))
    F = a * (U @ B.T) + X.mean[:, None]
    G = (W.T @ B.T) / a + 1.0 / k
    gf = GlobalFactors(U=U, sigma=sigma, V=V, B=B, r=r, a=float(a), S=a * B.T)
    return Solution(F, G, objective(X, F, G)), gf


def rotate_solution(sol: Solution, gf: GlobalFactors, R) -> Solution:
    """Produce an equally optimal solution from the rotation freedom.

    Replacing the simplex basis B by B @ R for orthogonal R leaves F G^T,
    and hence the objective, unchanged while moving both factors. The input
    solution must come from `solve_global` with its matching factors.
    """
    if isinstance(R, RotationMatrix):
        Rm = R.R
    else:
        Rm = RotationMatrix(np.asarray(R, dtype=float)).R
    k = gf.k
    if k < 2 or Rm.shape != (k - 1, k - 1):
        raise InvalidInput(f"rotation must be {k - 1}x{k - 1} for k = {k}")
    if gf.a <= 0.0:
        # degenerate simplex: rotations act trivially
        return Solution(sol.prototypes.copy(), sol.membership.copy(), sol.objective)
    xbar = sol.prototypes.mean(axis=1)  # B^T ones = 0 makes this the data mean
    Brot = gf.B @ Rm
    W = gf.projected_data()
    F = gf.a * (gf.U @ Brot.T) + xbar[:, None]
    G = (W.T @ Brot.T) / gf.a + 1.0 / k
    # F G^T is rotation-invariant, so the objective carries over exactly
    return Solution(F, G, sol.objective)
