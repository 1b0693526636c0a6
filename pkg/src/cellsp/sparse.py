"""Sparse spectral codes, greedy MaxDet sampling and bandlimited reconstruction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IllPosedSamplingError

SUPPORT_RTOL = 1e-6
ADMM_TOL = 1e-8
ADMM_MAX_ITER = 10_000


@dataclass(frozen=True, eq=False)
class SparseCode:
    coefficients: np.ndarray
    support: np.ndarray
    residual: float
    epsilon: float


def support_of(coefficients, rtol: float = SUPPORT_RTOL) -> np.ndarray:
    """Indices whose magnitude exceeds ``rtol * max|s|``."""
    coefficients = np.asarray(coefficients)
    peak = np.max(np.abs(coefficients)) if coefficients.size else 0.0
    if peak == 0:
        return np.zeros(0, dtype=int)
    return np.flatnonzero(np.abs(coefficients) > rtol * peak)


def soft_threshold(x, tau):
    return np.sign(x) * np.maximum(np.abs(x) - tau, 0.0)


def shrinkage_threshold(magnitudes, epsilon: float) -> float:
    """Smallest ``tau`` with ``sum(min(|c_i|, tau)^2) <= epsilon^2``.

    That sum is the squared residual of soft-thresholding in an orthonormal
    basis; it is piecewise quadratic and increasing in ``tau``.
    """
    a = np.sort(np.abs(np.asarray(magnitudes, dtype=float)))
    n = a.size
    eps2 = float(epsilon) ** 2
    if n == 0 or eps2 >= np.sum(a**2):
        return float(a[-1]) if n else 0.0
    if eps2 <= 0:
        return 0.0
    below = 0.0  # sum of a_i^2 for the i < k entries already saturated
    lo = 0.0
    for k in range(n):
        hi = a[k]
        # on [lo, hi] the first k entries are below tau, the remaining n - k are clipped
        if below + (n - k) * hi**2 >= eps2:
            tau = np.sqrt((eps2 - below) / (n - k))
            return float(min(max(tau, lo), hi))
        below += hi**2
        lo = hi
    return float(a[-1])


def _is_orthonormal_square(v: np.ndarray, tol: float = 1e-8) -> bool:
    return v.shape[0] == v.shape[1] and np.allclose(v.T @ v, np.eye(v.shape[1]), atol=tol)


def basis_pursuit(y, basis_matrix, epsilon: float) -> SparseCode:
    """Minimize ``||s||_1`` subject to ``||y - V s||_2 <= epsilon``.

    For a square orthonormal ``V`` the optimum is soft-thresholding of
    ``V.T @ y`` at the smallest feasible threshold.  Anything else goes
    through :func:`basis_pursuit_admm`.
    """
    y = np.asarray(y, dtype=float)
    v = np.asarray(basis_matrix, dtype=float)
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    if epsilon >= np.linalg.norm(y):
        s = np.zeros(v.shape[1])
    elif _is_orthonormal_square(v):
        c = v.T @ y
        s = soft_threshold(c, shrinkage_threshold(c, epsilon))
    else:
        s = basis_pursuit_admm(y, v, epsilon)
    return SparseCode(
        coefficients=s,
        support=support_of(s),
        residual=float(np.linalg.norm(y - v @ s)),
        epsilon=float(epsilon),
    )


def basis_pursuit_admm(
    y, v, epsilon: float, rho: float = 1.0, tol: float = ADMM_TOL, max_iter: int = ADMM_MAX_ITER
) -> np.ndarray:
    """ADMM for the constrained L1 problem with an arbitrary dictionary.

    Splitting: ``x = s`` carries the L1 term, ``z = V s`` carries the ball
    constraint ``||z - y|| <= epsilon``; ``s`` is a least-squares consensus
    variable.  Stops when primal and dual residuals fall below ``tol``.
    """
    y = np.asarray(y, dtype=float)
    v = np.asarray(v, dtype=float)
    m, n = v.shape
    # (I + V^T V) is shared by every s-update
    chol = np.linalg.cholesky(np.eye(n) + v.T @ v)

    def solve(rhs):
        return np.linalg.solve(chol.T, np.linalg.solve(chol, rhs))

    x = np.zeros(n)
    z = np.zeros(m)
    u1 = np.zeros(n)
    u2 = np.zeros(m)
    s = np.zeros(n)
    for _ in range(max_iter):
        s = solve((x - u1) + v.T @ (z - u2))
        vs = v @ s
        x_old, z_old = x, z
        x = soft_threshold(s + u1, 1.0 / rho)
        w = vs + u2 - y
        norm_w = np.linalg.norm(w)
        z = y + (w if norm_w <= epsilon else w * (epsilon / norm_w))
        r1 = s - x
        r2 = vs - z
        u1 = u1 + r1
        u2 = u2 + r2
        primal = np.sqrt(np.sum(r1**2) + np.sum(r2**2))
        dual = rho * np.sqrt(np.sum((x - x_old) ** 2) + np.sum((v.T @ (z - z_old)) ** 2))
        if primal <= tol and dual <= tol:
            break
    return x


def sparsity_mse_curve(batch, basis_matrix, epsilon_grid) -> list[tuple[float, float, float]]:
    """Rows ``(epsilon, mean support size, mean squared error)`` sorted by epsilon."""
    batch = np.asarray(batch, dtype=float)
    if batch.ndim == 1:
        batch = batch[:, None]
    grid = sorted(float(e) for e in epsilon_grid)
    if not grid:
        raise ValueError("epsilon grid is empty")
    E, M = batch.shape
    rows = []
    for eps in grid:
        sizes, errors = [], []
        for i in range(M):
            code = basis_pursuit(batch[:, i], basis_matrix, eps)
            sizes.append(code.support.size)
            errors.append(code.residual**2 / E)
        rows.append((eps, float(np.mean(sizes)), float(np.mean(errors))))
    return rows


# -- sampling -----------------------------------------------------------------


@dataclass(frozen=True)
class SampleSet:
    indices: tuple[int, ...]
    bandwidth: int


RANK_RTOL = 1e-10


def gram_rank_logdet(rows: np.ndarray, rtol: float = RANK_RTOL) -> tuple[int, float]:
    """Rank and log pseudo-determinant of ``rows.T @ rows``."""
    if rows.shape[0] == 0:
        return 0, 0.0
    s = np.linalg.svd(rows, compute_uv=False)
    nz = s[s > rtol * max(1.0, s[0])]
    return int(nz.size), float(np.sum(2.0 * np.log(nz)))


def maxdet_select(bandlimited_basis, sample_count: int) -> SampleSet:
    """Greedy edge selection maximizing the Gram pseudo-determinant.

    Each step adds the row that raises the Gram rank if any can, and among
    those the one with the largest pseudo-determinant.  Ties keep the
    lowest index.
    """
    u = np.asarray(bandlimited_basis, dtype=float)
    if u.ndim == 1:
        u = u[:, None]
    E, F = u.shape
    if sample_count < 1 or F < 1:
        raise ValueError("need sample_count >= 1 and at least one basis column")
    if sample_count > E:
        raise ValueError(f"cannot pick {sample_count} samples from {E} edges")
    chosen: list[int] = []
    for _ in range(sample_count):
        best, best_key = -1, None
        for j in range(E):
            if j in chosen:
                continue
            rank, logdet = gram_rank_logdet(u[chosen + [j]])
            key = (rank, logdet)
            if best_key is None or key[0] > best_key[0] or (
                key[0] == best_key[0] and key[1] > best_key[1] + 1e-12 * max(1.0, abs(best_key[1]))
            ):
                best, best_key = j, key
        chosen.append(best)
    return SampleSet(indices=tuple(chosen), bandwidth=F)


def reconstruct_from_samples(samples: SampleSet, sampled_values, bandlimited_basis) -> np.ndarray:
    """Least-squares fit of bandlimited coefficients to the samples, then synthesis."""
    u = np.asarray(bandlimited_basis, dtype=float)
    if u.ndim == 1:
        u = u[:, None]
    idx = list(samples.indices)
    y = np.asarray(sampled_values, dtype=float)
    if y.shape[0] != len(idx):
        raise ValueError(f"{len(idx)} sample indices but {y.shape[0]} sampled values")
    rows = u[idx]
    rank, _ = gram_rank_logdet(rows)
    if rank < u.shape[1]:
        raise IllPosedSamplingError(
            f"sampled rows have rank {rank} < bandwidth {u.shape[1]}; add samples"
        )
    coeffs, *_ = np.linalg.lstsq(rows, y, rcond=None)
    return u @ coeffs
