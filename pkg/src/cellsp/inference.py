"""Inferring the 2-cells of a complex from observed edge flows.

The graph (``B1``) is known.  Observed flows are first stripped of their
gradient part; each candidate cell is then scored by the energy of the
remaining flow circulating around it, and the ``q*`` least-circulated cells
are kept.  Because the objective is a sum of per-cell scores, picking the
``q*`` smallest scores is the exact optimum of the cardinality-constrained
problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .complex import CellComplex
from .cycles import CandidateCellSet
from .errors import DegenerateInputError, ShapeError
from .spectral import SpectralBasis, build_laplacians, partition_basis, range_basis

DEFAULT_ENERGY_THRESHOLD = 0.02
DEFAULT_HOLDOUT_FRACTION = 0.2


@dataclass(frozen=True, eq=False)
class InferenceResult:
    selected: list[int]
    scores: np.ndarray
    b2_hat: sp.csc_array
    energy_ratio: float
    used_b2_zero: bool
    candidates: CandidateCellSet = field(repr=False)

    @property
    def polygons(self) -> list[tuple[int, ...]]:
        return [self.candidates.cycles[i] for i in self.selected]

    def inferred_complex(self) -> CellComplex:
        return self.candidates.complex.with_polygons(self.polygons)

    def to_json(self) -> dict:
        return {
            "selected": [int(i) for i in self.selected],
            "polygons": [list(p) for p in self.polygons],
            "scores": [float(d) for d in self.scores],
            "energy_ratio": float(self.energy_ratio),
            "used_b2_zero": bool(self.used_b2_zero),
            "num_candidates": len(self.candidates),
        }


def graph_basis(b1) -> SpectralBasis:
    """Spectral basis of the bare graph: only ``L1_low`` is known."""
    empty = sp.csc_array((b1.shape[1], 0), dtype=np.int64)
    return partition_basis(build_laplacians(b1, empty))


def project_out_irrotational(batch, basis: SpectralBasis) -> np.ndarray:
    """Remove the component of each column lying in img(B1.T)."""
    batch = np.asarray(batch, dtype=float)
    u_irr = basis.irrotational
    if batch.shape[0] != u_irr.shape[0]:
        raise ShapeError(f"batch has {batch.shape[0]} rows, basis has {u_irr.shape[0]}")
    return batch - u_irr @ (u_irr.T @ batch)


def energy_ratio(projected, batch) -> float:
    total = np.linalg.norm(batch)
    if total == 0:
        raise DegenerateInputError("observed batch has zero energy")
    return float(np.linalg.norm(projected) / total)


def energy_test(projected, batch, threshold: float = DEFAULT_ENERGY_THRESHOLD) -> bool:
    """True when the non-gradient energy is small enough to set ``B2 = 0``.

    ``batch`` is the unprojected data the ratio is taken against.
    """
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    return energy_ratio(projected, batch) < threshold


def score_cells(projected, candidates: CandidateCellSet) -> np.ndarray:
    """``d_n = sum_i (b_n . y_i)^2`` for every candidate column ``b_n``."""
    projected = np.asarray(projected, dtype=float)
    if projected.ndim == 1:
        projected = projected[:, None]
    if projected.shape[0] != candidates.columns.shape[0]:
        raise ShapeError("projected batch and candidate columns disagree on the edge count")
    circulation = candidates.columns.T.astype(float) @ projected
    return np.sum(circulation**2, axis=1)


def select_smallest(scores, q_star: int) -> list[int]:
    """Indices of the ``q_star`` smallest scores; ties go to the lower index."""
    order = np.argsort(scores, kind="stable")
    return sorted(int(i) for i in order[:q_star])


def infer_b2(
    batch,
    b1,
    candidates: CandidateCellSet,
    q_star: int,
    energy_threshold: float = DEFAULT_ENERGY_THRESHOLD,
) -> InferenceResult:
    batch = np.asarray(batch, dtype=float)
    if batch.ndim == 1:
        batch = batch[:, None]
    n_c = len(candidates)
    if not 0 <= q_star <= n_c:
        raise ValueError(f"q_star={q_star} outside [0, {n_c}]")
    projected = project_out_irrotational(batch, graph_basis(b1))
    ratio = energy_ratio(projected, batch)
    scores = score_cells(projected, candidates)
    if ratio < energy_threshold:
        selected: list[int] = []
        used_zero = True
    else:
        selected = select_smallest(scores, q_star)
        used_zero = False
    b2_hat = sp.csc_array(candidates.columns[:, selected]) if selected else sp.csc_array(
        (candidates.columns.shape[0], 0), dtype=np.int64
    )
    return InferenceResult(
        selected=selected,
        scores=scores,
        b2_hat=b2_hat,
        energy_ratio=ratio,
        used_b2_zero=used_zero,
        candidates=candidates,
    )


def holdout_split(num_columns: int, holdout_fraction: float) -> tuple[slice, slice]:
    """Leading columns fit, trailing columns hold out."""
    n_hold = int(math.ceil(holdout_fraction * num_columns))
    n_fit = num_columns - n_hold
    if n_hold < 1 or n_fit < 1:
        raise ValueError(
            f"holdout_fraction={holdout_fraction} leaves an empty split of {num_columns} columns"
        )
    return slice(0, n_fit), slice(n_fit, num_columns)


def circulation_ratio(projected_holdout, b2_hat) -> float:
    """Share of held-out non-gradient energy lying in img(b2_hat)."""
    total = np.linalg.norm(projected_holdout)
    if total == 0:
        return 0.0
    q = range_basis(b2_hat)
    return float(np.linalg.norm(q.T @ projected_holdout) / total)


def select_q_star(
    batch,
    b1,
    candidates: CandidateCellSet,
    holdout_fraction: float = DEFAULT_HOLDOUT_FRACTION,
    grid=None,
    energy_threshold: float = DEFAULT_ENERGY_THRESHOLD,
) -> int:
    """Pick the number of 2-cells on held-out columns.

    Cells are ranked on the fit columns.  A cell set is accepted when the
    held-out flow barely circulates around it (ratio below
    ``energy_threshold``); the largest accepted size wins.  Data with no
    significant non-gradient energy returns the smallest grid value.
    """
    batch = np.asarray(batch, dtype=float)
    if batch.ndim != 2 or batch.shape[1] < 2:
        raise ValueError("select_q_star needs a batch with at least 2 columns")
    grid = sorted(set(range(len(candidates) + 1) if grid is None else (int(q) for q in grid)))
    if not grid:
        raise ValueError("empty q grid")
    if grid[0] < 0 or grid[-1] > len(candidates):
        raise ValueError(f"grid values must lie in [0, {len(candidates)}]")
    fit, hold = holdout_split(batch.shape[1], holdout_fraction)

    basis = graph_basis(b1)
    proj_fit = project_out_irrotational(batch[:, fit], basis)
    proj_hold = project_out_irrotational(batch[:, hold], basis)
    if energy_ratio(project_out_irrotational(batch, basis), batch) < energy_threshold:
        return grid[0]

    order = np.argsort(score_cells(proj_fit, candidates), kind="stable")
    columns = candidates.columns
    best = grid[0]
    for q in grid:
        chosen = np.sort(order[:q])
        if circulation_ratio(proj_hold, columns[:, chosen]) <= energy_threshold:
            best = q
    return best
