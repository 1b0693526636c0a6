"""FIR filters over the lower and upper edge Laplacians.

Filters have no constant term, so flows in the kernel of ``L1`` are always
removed.  Coefficients are fitted by least squares on the nonzero spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import DegenerateInputError, ShapeError
from .spectral import LaplacianSet, SpectralBasis

DEDUP_RTOL = 1e-8
SNR_CAP_DB = 300.0


@dataclass(frozen=True, eq=False)
class SpectralMask:
    eigenvalue_grid: np.ndarray
    response: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.eigenvalue_grid, dtype=float).ravel()
        h = np.asarray(self.response, dtype=float).ravel()
        if lam.shape != h.shape:
            raise ShapeError(f"{lam.size} eigenvalues but {h.size} responses")
        if np.any(lam <= 0):
            raise ValueError("mask eigenvalues must be strictly positive")
        object.__setattr__(self, "eigenvalue_grid", lam)
        object.__setattr__(self, "response", h)

    def __len__(self) -> int:
        return self.eigenvalue_grid.size


@dataclass(frozen=True, eq=False)
class FilterDesign:
    coeffs_irr: np.ndarray
    coeffs_sol: np.ndarray
    fit_residual_irr: float
    fit_residual_sol: float


def dedup_eigenvalues(eigenvalues, rtol: float = DEDUP_RTOL) -> np.ndarray:
    """Sorted eigenvalues with clusters closer than ``rtol * max`` merged."""
    lam = np.sort(np.asarray(eigenvalues, dtype=float).ravel())
    if lam.size == 0:
        return lam
    tol = rtol * max(abs(lam[-1]), 1.0)
    keep = [lam[0]]
    for x in lam[1:]:
        if x - keep[-1] > tol:
            keep.append(x)
    return np.array(keep)


def component_eigenvalues(basis: SpectralBasis, label: str, dedup: bool = True) -> np.ndarray:
    lam = basis.eigenvalues[basis.labels == label]
    return dedup_eigenvalues(lam) if dedup else np.sort(lam)


def mask_from_function(eigenvalues, fn: Callable[[np.ndarray], np.ndarray], dedup: bool = True) -> SpectralMask:
    lam = dedup_eigenvalues(eigenvalues) if dedup else np.sort(np.asarray(eigenvalues, dtype=float))
    return SpectralMask(lam, np.asarray(fn(lam), dtype=float) * np.ones_like(lam))


def build_vandermonde(eigenvalues, order: int) -> np.ndarray:
    """Columns ``lambda, lambda^2, ..., lambda^order`` (no constant column)."""
    lam = np.asarray(eigenvalues, dtype=float).ravel()
    if order < 1:
        raise ValueError("filter order must be at least 1")
    if np.any(lam == 0):
        raise ValueError("zero eigenvalue in the grid; the kernel cannot be shaped without a constant term")
    return lam[:, None] ** np.arange(1, order + 1)


def _fit(lam: np.ndarray, h: np.ndarray, order: int) -> tuple[np.ndarray, float]:
    if lam.size == 0:
        raise ValueError("empty spectral mask")
    build_vandermonde(lam, order)  # argument checks
    # solve on lambda / lambda_max so high powers stay O(1), then undo the scaling
    scale = float(np.max(np.abs(lam)))
    phi_scaled = build_vandermonde(lam / scale, order)
    a_scaled, *_ = np.linalg.lstsq(phi_scaled, h, rcond=None)
    coeffs = a_scaled / scale ** np.arange(1, order + 1)
    residual = float(np.linalg.norm(h - phi_scaled @ a_scaled))
    return coeffs, residual


def design_separate(mask_irr: SpectralMask, mask_sol: SpectralMask, k_l: int, k_u: int) -> FilterDesign:
    a_irr, r_irr = _fit(mask_irr.eigenvalue_grid, mask_irr.response, k_l)
    a_sol, r_sol = _fit(mask_sol.eigenvalue_grid, mask_sol.response, k_u)
    return FilterDesign(a_irr, a_sol, r_irr, r_sol)


@dataclass(frozen=True, eq=False)
class JointDesign:
    coeffs: np.ndarray
    fit_residual: float

    def as_filter_design(self) -> FilterDesign:
        """The same polynomial applied to both Laplacians, i.e. a filter in ``L1``."""
        return FilterDesign(self.coeffs, self.coeffs, float("nan"), float("nan"))


def design_joint(mask_irr: SpectralMask, mask_sol: SpectralMask, k: int) -> JointDesign:
    """One coefficient vector fitted to both masks stacked (solenoidal rows first)."""
    lam = np.concatenate([mask_sol.eigenvalue_grid, mask_irr.eigenvalue_grid])
    h = np.concatenate([mask_sol.response, mask_irr.response])
    coeffs, residual = _fit(lam, h, k)
    return JointDesign(coeffs, residual)


def _poly_apply(lap, coeffs: np.ndarray, s: np.ndarray) -> np.ndarray:
    """``sum_k a_k L^k s`` for k >= 1 by Horner's rule (matrix-vector products only)."""
    if coeffs.size == 0:
        return np.zeros_like(s)
    acc = coeffs[-1] * s
    for a in coeffs[-2::-1]:
        acc = a * s + lap @ acc
    return lap @ acc


def apply_filter(signal, lap: LaplacianSet, design: FilterDesign) -> np.ndarray:
    s = np.asarray(signal, dtype=float)
    if s.shape[0] != lap.l1.shape[0]:
        raise ShapeError(f"signal has {s.shape[0]} entries, Laplacian is {lap.l1.shape}")
    return _poly_apply(lap.l1_low, np.asarray(design.coeffs_irr, float), s) + _poly_apply(
        lap.l1_up, np.asarray(design.coeffs_sol, float), s
    )


def spectral_response(basis: SpectralBasis, design: FilterDesign) -> np.ndarray:
    """Per-column frequency response of ``design`` in the basis of ``L1``."""
    lam_l = basis.lower_eigenvalues
    lam_u = basis.upper_eigenvalues
    resp = np.zeros_like(lam_l)
    for k, a in enumerate(design.coeffs_irr, start=1):
        resp += a * lam_l**k
    for k, a in enumerate(design.coeffs_sol, start=1):
        resp += a * lam_u**k
    return resp


def output_snr(signal_clean_component, filtered) -> float:
    """``10 log10(||clean||^2 / ||filtered - clean||^2)`` in dB, capped at 300."""
    clean = np.asarray(signal_clean_component, dtype=float)
    out = np.asarray(filtered, dtype=float)
    if clean.shape != out.shape:
        raise ShapeError(f"shapes differ: {clean.shape} vs {out.shape}")
    power = float(np.sum(clean**2))
    if power == 0:
        raise DegenerateInputError("clean component is zero")
    err = float(np.sum((out - clean) ** 2))
    if err == 0 or power / err > 10 ** (SNR_CAP_DB / 10):
        return SNR_CAP_DB
    return 10.0 * np.log10(power / err)


def read_mask(path) -> SpectralMask:
    """CSV with a ``lambda,response`` header."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines or lines[0].replace(" ", "") != "lambda,response":
        raise ValueError(f"{path}: expected header 'lambda,response'")
    rows = [tuple(float(x) for x in ln.split(",")) for ln in lines[1:]]
    lam = np.array([r[0] for r in rows])
    h = np.array([r[1] for r in rows])
    return SpectralMask(lam, h)


def write_mask(mask: SpectralMask, path) -> None:
    lines = ["lambda,response"]
    lines += [f"{lam:.17g},{h:.17g}" for lam, h in zip(mask.eigenvalue_grid, mask.response)]
    Path(path).write_text("\n".join(lines) + "\n")

