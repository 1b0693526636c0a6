"""Laplacians, the edge Fourier basis and the Hodge split of edge signals."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .complex import validate_chain_property
from .errors import ChainPropertyError, ShapeError

IRROTATIONAL = "irrotational"
SOLENOIDAL = "solenoidal"
HARMONIC = "harmonic"
_LABEL_RANK = {HARMONIC: 0, IRROTATIONAL: 1, SOLENOIDAL: 2}

DEFAULT_RELATIVE_ZERO = 1e-8


def _dense(m) -> np.ndarray:
    if sp.issparse(m):
        return m.toarray()
    return np.asarray(m)


@dataclass(frozen=True, eq=False)
class LaplacianSet:
    l0: np.ndarray
    l1_low: np.ndarray
    l1_up: np.ndarray
    l1: np.ndarray
    l2: np.ndarray


def build_laplacians(b1, b2) -> LaplacianSet:
    if not validate_chain_property(b1, b2):
        raise ChainPropertyError("B1 @ B2 != 0; incidence matrices are inconsistent")
    B1 = _dense(b1).astype(float)
    B2 = _dense(b2).astype(float)
    l1_low = B1.T @ B1
    l1_up = B2 @ B2.T
    return LaplacianSet(
        l0=B1 @ B1.T,
        l1_low=l1_low,
        l1_up=l1_up,
        l1=l1_low + l1_up,
        l2=B2.T @ B2,
    )


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    # largest-magnitude entry positive; argmax returns the lowest index on ties
    if vectors.size == 0:
        return vectors
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def relative_zero_tolerance(eigenvalues) -> float:
    """``1e-8`` times the largest eigenvalue magnitude."""
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    top = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    return DEFAULT_RELATIVE_ZERO * top


def _raw_eigh(m) -> tuple[np.ndarray, np.ndarray]:
    m = _dense(m).astype(float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    scale = np.linalg.norm(m)
    if scale > 0 and np.linalg.norm(m - m.T) > 1e-12 * scale:
        raise ShapeError("matrix is not symmetric")
    return np.linalg.eigh(0.5 * (m + m.T))


def eigendecompose(m, zero_tolerance: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Symmetric eigendecomposition with ascending eigenvalues.

    Eigenvalues with magnitude below ``zero_tolerance`` (default: ``1e-8`` of
    the largest) are returned as exact zeros, and each eigenvector is signed
    so its largest-magnitude entry is positive.
    """
    vals, vecs = _raw_eigh(m)
    if zero_tolerance is None:
        zero_tolerance = relative_zero_tolerance(vals)
    vals = np.where(np.abs(vals) < zero_tolerance, 0.0, vals)
    return vals, _fix_signs(vecs)


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """Eigenbasis of ``L1`` split into irrotational, solenoidal and harmonic columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    labels: np.ndarray
    zero_tolerance: float

    def mask(self, label: str) -> np.ndarray:
        return self.labels == label

    def columns(self, label: str) -> np.ndarray:
        return self.eigenvectors[:, self.labels == label]

    @property
    def irrotational(self) -> np.ndarray:
        return self.columns(IRROTATIONAL)

    @property
    def solenoidal(self) -> np.ndarray:
        return self.columns(SOLENOIDAL)

    @property
    def harmonic(self) -> np.ndarray:
        return self.columns(HARMONIC)

    @property
    def lower_eigenvalues(self) -> np.ndarray:
        """Eigenvalue of ``L1_low`` carried by each column (0 unless irrotational)."""
        return np.where(self.labels == IRROTATIONAL, self.eigenvalues, 0.0)

    @property
    def upper_eigenvalues(self) -> np.ndarray:
        return np.where(self.labels == SOLENOIDAL, self.eigenvalues, 0.0)

    def counts(self) -> dict[str, int]:
        return {lab: int(np.sum(self.labels == lab)) for lab in (IRROTATIONAL, SOLENOIDAL, HARMONIC)}


def _nonzero_part(vals, vecs, tol: float) -> tuple[np.ndarray, np.ndarray]:
    keep = vals >= tol
    return vals[keep], _fix_signs(vecs[:, keep])


def _complement_basis(q: np.ndarray, n: int) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of span(q) in R^n."""
    if q.shape[1] == 0:
        return np.eye(n)
    k = n - q.shape[1]
    if k <= 0:
        return np.zeros((n, 0))
    proj = np.eye(n) - q @ q.T
    vals, vecs = np.linalg.eigh(0.5 * (proj + proj.T))
    return vecs[:, -k:]


def partition_basis(lap: LaplacianSet, zero_tolerance: float | None = None) -> SpectralBasis:
    """Eigenbasis of ``L1`` whose every column is purely one Hodge label.

    ``L1_low`` and ``L1_up`` are decomposed separately; the harmonic columns
    span what is left over.  Columns are merged in ascending eigenvalue order.
    """
    E = lap.l1.shape[0]
    low = _raw_eigh(lap.l1_low)
    up = _raw_eigh(lap.l1_up)
    if zero_tolerance is None:
        zero_tolerance = relative_zero_tolerance(np.concatenate([low[0], up[0]]))
    lam_irr, u_irr = _nonzero_part(*low, zero_tolerance)
    lam_sol, u_sol = _nonzero_part(*up, zero_tolerance)
    u_harm = _fix_signs(_complement_basis(np.hstack([u_irr, u_sol]), E))

    vals = np.concatenate([lam_irr, lam_sol, np.zeros(u_harm.shape[1])])
    vecs = np.hstack([u_irr, u_sol, u_harm])
    labels = np.array(
        [IRROTATIONAL] * len(lam_irr) + [SOLENOIDAL] * len(lam_sol) + [HARMONIC] * u_harm.shape[1]
    )
    ranks = np.array([_LABEL_RANK[lab] for lab in labels], dtype=int)
    order = np.lexsort((np.arange(len(vals)), ranks, vals))
    return SpectralBasis(
        eigenvalues=vals[order],
        eigenvectors=vecs[:, order],
        labels=labels[order],
        zero_tolerance=float(zero_tolerance),
    )


def spectral_basis(b1, b2, zero_tolerance: float | None = None) -> SpectralBasis:
    return partition_basis(build_laplacians(b1, b2), zero_tolerance)


def cft(basis: SpectralBasis, signal) -> np.ndarray:
    """Fourier coefficients ``U.T @ s`` (works column-wise on batches)."""
    signal = np.asarray(signal, dtype=float)
    if signal.shape[0] != basis.eigenvectors.shape[0]:
        raise ShapeError(f"signal has {signal.shape[0]} entries, basis has {basis.eigenvectors.shape[0]}")
    return basis.eigenvectors.T @ signal


def inverse_cft(basis: SpectralBasis, coefficients) -> np.ndarray:
    coefficients = np.asarray(coefficients, dtype=float)
    if coefficients.shape[0] != basis.eigenvectors.shape[1]:
        raise ShapeError("coefficient vector does not match the basis size")
    return basis.eigenvectors @ coefficients


@dataclass(frozen=True, eq=False)
class HodgeComponents:
    irrotational: np.ndarray
    solenoidal: np.ndarray
    harmonic: np.ndarray


def range_basis(m, rtol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis of the column space of ``m`` (SVD with relative cutoff)."""
    m = _dense(m).astype(float)
    if m.size == 0 or m.shape[1] == 0:
        return np.zeros((m.shape[0], 0))
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return np.zeros((m.shape[0], 0))
    return u[:, s > rtol * s[0]]


def hodge_decompose(b1, b2, signal) -> HodgeComponents:
    """Orthogonal projections of ``signal`` onto img(B1.T), img(B2) and the remainder."""
    if not validate_chain_property(b1, b2):
        raise ChainPropertyError("B1 @ B2 != 0; incidence matrices are inconsistent")
    signal = np.asarray(signal, dtype=float)
    if signal.shape[0] != b1.shape[1]:
        raise ShapeError(f"signal has {signal.shape[0]} entries, complex has {b1.shape[1]} edges")
    q_irr = range_basis(_dense(b1).T)
    q_sol = range_basis(b2)
    irr = q_irr @ (q_irr.T @ signal)
    sol = q_sol @ (q_sol.T @ signal)
    return HodgeComponents(irrotational=irr, solenoidal=sol, harmonic=signal - irr - sol)


# -- CSV matrix dump -----------------------------------------------------------


def format_matrix_csv(m) -> str:
    m = np.atleast_2d(_dense(m))
    lines = [f"{m.shape[0]},{m.shape[1]}"]
    lines += [",".join(format(float(x), ".17g") for x in row) for row in m]
    return "\n".join(lines) + "\n"


def parse_matrix_csv(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    rows, cols = (int(x) for x in lines[0].split(","))
    data = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]], dtype=float)
    if rows == 0 or cols == 0:
        return np.zeros((rows, cols))
    if data.shape != (rows, cols):
        raise ShapeError(f"header says {rows}x{cols}, body is {data.shape}")
    return data


def write_matrix_csv(m, path) -> None:
    Path(path).write_text(format_matrix_csv(m))


def read_matrix_csv(path) -> np.ndarray:
    return parse_matrix_csv(Path(path).read_text())
