"""Signal processing over cell complexes: operators, Hodge/Fourier analysis,
2-cell inference, sparse coding and sampling, and FIR filtering of edge flows."""

__version__ = "0.1.0"

from .complex import CellComplex, build_b1, build_b2, read_complex, write_complex  # noqa: E402
from .cycles import CandidateCellSet, enumerate_candidates  # noqa: E402
from .filters import SpectralMask, apply_filter, design_joint, design_separate  # noqa: E402
from .inference import InferenceResult, infer_b2, select_q_star  # noqa: E402
from .spectral import build_laplacians, cft, hodge_decompose, inverse_cft, partition_basis  # noqa: E402

__all__ = [
    "CellComplex",
    "CandidateCellSet",
    "InferenceResult",
    "SpectralMask",
    "apply_filter",
    "build_b1",
    "build_b2",
    "build_laplacians",
    "cft",
    "design_joint",
    "design_separate",
    "enumerate_candidates",
    "hodge_decompose",
    "infer_b2",
    "inverse_cft",
    "partition_basis",
    "read_complex",
    "select_q_star",
    "write_complex",
]
