"""Synthetic cell complexes and edge-signal batches."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components, minimum_spanning_tree
from scipy.spatial import Delaunay

from .complex import CellComplex, boundary_matrix, build_b1, build_b2
from .cycles import DEFAULT_MAX_CANDIDATES, DEFAULT_MAX_SIDES, enumerate_candidates
from .errors import GenerationError
from .spectral import SpectralBasis, spectral_basis

GENERATORS = ("mesh", "er", "complete", "cycle")
PLANT_ATTEMPTS = 20
SKELETON_ATTEMPTS = 10
SPAN_TOL = 1e-8


@dataclass(frozen=True)
class ComplexSpec:
    """How to draw a random complex.

    ``edges`` is the target edge count (``None``: ``2 * vertices`` for meshes,
    ``edge_prob`` for Erdos-Renyi).  ``planted`` polygons are drawn from the
    chordless cycles with at most ``max_sides`` sides.  With ``identifiable``
    the planted boundaries never span another candidate cycle, which is what
    makes the planted set recoverable from flow data.
    """

    generator: str = "mesh"
    vertices: int = 30
    edges: int | None = None
    edge_prob: float = 0.1
    planted: int = 0
    max_sides: int = DEFAULT_MAX_SIDES
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    identifiable: bool = True


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _mesh_edges(n: int, target: int | None, rng: np.random.Generator) -> list[tuple[int, int]]:
    if n < 3:
        raise GenerationError("a mesh needs at least 3 vertices")
    pts = rng.random((n, 2))
    tri = Delaunay(pts)
    edges = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            edges.add((min(u, v), max(u, v)))
    edges = sorted((int(u), int(v)) for u, v in edges)
    if target is None:
        target = 2 * n
    target = min(target, len(edges))
    if target < n - 1:
        raise GenerationError(f"{target} edges cannot connect {n} vertices")
    # random spanning tree first, then random extra edges on top of it
    weights = rng.random(len(edges)) + 1e-3
    rows, cols = zip(*edges)
    g = sp.csr_matrix((weights, (rows, cols)), shape=(n, n))
    tree = minimum_spanning_tree(g).tocoo()
    tree_edges = {(min(u, v), max(u, v)) for u, v in zip(tree.row.tolist(), tree.col.tolist())}
    rest = [e for e in edges if e not in tree_edges]
    extra = rng.permutation(len(rest))[: target - len(tree_edges)]
    return sorted(tree_edges | {rest[i] for i in extra})


def _er_edges(n: int, target: int | None, p: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if target is None:
        keep = np.flatnonzero(rng.random(len(pairs)) < p)
    else:
        # exactly `target` uniform pairs (G(n, m)); bridges below may add a few
        keep = rng.choice(len(pairs), size=min(target, len(pairs)), replace=False)
    edges = {pairs[i] for i in keep}
    # join components with random bridges until connected
    while True:
        if edges:
            r, c = zip(*edges)
            adj = sp.coo_array((np.ones(len(edges)), (r, c)), shape=(n, n))
        else:
            adj = sp.coo_array((n, n))
        k, comp = connected_components(adj, directed=False)
        if k == 1:
            break
        a = int(rng.choice(np.flatnonzero(comp == 0)))
        b = int(rng.choice(np.flatnonzero(comp == comp[comp != 0][0])))
        edges.add((min(a, b), max(a, b)))
    return sorted(edges)


def graph_edges(spec: ComplexSpec, rng: np.random.Generator) -> list[tuple[int, int]]:
    n = spec.vertices
    if spec.generator == "mesh":
        return _mesh_edges(n, spec.edges, rng)
    if spec.generator == "er":
        return _er_edges(n, spec.edges, spec.edge_prob, rng)
    if spec.generator == "complete":
        return [(u, v) for u in range(n) for v in range(u + 1, n)]
    if spec.generator == "cycle":
        if n < 3:
            raise GenerationError("a cycle graph needs at least 3 vertices")
        return [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    raise GenerationError(f"unknown generator {spec.generator!r}; choose from {GENERATORS}")


def plant_polygons(skeleton: CellComplex, spec: ComplexSpec, rng: np.random.Generator) -> list[tuple[int, ...]]:
    if spec.planted == 0:
        return []
    cands = enumerate_candidates(skeleton, spec.max_sides, spec.max_candidates)
    n_c = len(cands)
    if spec.planted > n_c:
        raise GenerationError(f"cannot plant {spec.planted} polygons: only {n_c} candidate cycles")
    if not spec.identifiable or spec.planted == n_c:
        # planting every candidate leaves nothing to confuse it with
        pick = np.sort(rng.choice(n_c, size=spec.planted, replace=False))
        return [cands.cycles[i] for i in pick]
    # scan candidates in random order, keeping a cell only if no unchosen
    # candidate falls into the span of the chosen boundaries; residuals of all
    # columns against that span are updated by one Gram-Schmidt step per cell
    columns = cands.dense_columns()
    best: list[int] = []
    for _ in range(PLANT_ATTEMPTS):
        resid = columns.copy()
        free = np.ones(n_c, dtype=bool)
        chosen: list[int] = []
        for i in rng.permutation(n_c):
            norm = np.linalg.norm(resid[:, i])
            if norm < SPAN_TOL:
                continue
            q = resid[:, i] / norm
            trial = resid - np.outer(q, q @ resid)
            free[i] = False
            if np.all(np.linalg.norm(trial[:, free], axis=0) >= SPAN_TOL):
                resid = trial
                chosen.append(int(i))
                if len(chosen) == spec.planted:
                    return [cands.cycles[j] for j in sorted(chosen)]
            else:
                free[i] = True
        best = max(best, chosen, key=len)
    raise GenerationError(
        f"could only plant {len(best)} of {spec.planted} identifiable polygons"
    )


def generate_complex(spec: ComplexSpec, seed) -> CellComplex:
    """Random connected graph plus planted polygons, deterministic in ``seed``.

    Random generators redraw the graph (up to ``SKELETON_ATTEMPTS`` times)
    when the requested planted set does not fit the first one.
    """
    rng = _rng(seed)
    attempts = SKELETON_ATTEMPTS if spec.generator in ("mesh", "er") else 1
    for attempt in range(attempts):
        skeleton = CellComplex(spec.vertices, tuple(graph_edges(spec, rng)))
        try:
            return skeleton.with_polygons(plant_polygons(skeleton, spec, rng))
        except GenerationError:
            if attempt == attempts - 1:
                raise
    raise AssertionError("unreachable")


def generate_signal_components(
    complex: CellComplex,
    count: int,
    seed,
    b_irr: int = 0,
    b_sol: int = 0,
    b_harm: int | None = 0,
    noise_var: float = 0.0,
    basis: SpectralBasis | None = None,
) -> dict[str, np.ndarray]:
    """Bandlimited irrotational, solenoidal and harmonic parts plus white noise.

    Each part combines the lowest-frequency ``b_*`` columns of its subspace
    with standard normal weights; ``b_harm=None`` uses the whole harmonic
    space.  Returns E x count arrays keyed ``irrotational``, ``solenoidal``,
    ``harmonic``, ``noise``.
    """
    if noise_var < 0:
        raise ValueError("noise variance must be nonnegative")
    rng = _rng(seed)
    if basis is None:
        basis = spectral_basis(build_b1(complex), build_b2(complex))
    parts = {}
    for name, u, b in (
        ("irrotational", basis.irrotational, b_irr),
        ("solenoidal", basis.solenoidal, b_sol),
        ("harmonic", basis.harmonic, b_harm),
    ):
        b = u.shape[1] if b is None else int(b)
        if b < 0 or b > u.shape[1]:
            raise ValueError(f"{name} bandwidth {b} exceeds the subspace dimension {u.shape[1]}")
        parts[name] = u[:, :b] @ rng.standard_normal((b, count))
    E = complex.num_edges
    parts["noise"] = np.sqrt(noise_var) * rng.standard_normal((E, count)) if noise_var > 0 else np.zeros((E, count))
    return parts


def generate_signals(complex: CellComplex, count: int, seed, **bands) -> np.ndarray:
    """E x count batch: sum of :func:`generate_signal_components`."""
    parts = generate_signal_components(complex, count, seed, **bands)
    return parts["irrotational"] + parts["solenoidal"] + parts["harmonic"] + parts["noise"]


def planted_columns(complex: CellComplex) -> np.ndarray:
    return boundary_matrix(complex.polygons, complex).toarray().astype(float)
