"""Enumeration of chordless cycles, the candidate 2-cells for inference."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .complex import CellComplex, Polygon, boundary_matrix, polygon_sort_key
from .errors import CandidateLimitError

DEFAULT_MAX_SIDES = 6
DEFAULT_MAX_CANDIDATES = 100_000


@dataclass(frozen=True, eq=False)
class CandidateCellSet:
    cycles: tuple[Polygon, ...]
    max_sides: int
    columns: sp.csc_array
    complex: CellComplex

    def __len__(self) -> int:
        return len(self.cycles)

    def dense_columns(self) -> np.ndarray:
        return self.columns.toarray().astype(float)

    def sides(self) -> np.ndarray:
        return np.array([len(c) for c in self.cycles], dtype=int)


def adjacency_sets(complex: CellComplex) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(complex.vertex_count)]
    for u, v in complex.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def chordless_cycles(
    adj: list[set[int]], max_sides: int, max_candidates: int = DEFAULT_MAX_CANDIDATES
) -> list[Polygon]:
    """All induced cycles with 3..max_sides vertices, in canonical orientation.

    Paths grow from a start vertex ``s`` through vertices larger than ``s``.
    A vertex adjacent to ``s`` closes the path (any longer path through it
    would carry the chord back to ``s``); a vertex adjacent to an interior
    path vertex is rejected.  Requiring ``path[1] < path[-1]`` at closure
    keeps one of the two traversal directions.
    """
    found: list[Polygon] = []

    for s in range(len(adj)):
        stack = [(s, v) for v in sorted(adj[s], reverse=True) if v > s]
        while stack:
            path = stack.pop()
            last = path[-1]
            blocked = set()
            for w in path[1:-1]:
                blocked |= adj[w]
            for w in sorted(adj[last], reverse=True):
                if w <= s or w in path or w in blocked:
                    continue
                if s in adj[w]:
                    if path[1] < w:
                        found.append(path + (w,))
                        if len(found) > max_candidates:
                            raise CandidateLimitError(
                                f"more than {max_candidates} candidate cells; lower max_sides "
                                "or raise the candidate limit"
                            )
                elif len(path) + 1 < max_sides:
                    stack.append(path + (w,))
    found.sort(key=polygon_sort_key)
    return found


def enumerate_candidates(
    complex: CellComplex,
    max_sides: int = DEFAULT_MAX_SIDES,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> CandidateCellSet:
    """Chordless cycles of the 1-skeleton with at most ``max_sides`` sides."""
    if max_sides < 3:
        raise ValueError(f"max_sides must be at least 3, got {max_sides}")
    cycles = tuple(chordless_cycles(adjacency_sets(complex), max_sides, max_candidates))
    return CandidateCellSet(
        cycles=cycles,
        max_sides=max_sides,
        columns=boundary_matrix(cycles, complex),
        complex=complex,
    )
