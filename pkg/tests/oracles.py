"""Slow, obviously-correct reference computations used only by the tests."""

from __future__ import annotations

import itertools

import numpy as np


def brute_force_chordless_cycles(vertex_count: int, edges, max_sides: int) -> set[frozenset]:
    """Vertex sets inducing a single cycle, found by checking every subset.

    A subset of k >= 3 vertices induces a chordless cycle iff its induced
    subgraph is connected and every vertex has induced degree exactly 2.
    """
    adj = {v: set() for v in range(vertex_count)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    found = set()
    for k in range(3, max_sides + 1):
        for subset in itertools.combinations(range(vertex_count), k):
            s = set(subset)
            if any(len(adj[v] & s) != 2 for v in subset):
                continue
            seen, stack = {subset[0]}, [subset[0]]
            while stack:
                for w in adj[stack.pop()] & s:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if seen == s:
                found.add(frozenset(subset))
    return found


def exhaustive_min_subset(scores, q: int) -> tuple[float, tuple[int, ...]]:
    """Minimum of sum(scores[S]) over all |S| = q; the first minimizer in lexicographic order."""
    best, best_set = None, ()
    for subset in itertools.combinations(range(len(scores)), q):
        value = float(sum(scores[i] for i in subset))
        if best is None or value < best:
            best, best_set = value, subset
    return (0.0 if best is None else best), best_set


def projector(m: np.ndarray) -> np.ndarray:
    """Orthogonal projector onto the column space of ``m`` via the pseudo-inverse."""
    if m.shape[1] == 0:
        return np.zeros((m.shape[0], m.shape[0]))
    return m @ np.linalg.pinv(m)


def char_poly_roots(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a small symmetric matrix as roots of its characteristic polynomial."""
    return np.sort(np.real(np.roots(np.poly(m))))


def best_subset_logdet(u: np.ndarray, m: int) -> float:
    best = -np.inf
    for subset in itertools.combinations(range(u.shape[0]), m):
        sign, logdet = np.linalg.slogdet(u[list(subset)].T @ u[list(subset)])
        if sign > 0:
            best = max(best, logdet)
    return best
