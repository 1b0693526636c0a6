"""Cell complexes of order two and their signed incidence matrices.

Orientation conventions are fixed so that matrices are reproducible:

* an edge ``(u, v)`` is always stored with ``u < v`` and points from ``u`` to ``v``;
* a polygon is stored starting at its smallest vertex and walks toward the
  smaller of that vertex's two cycle neighbours.

Polygons are kept sorted by side count, then lexicographically, which is also
the column order of ``B2`` (triangles first, then quadrilaterals, ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import ComplexValidationError, ShapeError

Edge = tuple[int, int]
Polygon = tuple[int, ...]

FORMAT_HEADER = "cellcomplex v1"


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def canonical_polygon(cycle: Sequence[int]) -> Polygon:
    """Rotate/reflect a vertex cycle into canonical orientation."""
    cycle = [int(v) for v in cycle]
    n = len(cycle)
    if n == 0:
        return ()
    i = min(range(n), key=cycle.__getitem__)
    rotated = cycle[i:] + cycle[:i]
    if n > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)


def polygon_sort_key(polygon: Polygon) -> tuple[int, Polygon]:
    return (len(polygon), polygon)


def polygon_sides(polygon: Polygon) -> list[Edge]:
    """Directed sides of a polygon in traversal order."""
    n = len(polygon)
    return [(polygon[i], polygon[(i + 1) % n]) for i in range(n)]


@dataclass(frozen=True)
class CellComplex:
    """Vertices ``0..vertex_count-1``, oriented edges and oriented polygons.

    The constructor canonicalizes edge and polygon orientation and sorts the
    polygons; every other invariant violation raises
    :class:`ComplexValidationError`.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    polygons: tuple[Polygon, ...] = ()
    _edge_index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        edges = tuple(canonical_edge(int(u), int(v)) for u, v in self.edges)
        polygons = tuple(
            sorted({canonical_polygon(p) for p in self.polygons}, key=polygon_sort_key)
        )
        if len(polygons) != len(self.polygons):
            raise ComplexValidationError("duplicate polygon (up to rotation/reflection)")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "polygons", polygons)
        object.__setattr__(self, "_edge_index", {e: j for j, e in enumerate(edges)})
        self.validate()

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_polygons(self) -> int:
        return len(self.polygons)

    def edge_index(self, u: int, v: int) -> int:
        """Column of edge ``{u, v}`` in ``B1`` (raises ``KeyError`` if absent)."""
        return self._edge_index[canonical_edge(u, v)]

    def validate(self) -> None:
        if self.vertex_count < 1:
            raise ComplexValidationError(f"vertex_count must be positive, got {self.vertex_count}")
        if len(self._edge_index) != len(self.edges):
            seen = set()
            for e in self.edges:
                if e in seen:
                    raise ComplexValidationError(f"duplicate edge {e}")
                seen.add(e)
        for u, v in self.edges:
            if u == v:
                raise ComplexValidationError(f"self-loop edge ({u}, {v})")
            if u < 0 or v >= self.vertex_count:
                raise ComplexValidationError(
                    f"edge ({u}, {v}) references a vertex outside 0..{self.vertex_count - 1}"
                )
        for poly in self.polygons:
            if len(poly) < 3:
                raise ComplexValidationError(f"polygon {poly} has fewer than 3 sides")
            if len(set(poly)) != len(poly):
                raise ComplexValidationError(f"polygon {poly} repeats a vertex")
            for a, b in polygon_sides(poly):
                if canonical_edge(a, b) not in self._edge_index:
                    raise ComplexValidationError(
                        f"polygon {poly} uses side {canonical_edge(a, b)} missing from the edge list"
                    )

    def with_polygons(self, polygons: Iterable[Sequence[int]]) -> "CellComplex":
        """Same 1-skeleton, different 2-cells."""
        return CellComplex(self.vertex_count, self.edges, tuple(tuple(p) for p in polygons))

    def skeleton(self) -> "CellComplex":
        return CellComplex(self.vertex_count, self.edges, ())


def build_b1(complex: CellComplex) -> sp.csc_array:
    """V x E vertex-edge incidence: -1 at the tail, +1 at the head."""
    complex.validate()
    E = complex.num_edges
    rows = np.array([x for e in complex.edges for x in e], dtype=np.int64)
    cols = np.repeat(np.arange(E, dtype=np.int64), 2)
    vals = np.tile(np.array([-1, 1], dtype=np.int64), E)
    return sp.csc_array((vals, (rows, cols)), shape=(complex.vertex_count, E))


def polygon_column(polygon: Polygon, complex: CellComplex) -> dict[int, int]:
    """Sparse signed boundary of one polygon as ``{edge_index: sign}``."""
    col = {}
    for a, b in polygon_sides(polygon):
        try:
            j = complex.edge_index(a, b)
        except KeyError:
            raise ComplexValidationError(
                f"polygon {polygon} uses side {canonical_edge(a, b)} missing from the edge list"
            ) from None
        col[j] = 1 if a < b else -1
    return col


def boundary_matrix(polygons: Sequence[Polygon], complex: CellComplex) -> sp.csc_array:
    """E x len(polygons) signed incidence, columns in the given order."""
    rows, cols, vals = [], [], []
    for p, poly in enumerate(polygons):
        for j, s in polygon_column(poly, complex).items():
            rows.append(j)
            cols.append(p)
            vals.append(s)
    return sp.csc_array(
        (np.array(vals, dtype=np.int64), (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64))),
        shape=(complex.num_edges, len(polygons)),
    )


def build_b2(complex: CellComplex) -> sp.csc_array:
    """E x P edge-polygon incidence, columns ordered by side count then lexicographically."""
    complex.validate()
    return boundary_matrix(complex.polygons, complex)


def validate_chain_property(b1, b2) -> bool:
    """True iff ``b1 @ b2`` is exactly zero (integer arithmetic)."""
    if b1.shape[1] != b2.shape[0]:
        raise ShapeError(f"cannot multiply B1 {b1.shape} by B2 {b2.shape}")
    b1 = sp.csr_array(b1).astype(np.int64)
    b2 = sp.csc_array(b2).astype(np.int64)
    prod = (b1 @ b2).tocoo()
    return not np.any(prod.data)


# -- text format -------------------------------------------------------------


def parse_complex(text: str) -> CellComplex:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0] != FORMAT_HEADER:
        raise ComplexValidationError(f"expected header line {FORMAT_HEADER!r}")
    vertex_count = None
    edges, polygons = [], []
    for line in lines[1:]:
        key, *rest = line.split()
        try:
            nums = [int(x) for x in rest]
        except ValueError:
            raise ComplexValidationError(f"non-integer field in line {line!r}") from None
        if key == "vertices" and len(nums) == 1:
            vertex_count = nums[0]
        elif key == "edge" and len(nums) == 2:
            edges.append(tuple(nums))
        elif key == "polygon":
            polygons.append(tuple(nums))
        else:
            raise ComplexValidationError(f"unrecognized line {line!r}")
    if vertex_count is None:
        raise ComplexValidationError("missing 'vertices' line")
    return CellComplex(vertex_count, tuple(edges), tuple(polygons))


def format_complex(complex: CellComplex) -> str:
    out = [FORMAT_HEADER, f"vertices {complex.vertex_count}"]
    out += [f"edge {u} {v}" for u, v in complex.edges]
    out += ["polygon " + " ".join(map(str, p)) for p in complex.polygons]
    return "\n".join(out) + "\n"


def read_complex(path) -> CellComplex:
    return parse_complex(Path(path).read_text())


def write_complex(complex: CellComplex, path) -> None:
    Path(path).write_text(format_complex(complex))
