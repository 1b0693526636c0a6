import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given
from hypothesis import strategies as st

from cellsp.complex import (
    CellComplex,
    build_b1,
    build_b2,
    canonical_polygon,
    format_complex,
    parse_complex,
    read_complex,
    validate_chain_property,
    write_complex,
)
from cellsp.errors import ComplexValidationError, ShapeError

from .strategies import complexes


def dense(m):
    return m.toarray()


class TestB1:
    def test_single_edge(self):
        b1 = build_b1(CellComplex(2, ((0, 1),)))
        np.testing.assert_array_equal(dense(b1), [[-1], [1]])

    def test_triangle(self, triangle):
        np.testing.assert_array_equal(dense(build_b1(triangle)), [[-1, -1, 0], [1, 0, -1], [0, 1, 1]])

    def test_path(self, path3):
        np.testing.assert_array_equal(dense(build_b1(path3)), [[-1, 0], [1, -1], [0, 1]])

    def test_integer_sparse(self, triangle):
        b1 = build_b1(triangle)
        assert sp.issparse(b1)
        assert np.issubdtype(b1.dtype, np.integer)

    def test_edges_canonicalized(self):
        c = CellComplex(3, ((1, 0), (2, 1)))
        assert c.edges == ((0, 1), (1, 2))

    @pytest.mark.parametrize(
        "edges, polygons",
        [
            (((0, 0),), ()),
            (((0, 1), (1, 0)), ()),
            (((0, 5),), ()),
            (((0, 1), (1, 2)), ((0, 1, 2),)),
            (((0, 1), (1, 2), (0, 2)), ((0, 1),)),
        ],
    )
    def test_invalid_complex(self, edges, polygons):
        with pytest.raises(ComplexValidationError):
            CellComplex(3, edges, polygons)

    def test_missing_side_named(self):
        with pytest.raises(ComplexValidationError, match=r"\(0, 2\)"):
            CellComplex(3, ((0, 1), (1, 2)), ((0, 1, 2),))

    def test_duplicate_polygon_under_reflection(self):
        with pytest.raises(ComplexValidationError):
            CellComplex(3, ((0, 1), (0, 2), (1, 2)), ((0, 1, 2), (2, 1, 0)))


class TestB2:
    def test_triangle(self, triangle):
        np.testing.assert_array_equal(dense(build_b2(triangle)), [[1], [-1], [1]])

    def test_no_polygons(self, path3):
        assert build_b2(path3).shape == (2, 0)

    def test_square(self, square):
        np.testing.assert_array_equal(dense(build_b2(square)), [[1], [1], [1], [-1]])

    def test_block_order_by_sides(self):
        # a square with a triangle glued on edge (0, 1) via apex 4
        c = CellComplex(
            5,
            ((0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4)),
            ((0, 1, 2, 3), (0, 1, 4)),
        )
        assert c.polygons == ((0, 1, 4), (0, 1, 2, 3))
        assert list(np.abs(dense(build_b2(c))).sum(axis=0)) == [3, 4]


class TestCanonicalPolygon:
    def test_rotation_and_reflection(self):
        assert canonical_polygon((2, 3, 0, 1)) == (0, 1, 2, 3)
        assert canonical_polygon((3, 2, 1, 0)) == (0, 1, 2, 3)
        assert canonical_polygon((0, 3, 2, 1)) == (0, 1, 2, 3)

    @given(st.lists(st.integers(0, 50), min_size=3, max_size=8, unique=True), st.integers(0, 7), st.booleans())
    def test_idempotent_and_orbit_invariant(self, cycle, shift, flip):
        canon = canonical_polygon(cycle)
        assert canonical_polygon(canon) == canon
        k = shift % len(cycle)
        moved = cycle[k:] + cycle[:k]
        if flip:
            moved = moved[::-1]
        assert canonical_polygon(moved) == canon
        assert canon[0] == min(cycle)
        assert canon[1] < canon[-1]


class TestChainProperty:
    def test_triangle(self, triangle):
        assert validate_chain_property(build_b1(triangle), build_b2(triangle))

    def test_empty(self, path3):
        assert validate_chain_property(build_b1(path3), build_b2(path3))

    def test_flipped_sign(self, triangle):
        b2 = dense(build_b2(triangle))
        b2[0, 0] *= -1
        b1 = build_b1(triangle)
        assert not validate_chain_property(b1, sp.csc_array(b2))
        assert np.max(np.abs(dense(b1) @ b2)) == 2

    def test_shape_mismatch(self, triangle):
        with pytest.raises(ShapeError):
            validate_chain_property(build_b1(triangle), sp.csc_array(np.zeros((4, 1), dtype=int)))

    @given(complexes())
    def test_random_complexes(self, c):
        b1, b2 = build_b1(c), build_b2(c)
        assert validate_chain_property(b1, b2)
        d1, d2 = dense(b1), dense(b2)
        np.testing.assert_array_equal(d1.sum(axis=0), 0)
        np.testing.assert_array_equal(np.count_nonzero(d1, axis=0), 2)
        np.testing.assert_array_equal(np.count_nonzero(d2, axis=0), [len(p) for p in c.polygons])


class TestTextFormat:
    def test_round_trip(self, square, tmp_path):
        path = tmp_path / "c.txt"
        write_complex(square, path)
        assert read_complex(path) == square
        assert path.read_text().startswith("cellcomplex v1\n")

    def test_parse_canonicalizes_and_skips_comments(self):
        text = "# demo\ncellcomplex v1\nvertices 3\nedge 1 0  # reversed\nedge 2 1\nedge 0 2\npolygon 2 1 0\n"
        c = parse_complex(text)
        assert c.edges == ((0, 1), (1, 2), (0, 2))
        assert c.polygons == ((0, 1, 2),)
        assert parse_complex(format_complex(c)) == c

    @pytest.mark.parametrize(
        "text",
        ["vertices 3\n", "cellcomplex v1\nedge 0 1\n", "cellcomplex v1\nvertices 2\nedge 0 x\n", "cellcomplex v1\nvertices 2\nface 0 1\n"],
    )
    def test_bad_files(self, text):
        with pytest.raises(ComplexValidationError):
            parse_complex(text)

    @given(complexes(max_vertices=10))
    def test_round_trip_random(self, c):
        assert parse_complex(format_complex(c)) == c
