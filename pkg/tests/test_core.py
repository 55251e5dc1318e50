import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from boxdim.core import (
    MAX_LEVELS,
    NormalizedDataset,
    RadiusSchedule,
    RawDataset,
    cell_index,
    cell_indices,
    normalize,
    parent_key,
    row_major_id,
)
from boxdim.errors import DomainError
from oracles import brute_cell

unit = st.floats(0.0, 1.0, allow_nan=False)


class TestNormalize:
    def test_min_max_1d(self):
        out = normalize(RawDataset([2.0, 4.0, 6.0]))
        assert out.points[:, 0].tolist() == [0.0, 0.5, 1.0]
        assert out.bounds == ((2.0, 6.0),)

    def test_degenerate_dimension_maps_to_zero(self):
        out = normalize(RawDataset([5.0, 5.0, 5.0]))
        assert out.points[:, 0].tolist() == [0.0, 0.0, 0.0]

    def test_pass_through_is_identity(self):
        pts = [(0.0, 0.0), (1.0, 1.0)]
        out = normalize(RawDataset(pts), mode="pass-through")
        assert out.points.tolist() == [[0.0, 0.0], [1.0, 1.0]]

    def test_pass_through_rejects_out_of_range(self):
        with pytest.raises(DomainError, match=r"point 1 .* dimension 1"):
            normalize(RawDataset([(0.2, 0.3), (0.5, 1.5)]), mode="pass-through")

    @pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
    def test_non_finite_rejected(self, bad):
        with pytest.raises(DomainError, match="non-finite"):
            RawDataset([(0.1, 0.2), (bad, 0.3)])

    def test_empty_rejected(self):
        with pytest.raises(DomainError, match="empty"):
            RawDataset(np.zeros((0, 2)))

    def test_unknown_mode(self):
        with pytest.raises(DomainError):
            normalize(RawDataset([1.0]), mode="zscore")

    @settings(max_examples=60, deadline=None)
    @given(arrays(np.float64, st.tuples(st.integers(1, 30), st.integers(1, 4)),
                  elements=st.floats(-1e6, 1e6, allow_nan=False)))
    def test_result_in_unit_cube_and_idempotent(self, pts):
        once = normalize(RawDataset(pts))
        assert once.points.min() >= 0.0 and once.points.max() <= 1.0
        assert once.n == pts.shape[0] and once.dim == pts.shape[1]
        twice = normalize(RawDataset(once.points))
        # Every dimension of `once` spans exactly [0, 1] or is constant 0.
        np.testing.assert_array_equal(twice.points, once.points)

    def test_normalized_dataset_is_read_only(self):
        d = NormalizedDataset([[0.5, 0.5]])
        with pytest.raises(ValueError):
            d.points[0, 0] = 0.1


class TestSchedule:
    def test_radii(self):
        s = RadiusSchedule(3)
        assert s.radii.tolist() == [0.5, 0.25, 0.125]
        assert list(s.js) == [1, 2, 3]

    @pytest.mark.parametrize("bad", [0, 1, MAX_LEVELS + 1, 2.5, True])
    def test_rejects_bad_level_counts(self, bad):
        with pytest.raises(DomainError):
            RadiusSchedule(bad)


class TestCellIndex:
    @pytest.mark.parametrize("point, level, key", [
        ((0.1, 0.6), 2, (0, 2)),
        ((1.0, 1.0), 3, (7, 7)),
        ((0.5,), 1, (1,)),
    ])
    def test_examples(self, point, level, key):
        assert cell_index(point, level) == key

    def test_rejects_outside_unit(self):
        with pytest.raises(ValueError):
            cell_index((1.2,), 2)

    @settings(max_examples=200)
    @given(st.lists(unit, min_size=1, max_size=5), st.integers(1, MAX_LEVELS))
    def test_in_range_and_matches_oracle(self, point, level):
        key = cell_index(point, level)
        assert all(0 <= i < 2 ** level for i in key)
        assert key == brute_cell(point, level)
        assert tuple(cell_indices(np.array([point]), level)[0]) == key


class TestParentKey:
    @pytest.mark.parametrize("key, parent", [((5, 3), (2, 1)), ((0, 0), (0, 0)), ((7, 6), (3, 3))])
    def test_examples(self, key, parent):
        assert parent_key(key, 3) == parent

    def test_level_one_has_no_parent(self):
        with pytest.raises(ValueError):
            parent_key((1, 0), 1)

    def test_exactly_two_to_the_e_children(self):
        for dim in (1, 2, 3):
            children = list(itertools.product(range(8), repeat=dim))
            groups = {}
            for key in children:
                groups.setdefault(parent_key(key, 3), []).append(key)
            assert all(len(v) == 2 ** dim for v in groups.values())

    def test_hierarchy_exhaustive_dyadic_grid(self):
        # Every point of the 1/128 lattice (cell corners, edges and centres
        # for all levels up to 6) in 2-D.
        ticks = np.arange(129) / 128.0
        pts = np.array(list(itertools.product(ticks, ticks)))
        for j in range(2, 7):
            fine = cell_indices(pts, j)
            coarse = cell_indices(pts, j - 1)
            np.testing.assert_array_equal(fine >> 1, coarse)
            for p in pts[::97]:
                assert parent_key(cell_index(p, j), j) == cell_index(p, j - 1)

    @settings(max_examples=300)
    @given(st.lists(unit, min_size=1, max_size=6), st.integers(2, MAX_LEVELS))
    def test_hierarchy_random(self, point, level):
        assert parent_key(cell_index(point, level), level) == cell_index(point, level - 1)


class TestRowMajorId:
    @pytest.mark.parametrize("key, level, expected", [
        ((1, 2), 2, 6), ((0, 0), 5, 0), ((0, 0, 0), 1, 0), ((5,), 3, 5),
    ])
    def test_examples(self, key, level, expected):
        assert row_major_id(key, level) == expected

    def test_overflow_is_a_domain_error(self):
        with pytest.raises(DomainError):
            row_major_id((0, 0, 0), 30)
        assert row_major_id((0, 0, 0), 21) == 0

    def test_bijection_small_grid(self):
        for dim, level in [(1, 4), (2, 3), (3, 2)]:
            ids = sorted(row_major_id(k, level)
                         for k in itertools.product(range(2 ** level), repeat=dim))
            assert ids == list(range(2 ** (dim * level)))

    @given(st.integers(1, 4), st.integers(1, 15), st.data())
    def test_injective(self, dim, level, data):
        idx = st.integers(0, 2 ** level - 1)
        a = tuple(data.draw(st.lists(idx, min_size=dim, max_size=dim)))
        b = tuple(data.draw(st.lists(idx, min_size=dim, max_size=dim)))
        assert (row_major_id(a, level) == row_major_id(b, level)) == (a == b)
