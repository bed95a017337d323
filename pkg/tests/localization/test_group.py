"""Tests for index groups and localization maps."""

import numpy as np
import pytest

from src.frame_thinning.frames import Frame
from src.frame_thinning.localization import IndexGroup, LocalizationError, LocalizationMap


class TestIndexGroup:
    def test_cyclic_norms(self):
        group = IndexGroup.cyclic(8)
        np.testing.assert_array_equal(group.norms, [0, 1, 2, 3, 4, 3, 2, 1])
        assert group.diameter == 4
        assert group.max_density_radius == 2

    def test_box_sizes_in_two_dimensions(self):
        group = IndexGroup.cyclic(8, rank=2)
        assert group.size == 64
        assert [group.box_size(r) for r in range(3)] == [1, 9, 25]

    def test_torsion_is_part_of_the_metric(self):
        group = IndexGroup((8,), torsion=2)
        assert group.shape == (8, 2)
        assert group.distance((0, 0), (0, 1)) == 1
        assert group.box_size(1) == 6

    def test_small_modulus_rejected(self):
        with pytest.raises(LocalizationError, match=">= 4"):
            IndexGroup.cyclic(3)

    def test_index_wraps(self):
        group = IndexGroup.cyclic(8, rank=2)
        assert group.index_of((9, -1)) == group.index_of((1, 7))
        assert group.element_at(group.index_of((2, 5))) == (2, 5)

    def test_wrong_arity_rejected(self):
        with pytest.raises(LocalizationError, match="does not belong"):
            IndexGroup.cyclic(8, rank=2).index_of((1,))

    def test_distance_is_symmetric_and_wrapped(self):
        group = IndexGroup.cyclic(10)
        assert group.distance((1,), (9,)) == 2
        assert group.distance((9,), (1,)) == 2

    def test_box_is_translate_of_box_at_origin(self):
        group = IndexGroup.cyclic(12)
        assert list(group.box((11,), 1)) == [0, 10, 11]
        assert group.box((5,), 2).size == group.box_size(2)

    def test_box_sums_match_explicit_boxes(self, rng):
        group = IndexGroup.cyclic(6, rank=2)
        weights = rng.random(group.size)
        sums = group.box_sums(weights, 1)
        for center in (0, 7, 35):
            assert sums[center] == pytest.approx(weights[group.box(center, 1)].sum())

    def test_lattice(self):
        group = IndexGroup.cyclic(8, rank=2)
        points = group.lattice(2)
        assert points.size == 16
        assert all(all(c % 2 == 0 for c in group.element_at(i)) for i in points)
        with pytest.raises(LocalizationError, match="does not divide"):
            group.lattice(3)

    def test_cells_partition_into_half_open_boxes(self):
        group = IndexGroup.cyclic(8)
        cells = group.cell_of(4)
        np.testing.assert_array_equal(cells, [0, 0, 4, 4, 4, 4, 0, 0])
        assert set(cells) == set(group.lattice(4))

    def test_cells_in_two_dimensions_have_equal_size(self):
        group = IndexGroup.cyclic(8, rank=2)
        _, counts = np.unique(group.cell_of(4), return_counts=True)
        assert counts.tolist() == [16, 16, 16, 16]


class TestLocalizationMap:
    def test_identity(self):
        group = IndexGroup.cyclic(5)
        amap = LocalizationMap.identity(group)
        assert amap.labels == group.elements
        np.testing.assert_array_equal(amap.fiber_counts(), np.ones(5))

    def test_from_function(self):
        group = IndexGroup.cyclic(4)
        amap = LocalizationMap.from_function(range(8), group, lambda i: (i // 2,))
        np.testing.assert_array_equal(amap.fiber_counts(), [2, 2, 2, 2])
        np.testing.assert_array_equal(amap.fiber_counts([0, 1, 2]), [2, 1, 0, 0])

    def test_assignment_shape_checked(self):
        with pytest.raises(LocalizationError, match="shape"):
            LocalizationMap((0, 1), IndexGroup.cyclic(4), np.array([0]))

    def test_out_of_group_assignment_rejected(self):
        with pytest.raises(LocalizationError, match="outside"):
            LocalizationMap((0,), IndexGroup.cyclic(4), np.array([4]))

    def test_unknown_label(self):
        amap = LocalizationMap.identity(IndexGroup.cyclic(4))
        with pytest.raises(LocalizationError, match="not in the map"):
            amap.assignment_for(["x"])

    def test_check_frame(self):
        amap = LocalizationMap.identity(IndexGroup.cyclic(4))
        amap.check_frame(Frame(np.eye(4), ((0,), (1,), (2,), (3,))))
        with pytest.raises(LocalizationError, match="do not match"):
            amap.check_frame(Frame(np.eye(4)))
