"""Tests for finite Gabor systems, Beurling densities and Gabor thinning."""

import numpy as np
import pytest

from src.frame_thinning.cli.generators import gabor_system, make_window
from src.frame_thinning.frames import frame_bounds, frame_operator, is_parseval
from src.frame_thinning.gabor import (
    FiniteGaborSystem,
    GaborError,
    beurling_density,
    density_relation,
    envelope_w_norm,
    gabor_frame,
    gabor_map,
    gabor_reference,
    gabor_thin,
    gabor_union,
    label_position,
    lattice_group,
    molecule_check,
    reference_lattice,
    stft_envelope,
    window_m1_norm,
)
from src.frame_thinning.thinning import ThinningConfig


class TestFiniteGaborSystem:
    @pytest.mark.parametrize("kind", ["gaussian", "random", "impulse"])
    def test_full_grid_is_tight(self, kind):
        frame = gabor_frame(gabor_system(12, kind, seed=2))
        np.testing.assert_allclose(frame_operator(frame), 12 * np.eye(12), atol=1e-9)

    def test_lattice_labels(self):
        system = gabor_system(16, "gaussian", lattice=(2, 4))
        assert system.size == 8 * 4
        assert all(x % 2 == 0 and w % 4 == 0 for x, w in system.labels)

    def test_lattice_must_divide(self):
        with pytest.raises(GaborError, match="must divide"):
            FiniteGaborSystem.on_lattice(make_window(16, "gaussian", 0), 3, 2)

    def test_labels_wrap_and_must_be_distinct(self):
        window = make_window(8, "gaussian", 0)
        assert FiniteGaborSystem(8, window, ((9, -1),)).labels == ((1, 7),)
        with pytest.raises(GaborError, match="distinct"):
            FiniteGaborSystem(8, window, ((0, 0), (8, 0)))

    def test_impulse_translates_form_a_basis(self):
        system = FiniteGaborSystem.on_lattice(make_window(16, "impulse", 0), 1, 16)
        frame = gabor_frame(system)
        assert frame.size == 16
        assert is_parseval(frame)

    def test_union(self):
        full = gabor_system(8, "gaussian")
        sparse = gabor_system(8, "random", lattice=(2, 2), seed=1)
        union = gabor_union([full, sparse])
        assert union.size == 64 + 16
        assert union.labels[64] == (1, 0, 0)
        assert label_position(union.labels[65]) == (0, 2)

    def test_union_needs_common_length(self):
        with pytest.raises(GaborError, match="share L"):
            gabor_union([gabor_system(8), gabor_system(12)])

    def test_label_position_rejects_scalars(self):
        with pytest.raises(GaborError, match="no time-frequency position"):
            label_position(5)


class TestMolecules:
    def test_gabor_system_is_molecule_for_its_envelope(self):
        system = gabor_system(12, "random", lattice=(2, 3), seed=4)
        check = molecule_check(stft_envelope(system.window), gabor_frame(system))
        assert check.passed
        assert check.worst_violation <= 1e-9

    def test_shrunk_envelope_fails(self, gaussian_grid_16):
        envelope = 0.5 * stft_envelope(gaussian_grid_16.window)
        check = molecule_check(envelope, gabor_frame(gaussian_grid_16))
        assert not check.passed
        assert check.worst_violation > 0.0
        assert check.worst_label is not None

    def test_envelope_shape_checked(self, gaussian_grid_16):
        with pytest.raises(GaborError, match="16x16"):
            molecule_check(np.ones((4, 4)), gabor_frame(gaussian_grid_16))

    def test_norms(self):
        window = make_window(16, "gaussian", 0)
        assert window_m1_norm(window) == pytest.approx(envelope_w_norm(stft_envelope(window)))
        assert window_m1_norm(make_window(16, "random", 3)) > 0.0


class TestBeurlingDensity:
    def test_full_grid(self):
        points = [(x, w) for x in range(16) for w in range(16)]
        table = beurling_density(points, 16)
        assert [row.radius for row in table.rows] == [1, 2, 3, 4]
        for row in table.rows:
            n = row.radius
            assert row.upper == pytest.approx((2 * n + 1) ** 2 / (2 * n) ** 2)
            assert row.lower == row.upper
        assert table.upper == pytest.approx(81 / 64)

    def test_every_other_time_column(self):
        points = [(x, w) for x in range(0, 16, 2) for w in range(16)]
        table = beurling_density(points, 16)
        assert table.upper == pytest.approx(45 / 64)
        assert table.lower == pytest.approx(36 / 64)

    @pytest.mark.parametrize("radii", [[0], [5], []])
    def test_radii_checked(self, radii):
        with pytest.raises(GaborError, match="Radii"):
            beurling_density([(0, 0)], 16, radii)


class TestReferenceLattice:
    @pytest.mark.parametrize(
        ("length", "expected"), [(16, (2, 2)), (12, (2, 2)), (64, (4, 4)), (80, (5, 5))]
    )
    def test_steps(self, length, expected):
        assert reference_lattice(length) == expected

    def test_lattice_group(self):
        assert lattice_group(16, 2, 2).shape == (8, 8)

    def test_sparse_lattice_rejected(self):
        with pytest.raises(GaborError, match="not dense enough"):
            lattice_group(16, 4, 4)

    def test_reference_is_a_frame(self):
        reference = gabor_reference(16, 2, 2)
        assert reference.size == 64
        assert frame_bounds(reference).is_frame
        assert reference.labels == lattice_group(16, 2, 2).elements

    def test_map_floors_positions(self):
        amap = gabor_map([(3, 5), (0, 15)], 16, 2, 2)
        assert amap.group.element_at(int(amap.assignment[0])) == (1, 2)
        assert amap.group.element_at(int(amap.assignment[1])) == (0, 7)

    def test_density_relation_on_full_grid(self):
        points = [(x, w) for x in range(16) for w in range(16)]
        relation = density_relation(points, 16, 2, 2)
        assert relation.group_radius == 2
        assert relation.plane_radius == 4
        assert relation.group_density == pytest.approx(4.0)
        assert relation.scaled_beurling == pytest.approx(4 * 81 / 64)


class TestGaborThin:
    @pytest.mark.slow
    def test_gaussian_full_grid_practical(self, gaussian_grid_16):
        result = gabor_thin(gaussian_grid_16, ThinningConfig(eps=0.5, mode="practical"))
        assert result.extra["lattice"] == (2, 2)
        assert result.sizing.box_radius == 2
        assert result.sizing.truncation_radius >= 1
        assert result.passed, result.failures
        assert result.certified_bound > 0.0
        assert result.achieved_bound >= result.certified_bound - 1e-9
        assert result.max_box_ratio <= 1.5
        assert all(box.within_budget for box in result.boxes)
        assert all(box.budget == pytest.approx(37.5) for box in result.boxes)
        assert all(1 <= box.rank <= 16 for box in result.boxes)
        assert result.size < gaussian_grid_16.size
        assert result.extra["beurling"].upper < 81 / 64

    def test_impulse_basis_is_kept(self):
        system = FiniteGaborSystem.on_lattice(make_window(16, "impulse", 0), 1, 16)
        result = gabor_thin(system, ThinningConfig(eps=0.5, mode="practical"))
        assert result.selected == system.labels
        assert result.passed, result.failures
        assert result.achieved_bound == pytest.approx(1.0)
        assert result.extra["relation"].group_radius == 2
