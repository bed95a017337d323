"""Tests for run configuration, sizing and per-box thinning."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.frame_thinning.cli.generators import localized_configuration, make_rng, random_matrix
from src.frame_thinning.frames import Frame
from src.frame_thinning.localization import IndexGroup, LocalizationMap, build_profile
from src.frame_thinning.removal import log_g_estimate
from src.frame_thinning.thinning import (
    BoxBranch,
    SizingError,
    ThinningConfig,
    ThinningMode,
    box_growth,
    c_eps_argument,
    choose_N,
    choose_R,
    log_c_eps,
    per_box_thin,
    practical_box_radius,
    resolve_sizing,
    tile_labels,
)


def basis_profile(modulus: int):
    group = IndexGroup.cyclic(modulus)
    basis = Frame(np.eye(modulus, dtype=complex), group.elements)
    return build_profile(basis, basis, LocalizationMap.identity(group))


class TestThinningConfig:
    def test_defaults(self):
        config = ThinningConfig(eps=0.5)
        assert config.mode is ThinningMode.STRICT
        assert config.truncation_radius is None
        assert config.box_radius is None

    def test_mode_from_string(self):
        assert ThinningConfig(eps=0.5, mode="practical").mode is ThinningMode.PRACTICAL

    @pytest.mark.parametrize(
        "kwargs",
        [{"eps": 0.0}, {"eps": -1.0}, {"eps": 0.5, "box_radius": 0}, {"eps": 0.5, "mode": "fast"}],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            ThinningConfig(**kwargs)

    def test_frozen(self):
        config = ThinningConfig(eps=0.5)
        with pytest.raises(ValidationError):
            config.eps = 0.1


class TestCEps:
    def test_argument(self):
        assert c_eps_argument(0.5, 1.0) == pytest.approx(0.25)
        assert c_eps_argument(0.5, 2.0) == pytest.approx(0.5 / 6)

    def test_log_matches_estimate(self):
        assert log_c_eps(0.5, 1.0) == pytest.approx(log_g_estimate(0.25))

    def test_argument_out_of_range(self):
        with pytest.raises(SizingError, match="C_eps undefined"):
            log_c_eps(2.0, 1.0)


class TestChooseN:
    def test_z80_radius_two(self):
        assert choose_N(0.5, 2, IndexGroup.cyclic(80)) == 10

    def test_growth_condition_at_choice(self):
        group = IndexGroup.cyclic(80)
        assert box_growth(0.5, 2, 10, group) <= 1.5
        assert box_growth(0.5, 2, 9, group) > 1.5

    def test_infeasible_reports_table(self):
        with pytest.raises(SizingError) as info:
            choose_N(0.5, 2, IndexGroup.cyclic(16))
        assert info.value.table_name == "N"
        assert [row[0] for row in info.value.table] == [3, 4]
        assert [row[2] for row in info.value.table] == [False, True]

    def test_practical_falls_back_to_largest_tiling_radius(self):
        assert practical_box_radius(0.5, 2, IndexGroup.cyclic(16)) == 4

    def test_practical_without_tiling_radius_raises(self):
        with pytest.raises(SizingError):
            practical_box_radius(0.5, 3, IndexGroup.cyclic(18))


class TestChooseR:
    def test_basis_needs_radius_one(self):
        assert choose_R(0.5, basis_profile(16)) == 1

    def test_slow_decay_is_infeasible(self):
        frame, reference, amap = localized_configuration(8, 2, decay=4.0, seed=1)
        profile = build_profile(frame, reference, amap)
        with pytest.raises(SizingError, match="too small for strict mode") as info:
            choose_R(0.5, profile)
        assert info.value.table_name == "E(R)"
        assert [row[0] for row in info.value.table] == list(range(5))


class TestResolveSizing:
    def test_strict_basis_on_z80(self):
        sizing = resolve_sizing(ThinningConfig(eps=0.5), basis_profile(80), 1)
        assert (sizing.truncation_radius, sizing.box_radius) == (1, 5)
        assert sizing.truncation_error == 0.0
        assert sizing.admissible_radius == 0
        assert sizing.log_c_eps == pytest.approx(log_g_estimate(0.25))

    def test_strict_basis_on_z16_is_infeasible(self):
        with pytest.raises(SizingError):
            resolve_sizing(ThinningConfig(eps=0.5), basis_profile(16), 1)

    def test_practical_defaults(self):
        config = ThinningConfig(eps=0.5, mode="practical")
        sizing = resolve_sizing(config, basis_profile(16), 1)
        assert (sizing.truncation_radius, sizing.box_radius) == (1, 4)

    def test_overrides(self):
        config = ThinningConfig(eps=0.5, mode="practical", truncation_radius=0, box_radius=2)
        sizing = resolve_sizing(config, basis_profile(16), 1)
        assert (sizing.truncation_radius, sizing.box_radius) == (0, 2)

    def test_non_tiling_override_rejected(self):
        config = ThinningConfig(eps=0.5, mode="practical", box_radius=3)
        with pytest.raises(SizingError, match="does not tile"):
            resolve_sizing(config, basis_profile(16), 1)


class TestTileLabels:
    def test_partition(self):
        amap = LocalizationMap.from_function(range(32), IndexGroup.cyclic(16), lambda i: (i // 2,))
        tiles = tile_labels(amap, 2)
        assert sorted(tiles) == [0, 4, 8, 12]
        assert all(len(labels) == 8 for labels in tiles.values())
        assert sorted(label for labels in tiles.values() for label in labels) == list(range(32))

    def test_cell_holds_half_open_box(self):
        amap = LocalizationMap.identity(IndexGroup.cyclic(16))
        assert tile_labels(amap, 2)[0] == ((0,), (1,), (14,), (15,))

    def test_empty_cells_kept(self):
        amap = LocalizationMap.from_function(range(2), IndexGroup.cyclic(16), lambda i: (0,))
        tiles = tile_labels(amap, 2)
        assert tiles[0] == (0, 1)
        assert tiles[4] == tiles[8] == tiles[12] == ()


class TestPerBoxThin:
    group = IndexGroup.cyclic(8)

    def test_empty_box(self):
        report = per_box_thin(Frame(np.eye(2)), [], 0, self.group, 3.0, 5)
        assert report.branch is BoxBranch.KEPT
        assert report.kept == 0
        assert report.box_ratio == 0.0

    def test_within_budget_kept_whole(self):
        frame = Frame(random_matrix(make_rng(1), 2, 3))
        report = per_box_thin(frame, frame.labels, 0, self.group, 3.0, 5)
        assert report.branch is BoxBranch.KEPT
        assert report.selected == frame.labels
        assert report.rank == 2
        assert report.box_ratio == pytest.approx(3 / 5)

    def test_zero_rank(self):
        report = per_box_thin(Frame(np.zeros((2, 3))), [0, 1, 2], 0, self.group, 2.0, 5)
        assert report.branch is BoxBranch.ZERO_RANK
        assert report.kept == 0

    def test_overfull(self):
        frame = Frame(random_matrix(make_rng(2), 2, 3))
        report = per_box_thin(frame, frame.labels, 0, self.group, 2.0, 5)
        assert report.branch is BoxBranch.OVERFULL
        assert report.kept == 3
        assert not report.within_budget

    def test_thinned(self):
        frame = Frame(random_matrix(make_rng(3), 2, 8))
        report = per_box_thin(frame, frame.labels, 0, self.group, 4.0, 5)
        assert report.branch is BoxBranch.THINNED
        assert report.slack == pytest.approx(1.0)
        assert report.kept <= 4
        assert report.within_budget
        assert report.achieved_ratio > 0.0
        assert report.center == (0,)

    def test_thinned_in_rank_deficient_box(self):
        vectors = random_matrix(make_rng(4), 2, 9)
        frame = Frame(np.vstack([vectors, np.zeros((3, 9))]))
        report = per_box_thin(frame, frame.labels, 2, self.group, 3.0, 5)
        assert report.rank == 2
        assert report.branch is BoxBranch.THINNED
        assert report.kept <= math.floor(3.0)
        assert report.center == (2,)
