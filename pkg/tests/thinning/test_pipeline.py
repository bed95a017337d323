"""End-to-end tests for sparse subframe extraction."""

import numpy as np
import pytest

from src.frame_thinning.cli.generators import localized_configuration
from src.frame_thinning.frames import Frame, FrameError, frame_bounds
from src.frame_thinning.localization import IndexGroup, LocalizationError, LocalizationMap
from src.frame_thinning.thinning import (
    BoxBranch,
    RunMonitor,
    SizingError,
    ThinningConfig,
    ThinningStage,
    extract_sparse_subframe,
    extract_sparse_subframe_parseval,
)


def basis_setup(modulus: int, scale: float = 1.0):
    group = IndexGroup.cyclic(modulus)
    basis = Frame(np.eye(modulus, dtype=complex), group.elements)
    frame = Frame(scale * np.eye(modulus, dtype=complex), group.elements)
    return frame, basis, LocalizationMap.identity(group)


class TestBasisRuns:
    def test_practical_keeps_every_basis_vector(self):
        frame, basis, amap = basis_setup(16)
        result = extract_sparse_subframe_parseval(
            frame, basis, amap, ThinningConfig(eps=0.5, mode="practical")
        )
        assert result.selected == frame.labels
        assert result.passed, result.failures
        assert result.achieved_bound == pytest.approx(1.0)
        assert all(box.branch is BoxBranch.KEPT for box in result.boxes)
        assert result.max_box_ratio == pytest.approx(8 / 9)

    def test_strict_on_z80(self):
        frame, basis, amap = basis_setup(80)
        result = extract_sparse_subframe_parseval(frame, basis, amap, ThinningConfig(eps=0.5))
        assert result.passed, result.failures
        assert result.size == 80
        assert (result.sizing.truncation_radius, result.sizing.box_radius) == (1, 5)
        assert result.certified_bound == pytest.approx(0.5 * result.sizing.c_eps)
        assert result.density.upper <= 1.5

    def test_strict_on_z16_raises_sizing_error(self):
        frame, basis, amap = basis_setup(16)
        monitor = RunMonitor()
        with pytest.raises(SizingError):
            extract_sparse_subframe_parseval(frame, basis, amap, ThinningConfig(eps=0.5), monitor)
        assert monitor.current_stage == ThinningStage.ERROR

    def test_events_follow_stages(self):
        frame, basis, amap = basis_setup(16)
        result = extract_sparse_subframe_parseval(
            frame, basis, amap, ThinningConfig(eps=0.5, mode="practical")
        )
        stages = [event["stage"] for event in result.events]
        assert stages[0] == "profiling"
        assert stages[-1] == "done"
        assert "thinning" in stages


class TestLocalizedRun:
    @pytest.fixture
    def setup(self):
        return localized_configuration(32, multiplicity=2, decay=1.5, seed=3)

    def test_practical_thins_every_cell(self, setup):
        frame, reference, amap = setup
        result = extract_sparse_subframe_parseval(
            frame, reference, amap, ThinningConfig(eps=0.5, mode="practical")
        )
        assert result.sizing.box_radius == 8
        assert all(box.branch is BoxBranch.THINNED for box in result.boxes)
        assert all(box.within_budget for box in result.boxes)
        assert result.max_box_ratio <= 1.5
        assert result.size < frame.size
        assert result.passed, result.failures
        assert result.certified_bound > 0.0
        assert result.achieved_bound >= result.certified_bound - 1e-9
        assert result.density.upper <= result.parent_density.upper

    def test_truncation_radius_grows_until_certificate_is_positive(self, setup):
        frame, reference, amap = setup
        result = extract_sparse_subframe_parseval(
            frame, reference, amap, ThinningConfig(eps=0.5, mode="practical")
        )
        assert result.sizing.truncation_radius > 1
        assert result.sizing.truncation_radius <= amap.group.diameter
        messages = [e["message"] for e in result.events if e["stage"] == "sizing"]
        assert any(m.startswith("certificate") and "R=1" in m for m in messages)

    def test_fixed_radius_with_negative_certificate_fails(self, setup):
        frame, reference, amap = setup
        result = extract_sparse_subframe_parseval(
            frame,
            reference,
            amap,
            ThinningConfig(eps=0.5, mode="practical", truncation_radius=1),
        )
        assert result.sizing.truncation_radius == 1
        assert result.certified_bound <= 0.0
        assert not result.passed
        assert any("certificate not positive" in f for f in result.failures)

    def test_small_boxes_with_wide_truncation_overflow_budget(self):
        # 8 labels per cell span a rank-8 truncated space; the cap is 1.5 |B_1| = 4.5
        frame, reference, amap = localized_configuration(16, multiplicity=4, decay=8.0, seed=1)
        config = ThinningConfig(eps=0.5, mode="practical", truncation_radius=3, box_radius=1)
        result = extract_sparse_subframe_parseval(frame, reference, amap, config)
        assert all(box.branch is BoxBranch.OVERFULL for box in result.boxes)
        assert all(box.budget == pytest.approx(4.5) for box in result.boxes)
        assert not any(box.within_budget for box in result.boxes)
        assert result.size == frame.size
        assert not result.passed
        assert any(f.startswith("boxes over budget") for f in result.failures)

    def test_selection_is_in_frame_order(self, setup):
        frame, reference, amap = setup
        result = extract_sparse_subframe_parseval(
            frame, reference, amap, ThinningConfig(eps=0.5, mode="practical")
        )
        positions = [frame.labels.index(label) for label in result.selected]
        assert positions == sorted(positions)

    def test_parallel_boxes_match_serial(self, setup, mocker):
        frame, reference, amap = setup
        config = ThinningConfig(eps=0.5, mode="practical")
        serial = extract_sparse_subframe_parseval(frame, reference, amap, config)
        settings = mocker.patch("src.frame_thinning.thinning.pipeline.get_settings")
        settings.return_value.max_workers = 4
        settings.return_value.check_tol = 1e-9
        settings.return_value.practical_truncation_radius = 1
        parallel = extract_sparse_subframe_parseval(frame, reference, amap, config)
        assert parallel.selected == serial.selected


class TestValidation:
    def test_non_parseval_frame_rejected(self):
        frame, basis, amap = basis_setup(16, scale=2.0)
        with pytest.raises(FrameError, match="Parseval"):
            extract_sparse_subframe_parseval(
                frame, basis, amap, ThinningConfig(eps=0.5, mode="practical")
            )

    def test_non_parseval_reference_rejected(self):
        frame, basis, amap = basis_setup(16)
        scaled = Frame(2.0 * basis.synthesis, basis.labels)
        with pytest.raises(LocalizationError, match="Parseval"):
            extract_sparse_subframe_parseval(
                frame, scaled, amap, ThinningConfig(eps=0.5, mode="practical")
            )


class TestGeneralFrames:
    def test_scaled_basis_bounds_are_transported(self):
        frame, basis, amap = basis_setup(16, scale=2.0)
        result = extract_sparse_subframe(
            frame, basis, amap, ThinningConfig(eps=0.5, mode="practical")
        )
        assert result.passed, result.failures
        assert result.parent_bounds.lower == pytest.approx(4.0)
        assert result.transported_lower == pytest.approx(4.0 * result.certified_bound)
        assert result.original_bounds.lower >= result.transported_lower - 1e-9

    def test_non_parseval_localized_frame(self, rng):
        frame, reference, amap = localized_configuration(32, 2, decay=1.5, seed=5)
        weights = 0.5 + rng.random(frame.size)
        weighted = Frame(frame.synthesis * weights, frame.labels)
        result = extract_sparse_subframe(
            weighted, reference, amap, ThinningConfig(eps=0.5, mode="practical")
        )
        bounds = frame_bounds(weighted.subframe(result.selected))
        assert result.original_bounds.lower == pytest.approx(bounds.lower)
        assert result.transported_upper >= result.original_bounds.upper - 1e-9
