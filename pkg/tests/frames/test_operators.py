"""Tests for frames, frame operators, duals and Parseval normalisation."""

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from src.frame_thinning.cli.generators import (
    make_rng,
    random_frame,
    random_matrix,
    repeated_tail_forced_subframe,
)
from src.frame_thinning.frames import (
    Frame,
    FrameError,
    canonical_dual,
    frame_bound_corollary,
    frame_bounds,
    frame_operator,
    is_parseval,
    parseval_normalize,
    relative_lower_ratio,
    subframe_bounds_sandwich,
)


class TestFrameModel:
    def test_default_labels_are_indices(self):
        frame = Frame(np.eye(3))
        assert frame.labels == (0, 1, 2)
        assert frame.dim == 3
        assert frame.size == 3

    def test_from_vectors_is_row_wise(self):
        frame = Frame.from_vectors([[1, 0], [0, 1], [1, 1]], labels=["a", "b", "c"])
        assert frame.size == 3
        np.testing.assert_array_equal(frame.vector("c"), [1, 1])

    def test_duplicate_labels_rejected(self):
        with pytest.raises(FrameError, match="distinct"):
            Frame(np.eye(2), (0, 0))

    def test_label_count_mismatch_rejected(self):
        with pytest.raises(FrameError, match="labels"):
            Frame(np.eye(2), (0,))

    def test_nan_rejected(self):
        with pytest.raises(FrameError, match="NaN"):
            Frame(np.array([[np.nan, 1.0]]))

    def test_synthesis_is_read_only(self):
        frame = Frame(np.eye(2))
        with pytest.raises(ValueError):
            frame.synthesis[0, 0] = 5.0

    def test_subframe_keeps_frame_order(self):
        frame = Frame(np.eye(4), ("a", "b", "c", "d"))
        assert frame.subframe(["d", "a"]).labels == ("a", "d")

    def test_unknown_label_raises(self):
        with pytest.raises(FrameError, match="Unknown frame label"):
            Frame(np.eye(2)).subframe([5])

    def test_union_tags_labels(self):
        union = Frame(np.eye(2)).union(Frame(np.eye(2)))
        assert union.labels == ((0, 0), (0, 1), (1, 0), (1, 1))
        assert union.redundancy == 2.0


class TestFrameOperator:
    def test_repeated_tail_full_system_is_parseval(self, repeated_tail):
        frame = repeated_tail(4)
        np.testing.assert_allclose(frame_operator(frame), np.eye(4), atol=1e-12)
        assert is_parseval(frame)

    def test_repeated_tail_forced_subframe_bounds(self):
        forced = repeated_tail_forced_subframe(4)
        bounds = frame_bounds(forced)
        assert bounds.lower == pytest.approx(0.25, abs=1e-12)
        assert bounds.upper == pytest.approx(1.0, abs=1e-12)

    def test_rank_deficient_reports_zero_lower(self):
        bounds = frame_bounds(Frame(np.array([[1.0, 1.0], [0.0, 0.0]])))
        assert bounds.lower == 0.0
        assert not bounds.is_frame

    def test_bounds_bracket_sampled_quadratic_forms(self, spanning_frame, rng):
        bounds = frame_bounds(spanning_frame)
        for h in random_matrix(rng, 50, spanning_frame.dim):
            h = h / np.linalg.norm(h)
            energy = np.sum(np.abs(spanning_frame.synthesis.conj().T @ h) ** 2)
            assert bounds.lower - 1e-10 <= energy <= bounds.upper + 1e-10


class TestCanonicalDual:
    def test_reconstruction(self, spanning_frame, rng):
        pair = canonical_dual(spanning_frame)
        for x in random_matrix(rng, 20, spanning_frame.dim):
            np.testing.assert_allclose(pair.reconstruct(x), x, atol=1e-8)

    def test_trace_identity(self, spanning_frame):
        pair = canonical_dual(spanning_frame)
        assert np.sum(pair.diagonal) == pytest.approx(spanning_frame.dim, abs=1e-8)

    def test_forced_subframe_dual_doubles_last_vector(self):
        forced = repeated_tail_forced_subframe(4)
        dual = canonical_dual(forced).dual
        np.testing.assert_allclose(dual.synthesis[:, 3], [0, 0, 0, 2.0], atol=1e-12)

    def test_non_spanning_raises(self):
        with pytest.raises(FrameError, match="spanning"):
            canonical_dual(Frame(np.array([[1.0, 2.0], [0.0, 0.0]])))


class TestParsevalNormalize:
    def test_output_is_parseval(self, spanning_frame):
        assert is_parseval(parseval_normalize(spanning_frame))

    @pytest.mark.parametrize("seed_value", range(200))
    def test_random_frames_normalise_to_parseval(self, seed_value):
        assert is_parseval(parseval_normalize(random_frame(4, 6, seed=seed_value)))

    def test_parseval_input_is_fixed(self, parseval_frame):
        np.testing.assert_allclose(
            parseval_normalize(parseval_frame).synthesis, parseval_frame.synthesis, atol=1e-10
        )

    def test_non_spanning_raises(self):
        with pytest.raises(FrameError):
            parseval_normalize(Frame(np.array([[1.0], [0.0]])))


class TestSandwich:
    @seed(6)
    @given(seed_value=st.integers(0, 100_000), extra=st.integers(1, 6))
    @settings(max_examples=50, deadline=None)
    def test_bounds_lie_in_predicted_interval(self, seed_value, extra):
        n = 3
        frame = random_frame(n, n + extra, seed_value)
        picks = make_rng(seed_value).choice(frame.size, size=n + extra // 2, replace=False)
        report = subframe_bounds_sandwich(frame, [frame.labels[i] for i in picks])
        assert report.holds
        assert report.predicted_lower <= report.computed.lower + 1e-9
        assert report.computed.upper <= report.predicted_upper + 1e-9

    def test_empty_subset(self, spanning_frame):
        report = subframe_bounds_sandwich(spanning_frame, [])
        assert report.holds
        assert report.computed.upper == 0.0


class TestRelativeBounds:
    def test_full_set_has_ratio_one(self, spanning_frame):
        assert relative_lower_ratio(spanning_frame, spanning_frame.labels) == pytest.approx(1.0)

    def test_empty_set_has_ratio_zero(self, spanning_frame):
        assert relative_lower_ratio(spanning_frame, []) == 0.0

    def test_corollary_holds(self, spanning_frame):
        subset = spanning_frame.labels[:6]
        corollary = frame_bound_corollary(spanning_frame, subset)
        assert corollary.holds
        assert corollary.relative_constant <= corollary.ratio
        assert corollary.absolute_lower == pytest.approx(
            corollary.ratio * corollary.parent.lower
        )
