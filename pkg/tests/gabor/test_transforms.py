"""Tests for time-frequency shifts, the discrete Gaussian and the STFT."""

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from src.frame_thinning.cli.generators import make_rng, make_window, random_matrix
from src.frame_thinning.gabor import GaborError, discrete_gaussian, stft, time_frequency_shift


class TestTimeFrequencyShift:
    @seed(8)
    @given(
        length=st.sampled_from([8, 12, 16]),
        x=st.integers(-20, 20),
        omega=st.integers(-20, 20),
        seed_value=st.integers(0, 10_000),
    )
    @settings(max_examples=40, deadline=None)
    def test_unitary(self, length, x, omega, seed_value):
        g = make_window(length, "random", seed_value)
        assert np.linalg.norm(time_frequency_shift(g, x, omega)) == pytest.approx(1.0)

    def test_commutation_phase(self):
        length, x, omega = 12, 5, 7
        g = make_window(length, "random", 3)
        modulated_then_translated = np.roll(time_frequency_shift(g, 0, omega), x)
        phase = np.exp(-2j * np.pi * omega * x / length)
        np.testing.assert_allclose(
            modulated_then_translated, phase * time_frequency_shift(g, x, omega), atol=1e-12
        )

    def test_identity_shift(self):
        g = make_window(8, "random", 1)
        np.testing.assert_allclose(time_frequency_shift(g, 0, 0), g)
        np.testing.assert_allclose(time_frequency_shift(g, 8, 8), g, atol=1e-12)

    def test_empty_window_rejected(self):
        with pytest.raises(GaborError, match="nonempty"):
            time_frequency_shift([], 0, 0)


class TestDiscreteGaussian:
    @pytest.mark.parametrize("length", [4, 9, 16, 64])
    def test_symmetric_unit_norm(self, length):
        gamma = discrete_gaussian(length)
        assert np.linalg.norm(gamma) == pytest.approx(1.0)
        np.testing.assert_allclose(gamma[1:], gamma[1:][::-1], atol=1e-14)
        assert np.all(gamma.real > 0.0)
        assert int(np.argmax(gamma.real)) == 0

    def test_short_length_rejected(self):
        with pytest.raises(GaborError, match=">= 4"):
            discrete_gaussian(3)


class TestSTFT:
    @pytest.mark.parametrize("length", [8, 16])
    def test_energy_identity(self, length):
        h = random_matrix(make_rng(length), 1, length)[0]
        energy = np.sum(np.abs(stft(h, discrete_gaussian(length))) ** 2)
        assert energy == pytest.approx(length * np.linalg.norm(h) ** 2)

    def test_shift_covariance(self):
        length = 16
        gamma = discrete_gaussian(length)
        g = make_window(length, "random", 5)
        base = np.abs(stft(g, gamma))
        moved = np.abs(stft(time_frequency_shift(g, 3, 6), gamma))
        np.testing.assert_allclose(moved, np.roll(base, shift=(3, 6), axis=(0, 1)), atol=1e-12)

    def test_window_length_must_match(self):
        with pytest.raises(GaborError, match="expected 8"):
            stft(np.ones(8), np.ones(6))
