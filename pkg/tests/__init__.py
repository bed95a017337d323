"""Tests for frame-thinning."""
