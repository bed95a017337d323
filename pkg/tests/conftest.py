"""
Pytest configuration for test suite.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.frame_thinning.cli.generators import (  # noqa: E402
    gabor_system,
    make_rng,
    random_frame,
    random_parseval_frame,
    repeated_tail_frame,
)


@pytest.fixture
def rng() -> np.random.Generator:
    return make_rng(7)


@pytest.fixture
def repeated_tail():
    """Factory for the N-copies construction: e_1..e_{N-1} plus N copies of e_N/sqrt(N)."""
    return repeated_tail_frame


@pytest.fixture
def parseval_frame():
    return random_parseval_frame(4, 10, seed=7)


@pytest.fixture
def spanning_frame():
    return random_frame(4, 9, seed=11)


@pytest.fixture
def gaussian_grid_16():
    """Full Z_16 x Z_16 Gabor system with the discrete Gaussian window."""
    return gabor_system(16, "gaussian")
