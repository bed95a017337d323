"""Toolkit configuration via Pydantic Settings.

Numerical tolerances and run defaults are loaded from environment variables
(prefix ``FRAME_THINNING_``) or an optional .env file.
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Frame-thinning toolkit settings.

    Loaded from environment variables with optional .env file support.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="FRAME_THINNING_",
        case_sensitive=False,
        extra="ignore",
    )

    # Eigensolver
    herm_tol: float = Field(
        default=1e-9, description="Relative Hermitian tolerance (scaled by ||A||)"
    )
    eig_tol: float = Field(
        default=1e-11, description="Jacobi stop: relative off-diagonal Frobenius mass"
    )
    eig_max_sweeps: int = Field(default=100, description="Max cyclic Jacobi sweeps")
    jacobi_max_size: int = Field(
        default=32, description="Largest matrix solved by Jacobi; larger goes to LAPACK"
    )
    rank_tol: float = Field(
        default=1e-10, description="Eigenvalues below rank_tol * lambda_max count as zero"
    )

    # Checks
    check_tol: float = Field(
        default=1e-9, description="Slack allowed on asserted operator inequalities"
    )
    parseval_tol: float = Field(
        default=1e-9, description="Largest ||S - I|| for a frame to count as Parseval"
    )
    isometry_tol: float = Field(
        default=1e-8, description="Largest ||T*T - I||_F for columns to count as orthonormal"
    )
    oracle_max_subsets: int = Field(
        default=200_000, description="Max candidate subsets enumerated by the exhaustive oracle"
    )

    # Thinning
    practical_truncation_radius: int = Field(
        default=1, description="Truncation radius R used by practical mode"
    )
    tail_fraction: float = Field(
        default=0.5,
        gt=0.0,
        le=1.0,
        description="Trailing share of a window sequence used for liminf/limsup",
    )
    max_workers: int = Field(
        default=1, ge=1, description="Thread pool size for per-box and sweep work"
    )

    # Runs
    default_seed: int = Field(default=7, description="Seed used when none is given")
    log_level: str = Field(default="INFO", description="Logging level")


@lru_cache
def get_settings() -> Settings:
    """Return cached toolkit settings.

    Uses lru_cache so the .env file is read only once per process.
    """
    return Settings()
