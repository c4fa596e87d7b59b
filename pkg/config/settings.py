"""Configuration management for the application."""
from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Tuple
from functools import lru_cache
import logging


LOG_LEVELS = {
    "error": logging.ERROR,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


class Settings(BaseSettings):
    """Application settings loaded from environment variables (prefix ANISO_DBVP_)."""

    model_config = SettingsConfigDict(
        env_prefix="ANISO_DBVP_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log: str = "info"

    # Newton / descent
    solver_tol: float = 1e-10
    solver_max_iter: int = 200
    descent_max_iter: int = 20000
    armijo_c: float = 1e-4
    backtrack_shrink: float = 0.5
    max_backtracks: int = 60
    jacobian_fd_rel_step: float = 1e-7
    # links whose equilibrium displacement is below this fraction of max|u| move as one
    rigid_link_rel: float = 1e-9

    # Shell penalty (localized solve)
    penalty_mu0: float = 1.0
    penalty_growth: float = 10.0
    penalty_max_levels: int = 12

    # Primitive F: quadrature
    quad_epsabs: float = 1e-12
    quad_epsrel: float = 1e-10
    quad_limit: int = 200

    # Growth check grid for (F1)
    growth_grid_min: float = 1e-12
    growth_grid_max: float = 1e12
    growth_grid_points: int = 100_000

    # max of F over a sup-norm ball
    ball_grid_points: int = 4096
    ball_refine_candidates: int = 8

    # Oracle
    brute_force_grid_n: int = 201
    brute_force_chunk: int = 250_000

    # Exploration
    dedup_tol: float = 1e-6
    sweep_endpoint_offset: float = 1e-9
    max_workers: int = 1

    # Reports
    report_schema_version: str = "1.0"
    discrepancy_rel_tol: float = 5e-3

    @property
    def log_level(self) -> int:
        """Map the ANISO_DBVP_LOG value onto a logging level."""
        return LOG_LEVELS.get(self.log.strip().lower(), logging.INFO)

    @property
    def growth_grid_range(self) -> Tuple[float, float]:
        return self.growth_grid_min, self.growth_grid_max


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
