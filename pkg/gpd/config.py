from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables from a .env file if present (local runs only)
load_dotenv()


class Settings(BaseSettings):
    """Run configuration loaded from environment variables or .env file."""

    model_config = SettingsConfigDict(
        env_prefix="GPD_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Linear algebra backend
    backend: str = Field("rational", description="Scalar backend: 'rational' (exact) or 'float'.")
    tolerance: float = Field(1e-10, gt=0, description="Relative tolerance of the float backend.")

    # General
    log_level: str = Field("INFO", description="Root log level for the CLI.")
    output_dir: Path = Field(Path("out"), description="Default directory for written diagram files.")
    seed: int = Field(0, description="Seed for randomized verification suites.")

    # Random instance sizes
    max_vertices: int = Field(6, ge=1, description="Upper bound on vertices of random filtrations.")
    max_steps: int = Field(6, ge=1, description="Upper bound on steps of random filtrations.")
    max_degree: int = Field(2, ge=0, description="Highest homological degree exercised by suites.")

    # Verification suite sizes
    verify_filtrations: int = Field(200, ge=0)
    verify_grams: int = Field(20, ge=0)
    verify_morphisms: int = Field(100, ge=0)
    verify_treegrams: int = Field(100, ge=0)
    verify_combinations: int = Field(10, ge=0, description="Random combinations per diagram point.")


@lru_cache()
def get_settings() -> Settings:  # pragma: no cover
    """Return a cached Settings instance so it is only parsed once."""

    return Settings()
