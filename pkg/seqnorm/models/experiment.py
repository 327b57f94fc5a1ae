"""Solver and experiment configuration models."""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

SEED_LIMIT = 2**64


class SolverConfig(BaseModel):
    """Parameters shared by the iterative kernels."""

    model_config = ConfigDict(frozen=True)

    tolerance: float = 1e-6
    max_iterations: int = 500
    restarts: int = 64
    seed: int = 0

    @field_validator("tolerance")
    @classmethod
    def validate_tolerance(cls, v: float) -> float:
        if not 0 < v < 1:
            raise ValueError(f"Invalid tolerance {v}: must lie in (0, 1)")
        return v

    @field_validator("max_iterations", "restarts")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"Invalid count {v}: must be at least 1")
        return v

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v: int) -> int:
        if not 0 <= v < SEED_LIMIT:
            raise ValueError(f"Invalid seed {v}: must be a 64-bit unsigned integer")
        return v

    @classmethod
    def from_settings(cls, settings: "object" = None) -> "SolverConfig":
        """Derive solver parameters from the process-wide settings."""
        if settings is None:
            from ..config import settings as default_settings

            settings = default_settings
        return cls(
            tolerance=settings.tolerance,
            max_iterations=settings.max_iters,
            restarts=settings.restarts,
            seed=settings.seed,
        )


class ExperimentKind(str, Enum):
    """Experiments the command line can run."""
    NORM = "norm"
    DUAL_NORM = "dual-norm"
    MULT_NORM = "mult-norm"
    FUNDAMENTAL = "fundamental"
    AK_TABLE = "ak-table"
    SUMMING_ESTIMATE = "summing-estimate"
    KFUN = "kfun"
    CONCAVITY = "concavity"
    SPECTRA_CHECK = "spectra-check"
    REPORT_ALL = "report-all"


class ExperimentConfig(BaseModel):
    """A fully validated experiment request."""

    kind: ExperimentKind
    spaces: List[str] = Field(default_factory=list)
    dims: List[int] = Field(default_factory=list)
    k_policy: Union[str, List[float]] = "all"
    solver: SolverConfig = Field(default_factory=SolverConfig)
    seed: int = 0
    output: Optional[Path] = None

    @field_validator("dims")
    @classmethod
    def validate_dims(cls, v: List[int]) -> List[int]:
        if any(n < 1 for n in v):
            raise ValueError(f"Invalid dimensions {v}: must be positive")
        if v != sorted(v):
            raise ValueError(f"Invalid dimensions {v}: must be sorted")
        return v

    @field_validator("k_policy")
    @classmethod
    def validate_k_policy(cls, v: Union[str, List[float]]) -> Union[str, List[float]]:
        if isinstance(v, str):
            if v != "all":
                raise ValueError(f"Invalid k policy {v!r}: use 'all' or a list of fractions")
            return v
        if not v or any(not 0 < f <= 1 for f in v):
            raise ValueError(f"Invalid k fractions {v}: each must lie in (0, 1]")
        return v

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v: int) -> int:
        if not 0 <= v < 2**64:
            raise ValueError(f"Invalid seed {v}: must be a 64-bit unsigned integer")
        return v

    def ks(self, n: int) -> List[int]:
        """The k values selected by the policy for dimension n."""
        if self.k_policy == "all":
            return list(range(1, n + 1))
        return sorted({max(1, min(n, round(f * n))) for f in self.k_policy})
