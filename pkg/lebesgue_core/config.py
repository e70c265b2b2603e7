"""Numerical tolerance configuration.

Every operation that compares floating point values against zero takes a
``NumericConfig`` through its ``config`` keyword. The record is immutable;
use ``with_overrides`` to derive a new one.
"""

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

# default rank cutoff is RANK_SAFETY * dim * eps * max(lambda_max, 1)
RANK_SAFETY = 64.0


class NumericConfig(BaseModel):
    """Tolerances shared by the whole toolkit"""

    model_config = ConfigDict(frozen=True)

    rank_tol: Optional[float] = Field(
        default=None,
        description="Relative rank cutoff; None means RANK_SAFETY * dim * machine epsilon",
    )
    psd_tol: Optional[float] = Field(
        default=None,
        description="Relative negative-eigenvalue allowance when certifying PSD input",
    )
    hermitian_tol: float = Field(default=1e-12, description="Absolute symmetry tolerance")
    projection_tol: float = Field(default=1e-10, description="Idempotence / self-adjointness tolerance")
    singular_tol: float = Field(default=1e-9, description="Relative parallel-sum norm regarded as zero")
    order_tol: float = Field(default=1e-9, description="Relative slack for PSD order comparisons")
    residual_tol: float = Field(default=1e-8, description="Decomposition sum residual")
    iter_tol: float = Field(default=1e-10, description="Iterative-mode stopping threshold (Frobenius)")
    iter_max_exponent: int = Field(default=40, description="Iterative mode stops at n = 2**iter_max_exponent")
    wedderburn_retries: int = Field(default=8, description="Random splitting attempts before giving up")
    wedderburn_residual: float = Field(default=1e-7, description="Largest accepted off-block mass")
    maximality_samples: int = Field(default=20, description="Random candidates per maximality check")

    @field_validator(
        "rank_tol", "psd_tol", "hermitian_tol", "projection_tol", "singular_tol",
        "order_tol", "residual_tol", "iter_tol", "wedderburn_residual",
    )
    @classmethod
    def _positive(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and not value > 0:
            raise ValueError("tolerances must be positive")
        return value

    @field_validator("iter_max_exponent", "wedderburn_retries", "maximality_samples")
    @classmethod
    def _positive_int(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    def with_overrides(self, **overrides) -> "NumericConfig":
        """Return a copy with the given non-None fields replaced"""
        values = self.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return NumericConfig(**values)

    def relative_rank_tol(self, dim: int) -> float:
        if self.rank_tol is not None:
            return self.rank_tol
        return RANK_SAFETY * dim * float(np.finfo(float).eps)

    def rank_cutoff(self, eigvals: np.ndarray, dim: int) -> float:
        """Absolute threshold tau_rel * max(lambda_max, 1)"""
        top = float(np.max(eigvals)) if len(eigvals) else 0.0
        return self.relative_rank_tol(dim) * max(top, 1.0)

    def psd_allowance(self, eigvals: np.ndarray, dim: int) -> float:
        """How negative an eigenvalue may be before the input is rejected as non-PSD"""
        top = float(np.max(eigvals)) if len(eigvals) else 0.0
        rel = self.psd_tol if self.psd_tol is not None else max(self.relative_rank_tol(dim), 1e-12)
        return rel * max(top, 1.0)


DEFAULT_CONFIG = NumericConfig()


class CliConfig(BaseModel):
    """Settings of one command-line invocation"""

    model_config = ConfigDict(frozen=True)

    numeric: NumericConfig = DEFAULT_CONFIG
    seed: int = 0
    output_format: Literal["json", "csv", "pretty"] = "json"
    digits: Optional[int] = None

    @field_validator("digits")
    @classmethod
    def _digits(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and not 0 <= value <= 17:
            raise ValueError("digits must lie in [0, 17]")
        return value
