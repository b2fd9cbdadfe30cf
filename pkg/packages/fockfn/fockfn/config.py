"""
Runtime configuration for fockfn
"""

import os
from typing import Literal

from pydantic import BaseModel, Field

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR"]


class FockfnSettings(BaseModel):
    """Defaults shared by the library and the command-line tool"""

    tol_identity: float = Field(
        default=1e-10, gt=0, description="Identity check tolerance"
    )
    tol_eigen: float = Field(default=1e-9, gt=0, description="Eigen residual floor")
    default_dim: int = Field(default=64, ge=2, le=512)
    default_nodes: int = Field(default=256, ge=2)
    guard_digits: int = Field(
        default=20, ge=0, description="Extra decimal digits for exact-frame sums"
    )
    log_level: LogLevel = "INFO"

    @classmethod
    def from_env(cls, prefix: str = "FOCKFN") -> "FockfnSettings":
        """Create settings from environment variables"""
        level = os.getenv(f"{prefix}_LOG_LEVEL", "INFO").upper()
        # Unknown levels fall back to INFO
        known = ("DEBUG", "INFO", "WARNING", "ERROR")
        log_level: LogLevel = level if level in known else "INFO"  # type: ignore

        return cls(
            tol_identity=float(os.getenv(f"{prefix}_TOL_IDENTITY", "1e-10")),
            tol_eigen=float(os.getenv(f"{prefix}_TOL_EIGEN", "1e-9")),
            default_dim=int(os.getenv(f"{prefix}_DEFAULT_DIM", "64")),
            default_nodes=int(os.getenv(f"{prefix}_DEFAULT_NODES", "256")),
            guard_digits=int(os.getenv(f"{prefix}_GUARD_DIGITS", "20")),
            log_level=log_level,
        )
