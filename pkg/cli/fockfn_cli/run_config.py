"""
Run configuration: flags, YAML files and environment defaults
"""

import argparse
import cmath
import logging
from pathlib import Path
from typing import Any, Literal, get_args

import numpy as np
import yaml
from fockfn import (
    DiskDomain,
    FockfnSettings,
    FunctionKind,
    QuadratureSpec,
    TruncationConfig,
)
from fockfn.synth import SynthRoute
from pydantic import BaseModel, Field, model_validator

logger = logging.getLogger(__name__)

Command = Literal["build", "verify-identity", "eigen-test", "commutator", "convergence"]
FunctionName = Literal["ln", "inv", "sqrt", "exp", "poly"]
FormatName = Literal["opmatrix-v1", "csv"]

FUNCTION_TAGS: dict[str, str] = {
    "ln": "log",
    "inv": "reciprocal",
    "sqrt": "sqrt",
    "exp": "exp",
    "poly": "poly",
}

# Default degree for non-polynomial targets
DEFAULT_DEGREE = 30


def parse_complex(text: str) -> complex:
    """'re,im', 're' or a Python complex literal such as '1+2j'"""
    text = text.strip()
    if "," in text:
        re, im = text.split(",", 1)
        return complex(float(re), float(im))
    return complex(text.replace(" ", ""))


def parse_complex_list(text: str) -> list[complex]:
    """';'-separated complex values"""
    return [parse_complex(item) for item in text.split(";") if item.strip()]


def parse_coeff_list(text: str) -> list[complex]:
    """','-separated coefficients, each real or a complex literal"""
    items = (item.strip().replace(" ", "") for item in text.split(","))
    return [complex(item) for item in items if item]


def parse_int_list(text: str) -> list[int]:
    return [int(item) for item in text.split(",") if item.strip()]


class RingSpec(BaseModel):
    """count equispaced points on |alpha - center| = radius"""

    center: complex
    radius: float = Field(gt=0)
    count: int = Field(ge=1)

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """'center;radius;count' with center as 're,im'"""
        parts = text.split(";")
        if len(parts) != 3:
            raise ValueError(f"ring must be 'center;radius;count', got {text!r}")
        return cls(
            center=parse_complex(parts[0]), radius=float(parts[1]), count=int(parts[2])
        )

    def points(self) -> list[complex]:
        theta = 2 * np.pi * np.arange(self.count) / self.count
        return [complex(self.center) + self.radius * cmath.exp(1j * t) for t in theta]


class RunConfig(BaseModel):
    """One validated command invocation"""

    command: Command
    function: FunctionName = "ln"
    poly_coeffs: list[complex] = Field(default_factory=list)
    center: complex = 1 + 0j
    radius: float = Field(default=0.5, gt=0)
    degree: int | None = Field(default=None, ge=0)
    dim: int = Field(default=64, ge=2, le=512)
    contour_radius: float = Field(default=1.0, gt=0)
    nodes: int = Field(default=256, ge=2)
    output_path: str | None = None
    format: FormatName = "opmatrix-v1"
    route: SynthRoute | None = None
    ring: RingSpec | None = None
    alpha: complex | None = None
    degrees: list[int] = Field(default_factory=list)
    dims: list[int] = Field(default_factory=list)
    alphas: list[complex] = Field(default_factory=list)
    tol_identity: float = Field(default=1e-10, gt=0)
    tol_eigen: float = Field(default=1e-9, gt=0)
    tol_commutator: float = Field(default=1e-3, gt=0)
    guard_digits: int = Field(default=20, ge=0)

    @model_validator(mode="after")
    def _check_guards(self) -> "RunConfig":
        if self.command == "verify-identity":
            return self
        if self.function == "poly" and not self.poly_coeffs:
            raise ValueError("poly_coeffs: --function poly needs --poly-coeffs")
        if self.function in ("ln", "inv", "sqrt") and self.radius >= abs(self.center):
            raise ValueError(
                f"radius: {self.radius:g} must be below |center| = "
                f"{abs(self.center):g} for {self.function}"
            )
        if self.series_degree >= self.dim:
            raise ValueError(
                f"degree: {self.series_degree} must be below dim {self.dim}"
            )
        if self.function == "poly" and self.series_degree < len(self.poly_coeffs) - 1:
            raise ValueError(
                f"degree: {self.series_degree} is below the polynomial degree"
            )
        if self.command == "build" and self.output_path is None:
            raise ValueError("output_path: build needs --out")
        if self.command == "commutator" and self.function != "ln":
            raise ValueError("function: commutator is defined for ln only")
        return self

    @property
    def series_degree(self) -> int:
        if self.degree is not None:
            return self.degree
        if self.function == "poly":
            return max(len(self.poly_coeffs) - 1, 0)
        return DEFAULT_DEGREE

    @property
    def kind(self) -> FunctionKind:
        return FunctionKind(
            tag=FUNCTION_TAGS[self.function],  # type: ignore[arg-type]
            coeffs=tuple(self.poly_coeffs),
        )

    @property
    def domain(self) -> DiskDomain:
        return DiskDomain(center=self.center, radius=self.radius)

    @property
    def truncation(self) -> TruncationConfig:
        return TruncationConfig(dim=self.dim)

    @property
    def quadrature(self) -> QuadratureSpec:
        return QuadratureSpec(radius=self.contour_radius, nodes=self.nodes)


# Flag value parsers, shared with YAML string values
PARSERS: dict[str, Any] = {
    "center": parse_complex,
    "alpha": parse_complex,
    "poly_coeffs": parse_coeff_list,
    "alphas": parse_complex_list,
    "degrees": parse_int_list,
    "dims": parse_int_list,
    "ring": RingSpec.parse,
}


def _coerce(key: str, value: Any) -> Any:
    if isinstance(value, str) and key in PARSERS:
        return PARSERS[key](value)
    return value


def load_yaml_config(path: str | Path) -> dict[str, Any]:
    """Mapping of run settings; hyphenated keys are accepted"""
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"config: {path} must hold a mapping")
    logger.debug(f"Loaded {len(data)} run settings from {path}")
    settings: dict[str, Any] = {}
    for key, value in data.items():
        name = str(key).replace("-", "_")
        settings[name] = _coerce(name, value)
    return settings


def add_run_arguments(parser: argparse.ArgumentParser) -> None:
    """Flags shared by every command; absent flags stay None so lower layers apply"""
    parser.add_argument("--config", help="YAML file with run settings")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--function", choices=sorted(FUNCTION_TAGS))
    parser.add_argument(
        "--poly-coeffs", type=parse_coeff_list, help="c0,c1,... in powers of z"
    )
    parser.add_argument("--center", type=parse_complex, help="re,im")
    parser.add_argument("--radius", type=float)
    parser.add_argument("--degree", type=int)
    parser.add_argument("--dim", type=int)
    parser.add_argument("--contour-radius", type=float)
    parser.add_argument("--nodes", type=int)
    parser.add_argument("--ring", type=RingSpec.parse, help="re,im;radius;count")
    parser.add_argument("--alpha", type=parse_complex, help="re,im")
    parser.add_argument("--alphas", type=parse_complex_list, help="re,im;re,im;...")
    parser.add_argument("--degrees", type=parse_int_list, help="L1,L2,...")
    parser.add_argument("--dims", type=parse_int_list, help="D1,D2,...")
    parser.add_argument("--route", choices=list(get_args(SynthRoute)))
    parser.add_argument("--out", dest="output_path")
    parser.add_argument("--format", choices=["opmatrix-v1", "csv"])
    parser.add_argument("--tol-identity", type=float)
    parser.add_argument("--tol-eigen", type=float)
    parser.add_argument("--tol-commutator", type=float)
    parser.add_argument("--precision-guard", dest="guard_digits", type=int)


# argparse attributes that are not RunConfig fields
_NON_CONFIG_KEYS = {"config", "log_level"}


def build_run_config(
    command: str,
    flags: dict[str, Any],
    settings: FockfnSettings,
    yaml_values: dict[str, Any] | None = None,
) -> RunConfig:
    """Merge defaults < environment < YAML < flags and validate"""
    merged: dict[str, Any] = {
        "dim": settings.default_dim,
        "nodes": settings.default_nodes,
        "tol_identity": settings.tol_identity,
        "tol_eigen": settings.tol_eigen,
        "guard_digits": settings.guard_digits,
    }
    merged.update(
        {k: v for k, v in (yaml_values or {}).items() if k not in _NON_CONFIG_KEYS}
    )
    merged.update(
        {
            k: v
            for k, v in flags.items()
            if v is not None and k not in _NON_CONFIG_KEYS
        }
    )
    merged["command"] = command
    return RunConfig(**merged)


def run_config_from_args(
    args: argparse.Namespace, settings: FockfnSettings
) -> RunConfig:
    flags = {k: v for k, v in vars(args).items() if k != "command"}
    yaml_values = load_yaml_config(args.config) if args.config else None
    return build_run_config(args.command, flags, settings, yaml_values)


def metadata_for(
    config: RunConfig, extra: dict[str, Any] | None = None
) -> dict[str, str]:
    """Deterministic string metadata describing a run"""
    center = complex(config.center)
    metadata = {
        "function": config.function,
        "center": f"{center.real!r},{center.imag!r}",
        "radius": repr(config.radius),
        "degree": str(config.series_degree),
        "dim": str(config.dim),
    }
    if config.function == "poly":
        coeffs = map(complex, config.poly_coeffs)
        metadata["poly_coeffs"] = ";".join(f"{c.real!r},{c.imag!r}" for c in coeffs)
    for key, value in (extra or {}).items():
        metadata[key] = str(value)
    return metadata

