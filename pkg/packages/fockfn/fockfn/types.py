"""
Core value types for truncated Fock-space numerics
"""

import cmath
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

FunctionTag = Literal["log", "reciprocal", "sqrt", "exp", "poly"]

# Kinds with a singularity or branch point at the origin
SINGULAR_TAGS: frozenset[str] = frozenset({"log", "reciprocal", "sqrt"})


def _as_complex_array(value: Any, ndim: int, name: str) -> np.ndarray:
    array = np.array(value, dtype=np.complex128)
    if array.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} contains non-finite entries")
    array.setflags(write=False)
    return array


class TruncationConfig(BaseModel):
    """Number of retained Fock levels"""

    dim: int = Field(ge=2, le=512, description="Fock levels |0> .. |dim-1>")
    tail_tolerance: float = Field(
        default=1e-10, gt=0, description="Largest accepted coherent tail mass"
    )


class FockVector(BaseModel):
    """Amplitudes over the Fock basis"""

    amps: np.ndarray
    tail_mass: float = 0.0

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("amps", mode="before")
    @classmethod
    def _check_amps(cls, value: Any) -> np.ndarray:
        return _as_complex_array(value, 1, "amps")

    @property
    def dim(self) -> int:
        return int(self.amps.shape[0])


class DualBraVector(BaseModel):
    """Components of a bra, comps[m] pairs with |m>"""

    comps: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("comps", mode="before")
    @classmethod
    def _check_comps(cls, value: Any) -> np.ndarray:
        return _as_complex_array(value, 1, "comps")

    @property
    def dim(self) -> int:
        return int(self.comps.shape[0])


class FockOperator(BaseModel):
    """Square matrix with entries[n][m] = <n|Op|m>"""

    entries: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("entries", mode="before")
    @classmethod
    def _check_entries(cls, value: Any) -> np.ndarray:
        array = _as_complex_array(value, 2, "entries")
        if array.shape[0] != array.shape[1]:
            raise ValueError(f"entries must be square, got shape {array.shape}")
        return array

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def apply(self, vector: FockVector) -> np.ndarray:
        """Matrix-vector product against a Fock vector"""
        return self.entries @ vector.amps


class QuadratureSpec(BaseModel):
    """Equispaced trapezoid rule on the circle |gamma| = radius"""

    radius: float = Field(default=1.0, gt=0)
    nodes: int = Field(ge=2)
    method: Literal["harmonic", "nodal"] = "harmonic"


class PlanarGridSpec(BaseModel):
    """Polar grid for phase-space integrals over the complex plane"""

    radial_cutoff: float = Field(gt=0)
    radial_nodes: int = Field(ge=1)
    angular_nodes: int = Field(ge=1)
    radial_rule: Literal["gauss", "midpoint"] = "gauss"


class DiskDomain(BaseModel):
    """Closed disk |z - center| <= radius"""

    center: complex = 0j
    radius: float = Field(gt=0)

    def excludes_origin(self) -> bool:
        return self.radius < abs(self.center)

    def distance(self, z: complex) -> float:
        """Distance of z from the center, in units of the radius"""
        return abs(complex(z) - self.center) / self.radius

    def contains(self, z: complex, slack: float = 1e-12) -> bool:
        return self.distance(z) <= 1.0 + slack


class FunctionKind(BaseModel):
    """Target function f, optionally a user polynomial in z"""

    tag: FunctionTag
    coeffs: tuple[complex, ...] = ()

    @model_validator(mode="after")
    def _check_coeffs(self) -> "FunctionKind":
        if self.tag == "poly":
            if not self.coeffs:
                raise ValueError("poly requires at least one coefficient")
            if not all(cmath.isfinite(c) for c in self.coeffs):
                raise ValueError("poly coefficients must be finite")
        return self

    @property
    def singular_at_origin(self) -> bool:
        return self.tag in SINGULAR_TAGS

    def evaluate(self, z: complex, center: complex = 1.0) -> complex:
        """Evaluate f on the branch that is continuous across a disk around center"""
        z = complex(z)
        if self.tag == "exp":
            return cmath.exp(z)
        if self.tag == "poly":
            coeffs = np.array(self.coeffs, dtype=complex)
            return complex(np.polynomial.polynomial.polyval(z, coeffs))
        if z == 0:
            raise ValueError(f"{self.tag} is undefined at 0")
        center = complex(center)
        # Cut along the ray opposite to center, never crossing a disk without 0
        if self.tag == "log":
            return cmath.log(center) + cmath.log(z / center)
        if self.tag == "sqrt":
            return cmath.sqrt(center) * cmath.sqrt(z / center)
        return 1.0 / z


class PolySeries(BaseModel):
    """Coefficients c_k of sum_k c_k (z - center)^k on a disk domain"""

    center: complex
    coeffs: np.ndarray
    domain: DiskDomain
    kind: FunctionKind | None = None

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("coeffs", mode="before")
    @classmethod
    def _check_coeffs(cls, value: Any) -> np.ndarray:
        array = _as_complex_array(value, 1, "coeffs")
        if array.shape[0] < 1:
            raise ValueError("coeffs must hold at least c_0")
        return array

    @model_validator(mode="after")
    def _check_center(self) -> "PolySeries":
        if complex(self.center) != complex(self.domain.center):
            raise ValueError(
                f"series center {self.center} differs from domain center "
                f"{self.domain.center}"
            )
        return self

    @property
    def degree(self) -> int:
        return int(self.coeffs.shape[0]) - 1
