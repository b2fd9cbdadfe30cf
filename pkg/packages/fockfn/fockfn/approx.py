"""
Polynomial series for analytic target functions on disk domains
"""

import cmath
import logging
import math
from collections.abc import Sequence

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as P
from scipy.special import binom

from .errors import (
    DomainContainsSingularityError,
    IllConditionedError,
    UnknownTailError,
)
from .types import DiskDomain, FunctionKind, PolySeries

logger = logging.getLogger(__name__)

# Largest accepted condition estimate of the normal equations in boundary_fit
MAX_NORMAL_CONDITION = 1e12


def check_domain(kind: FunctionKind, domain: DiskDomain) -> None:
    """Reject disks that reach the singularity or branch point at 0"""
    if kind.singular_at_origin and not domain.excludes_origin():
        raise DomainContainsSingularityError(
            f"radius {domain.radius:g} must be below |center| = "
            f"{abs(domain.center):g} for {kind.tag}",
            field="radius",
        )


def _taylor_coefficients(
    kind: FunctionKind, center: complex, degree: int
) -> np.ndarray:
    k = np.arange(degree + 1)
    if kind.tag == "exp":
        terms = [cmath.exp(center) / math.factorial(i) for i in k]
        return np.array(terms, dtype=np.complex128)
    if kind.tag == "poly":
        poly = Polynomial(np.array(kind.coeffs, dtype=np.complex128))
        if poly.degree() > degree:
            raise ValueError(
                f"degree {degree} is below the polynomial degree {poly.degree()}"
            )
        derivatives = [poly.deriv(i)(center) / math.factorial(i) for i in k]
        return np.array(derivatives, dtype=np.complex128)

    inverse_powers = (1.0 / center) ** k
    if kind.tag == "log":
        coeffs = np.empty(degree + 1, dtype=np.complex128)
        coeffs[0] = cmath.log(center)
        coeffs[1:] = (-1.0) ** (k[1:] + 1) / k[1:] * inverse_powers[1:]
        return coeffs
    if kind.tag == "reciprocal":
        return (-1.0) ** k * inverse_powers / center
    return binom(0.5, k) * cmath.sqrt(center) * inverse_powers


def taylor_series(kind: FunctionKind, domain: DiskDomain, degree: int) -> PolySeries:
    """Taylor partial sum of degree `degree` about the domain center"""
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    check_domain(kind, domain)
    coeffs = _taylor_coefficients(kind, complex(domain.center), degree)
    return PolySeries(center=domain.center, coeffs=coeffs, domain=domain, kind=kind)


def tail_bound(series: PolySeries) -> float:
    """Upper bound on max |f - P_L| over the series domain"""
    if series.kind is None:
        raise UnknownTailError("series carries no function kind")
    tag = series.kind.tag
    if tag == "poly":
        return 0.0

    degree, radius = series.degree, series.domain.radius
    center = complex(series.center)
    if tag == "exp":
        return abs(cmath.exp(center)) * math.exp(radius) * math.exp(
            (degree + 1) * math.log(radius) - math.lgamma(degree + 2)
        )

    q = radius / abs(center)
    geometric = q ** (degree + 1) / (1.0 - q)
    if tag == "log":
        return geometric / (degree + 1)
    if tag == "reciprocal":
        return geometric / abs(center)
    # |binom(1/2, k)| <= 1/2 for k >= 1
    return 0.5 * math.sqrt(abs(center)) * geometric


def eval_series(series: PolySeries, z: complex) -> complex:
    """Horner evaluation of sum_k c_k (z - z0)^k"""
    return complex(P.polyval(complex(z) - complex(series.center), series.coeffs))


def eval_series_flagged(series: PolySeries, z: complex) -> tuple[complex, bool]:
    """Value plus whether z lies outside the series domain"""
    extrapolated = not series.domain.contains(z)
    if extrapolated:
        logger.warning(f"Evaluating series outside its domain at z={complex(z)}")
    return eval_series(series, z), extrapolated


def boundary_points(domain: DiskDomain, count: int) -> np.ndarray:
    """Equispaced points on the domain boundary, starting at angle 0"""
    theta = 2 * np.pi * np.arange(count) / count
    return complex(domain.center) + domain.radius * np.exp(1j * theta)


def sampled_boundary_error(series: PolySeries, count: int = 1000) -> float:
    """max |f(z) - P_L(z)| over equispaced boundary samples"""
    if series.kind is None:
        raise UnknownTailError("series carries no function kind")
    kind = series.kind
    points = boundary_points(series.domain, count)
    exact = np.array([kind.evaluate(z, series.center) for z in points])
    approx = P.polyval(points - complex(series.center), series.coeffs)
    return float(np.max(np.abs(exact - approx)))


def boundary_fit(
    samples: Sequence[tuple[complex, complex]], center: complex, degree: int
) -> tuple[PolySeries, float]:
    """Least-squares fit of sum_k c_k (z - center)^k to boundary samples"""
    needed = 2 * (degree + 1)
    if len(samples) < needed:
        raise ValueError(
            f"boundary_fit needs at least {needed} samples, got {len(samples)}"
        )
    points = np.array([complex(z) for z, _ in samples])
    values = np.array([complex(v) for _, v in samples])
    if np.unique(points).shape[0] != points.shape[0]:
        raise ValueError("boundary samples must be distinct")

    offsets = points - complex(center)
    design = P.polyvander(offsets, degree)
    condition = np.linalg.cond(design) ** 2
    if condition > MAX_NORMAL_CONDITION:
        raise IllConditionedError(
            f"normal system condition {condition:.3e} exceeds "
            f"{MAX_NORMAL_CONDITION:.0e}"
        )

    coeffs, *_ = np.linalg.lstsq(design, values, rcond=None)
    residual = float(np.max(np.abs(design @ coeffs - values)))
    domain = DiskDomain(center=center, radius=float(np.max(np.abs(offsets))))
    logger.debug(
        f"boundary_fit degree={degree} condition={condition:.3e} "
        f"residual={residual:.3e}"
    )
    return PolySeries(center=center, coeffs=coeffs, domain=domain), residual


def runge_increments(
    kind: FunctionKind, domain: DiskDomain, degrees: Sequence[int]
) -> list[PolySeries]:
    """Successive differences P_l - P_(l-1) of Taylor partial sums"""
    if not degrees or list(degrees) != sorted(set(degrees)):
        raise ValueError("degrees must be strictly increasing and non-empty")
    increments = []
    previous = np.zeros(0, dtype=np.complex128)
    for degree in degrees:
        current = taylor_series(kind, domain, degree).coeffs
        step = current.copy()
        step[: previous.shape[0]] -= previous
        increments.append(PolySeries(center=domain.center, coeffs=step, domain=domain))
        previous = current
    return increments


def collapse(
    increments: Sequence[PolySeries], kind: FunctionKind | None = None
) -> PolySeries:
    """Sum a Runge sequence into one cumulative coefficient vector"""
    if not increments:
        raise ValueError("collapse needs at least one increment")
    first = increments[0]
    degree = max(s.degree for s in increments)
    coeffs = np.zeros(degree + 1, dtype=np.complex128)
    for series in increments:
        if complex(series.center) != complex(first.center):
            raise ValueError("increments must share one center")
        coeffs[: series.degree + 1] += series.coeffs
    return PolySeries(
        center=first.center, coeffs=coeffs, domain=first.domain, kind=kind
    )
