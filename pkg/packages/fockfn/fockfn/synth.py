"""
Synthesis of f(a) as a truncated Fock-space matrix

Routes:
- dyad_origin: banded dyad sum for a series about 0
- dyad_translated: chi . exp(-z0 a^dag) for a series about z0 != 0
- quadrature_origin / quadrature_translated: trapezoid rule on the circle
  contour with the series coefficients folded into the nodes
- direct_polynomial: sum_k c_k (a - z0)^k by repeated products, used as oracle

The translated and quadrature routes are evaluated in the balanced frame
(see fockfn.balanced) at a working precision that covers the binomial
cancellation, then rounded once.
"""

import logging
import math
from typing import Literal

import mpmath as mp
import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import BaseModel
from scipy.special import gammaln

from .balanced import (
    DEFAULT_GUARD_DIGITS,
    DOUBLE_DIGITS,
    BalancedOperator,
    translated_sum,
    zeros,
)
from .contour import circle_nodes, nodal_dyad_sum, require_nodes
from .errors import DegreeExceedsDimError, FockOverflowError
from .fock_core import (
    coherent,
    ladder_a,
    log_factorials,
    sqrt_factorial_ratios,
    translation_op,
)
from .types import (
    DiskDomain,
    FockOperator,
    PolySeries,
    QuadratureSpec,
    TruncationConfig,
)

logger = logging.getLogger(__name__)

SynthRoute = Literal[
    "dyad_origin",
    "dyad_translated",
    "quadrature_origin",
    "quadrature_translated",
    "direct_polynomial",
]

# chi entries above this are reported as overflow
CHI_LIMIT = 1e300

# Relative disagreement with the direct route that gets logged
CROSS_CHECK_WARN = 1e-8


class ChiMatrix(BaseModel):
    """Collected dyad coefficients of the translated synthesis"""

    entries: np.ndarray
    degree: int
    center: complex

    class Config:
        arbitrary_types_allowed = True
        frozen = True


class SynthResult(BaseModel):
    """Synthesized operator and the rows it can be trusted on"""

    op: FockOperator
    valid_rows: int
    route: SynthRoute
    degree: int
    center: complex
    domain: DiskDomain | None = None
    balanced: BalancedOperator | None = None
    cross_check: float | None = None

    class Config:
        arbitrary_types_allowed = True
        frozen = True


class EigenResidual(BaseModel):
    """Residual of f(a)|alpha> = f(alpha)|alpha> on the valid rows"""

    alpha: complex
    residual: float
    extrapolated: bool = False
    on_boundary: bool = False


def _check_degree(series: PolySeries, cfg: TruncationConfig) -> None:
    if series.degree >= cfg.dim:
        raise DegreeExceedsDimError(
            f"degree {series.degree} does not fit in dim {cfg.dim}",
            field="degree",
        )


def _check_finite(entries: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(entries)):
        bad = np.argwhere(~np.isfinite(entries))[0]
        raise FockOverflowError(
            f"{what} entry ({bad[0]}, {bad[1]}) leaves the floating range",
            index=(int(bad[0]), int(bad[1])),
        )


def band_reach(op: FockOperator, tol: float = 1e-14) -> int:
    """Number of superdiagonals with entries above tol relative to the largest"""
    magnitudes = np.abs(op.entries)
    scale = magnitudes.max()
    if scale == 0:
        return 0
    rows, cols = np.nonzero(magnitudes > tol * scale)
    return int(max(0, (cols - rows).max()))


def valid_block_deviation(
    a: FockOperator | np.ndarray,
    b: FockOperator | np.ndarray,
    rows: int,
    relative: bool = False,
) -> float:
    """max |a - b| over the first `rows` rows, optionally relative to max |b| there"""
    left = a.entries if isinstance(a, FockOperator) else a
    right = b.entries if isinstance(b, FockOperator) else b
    deviation = float(np.max(np.abs(left[:rows] - right[:rows])))
    if relative:
        scale = float(np.max(np.abs(right[:rows])))
        return deviation / scale if scale > 0 else deviation
    return deviation


def synth_origin(series: PolySeries, cfg: TruncationConfig) -> SynthResult:
    """Banded dyad sum: entries[n][n+d] = c_d sqrt((n+d)!/n!)"""
    if complex(series.center) != 0:
        raise ValueError(
            f"synth_origin needs a series about 0, got center {series.center}"
        )
    _check_degree(series, cfg)
    dim = cfg.dim
    ratios = sqrt_factorial_ratios(dim)
    entries = np.zeros((dim, dim), dtype=np.complex128)
    balanced = zeros(dim)
    for d, c in enumerate(series.coeffs):
        rows = np.arange(dim - d)
        entries[rows, rows + d] = c * ratios[rows, rows + d]
        for n in rows:
            balanced[n, n + d] = mp.mpc(complex(c))
    _check_finite(entries, "dyad sum")
    return SynthResult(
        op=FockOperator(entries=entries),
        valid_rows=dim - series.degree,
        route="dyad_origin",
        degree=series.degree,
        center=0j,
        domain=series.domain,
        balanced=BalancedOperator(
            entries=balanced, dps=DOUBLE_DIGITS + DEFAULT_GUARD_DIGITS
        ),
    )


def chi_coeffs(series: PolySeries, cfg: TruncationConfig) -> ChiMatrix:
    """chi[n][m] = sqrt(m!/n!) sum_k c_k binom(n, m-k) z0^(n-m+k), in the log domain"""
    center = complex(series.center)
    if center == 0:
        raise ValueError("chi_coeffs needs a nonzero center")
    _check_degree(series, cfg)
    dim = cfg.dim
    lf = log_factorials(dim)
    n = np.arange(dim)[:, None]
    m = np.arange(dim)[None, :]
    log_radius, phase = math.log(abs(center)), np.angle(center)
    entries = np.zeros((dim, dim), dtype=np.complex128)
    with np.errstate(over="ignore", invalid="ignore"):
        for k, c in enumerate(series.coeffs):
            if c == 0:
                continue
            lower = m - k
            inside = (lower >= 0) & (lower <= n)
            lower = np.where(inside, lower, 0)
            power = n - lower
            log_magnitude = (
                0.5 * (lf[m] - lf[n])
                + gammaln(n + 1.0)
                - gammaln(lower + 1.0)
                - gammaln(power + 1.0)
                + power * log_radius
            )
            terms = c * np.exp(log_magnitude + 1j * power * phase)
            entries += np.where(inside, terms, 0.0)
    too_large = ~np.isfinite(entries) | (np.abs(entries) > CHI_LIMIT)
    if np.any(too_large):
        bad = np.argwhere(too_large)[0]
        raise FockOverflowError(
            f"chi entry ({bad[0]}, {bad[1]}) exceeds {CHI_LIMIT:.0e}",
            field="center",
            index=(int(bad[0]), int(bad[1])),
        )
    return ChiMatrix(entries=entries, degree=series.degree, center=center)


def synth_direct(series: PolySeries, cfg: TruncationConfig) -> SynthResult:
    """sum_k c_k (a - z0)^k by repeated matrix products, ascending k"""
    _check_degree(series, cfg)
    dim = cfg.dim
    identity = np.eye(dim, dtype=np.complex128)
    shifted = ladder_a(cfg).entries - complex(series.center) * identity
    power = identity
    total = series.coeffs[0] * identity
    for c in series.coeffs[1:]:
        power = power @ shifted
        total = total + c * power
    _check_finite(total, "direct sum")
    return SynthResult(
        op=FockOperator(entries=total),
        valid_rows=dim - series.degree,
        route="direct_polynomial",
        degree=series.degree,
        center=series.center,
        domain=series.domain,
    )


def synth_translated(
    series: PolySeries,
    cfg: TruncationConfig,
    guard_digits: int = DEFAULT_GUARD_DIGITS,
    cross_check: bool = True,
) -> SynthResult:
    """f(a) = chi . exp(-z0 a^dag) for a series about z0 != 0"""
    center = complex(series.center)
    if center == 0:
        raise ValueError("synth_translated needs a nonzero center, use synth_origin")
    chi_coeffs(series, cfg)
    reach = band_reach(translation_op(-center, cfg))
    balanced = translated_sum(center, series.coeffs, cfg.dim, guard_digits)
    op = balanced.to_fock_operator()
    valid_rows = cfg.dim - series.degree - reach

    deviation = None
    if cross_check:
        direct = synth_direct(series, cfg)
        deviation = valid_block_deviation(op, direct.op, valid_rows, relative=True)
        if deviation > CROSS_CHECK_WARN:
            logger.warning(
                f"Translated synthesis disagrees with direct powers by {deviation:.3e}"
            )

    return SynthResult(
        op=op,
        valid_rows=valid_rows,
        route="dyad_translated",
        degree=series.degree,
        center=center,
        domain=series.domain,
        balanced=balanced,
        cross_check=deviation,
    )


def synth_quadrature(
    series: PolySeries,
    spec: QuadratureSpec,
    cfg: TruncationConfig,
    guard_digits: int = DEFAULT_GUARD_DIGITS,
) -> SynthResult:
    """Trapezoid rule for the contour synthesis about z0

    -i sum_k c_k \\oint dgamma gamma^(k-1) |gamma+z0>~ <gamma|~ J exp(-z0 a^dag)
    """
    _check_degree(series, cfg)
    require_nodes(spec, 2 * cfg.dim + series.degree)
    center = complex(series.center)
    route: SynthRoute = "quadrature_origin" if center == 0 else "quadrature_translated"
    translation = translation_op(-center, cfg)

    balanced = None
    if spec.method == "nodal":
        weights = P.polyval(circle_nodes(spec), series.coeffs)
        entries = nodal_dyad_sum(spec, center, cfg, weights) @ translation.entries
        _check_finite(entries, "nodal quadrature")
        op = FockOperator(entries=entries)
    else:
        balanced = translated_sum(
            center,
            series.coeffs,
            cfg.dim,
            guard_digits,
            modulus=spec.nodes,
            radius=spec.radius,
        )
        op = balanced.to_fock_operator()

    return SynthResult(
        op=op,
        valid_rows=cfg.dim - series.degree - band_reach(translation),
        route=route,
        degree=series.degree,
        center=center,
        domain=series.domain,
        balanced=balanced,
    )


def synth(
    series: PolySeries,
    cfg: TruncationConfig,
    route: SynthRoute | None = None,
    spec: QuadratureSpec | None = None,
    guard_digits: int = DEFAULT_GUARD_DIGITS,
) -> SynthResult:
    """Synthesize f(a) by the named route, or the dyad route for the series center"""
    if route is None:
        route = "dyad_origin" if complex(series.center) == 0 else "dyad_translated"
    logger.info(
        f"Synthesizing degree {series.degree} series about {series.center} "
        f"via {route} at dim={cfg.dim}"
    )

    if route == "dyad_origin":
        return synth_origin(series, cfg)
    if route == "dyad_translated":
        return synth_translated(series, cfg, guard_digits=guard_digits)
    if route == "direct_polynomial":
        return synth_direct(series, cfg)

    if (route == "quadrature_origin") != (complex(series.center) == 0):
        raise ValueError(f"route {route} does not match series center {series.center}")
    if spec is None:
        spec = QuadratureSpec(radius=1.0, nodes=max(256, 2 * cfg.dim + series.degree))
    return synth_quadrature(series, spec, cfg, guard_digits=guard_digits)


def synth_runge_sum(
    increments: list[PolySeries],
    cfg: TruncationConfig,
    route: SynthRoute | None = None,
    guard_digits: int = DEFAULT_GUARD_DIGITS,
) -> SynthResult:
    """Synthesize each polynomial of a Runge sequence and add the operators"""
    if not increments:
        raise ValueError("synth_runge_sum needs at least one increment")
    parts = [
        synth(series, cfg, route=route, guard_digits=guard_digits)
        for series in increments
    ]
    entries = np.sum([part.op.entries for part in parts], axis=0)

    balanced = None
    if all(part.balanced is not None for part in parts):
        balanced = parts[0].balanced
        for part in parts[1:]:
            balanced = balanced + part.balanced  # type: ignore[operator]

    first = parts[0]
    return SynthResult(
        op=FockOperator(entries=entries),
        valid_rows=min(part.valid_rows for part in parts),
        route=first.route,
        degree=max(part.degree for part in parts),
        center=first.center,
        domain=increments[0].domain,
        balanced=balanced,
    )


def coherent_image(
    result: SynthResult, alpha: complex, cfg: TruncationConfig
) -> np.ndarray:
    """(f(a)|alpha>)[n] on the valid rows"""
    if result.balanced is not None:
        return result.balanced.apply_coherent(alpha, result.valid_rows)
    return (result.op.entries @ coherent(alpha, cfg).amps)[: result.valid_rows]


def eigen_residual(
    result: SynthResult, alpha: complex, f_value: complex, cfg: TruncationConfig
) -> EigenResidual:
    """||P_V (f(a)|alpha> - f(alpha)|alpha>)|| / ||P_V |alpha>||"""
    state = coherent(alpha, cfg).amps[: result.valid_rows]
    image = coherent_image(result, alpha, cfg)
    error = image - complex(f_value) * state
    residual = float(np.linalg.norm(error) / np.linalg.norm(state))

    extrapolated = on_boundary = False
    if result.domain is not None:
        distance = result.domain.distance(alpha)
        on_boundary = abs(distance - 1.0) <= 1e-12
        extrapolated = distance > 1.0 and not on_boundary
        if extrapolated:
            logger.warning(
                f"alpha={complex(alpha)} lies outside the series domain, "
                "residual is extrapolated"
            )
    return EigenResidual(
        alpha=alpha,
        residual=residual,
        extrapolated=extrapolated,
        on_boundary=on_boundary,
    )
