"""
Quadrature realizations of identity resolutions in truncated Fock space

The circle identities integrate |gamma+z0>~ <gamma|~ J over |gamma| = R. Every
entry of that integrand is a Laurent polynomial in gamma, so the M-node
trapezoid rule keeps exactly the powers divisible by M. The default
"harmonic" method evaluates that aliased sum in closed form; "nodal" adds up
the M rank-one dyads literally and is only usable at small dimension, where
the R^(n-m) sqrt(m!/n!) spread of the nodal terms does not swamp the result.
"""

import logging

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import gammaincc

from .balanced import DEFAULT_GUARD_DIGITS, translated_sum
from .errors import InsufficientNodesError
from .fock_core import (
    dual_bra,
    j_weight,
    ncs,
    power_series_amplitudes,
    sqrt_factorial_ratios,
    translation_op,
)
from .types import (
    FockOperator,
    PlanarGridSpec,
    PolySeries,
    QuadratureSpec,
    TruncationConfig,
)

logger = logging.getLogger(__name__)


def require_nodes(spec: QuadratureSpec, required: int) -> None:
    if spec.nodes < required:
        raise InsufficientNodesError(
            f"{spec.nodes} nodes alias Fourier modes, at least {required} are needed",
            field="nodes",
        )


def circle_nodes(spec: QuadratureSpec) -> np.ndarray:
    """gamma_j = R exp(2 pi i j / M), ascending j"""
    return spec.radius * np.exp(2j * np.pi * np.arange(spec.nodes) / spec.nodes)


def aliased_powers(residue: int, high: int, modulus: int) -> range:
    """Integers q in [0, high] with q = residue (mod modulus)"""
    return range(residue % modulus, high + 1, modulus)


def nodal_dyad_sum(
    spec: QuadratureSpec,
    z0: complex,
    cfg: TruncationConfig,
    weights: np.ndarray | None = None,
) -> np.ndarray:
    """(2 pi / M) sum_j w_j |gamma_j+z0>~ <gamma_j|~ J over ascending nodes"""
    total = np.zeros((cfg.dim, cfg.dim), dtype=np.complex128)
    for j, gamma in enumerate(circle_nodes(spec)):
        weight = 1.0 if weights is None else weights[j]
        ket = ncs(gamma + z0, cfg).amps
        total += weight * np.outer(ket, dual_bra(gamma, cfg).comps)
    return (2 * np.pi / spec.nodes) * total @ j_weight(cfg).entries


def identity_quadrature(spec: QuadratureSpec, cfg: TruncationConfig) -> FockOperator:
    """Trapezoid rule for I = -i \\oint dgamma/gamma |gamma>~ <gamma|~ J"""
    require_nodes(spec, 2 * cfg.dim)
    logger.debug(
        f"Circle identity, {spec.method} sum over {spec.nodes} nodes "
        f"at R={spec.radius:g}"
    )
    if spec.method == "nodal":
        return FockOperator(entries=nodal_dyad_sum(spec, 0j, cfg))

    offsets = np.subtract.outer(np.arange(cfg.dim), np.arange(cfg.dim))
    ratios = sqrt_factorial_ratios(cfg.dim)
    with np.errstate(over="ignore", invalid="ignore"):
        powers = spec.radius ** offsets.astype(float)
        entries = np.where(offsets % spec.nodes == 0, ratios * powers, 0.0)
    return FockOperator(entries=entries)


def translated_identity_quadrature(
    z0: complex,
    spec: QuadratureSpec,
    cfg: TruncationConfig,
    guard_digits: int = DEFAULT_GUARD_DIGITS,
) -> FockOperator:
    """Trapezoid rule for the circle identity conjugated by exp(z0 a^dag)

    Every row is valid: exp(-z0 a^dag) is lower triangular, so the product
    reaches no column the truncation drops.
    """
    require_nodes(spec, 2 * cfg.dim)
    logger.debug(
        f"Translated identity about {complex(z0)}, {spec.method} sum, "
        f"valid rows {cfg.dim}"
    )
    if spec.method == "nodal":
        conjugated = nodal_dyad_sum(spec, complex(z0), cfg)
        translation = translation_op(-complex(z0), cfg)
        return FockOperator(entries=conjugated @ translation.entries)

    # the binomial sum cancels to I only when carried at working precision
    balanced = translated_sum(
        complex(z0),
        [1.0],
        cfg.dim,
        guard_digits,
        modulus=spec.nodes,
        radius=spec.radius,
    )
    return balanced.to_fock_operator()


def radial_rule(grid: PlanarGridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on (0, radial_cutoff)"""
    cutoff, count = grid.radial_cutoff, grid.radial_nodes
    if grid.radial_rule == "midpoint":
        step = cutoff / count
        return (np.arange(count) + 0.5) * step, np.full(count, step)
    nodes, weights = np.polynomial.legendre.leggauss(count)
    return 0.5 * cutoff * (nodes + 1.0), 0.5 * cutoff * weights


def _planar_sum(
    grid: PlanarGridSpec, cfg: TruncationConfig, series: PolySeries | None
) -> np.ndarray:
    radii, radial_weights = radial_rule(grid)
    logger.debug(
        f"Planar {grid.radial_rule} rule, {grid.radial_nodes} x {grid.angular_nodes} "
        f"nodes to radius {grid.radial_cutoff:g}"
    )
    theta = 2 * np.pi * np.arange(grid.angular_nodes) / grid.angular_nodes
    alphas = (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
    # r dr dtheta / pi
    weights = np.repeat(radial_weights * radii, grid.angular_nodes) * (
        2.0 / grid.angular_nodes
    )
    if series is not None:
        weights = weights * P.polyval(alphas, series.coeffs)
    # coherent dyads without the tail guard, the grid deliberately reaches past it
    kets = np.exp(-0.5 * np.abs(alphas) ** 2)[:, None] * np.array(
        [power_series_amplitudes(alpha, cfg.dim) for alpha in alphas]
    )
    return np.einsum("k,kn,km->nm", weights, kets, kets.conj())


def glauber_identity_quadrature(
    grid: PlanarGridSpec, cfg: TruncationConfig
) -> FockOperator:
    """Polar quadrature of (1/pi) \\int d^2 alpha |alpha><alpha|"""
    return FockOperator(entries=_planar_sum(grid, cfg, None))


def entire_resolution_quadrature(
    series: PolySeries, grid: PlanarGridSpec, cfg: TruncationConfig
) -> FockOperator:
    """Polar quadrature of (1/pi) \\int d^2 alpha f(alpha) |alpha><alpha|"""
    if complex(series.center) != 0:
        raise ValueError(
            f"entire resolution needs a series about 0, got center {series.center}"
        )
    return FockOperator(entries=_planar_sum(grid, cfg, series))


def incomplete_gamma_bound(grid: PlanarGridSpec, n: int) -> float:
    """Mass of the diagonal entry n lost beyond the radial cutoff"""
    return float(gammaincc(n + 1, grid.radial_cutoff**2))
