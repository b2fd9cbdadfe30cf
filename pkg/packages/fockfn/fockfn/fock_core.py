"""
Fock-basis states, ladder operators and factorial-scale numerics
"""

import math
from functools import lru_cache

import numpy as np
from scipy.special import gammainc, gammaln

from .errors import FockOverflowError, TailTooLargeError, ZeroGammaError
from .types import DualBraVector, FockOperator, FockVector, TruncationConfig

# Largest n with n! representable as a double
MAX_FACTORIAL_ARG = 170

_EXACT_LOG_FACTORIALS: tuple[float, ...] = tuple(
    math.log(math.factorial(n)) for n in range(21)
)


def log_factorial(n: int) -> float:
    """ln(n!), from an exact table up to 20 and log-gamma above"""
    if n < 0:
        raise ValueError(f"log_factorial requires n >= 0, got {n}")
    if n < len(_EXACT_LOG_FACTORIALS):
        return _EXACT_LOG_FACTORIALS[n]
    return float(gammaln(n + 1.0))


@lru_cache(maxsize=64)
def _log_factorial_table(dim: int) -> np.ndarray:
    table = np.array([log_factorial(n) for n in range(dim)], dtype=np.float64)
    table.setflags(write=False)
    return table


def log_factorials(dim: int) -> np.ndarray:
    """ln(n!) for n = 0 .. dim-1"""
    return _log_factorial_table(dim)


def sqrt_factorial_ratios(dim: int) -> np.ndarray:
    """ratios[n][m] = sqrt(m!/n!), computed in the log domain

    Entries beyond the floating range come back as inf (or 0 below it); callers
    only use the band where the exponent stays small.
    """
    lf = log_factorials(dim)
    with np.errstate(over="ignore", under="ignore"):
        return np.exp(0.5 * (lf[None, :] - lf[:, None]))


def tail_mass(amplitude: complex, cfg: TruncationConfig) -> float:
    """Poisson weight of levels >= dim in a normalized coherent state"""
    return float(gammainc(cfg.dim, abs(amplitude) ** 2))


def _check_tail_guard(amplitude: complex, cfg: TruncationConfig, field: str) -> None:
    if abs(amplitude) ** 2 > cfg.dim / 4:
        raise TailTooLargeError(
            f"|{field}|^2 = {abs(amplitude) ** 2:.6g} exceeds dim/4 = {cfg.dim / 4:g}",
            field=field,
        )


def power_series_amplitudes(gamma: complex, dim: int) -> np.ndarray:
    """gamma^n / sqrt(n!) by running products"""
    steps = np.full(dim, complex(gamma), dtype=np.complex128)
    steps[0] = 1.0
    steps[1:] /= np.sqrt(np.arange(1, dim))
    return np.cumprod(steps)


def ladder_a(cfg: TruncationConfig) -> FockOperator:
    """Annihilation operator, <n|a|n+1> = sqrt(n+1)"""
    entries = np.diagflat(np.sqrt(np.arange(1, cfg.dim)), 1)
    return FockOperator(entries=entries.astype(np.complex128))


def ladder_adag(cfg: TruncationConfig) -> FockOperator:
    """Creation operator"""
    return FockOperator(entries=ladder_a(cfg).entries.conj().T)


def number_op(cfg: TruncationConfig) -> FockOperator:
    return FockOperator(entries=ladder_adag(cfg).entries @ ladder_a(cfg).entries)


def coherent(alpha: complex, cfg: TruncationConfig) -> FockVector:
    """Normalized coherent state, raising when the truncated tail is not negligible"""
    _check_tail_guard(alpha, cfg, "alpha")
    mass = tail_mass(alpha, cfg)
    if mass > cfg.tail_tolerance:
        raise TailTooLargeError(
            f"truncated tail mass {mass:.3e} exceeds {cfg.tail_tolerance:.1e} "
            f"at dim={cfg.dim}",
            field="alpha",
        )
    amps = np.exp(-0.5 * abs(alpha) ** 2) * power_series_amplitudes(alpha, cfg.dim)
    return FockVector(amps=amps, tail_mass=mass)


def ncs(gamma: complex, cfg: TruncationConfig) -> FockVector:
    """Non-normalized coherent state exp(gamma a^dag)|0>"""
    _check_tail_guard(gamma, cfg, "gamma")
    return FockVector(
        amps=power_series_amplitudes(gamma, cfg.dim), tail_mass=tail_mass(gamma, cfg)
    )


def dual_bra(gamma: complex, cfg: TruncationConfig) -> DualBraVector:
    """Analytic dual of ncs: comps[m] = gamma^-m / sqrt(m!)"""
    if gamma == 0:
        raise ZeroGammaError("dual bra is undefined at gamma = 0", field="gamma")
    with np.errstate(over="ignore"):
        comps = power_series_amplitudes(1.0 / complex(gamma), cfg.dim)
    if not np.all(np.isfinite(comps)):
        raise FockOverflowError(
            f"dual bra overflows for |gamma| = {abs(gamma):.3g} at dim={cfg.dim}",
            field="gamma",
        )
    return DualBraVector(comps=comps)


def _check_factorial_range(cfg: TruncationConfig) -> None:
    if cfg.dim - 1 > MAX_FACTORIAL_ARG:
        raise FockOverflowError(
            f"{cfg.dim - 1}! exceeds the floating range, use log_j_weight",
            field="dim",
            index=(cfg.dim - 1, cfg.dim - 1),
        )


def j_weight(cfg: TruncationConfig) -> FockOperator:
    """Diagonal weight n!/(2 pi) of the circle identity"""
    _check_factorial_range(cfg)
    factorials = np.array([float(math.factorial(n)) for n in range(cfg.dim)])
    diagonal = factorials / (2 * math.pi)
    return FockOperator(entries=np.diag(diagonal).astype(np.complex128))


def log_j_weight(cfg: TruncationConfig) -> np.ndarray:
    """Logarithm of the j_weight diagonal, valid for any dim"""
    return log_factorials(cfg.dim) - math.log(2 * math.pi)


def translation_op(beta: complex, cfg: TruncationConfig) -> FockOperator:
    """exp(beta a^dag) as the finite nilpotent sum, one subdiagonal per power"""
    dim = cfg.dim
    entries = np.eye(dim, dtype=np.complex128)
    rows = np.arange(dim)
    # band holds (beta a^dag)^p / p! along subdiagonal p, indexed by row
    band = np.ones(dim, dtype=np.complex128)
    with np.errstate(over="ignore", invalid="ignore"):
        for p in range(1, dim):
            band = band * complex(beta) * np.sqrt(np.maximum(rows - p + 1, 0)) / p
            band[:p] = 0.0
            if not np.any(band):
                break
            entries[rows[p:], rows[p:] - p] = band[p:]
    if not np.all(np.isfinite(entries)):
        bad = np.argwhere(~np.isfinite(entries))[0]
        raise FockOverflowError(
            f"translation operator overflows for |beta| = {abs(beta):.3g} at dim={dim}",
            field="beta",
            index=(int(bad[0]), int(bad[1])),
        )
    return FockOperator(entries=entries)
