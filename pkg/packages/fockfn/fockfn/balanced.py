"""
Extended-precision operators stored in the factorial-balanced frame

An operator Op is held as S with Op[n][j] = sqrt(j!/n!) * S[n][j]. Products of
ladder operators and binomial sums stay polynomial in this frame, so the
cancellation-heavy translated synthesis can be carried out exactly enough with
mpmath and only rounded to doubles at the end.
"""

import logging
import math
from collections.abc import Callable, Sequence

import mpmath as mp
import numpy as np

from .errors import FockOverflowError
from .fock_core import sqrt_factorial_ratios
from .types import FockOperator

logger = logging.getLogger(__name__)

# Decimal digits of a double, rounded up
DOUBLE_DIGITS = 17

DEFAULT_GUARD_DIGITS = 20


def working_precision(
    log10_magnitude: float, guard_digits: int = DEFAULT_GUARD_DIGITS
) -> int:
    """Digits that keep sums of terms up to 10**log10_magnitude double-accurate"""
    return DOUBLE_DIGITS + guard_digits + max(0, math.ceil(log10_magnitude))


def zeros(dim: int) -> np.ndarray:
    """dim x dim object array of mpc zeros"""
    return np.full((dim, dim), mp.mpc(0), dtype=object)


class BalancedOperator:
    """Operator in the balanced frame, entries are mpmath.mpc"""

    __slots__ = ("entries", "dps")

    def __init__(self, entries: np.ndarray, dps: int):
        self.entries = entries
        self.dps = dps

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @classmethod
    def identity(cls, dim: int, dps: int = DOUBLE_DIGITS) -> "BalancedOperator":
        entries = zeros(dim)
        for n in range(dim):
            entries[n, n] = mp.mpc(1)
        return cls(entries=entries, dps=dps)

    def _derive(self, rule: Callable[[int, int], mp.mpc]) -> "BalancedOperator":
        entries = zeros(self.dim)
        with mp.workdps(self.dps):
            for n in range(self.dim):
                for j in range(self.dim):
                    entries[n, j] = rule(n, j)
        return BalancedOperator(entries=entries, dps=self.dps)

    def scaled(self, factor: complex) -> "BalancedOperator":
        with mp.workdps(self.dps):
            scale = mp.mpc(factor)
            return BalancedOperator(entries=self.entries * scale, dps=self.dps)

    def __add__(self, other: "BalancedOperator") -> "BalancedOperator":
        dps = max(self.dps, other.dps)
        with mp.workdps(dps):
            return BalancedOperator(entries=self.entries + other.entries, dps=dps)

    def __sub__(self, other: "BalancedOperator") -> "BalancedOperator":
        dps = max(self.dps, other.dps)
        with mp.workdps(dps):
            return BalancedOperator(entries=self.entries - other.entries, dps=dps)

    def right_ladder_a(self) -> "BalancedOperator":
        """Op . a"""
        s = self.entries
        return self._derive(lambda n, j: s[n, j - 1] if j > 0 else mp.mpc(0))

    def right_ladder_adag(self) -> "BalancedOperator":
        """Op . a^dag, with the truncated a^dag"""
        s, last = self.entries, self.dim - 1
        return self._derive(
            lambda n, j: (j + 1) * s[n, j + 1] if j < last else mp.mpc(0)
        )

    def left_ladder_adag(self) -> "BalancedOperator":
        """a^dag . Op"""
        s = self.entries
        return self._derive(lambda n, j: n * s[n - 1, j] if n > 0 else mp.mpc(0))

    def number_commutator(self) -> "BalancedOperator":
        """[N, Op]"""
        s = self.entries
        return self._derive(lambda n, j: (n - j) * s[n, j])

    def to_fock_operator(self) -> FockOperator:
        """Round to doubles and restore the factorial scaling"""
        with mp.workdps(self.dps):
            rounded = np.array(
                [[complex(value) for value in row] for row in self.entries],
                dtype=np.complex128,
            )
        ratios = sqrt_factorial_ratios(self.dim)
        with np.errstate(over="ignore", invalid="ignore"):
            scaled = np.where(rounded == 0, 0.0, ratios * rounded)
        if not np.all(np.isfinite(scaled)):
            bad = np.argwhere(~np.isfinite(scaled))[0]
            raise FockOverflowError(
                f"entry ({bad[0]}, {bad[1]}) leaves the floating range",
                index=(int(bad[0]), int(bad[1])),
            )
        return FockOperator(entries=scaled)

    def apply_coherent(self, alpha: complex, rows: int | None = None) -> np.ndarray:
        """(Op |alpha>)[n] for n < rows, evaluated at working precision"""
        rows = self.dim if rows is None else rows
        with mp.workdps(self.dps):
            a = mp.mpc(alpha)
            powers = [mp.mpc(1)]
            for _ in range(1, self.dim):
                powers.append(powers[-1] * a)
            prefactor = mp.exp(-abs(a) ** 2 / 2)
            result = np.empty(rows, dtype=np.complex128)
            for n in range(rows):
                total = mp.fdot(self.entries[n, :].tolist(), powers)
                result[n] = complex(prefactor * total / mp.sqrt(mp.factorial(n)))
        return result


def log10_sum_magnitude(center: complex, coeffs: Sequence[complex], dim: int) -> float:
    """log10 of D 4^D rho^(D+L) sum|c_k|, a bound on the terms of the balanced sums"""
    rho = max(1.0, abs(complex(center)))
    weight = float(np.sum(np.abs(np.asarray(coeffs, dtype=np.complex128)))) or 1.0
    degree = len(coeffs) - 1
    return (
        math.log10(dim)
        + dim * math.log10(4)
        + (dim + degree) * math.log10(rho)
        + math.log10(weight)
    )


def binomial_sum(
    center: complex,
    coeffs: Sequence[complex],
    dim: int,
    dps: int,
    modulus: int | None = None,
    radius: float = 1.0,
) -> np.ndarray:
    """X with chi[n][m] = sqrt(m!/n!) X[n][m], before the exp(-z0 a^dag) factor

    With a modulus, the M-node trapezoid version on |gamma| = radius, where
    only Laurent powers divisible by M survive.
    """
    degree = len(coeffs) - 1
    chi = zeros(dim)
    with mp.workdps(dps):
        z0 = mp.mpc(complex(center))
        terms = [mp.mpc(complex(c)) for c in coeffs]
        z_powers = [mp.mpc(1)]
        for _ in range(dim):
            z_powers.append(z_powers[-1] * z0)
        r = mp.mpf(radius)
        for n in range(dim):
            last = dim - 1 if modulus is not None else min(n + degree, dim - 1)
            for m in range(last + 1):
                total = mp.mpc(0)
                for k, c in enumerate(terms):
                    if c == 0:
                        continue
                    if modulus is None:
                        q = m - k
                        if 0 <= q <= n:
                            total += c * math.comb(n, q) * z_powers[n - q]
                    else:
                        for q in range((m - k) % modulus, n + 1, modulus):
                            term = math.comb(n, q) * z_powers[n - q]
                            total += c * term * r ** (q + k - m)
                chi[n, m] = total
    return chi


def translate_right(entries: np.ndarray, center: complex, dps: int) -> np.ndarray:
    """Right-multiply by exp(-z0 a^dag) in the balanced frame"""
    dim = entries.shape[0]
    product = zeros(dim)
    with mp.workdps(dps):
        shift = -mp.mpc(complex(center))
        shift_powers = [mp.mpc(1)]
        for _ in range(dim):
            shift_powers.append(shift_powers[-1] * shift)
        # columns[j][i] = binom(j+i, j) shift^i, entry (j+i, j) of the translation
        columns = [
            [math.comb(j + i, j) * shift_powers[i] for i in range(dim - j)]
            for j in range(dim)
        ]
        for n in range(dim):
            nonzero = [m for m in range(dim) if entries[n, m] != 0]
            if not nonzero:
                continue
            extent = nonzero[-1]
            row = entries[n, :].tolist()
            for j in range(extent + 1):
                product[n, j] = mp.fdot(
                    row[j : extent + 1], columns[j][: extent + 1 - j]
                )
    return product


def translated_sum(
    center: complex,
    coeffs: Sequence[complex],
    dim: int,
    guard_digits: int,
    modulus: int | None = None,
    radius: float = 1.0,
) -> BalancedOperator:
    """sum_k c_k (a - z0)^k, or its trapezoid version, at working precision"""
    dps = working_precision(log10_sum_magnitude(center, coeffs, dim), guard_digits)
    logger.debug(
        f"Balanced sum at {dps} digits, dim={dim} degree={len(coeffs) - 1} "
        f"center={complex(center)}"
    )
    entries = binomial_sum(center, coeffs, dim, dps, modulus=modulus, radius=radius)
    if complex(center) != 0:
        entries = translate_right(entries, center, dps)
    return BalancedOperator(entries=entries, dps=dps)
