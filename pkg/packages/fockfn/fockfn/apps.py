"""
ln a, 1/a and the number-phase commutator
"""

import logging
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel

from .approx import tail_bound, taylor_series
from .errors import FockfnError
from .fock_core import coherent, ladder_a, ladder_adag, number_op
from .synth import SynthResult, eigen_residual, synth
from .types import DiskDomain, FockOperator, FunctionKind, TruncationConfig

logger = logging.getLogger(__name__)

LOG = FunctionKind(tag="log")
RECIPROCAL = FunctionKind(tag="reciprocal")


class CommutatorReport(BaseModel):
    """State-level residual of [N, -i ln a] = i"""

    alpha: complex
    residual: float
    dim: int
    degree: int
    domain: DiskDomain | None
    valid_rows: int
    interior: bool


class SweepRow(BaseModel):
    """One (degree, dim, alpha) cell of a convergence study"""

    function: str
    degree: int
    dim: int
    alpha_re: float
    alpha_im: float
    eigen_residual: float | None = None
    commutator_residual: float | None = None
    tail_bound: float | None = None
    valid_rows: int | None = None
    extrapolated: bool = False
    error: str | None = None


def build_ln_a(domain: DiskDomain, degree: int, cfg: TruncationConfig) -> SynthResult:
    """ln a from the Taylor series of the principal log about the domain center"""
    return synth(taylor_series(LOG, domain, degree), cfg)


def build_inv_a(domain: DiskDomain, degree: int, cfg: TruncationConfig) -> SynthResult:
    """1/a from the geometric series about the domain center"""
    return synth(taylor_series(RECIPROCAL, domain, degree), cfg)


def _relative_state_residual(
    image: np.ndarray, expected: np.ndarray, state: np.ndarray
) -> float:
    return float(np.linalg.norm(image - expected) / np.linalg.norm(state))


def commutator_test(
    ln_result: SynthResult,
    alpha: complex,
    cfg: TruncationConfig,
    expected: FockOperator | None = None,
) -> CommutatorReport:
    """Residual of ([N, -i Op] - expected)|alpha>, expected defaulting to i I"""
    rows = ln_result.valid_rows - 1
    state = coherent(alpha, cfg).amps

    if ln_result.balanced is not None:
        commutator = ln_result.balanced.number_commutator().scaled(-1j)
        image = commutator.apply_coherent(alpha, rows)
    else:
        n_op, op = number_op(cfg).entries, ln_result.op.entries
        image = ((n_op @ (-1j * op) - (-1j * op) @ n_op) @ state)[:rows]

    if expected is None:
        target = 1j * state[:rows]
    else:
        target = (expected.entries @ state)[:rows]

    interior = True
    if ln_result.domain is not None:
        interior = ln_result.domain.distance(alpha) < 1.0
        if not interior:
            logger.warning(
                f"Commutator test at alpha={complex(alpha)} is not inside the ln domain"
            )

    residual = _relative_state_residual(image, target, state[:rows])
    logger.info(
        f"Commutator residual {residual:.3e} at alpha={complex(alpha)}, "
        f"degree={ln_result.degree}"
    )
    return CommutatorReport(
        alpha=alpha,
        residual=residual,
        dim=cfg.dim,
        degree=ln_result.degree,
        domain=ln_result.domain,
        valid_rows=rows,
        interior=interior,
    )


def left_inverse_residual(
    inv_result: SynthResult, alpha: complex, cfg: TruncationConfig
) -> float:
    """||P_V (inv_a . a - I)|alpha>|| / ||P_V|alpha>||"""
    rows = inv_result.valid_rows - 1
    state = coherent(alpha, cfg).amps[:rows]
    if inv_result.balanced is not None:
        image = inv_result.balanced.right_ladder_a().apply_coherent(alpha, rows)
    else:
        state_image = ladder_a(cfg).entries @ coherent(alpha, cfg).amps
        image = (inv_result.op.entries @ state_image)[:rows]
    return _relative_state_residual(image, state, state)


def ln_inv_consistency(
    ln_result: SynthResult,
    inv_result: SynthResult,
    alpha: complex,
    cfg: TruncationConfig,
) -> float:
    """||P_V (inv_a - [ln_a, a^dag])|alpha>|| / ||P_V|alpha>||"""
    rows = min(ln_result.valid_rows, inv_result.valid_rows) - 1
    state = coherent(alpha, cfg).amps[:rows]
    if ln_result.balanced is not None and inv_result.balanced is not None:
        ln_op = ln_result.balanced
        commutator = ln_op.right_ladder_adag() - ln_op.left_ladder_adag()
        image = (inv_result.balanced - commutator).apply_coherent(alpha, rows)
    else:
        adag, ln_op = ladder_adag(cfg).entries, ln_result.op.entries
        difference = inv_result.op.entries - (ln_op @ adag - adag @ ln_op)
        image = (difference @ coherent(alpha, cfg).amps)[:rows]
    return float(np.linalg.norm(image) / np.linalg.norm(state))


def self_adjointness_defect(result: SynthResult) -> float:
    """max |Op - Op^dag| for Op = -i ln a over the valid block

    Never expected to vanish.
    """
    rows = result.valid_rows
    phase = -1j * result.op.entries[:rows, :rows]
    return float(np.max(np.abs(phase - phase.conj().T)))


def _sort_key(alpha: complex) -> tuple[float, float]:
    return (alpha.real, alpha.imag)


def sweep_report(
    kind: FunctionKind,
    domain: DiskDomain,
    degrees: Sequence[int],
    dims: Sequence[int],
    alphas: Sequence[complex],
) -> list[SweepRow]:
    """Eigen and commutator residuals per (degree, dim, alpha), failures kept as rows"""
    rows: list[SweepRow] = []
    ordered_alphas = sorted((complex(a) for a in alphas), key=_sort_key)
    for degree in sorted(degrees):
        for dim in sorted(dims):
            cell_base = {"function": kind.tag, "degree": degree, "dim": dim}
            try:
                cfg = TruncationConfig(dim=dim)
                series = taylor_series(kind, domain, degree)
                result = synth(series, cfg)
                bound = tail_bound(series)
            except (FockfnError, ValueError) as e:
                logger.error(f"Sweep cell degree={degree} dim={dim} failed: {e}")
                rows.extend(
                    SweepRow(
                        **cell_base, alpha_re=a.real, alpha_im=a.imag, error=str(e)
                    )
                    for a in ordered_alphas
                )
                continue

            for alpha in ordered_alphas:
                row = SweepRow(
                    **cell_base,
                    alpha_re=alpha.real,
                    alpha_im=alpha.imag,
                    tail_bound=bound,
                    valid_rows=result.valid_rows,
                )
                try:
                    f_value = kind.evaluate(alpha, domain.center)
                    check = eigen_residual(result, alpha, f_value, cfg)
                    row.eigen_residual = check.residual
                    row.extrapolated = check.extrapolated
                    if kind.tag == "log":
                        report = commutator_test(result, alpha, cfg)
                        row.commutator_residual = report.residual
                except (FockfnError, ValueError) as e:
                    logger.error(
                        f"Sweep cell degree={degree} dim={dim} alpha={alpha} "
                        f"failed: {e}"
                    )
                    row.error = str(e)
                rows.append(row)
    return rows
