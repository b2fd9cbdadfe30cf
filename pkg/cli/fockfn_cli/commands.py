"""
Command definitions and handlers for the fockfn command line
"""

import logging
import sys
from collections.abc import Callable
from typing import Any

import numpy as np
from dispatch import CommandHandlers, CommandSpec
from fockfn import (
    DegreeExceedsDimError,
    DomainContainsSingularityError,
    FockOverflowError,
    InsufficientNodesError,
    PolySeries,
    SweepRow,
    SynthResult,
    TailTooLargeError,
    build_ln_a,
    commutator_test,
    eigen_residual,
    identity_quadrature,
    self_adjointness_defect,
    sweep_report,
    synth,
    tail_bound,
    taylor_series,
    translated_identity_quadrature,
    valid_block_deviation,
)
from fockfn.formats import dump_csv_table, get_format, write_csv_table
from pydantic import BaseModel, ValidationError

from .run_config import RingSpec, RunConfig, metadata_for

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_VALIDATION = 2
EXIT_OVERFLOW = 3
EXIT_IO = 4

# Library errors that mean the request itself was out of range
VALIDATION_ERRORS = (
    ValidationError,
    DomainContainsSingularityError,
    DegreeExceedsDimError,
    TailTooLargeError,
    ValueError,
)


class EigenRow(BaseModel):
    """One sampled alpha of an eigen-relation check"""

    alpha_re: float
    alpha_im: float
    residual: float
    tail_bound: float
    extrapolated: bool
    on_boundary: bool


class CommutatorRow(BaseModel):
    """Commutator residual with the configuration that produced it"""

    alpha_re: float
    alpha_im: float
    residual: float
    dim: int
    degree: int
    valid_rows: int
    self_adjointness_defect: float


def _emit_table(
    config: RunConfig, rows: list[Any], fieldnames: list[str] | None = None
) -> None:
    if config.output_path is None:
        dump_csv_table(sys.stdout, rows, fieldnames)
    else:
        write_csv_table(config.output_path, rows, fieldnames)


def _guarded(body: Callable[[RunConfig], int]) -> Callable[[dict[str, Any]], int]:
    """Validate arguments and turn library failures into exit statuses"""

    def handler(arguments: dict[str, Any]) -> int:
        try:
            config = RunConfig(**arguments)
            return body(config)
        except FockOverflowError as e:
            where = f" at {e.index}" if e.index is not None else ""
            logger.error(f"Overflow in {e.field or 'computation'}{where}: {e}")
            print(f"error: overflow{where}: {e}", file=sys.stderr)
            return EXIT_OVERFLOW
        except OSError as e:
            logger.error(f"I/O failure: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_IO
        except InsufficientNodesError as e:
            logger.warning(f"Aliasing: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_TOLERANCE
        except VALIDATION_ERRORS as e:
            logger.error(f"Invalid request: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_VALIDATION

    return handler


def _synthesize(config: RunConfig) -> tuple[PolySeries, SynthResult]:
    series = taylor_series(config.kind, config.domain, config.series_degree)
    quadrature = config.route is not None and config.route.startswith("quadrature")
    spec = config.quadrature if quadrature else None
    result = synth(
        series,
        config.truncation,
        route=config.route,
        spec=spec,
        guard_digits=config.guard_digits,
    )
    return series, result


def cmd_build(config: RunConfig) -> int:
    """Synthesize f(a) and write it as a matrix document"""
    series, result = _synthesize(config)
    bound = tail_bound(series)
    metadata = metadata_for(
        config, {"route": result.route, "valid_rows": result.valid_rows}
    )
    writer = get_format(config.format)
    path = writer.write(config.output_path or "", result.op, metadata)
    logger.info(f"Wrote {config.function} operator to {path}")
    print(f"valid_rows {result.valid_rows}")
    print(f"tail_bound {bound!r}")
    return EXIT_OK


def cmd_verify_identity(config: RunConfig) -> int:
    """Circle and translated circle identities against the exact identity"""
    cfg = config.truncation
    if config.nodes < 2 * cfg.dim:
        logger.warning(
            f"Aliasing: {config.nodes} nodes fold back modes of a dim {cfg.dim} "
            "integrand"
        )
        print(f"aliasing: nodes {config.nodes} < 2*dim {2 * cfg.dim}")
        return EXIT_TOLERANCE

    spec = config.quadrature
    identity = np.eye(cfg.dim)
    plain = valid_block_deviation(identity_quadrature(spec, cfg), identity, cfg.dim)
    translated = valid_block_deviation(
        translated_identity_quadrature(
            complex(config.center), spec, cfg, guard_digits=config.guard_digits
        ),
        identity,
        cfg.dim,
    )
    deviation = max(plain, translated)
    print(f"identity_deviation {plain!r}")
    print(f"translated_deviation {translated!r}")
    print(f"max_deviation {deviation!r}")
    if deviation > config.tol_identity:
        logger.error(
            f"Identity deviation {deviation:.3e} exceeds {config.tol_identity:.1e}"
        )
        return EXIT_TOLERANCE
    return EXIT_OK


def _eigen_alphas(config: RunConfig) -> list[complex]:
    if config.alphas:
        return [complex(a) for a in config.alphas]
    ring = config.ring or RingSpec(
        center=config.center, radius=0.8 * config.radius, count=16
    )
    return ring.points()


def cmd_eigen_test(config: RunConfig) -> int:
    """Eigen-relation residuals on a ring of coherent amplitudes"""
    series, result = _synthesize(config)
    bound = tail_bound(series)
    threshold = max(10 * bound, config.tol_eigen)
    cfg = config.truncation

    rows = []
    for alpha in _eigen_alphas(config):
        f_value = config.kind.evaluate(alpha, config.center)
        check = eigen_residual(result, alpha, f_value, cfg)
        rows.append(
            EigenRow(
                alpha_re=alpha.real,
                alpha_im=alpha.imag,
                residual=check.residual,
                tail_bound=bound,
                extrapolated=check.extrapolated,
                on_boundary=check.on_boundary,
            )
        )
    _emit_table(config, rows)

    if any(row.extrapolated for row in rows):
        logger.warning(
            "Some alphas lie outside the domain, their rows are marked extrapolated"
        )
    failing = [row for row in rows if not row.extrapolated and row.residual > threshold]
    if failing:
        listed = ", ".join(f"{complex(r.alpha_re, r.alpha_im)}" for r in failing)
        logger.error(f"Eigen residual above {threshold:.3e} at alpha: {listed}")
        print(f"failing alpha: {listed}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_commutator(config: RunConfig) -> int:
    """[N, -i ln a] = i on a coherent state"""
    cfg = config.truncation
    result = build_ln_a(config.domain, config.series_degree, cfg)
    alpha = complex(config.center if config.alpha is None else config.alpha)
    report = commutator_test(result, alpha, cfg)
    row = CommutatorRow(
        alpha_re=alpha.real,
        alpha_im=alpha.imag,
        residual=report.residual,
        dim=report.dim,
        degree=report.degree,
        valid_rows=report.valid_rows,
        self_adjointness_defect=self_adjointness_defect(result),
    )
    _emit_table(config, [row])
    if report.residual > config.tol_commutator:
        logger.error(
            f"Commutator residual {report.residual:.3e} exceeds "
            f"{config.tol_commutator:.1e}"
        )
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_convergence(config: RunConfig) -> int:
    """Residual table over degrees, dimensions and alphas"""
    degrees = config.degrees or [config.series_degree]
    dims = config.dims or [config.dim]
    alphas = [complex(a) for a in config.alphas] or (
        config.ring.points() if config.ring else [complex(config.center)]
    )
    rows = sweep_report(config.kind, config.domain, degrees, dims, alphas)
    _emit_table(config, rows, list(SweepRow.model_fields))
    failed = sum(1 for row in rows if row.error is not None)
    if failed:
        logger.warning(
            f"{failed} of {len(rows)} sweep cells failed, see the error column"
        )
    return EXIT_OK


fockfn_commands = [
    CommandSpec(
        name="build",
        description="Synthesize f(a) and write the matrix (opmatrix-v1 or csv)",
    ),
    CommandSpec(
        name="verify-identity",
        description="Check the circle identity and its translated form",
    ),
    CommandSpec(
        name="eigen-test",
        description="Eigen-relation residuals of f(a) on a ring of coherent states",
    ),
    CommandSpec(
        name="commutator",
        description="Residual of [N, -i ln a] = i on a coherent state",
    ),
    CommandSpec(
        name="convergence",
        description="Residual table over degrees, dimensions and alphas",
    ),
]

fockfn_handlers: CommandHandlers = {
    "build": _guarded(cmd_build),
    "verify-identity": _guarded(cmd_verify_identity),
    "eigen-test": _guarded(cmd_eigen_test),
    "commutator": _guarded(cmd_commutator),
    "convergence": _guarded(cmd_convergence),
}
