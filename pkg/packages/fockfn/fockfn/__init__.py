"""
fockfn - analytic functions of the annihilation operator in truncated Fock space

Builds f(a) for functions analytic on a disk, including ln a and 1/a, through
banded dyad sums, translated dyad sums and circle-contour quadrature, and
checks the results against the coherent-state eigen-relation.
"""

from .apps import (
    CommutatorReport,
    SweepRow,
    build_inv_a,
    build_ln_a,
    commutator_test,
    left_inverse_residual,
    ln_inv_consistency,
    self_adjointness_defect,
    sweep_report,
)
from .approx import (
    boundary_fit,
    collapse,
    eval_series,
    eval_series_flagged,
    runge_increments,
    sampled_boundary_error,
    tail_bound,
    taylor_series,
)
from .balanced import BalancedOperator
from .config import FockfnSettings
from .contour import (
    entire_resolution_quadrature,
    glauber_identity_quadrature,
    identity_quadrature,
    incomplete_gamma_bound,
    translated_identity_quadrature,
)
from .errors import (
    DegreeExceedsDimError,
    DomainContainsSingularityError,
    FockfnError,
    FockOverflowError,
    FormatError,
    IllConditionedError,
    InsufficientNodesError,
    TailTooLargeError,
    UnknownTailError,
    ZeroGammaError,
)
from .fock_core import (
    coherent,
    dual_bra,
    j_weight,
    ladder_a,
    ladder_adag,
    log_factorial,
    log_j_weight,
    ncs,
    number_op,
    translation_op,
)
from .synth import (
    ChiMatrix,
    EigenResidual,
    SynthResult,
    chi_coeffs,
    eigen_residual,
    synth,
    synth_direct,
    synth_origin,
    synth_quadrature,
    synth_runge_sum,
    synth_translated,
    valid_block_deviation,
)
from .types import (
    DiskDomain,
    DualBraVector,
    FockOperator,
    FockVector,
    FunctionKind,
    PlanarGridSpec,
    PolySeries,
    QuadratureSpec,
    TruncationConfig,
)

__all__ = [
    "TruncationConfig",
    "FockVector",
    "FockOperator",
    "DualBraVector",
    "QuadratureSpec",
    "PlanarGridSpec",
    "DiskDomain",
    "FunctionKind",
    "PolySeries",
    "FockfnSettings",
    "BalancedOperator",
    "log_factorial",
    "ladder_a",
    "ladder_adag",
    "number_op",
    "coherent",
    "ncs",
    "dual_bra",
    "j_weight",
    "log_j_weight",
    "translation_op",
    "identity_quadrature",
    "translated_identity_quadrature",
    "glauber_identity_quadrature",
    "entire_resolution_quadrature",
    "incomplete_gamma_bound",
    "taylor_series",
    "tail_bound",
    "boundary_fit",
    "eval_series",
    "eval_series_flagged",
    "runge_increments",
    "collapse",
    "sampled_boundary_error",
    "ChiMatrix",
    "SynthResult",
    "EigenResidual",
    "synth",
    "synth_origin",
    "synth_translated",
    "synth_quadrature",
    "synth_direct",
    "synth_runge_sum",
    "chi_coeffs",
    "eigen_residual",
    "valid_block_deviation",
    "CommutatorReport",
    "SweepRow",
    "build_ln_a",
    "build_inv_a",
    "commutator_test",
    "left_inverse_residual",
    "ln_inv_consistency",
    "self_adjointness_defect",
    "sweep_report",
    "FockfnError",
    "TailTooLargeError",
    "ZeroGammaError",
    "FockOverflowError",
    "DomainContainsSingularityError",
    "UnknownTailError",
    "IllConditionedError",
    "DegreeExceedsDimError",
    "InsufficientNodesError",
    "FormatError",
]
