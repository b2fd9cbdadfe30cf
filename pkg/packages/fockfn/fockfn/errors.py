"""
Exception hierarchy for fockfn
"""


class FockfnError(Exception):
    """Base class for all fockfn errors"""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class TailTooLargeError(FockfnError):
    """Coherent-state amplitude beyond the truncation tail guard"""


class ZeroGammaError(FockfnError, ValueError):
    """Dual bra requested at gamma = 0"""


class FockOverflowError(FockfnError, OverflowError):
    """Factorial-scale entry outside the floating range"""

    def __init__(
        self,
        message: str,
        field: str | None = None,
        index: tuple[int, int] | None = None,
    ):
        super().__init__(message, field=field)
        self.index = index


class DomainContainsSingularityError(FockfnError, ValueError):
    """Disk domain reaches the singularity or branch point at 0"""


class UnknownTailError(FockfnError):
    """Series carries no function metadata to bound its tail"""


class IllConditionedError(FockfnError):
    """Least-squares system too ill-conditioned to trust"""


class DegreeExceedsDimError(FockfnError, ValueError):
    """Polynomial degree does not fit in the truncation"""


class InsufficientNodesError(FockfnError):
    """Too few quadrature nodes for exact trapezoid integration"""


class FormatError(FockfnError, ValueError):
    """Malformed matrix document"""
