"""
Matrix document formats
"""

import logging
from abc import ABC, abstractmethod
from pathlib import Path

from ..errors import FormatError
from ..types import FockOperator

logger = logging.getLogger(__name__)

Metadata = dict[str, str]


def format_real(value: float) -> str:
    """17 significant digits, enough for an exact double round-trip"""
    return format(value, ".17g")


class MatrixFormat(ABC):
    """Text serialization of a FockOperator with string metadata"""

    name: str

    @abstractmethod
    def dumps(self, op: FockOperator, metadata: Metadata | None = None) -> str:
        """Render the operator as a document"""

    @abstractmethod
    def loads(self, text: str) -> tuple[FockOperator, Metadata]:
        """Parse a document, raising FormatError when it is malformed"""

    def write(
        self, path: Path | str, op: FockOperator, metadata: Metadata | None = None
    ) -> Path:
        """Write the document, creating parent directories"""
        target = Path(path)
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            with open(target, "w", encoding="utf-8", newline="\n") as f:
                f.write(self.dumps(op, metadata))
        except OSError as e:
            logger.error(f"Error writing {self.name} document {target}: {e}")
            raise
        logger.debug(f"Wrote {op.dim}x{op.dim} {self.name} document to {target}")
        return target

    def read(self, path: Path | str) -> tuple[FockOperator, Metadata]:
        with open(Path(path), encoding="utf-8") as f:
            return self.loads(f.read())


def get_format(name: str) -> MatrixFormat:
    """Look up a format by its command-line name"""
    from .csv_table import CsvMatrixFormat
    from .opmatrix import OpMatrixFormat

    formats: dict[str, type[MatrixFormat]] = {
        OpMatrixFormat.name: OpMatrixFormat,
        CsvMatrixFormat.name: CsvMatrixFormat,
    }
    if name not in formats:
        raise FormatError(
            f"unknown format {name!r}, expected one of {sorted(formats)}",
            field="format",
        )
    return formats[name]()
