"""
opmatrix v1 documents

    opmatrix v1
    dim D
    # key: value
    re,im re,im ...      (D lines of D entries)
"""

import numpy as np

from ..errors import FormatError
from ..types import FockOperator
from .base import MatrixFormat, Metadata, format_real

HEADER = "opmatrix v1"


class OpMatrixFormat(MatrixFormat):
    """Human-diffable complex matrix text with bit-exact round-trip"""

    name = "opmatrix-v1"

    def dumps(self, op: FockOperator, metadata: Metadata | None = None) -> str:
        lines = [HEADER, f"dim {op.dim}"]
        for key, value in (metadata or {}).items():
            lines.append(f"# {key}: {value}")
        for row in op.entries:
            cells = (f"{format_real(v.real)},{format_real(v.imag)}" for v in row)
            lines.append(" ".join(cells))
        return "\n".join(lines) + "\n"

    def loads(self, text: str) -> tuple[FockOperator, Metadata]:
        metadata: Metadata = {}
        content: list[str] = []
        for line in text.splitlines():
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                key, sep, value = stripped[1:].partition(":")
                if sep:
                    metadata[key.strip()] = value.strip()
                continue
            content.append(stripped)

        if not content or content[0] != HEADER:
            raise FormatError(f"missing '{HEADER}' header")
        if len(content) < 2 or not content[1].startswith("dim "):
            raise FormatError("missing 'dim D' line")
        try:
            dim = int(content[1].split()[1])
        except (IndexError, ValueError) as e:
            raise FormatError(f"bad dim line {content[1]!r}") from e

        rows = content[2:]
        if len(rows) != dim:
            raise FormatError(f"expected {dim} data lines, found {len(rows)}")
        entries = np.empty((dim, dim), dtype=np.complex128)
        for n, row in enumerate(rows):
            cells = row.split()
            if len(cells) != dim:
                raise FormatError(f"row {n} has {len(cells)} entries, expected {dim}")
            for m, cell in enumerate(cells):
                re, sep, im = cell.partition(",")
                try:
                    entries[n, m] = complex(float(re), float(im))
                except ValueError as e:
                    raise FormatError(f"bad entry {cell!r} at ({n}, {m})") from e
                if not sep:
                    raise FormatError(
                        f"entry {cell!r} at ({n}, {m}) is not a re,im pair"
                    )
        try:
            return FockOperator(entries=entries), metadata
        except ValueError as e:
            raise FormatError(f"invalid matrix: {e}") from e
