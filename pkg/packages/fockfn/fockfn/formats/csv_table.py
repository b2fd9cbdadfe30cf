"""
CSV matrices and report tables
"""

import csv
import io
import logging
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any, TextIO

import numpy as np
from pydantic import BaseModel

from ..errors import FormatError
from ..types import FockOperator
from .base import MatrixFormat, Metadata, format_real

logger = logging.getLogger(__name__)

MATRIX_COLUMNS = ["n", "m", "re", "im"]


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_real(value)
    return str(value)


def _records(rows: Sequence[BaseModel | Mapping[str, Any]]) -> list[dict[str, Any]]:
    return [
        row.model_dump() if isinstance(row, BaseModel) else dict(row) for row in rows
    ]


def dump_csv_table(
    stream: TextIO,
    rows: Sequence[BaseModel | Mapping[str, Any]],
    fieldnames: Sequence[str] | None = None,
) -> None:
    """Header row plus one line per record, locale-independent number text"""
    records = _records(rows)
    if fieldnames is not None:
        columns = list(fieldnames)
    else:
        columns = list(records[0]) if records else []
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([_cell(record.get(column)) for column in columns])


def write_csv_table(
    path: Path | str,
    rows: Sequence[BaseModel | Mapping[str, Any]],
    fieldnames: Sequence[str] | None = None,
) -> Path:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="") as f:
            dump_csv_table(f, rows, fieldnames)
    except OSError as e:
        logger.error(f"Error writing table {target}: {e}")
        raise
    logger.debug(f"Wrote {len(rows)} rows to {target}")
    return target


class CsvMatrixFormat(MatrixFormat):
    """One (n, m, re, im) row per entry, metadata as leading # lines"""

    name = "csv"

    def dumps(self, op: FockOperator, metadata: Metadata | None = None) -> str:
        stream = io.StringIO()
        for key, value in (metadata or {}).items():
            stream.write(f"# {key}: {value}\n")
        records = [
            {"n": n, "m": m, "re": float(v.real), "im": float(v.imag)}
            for (n, m), v in np.ndenumerate(op.entries)
        ]
        dump_csv_table(stream, records, MATRIX_COLUMNS)
        return stream.getvalue()

    def loads(self, text: str) -> tuple[FockOperator, Metadata]:
        metadata: Metadata = {}
        body = []
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, value = line[1:].partition(":")
                metadata[key.strip()] = value.strip()
            elif line.strip():
                body.append(line)
        reader = csv.DictReader(body)
        if reader.fieldnames != MATRIX_COLUMNS:
            raise FormatError(
                f"expected columns {MATRIX_COLUMNS}, got {reader.fieldnames}"
            )
        cells = {}
        try:
            for record in reader:
                value = complex(float(record["re"]), float(record["im"]))
                cells[int(record["n"]), int(record["m"])] = value
        except (TypeError, ValueError) as e:
            raise FormatError(f"bad matrix row: {e}") from e
        if not cells:
            raise FormatError("no matrix rows")
        dim = int(round(len(cells) ** 0.5))
        grid = {(n, m) for n in range(dim) for m in range(dim)}
        if dim * dim != len(cells) or set(cells) != grid:
            raise FormatError("matrix rows do not cover a square index grid")
        entries = np.empty((dim, dim), dtype=np.complex128)
        for (n, m), value in cells.items():
            entries[n, m] = value
        try:
            return FockOperator(entries=entries), metadata
        except ValueError as e:
            raise FormatError(f"invalid matrix: {e}") from e
