"""
Document formats for operators and report tables
"""

from .base import MatrixFormat, format_real, get_format
from .csv_table import CsvMatrixFormat, dump_csv_table, write_csv_table
from .opmatrix import OpMatrixFormat

__all__ = [
    "MatrixFormat",
    "OpMatrixFormat",
    "CsvMatrixFormat",
    "get_format",
    "format_real",
    "dump_csv_table",
    "write_csv_table",
]
