"""CSV input and output for the command-line front end.

Two input shapes are supported. A count-matrix CSV has a header row of
column labels (first cell blank or "table") and one body row per table
row: label followed by integer counts. A record CSV has a two-column
header naming the variables and one (row category, column category)
observation per line.
"""

from __future__ import annotations

import csv
import io as _stdio
from pathlib import Path

import numpy as np

from .table import ContingencyTable, crosstab

__all__ = [
    "InputFormatError",
    "parse_counts_csv",
    "parse_records_csv",
    "counts_csv_text",
]


class InputFormatError(Exception):
    """Raised when an input file cannot be parsed under its declared
    format; maps to exit code 2 in the CLI."""


def _parse_count_cell(cell: str, line: int, column: int) -> int:
    # Thousands separators survive CSV quoting ("2,892"); strip them.
    text = cell.strip().replace(",", "")
    try:
        value = int(text)
    except ValueError:
        raise InputFormatError(
            f"line {line}, column {column}: expected an integer count, "
            f"got {cell!r}") from None
    if value < 0:
        raise InputFormatError(
            f"line {line}, column {column}: negative count {value}")
    return value


def _read_rows(path: str | Path) -> list[list[str]]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh)]
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise InputFormatError(f"{path} is not valid UTF-8: {exc}") from exc
    return [row for row in rows if any(cell.strip() for cell in row)]


def parse_counts_csv(path: str | Path) -> ContingencyTable:
    """Parse a count-matrix CSV into a table, preserving file order."""
    rows = _read_rows(path)
    if len(rows) < 2:
        raise InputFormatError(f"{path}: need a header row and at least 2 data rows")
    header = rows[0]
    if len(header) < 3:
        raise InputFormatError(
            f"{path}: header must name at least 2 columns, got {len(header) - 1}")
    col_labels = [cell.strip() for cell in header[1:]]
    body = rows[1:]
    if len(body) < 2:
        raise InputFormatError(f"{path}: at least 2 rows required")
    row_labels: list[str] = []
    counts = np.zeros((len(body), len(col_labels)), dtype=np.int64)
    for i, row in enumerate(body):
        line = i + 2
        if len(row) != len(col_labels) + 1:
            raise InputFormatError(
                f"line {line}: expected {len(col_labels) + 1} cells, got {len(row)}")
        row_labels.append(row[0].strip())
        for j, cell in enumerate(row[1:]):
            counts[i, j] = _parse_count_cell(cell, line, j + 2)
    try:
        return ContingencyTable(counts, tuple(row_labels), tuple(col_labels))
    except ValueError as exc:
        raise InputFormatError(f"{path}: {exc}") from exc


def parse_records_csv(path: str | Path) -> tuple[ContingencyTable, tuple[str, str]]:
    """Parse a two-column record CSV and cross-tabulate it. Returns the
    table plus the two variable names from the header."""
    rows = _read_rows(path)
    if not rows:
        raise InputFormatError(f"{path}: empty file")
    header = rows[0]
    if len(header) != 2:
        raise InputFormatError(
            f"{path}: record files need exactly 2 columns, got {len(header)}")
    names = (header[0].strip(), header[1].strip())
    records = []
    for i, row in enumerate(rows[1:]):
        if len(row) != 2:
            raise InputFormatError(f"line {i + 2}: expected 2 cells, got {len(row)}")
        records.append((row[0].strip(), row[1].strip()))
    if not records:
        raise InputFormatError(f"{path}: no records after the header")
    try:
        return crosstab(records), names
    except ValueError as exc:
        raise InputFormatError(f"{path}: {exc}") from exc


def counts_csv_text(table: ContingencyTable) -> str:
    """Render a table in the count-matrix CSV format; the output parses
    back to an identical table."""
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["table", *table.col_labels])
    for label, row in zip(table.row_labels, table.counts):
        writer.writerow([label, *(int(c) for c in row)])
    return buf.getvalue()
