"""Delimiter-separated tables as immutable in-memory relations."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import BinaryIO, Sequence


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class Table:
    name: str
    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if len(set(self.columns)) != len(self.columns):
            raise TableError(f"table {self.name!r}: duplicate column names {list(self.columns)}")
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise TableError(
                    f"table {self.name!r}: row {i} has {len(row)} cells, expected {len(self.columns)}"
                )

    def __len__(self) -> int:
        return len(self.rows)

    def column_index(self, column: str) -> int:
        try:
            return self.columns.index(column)
        except ValueError:
            raise TableError(
                f"table {self.name!r} has no column {column!r}; "
                f"available: {', '.join(self.columns) or '(none)'}"
            ) from None


@dataclass(frozen=True)
class ColumnRef:
    """A column of a named table, e.g. ``ColumnRef("Diagnosis", "Intervention")``."""

    table: str
    column: str


def _read_text(source: BinaryIO | bytes | str) -> str:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            # utf-8-sig strips a leading byte-order mark
            return source.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise TableError(f"input is not UTF-8: {exc}") from exc
    return source.removeprefix("\ufeff")


def load_table(source: BinaryIO | bytes | str, name: str, delimiter: str = ",") -> Table:
    """Read a table whose first record is the header.

    Quoting follows the usual CSV conventions. Cells are trimmed; blank
    lines are skipped. Errors refer to 1-based record numbers with the
    header as record 1.
    """
    text = _read_text(source)
    reader = csv.reader(io.StringIO(text, newline=""), delimiter=delimiter, strict=True)
    try:
        records = [(n, rec) for n, rec in enumerate(reader, start=1)]
    except csv.Error as exc:
        raise TableError(f"{name}: malformed input near line {reader.line_num}: {exc}") from exc
    records = [(n, rec) for n, rec in records if rec]
    if not records:
        raise TableError(f"{name}: empty input, a header row is required")

    header_no, header = records[0]
    columns = [c.strip() for c in header]
    if any(not c for c in columns):
        raise TableError(f"{name}: empty column name in header (record {header_no})")
    dupes = sorted({c for c in columns if columns.count(c) > 1})
    if dupes:
        raise TableError(f"{name}: duplicate column name(s) {', '.join(dupes)}")

    rows = []
    for n, rec in records[1:]:
        if len(rec) != len(columns):
            raise TableError(
                f"{name}: ragged row {n}: {len(rec)} cells under a {len(columns)}-column header"
            )
        rows.append(tuple(cell.strip() for cell in rec))
    return Table(name, tuple(columns), tuple(rows))


def dump_table(table: Table, delimiter: str = ",") -> bytes:
    buf = io.StringIO(newline="")
    # CRLF records so that bare CR inside a cell gets quoted
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\r\n")
    writer.writerow(table.columns)
    writer.writerows(table.rows)
    return buf.getvalue().encode("utf-8")


def column_values(table: Table, column: str | ColumnRef) -> list[tuple[int, str]]:
    """``(row index, cell)`` pairs of one column in row order, indices from 0."""
    if isinstance(column, ColumnRef):
        column = column.column
    idx = table.column_index(column)
    return [(i, row[idx]) for i, row in enumerate(table.rows)]


def project(table: Table, row_index: int, column: str) -> str:
    idx = table.column_index(column)
    if not 0 <= row_index < len(table.rows):
        raise TableError(
            f"row index {row_index} out of range for table {table.name!r} with {len(table.rows)} rows"
        )
    return table.rows[row_index][idx]


def from_records(name: str, columns: Sequence[str], rows: Sequence[Sequence[str]]) -> Table:
    return Table(name, tuple(columns), tuple(tuple(r) for r in rows))
