"""Sweep-CSV parsing with line-accurate error reporting."""

from __future__ import annotations

from dataclasses import dataclass

EXPECTED_HEADER = (
    "subsystem",
    "channel",
    "policy",
    "alpha",
    "r_b",
    "r_c",
    "p_b",
    "p_c",
    "method",
    "concurrence",
    "l1",
)

_FLOAT_FIELDS = ("alpha", "r_b", "r_c", "p_b", "p_c", "concurrence", "l1")


class CsvFormatError(ValueError):
    """Malformed sweep CSV; the message names the offending line."""


@dataclass(frozen=True)
class Row:
    subsystem: str
    channel: str
    policy: str
    alpha: float
    r_b: float
    r_c: float
    p_b: float
    p_c: float
    method: str
    concurrence: float
    l1: float


def read_rows(path: str) -> list[Row]:
    """Parse a sweep CSV, raising CsvFormatError with the bad line number."""
    with open(path, newline="") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise CsvFormatError(f"{path}: line 1: empty file")
    header = tuple(lines[0].split(","))
    if header != EXPECTED_HEADER:
        raise CsvFormatError(
            f"{path}: line 1: bad header {lines[0]!r}, "
            f"expected {','.join(EXPECTED_HEADER)!r}"
        )
    rows = []
    for number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != len(EXPECTED_HEADER):
            raise CsvFormatError(
                f"{path}: line {number}: expected {len(EXPECTED_HEADER)} fields, "
                f"got {len(fields)}"
            )
        record = dict(zip(EXPECTED_HEADER, fields))
        for name in _FLOAT_FIELDS:
            try:
                record[name] = float(record[name])
            except ValueError:
                raise CsvFormatError(
                    f"{path}: line {number}: field {name} is not a number: "
                    f"{record[name]!r}"
                ) from None
        rows.append(Row(**record))
    return rows
