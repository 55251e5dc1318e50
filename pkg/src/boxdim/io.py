"""Point files in, point files and box-count plots out.

Point files hold one point per line with delimiter-separated decimal
coordinates and an optional single header line.  Input may use LF or CRLF
line endings; output always uses LF.
"""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass
from typing import Optional

from .boxcount import BoxCountPlot
from .core import RawDataset
from .errors import DomainError, ParseError

_FORBIDDEN_DELIMITERS = set("0123456789+-.eE\r\n")


@dataclass(frozen=True)
class IngestOptions:
    delimiter: str = ","
    has_header: bool = False
    expected_dim: Optional[int] = None

    def __post_init__(self):
        if len(self.delimiter) != 1 or self.delimiter in _FORBIDDEN_DELIMITERS:
            raise DomainError(f"unusable delimiter {self.delimiter!r}")

    def split(self, line: str) -> list:
        if self.delimiter.isspace():
            return line.split()
        return [f.strip() for f in line.split(self.delimiter)]


def _lines(source):
    if isinstance(source, (str, bytes, os.PathLike)):
        with open(source, "rb") as fh:
            yield from _lines(fh)
        return
    first = True
    for raw in source:
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8-sig" if first else "utf-8")
        elif first and raw.startswith("\ufeff"):
            raw = raw[1:]
        first = False
        yield raw.rstrip("\r\n")


def read_points(source, opts: Optional[IngestOptions] = None) -> RawDataset:
    """Parse a point file from a path, or a text or binary stream."""
    opts = opts or IngestOptions()
    rows = []
    dim = opts.expected_dim
    header_pending = opts.has_header
    for lineno, line in enumerate(_lines(source), start=1):
        if not line.strip():
            continue
        if header_pending:
            header_pending = False
            continue
        fields = opts.split(line)
        if dim is None:
            dim = len(fields)
        elif len(fields) != dim:
            if not rows and opts.expected_dim is not None:
                raise DomainError(
                    f"line {lineno}: expected {opts.expected_dim} attributes, found {len(fields)}"
                )
            raise ParseError(f"expected {dim} fields, found {len(fields)}", lineno)
        row = []
        for col, text in enumerate(fields, start=1):
            try:
                value = float(text)
            except ValueError:
                raise ParseError(f"not a number: {text!r}", lineno, col) from None
            if value != value or value in (float("inf"), float("-inf")):
                raise ParseError(f"non-finite value {text!r}", lineno, col)
            row.append(value)
        rows.append(row)
    if not rows:
        raise DomainError("empty dataset")
    return RawDataset(rows)


def write_points(data: RawDataset, sink, opts: Optional[IngestOptions] = None) -> None:
    """Write points so that :func:`read_points` gives back the same floats."""
    opts = opts or IngestOptions()
    points = data.points if isinstance(data, RawDataset) else RawDataset(data).points
    delim = opts.delimiter
    if opts.has_header:
        sink.write(delim.join(f"x{d}" for d in range(points.shape[1])) + "\n")
    buf = io.StringIO()
    for row in points.tolist():
        buf.write(delim.join(map(repr, row)))
        buf.write("\n")
    sink.write(buf.getvalue())


def _g6(value: float) -> str:
    return f"{value:.6g}"


def write_plot(plot: BoxCountPlot, sink, fmt: str = "tsv", estimate=None) -> None:
    """Write the per-level box-count table, plus the fit as ``#`` comments.

    Columns are ``j, r, log2_r, S, log2_S``; every number but ``S`` is shown
    with 6 significant digits.
    """
    if fmt not in ("tsv", "csv"):
        raise DomainError(f"plot format must be 'tsv' or 'csv', got {fmt!r}")
    sep = "\t" if fmt == "tsv" else ","
    out = [sep.join(("j", "r", "log2_r", "S", "log2_S"))]
    for rec in sorted(plot.records, key=lambda r: r.j):
        out.append(sep.join((
            str(rec.j), _g6(rec.r), _g6(-rec.j), str(rec.s), _g6(math.log2(rec.s)),
        )))
    if estimate is not None:
        out.append(f"# d2 = {_g6(estimate.d2)}")
        out.append(f"# r_squared = {_g6(estimate.r_squared)}")
        out.append(f"# fit_range = {estimate.range}")
        out.append(f"# algorithm = {estimate.algorithm}")
    sink.write("\n".join(out) + "\n")
