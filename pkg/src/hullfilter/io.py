"""Point files.

Binary PTS2 layout, all little-endian::

    b"PTS2" | u8 precision tag (0 = f32, 1 = f64) | u64 count | count * (x, y)

CSV files carry a single ``x,y`` header line and are written with enough
digits to round-trip exactly.
"""

from __future__ import annotations

import io as _io
import struct
from pathlib import Path

import numpy as np

from .errors import FormatError, NonFiniteCoordinate, PrecisionMismatch
from .geometry import PointSet, Precision

__all__ = [
    "MAGIC",
    "write_points",
    "read_points",
    "write_csv",
    "read_csv",
    "save",
    "load",
]

MAGIC = b"PTS2"
_HEADER = struct.Struct("<4sBQ")
_LE = {Precision.F32: np.dtype("<f4"), Precision.F64: np.dtype("<f8")}


def write_points(path, s: PointSet) -> None:
    prec = s.precision
    body = np.empty(2 * s.n, dtype=_LE[prec])
    body[0::2] = s.xs
    body[1::2] = s.ys
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, prec.tag, s.n))
        fh.write(body.tobytes())


def read_points(path, precision: Precision | None = None) -> PointSet:
    """Read a PTS2 file; ``precision``, if given, must match the file's."""
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise FormatError(f"{path}: truncated header ({len(data)} bytes)")
    magic, tag, count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}")
    try:
        file_prec = Precision.from_tag(tag)
    except ValueError:
        raise FormatError(f"{path}: unknown precision tag {tag}") from None
    if precision is not None and precision is not file_prec:
        raise PrecisionMismatch(
            f"{path}: file holds {file_prec.value}, requested {precision.value}"
        )
    dtype = _LE[file_prec]
    expected = _HEADER.size + 2 * count * dtype.itemsize
    if len(data) != expected:
        raise FormatError(f"{path}: expected {expected} bytes for {count} points, got {len(data)}")
    body = np.frombuffer(data, dtype=dtype, offset=_HEADER.size)
    native = file_prec.dtype
    try:
        return PointSet(body[0::2].astype(native), body[1::2].astype(native))
    except NonFiniteCoordinate as exc:
        raise FormatError(f"{path}: {exc}") from None


def write_csv(path_or_file, s: PointSet) -> None:
    fmt = "%.9g" if s.precision is Precision.F32 else "%.17g"
    np.savetxt(
        path_or_file,
        np.column_stack([s.xs, s.ys]),
        fmt=fmt,
        delimiter=",",
        header="x,y",
        comments="",
    )


def read_csv(path, precision: Precision = Precision.F32) -> PointSet:
    text = Path(path).read_text()
    first, _, rest = text.partition("\n")
    if first.strip().replace(" ", "") != "x,y":
        raise FormatError(f"{path}: expected header 'x,y', got {first!r}")
    if not rest.strip():
        return PointSet.empty(precision)
    try:
        arr = np.loadtxt(_io.StringIO(rest), delimiter=",", dtype=np.float64, ndmin=2)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from None
    if arr.shape[1] != 2:
        raise FormatError(f"{path}: expected 2 columns, got {arr.shape[1]}")
    try:
        return PointSet(arr[:, 0], arr[:, 1], precision)
    except NonFiniteCoordinate as exc:
        raise FormatError(f"{path}: {exc}") from None


def save(path, s: PointSet) -> None:
    """Write by extension: ``.csv`` as CSV, anything else as PTS2."""
    if str(path).lower().endswith(".csv"):
        write_csv(path, s)
    else:
        write_points(path, s)


def load(path, precision: Precision | None = None) -> PointSet:
    if str(path).lower().endswith(".csv"):
        return read_csv(path, precision or Precision.F32)
    return read_points(path, precision)
