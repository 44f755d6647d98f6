"""Capture-file container and density CSV serialization.

Capture format (".rmtc"): a fixed 32-byte little-endian header followed by a
row-major payload.

    offset  size  field
    0       4     magic "RMTC"
    4       2     version (u16) = 1
    6       2     dtype (u16): 0 = f32 real, 1 = f32 complex interleaved,
                  2 = i16 real (values scaled by 1/32768 on read)
    8       4     rows (u32)   -- complex dtype: complex rows
    12      4     cols (u32)
    16      16    reserved, zero

Complex payloads interleave Re, Im per sample and expand on read to 2*rows
real rows (real-part block first). Writes are atomic (temp file + rename).
"""

from __future__ import annotations

import os
import struct
import tempfile
from dataclasses import dataclass

import numpy as np

from .curves import DensityCurve
from .errors import (
    BadMagic,
    DimensionMismatch,
    TruncatedPayload,
    UnsupportedDtype,
    UnsupportedVersion,
)
from .linalg import DataMatrix

__all__ = [
    "CaptureHeader",
    "DTYPE_F32_REAL",
    "DTYPE_F32_COMPLEX",
    "DTYPE_I16_REAL",
    "write_capture",
    "read_capture",
    "write_density_csv",
    "read_density_csv",
]

_MAGIC = b"RMTC"
_VERSION = 1
_HEADER = struct.Struct("<4sHHII16s")

DTYPE_F32_REAL = 0
DTYPE_F32_COMPLEX = 1
DTYPE_I16_REAL = 2

_ELEMENT_BYTES = {DTYPE_F32_REAL: 4, DTYPE_F32_COMPLEX: 8, DTYPE_I16_REAL: 2}


@dataclass(frozen=True)
class CaptureHeader:
    dtype: int
    rows: int
    cols: int

    def payload_bytes(self) -> int:
        return self.rows * self.cols * _ELEMENT_BYTES[self.dtype]

    def pack(self) -> bytes:
        return _HEADER.pack(_MAGIC, _VERSION, self.dtype, self.rows, self.cols, b"\0" * 16)

    @classmethod
    def unpack(cls, raw: bytes) -> "CaptureHeader":
        if len(raw) < _HEADER.size:
            raise TruncatedPayload(f"file shorter than the {_HEADER.size}-byte header")
        magic, version, dtype, rows, cols, _ = _HEADER.unpack(raw[: _HEADER.size])
        if magic != _MAGIC:
            raise BadMagic(f"bad magic {magic!r}")
        if version != _VERSION:
            raise UnsupportedVersion(f"version {version} not supported")
        if dtype not in _ELEMENT_BYTES:
            raise UnsupportedDtype(f"dtype code {dtype} not supported")
        return cls(dtype=dtype, rows=rows, cols=cols)


def _atomic_write(path: str, payload: bytes) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".rmtspec-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_capture(path: str, matrix, dtype: int | None = None) -> None:
    """Write a matrix (DataMatrix, real or complex 2-d array) as a capture.

    dtype defaults to f32 (complex-interleaved f32 for complex input). i16
    writes clip to [-1, 1) and scale by 32768 (lossy).
    """
    a = np.asarray(matrix.entries if isinstance(matrix, DataMatrix) else matrix)
    if a.ndim != 2:
        raise DimensionMismatch(f"capture payload must be 2-d, got shape {a.shape}")
    if dtype is None:
        dtype = DTYPE_F32_COMPLEX if np.iscomplexobj(a) else DTYPE_F32_REAL
    if dtype == DTYPE_F32_COMPLEX:
        z = a.astype(np.complex64)
        flat = np.empty(a.size * 2, dtype="<f4")
        flat[0::2] = z.real.reshape(-1)
        flat[1::2] = z.imag.reshape(-1)
        body = flat.tobytes()
    elif dtype == DTYPE_F32_REAL:
        if np.iscomplexobj(a):
            raise UnsupportedDtype("cannot store complex data as f32 real")
        body = a.astype("<f4").tobytes()
    elif dtype == DTYPE_I16_REAL:
        if np.iscomplexobj(a):
            raise UnsupportedDtype("cannot store complex data as i16 real")
        q = np.clip(np.round(a * 32768.0), -32768, 32767).astype("<i2")
        body = q.tobytes()
    else:
        raise UnsupportedDtype(f"dtype code {dtype} not supported")
    header = CaptureHeader(dtype=dtype, rows=a.shape[0], cols=a.shape[1])
    _atomic_write(path, header.pack() + body)


def read_capture(path: str) -> DataMatrix:
    """Read a capture; complex payloads expand to 2*rows real rows."""
    with open(path, "rb") as fh:
        raw = fh.read()
    header = CaptureHeader.unpack(raw)
    body = raw[_HEADER.size:]
    expected = header.payload_bytes()
    if len(body) < expected:
        raise TruncatedPayload(f"payload is {len(body)} bytes, header promises {expected}")
    body = body[:expected]
    rows, cols = header.rows, header.cols
    if header.dtype == DTYPE_F32_REAL:
        a = np.frombuffer(body, dtype="<f4").astype(np.float64).reshape(rows, cols)
        return DataMatrix(a)
    if header.dtype == DTYPE_I16_REAL:
        a = np.frombuffer(body, dtype="<i2").astype(np.float64).reshape(rows, cols)
        return DataMatrix(a / 32768.0)
    flat = np.frombuffer(body, dtype="<f4").astype(np.float64)
    re = flat[0::2].reshape(rows, cols)
    im = flat[1::2].reshape(rows, cols)
    return DataMatrix(np.vstack([re, im]))


def write_density_csv(path: str, curves, labels) -> None:
    """Write one or more density curves as CSV.

    Leading ``# point_mass_<label>=<value>`` comment lines carry nonzero
    atoms; the header row is ``x,<label1>,...``; values use 9 significant
    digits. Curves on different grids are resampled onto the union grid.
    """
    curves = list(curves)
    labels = list(labels)
    if len(curves) != len(labels):
        raise ValueError("need one label per curve")
    if not curves:
        raise ValueError("need at least one curve")
    grids_match = all(len(c.xs) == len(curves[0].xs) and np.array_equal(c.xs, curves[0].xs)
                      for c in curves)
    if grids_match:
        xs = curves[0].xs
        cols = [c.ys for c in curves]
    else:
        lo = min(c.xs[0] for c in curves)
        hi = max(c.xs[-1] for c in curves)
        xs = np.linspace(lo, hi, 2048)
        cols = [c(xs) for c in curves]

    lines = []
    for label, c in zip(labels, curves):
        if c.point_mass_at_zero > 0:
            lines.append(f"# point_mass_{label}={c.point_mass_at_zero:.9g}")
    lines.append("x," + ",".join(labels))
    for i, x in enumerate(xs):
        lines.append(f"{x:.9g}," + ",".join(f"{col[i]:.9g}" for col in cols))
    _atomic_write(path, ("\n".join(lines) + "\n").encode("utf-8"))


def read_density_csv(path: str) -> dict[str, DensityCurve]:
    """Parse a CSV written by ``write_density_csv`` back into curves."""
    atoms: dict[str, float] = {}
    header: list[str] | None = None
    rows: list[list[float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("point_mass_") and "=" in body:
                    key, val = body[len("point_mass_"):].split("=", 1)
                    atoms[key] = float(val)
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append([float(tok) for tok in line.split(",")])
    if header is None or not rows:
        raise ValueError(f"{path} contains no curve data")
    data = np.asarray(rows)
    xs = data[:, 0]
    out = {}
    for j, label in enumerate(header[1:], start=1):
        out[label] = DensityCurve(xs, np.clip(data[:, j], 0.0, None),
                                  point_mass_at_zero=atoms.get(label, 0.0))
    return out
