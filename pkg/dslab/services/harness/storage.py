"""
Run artifacts on disk.

series.csv          step,t,linf,l2,energy,delta_e (17 significant digits)
snap_<seq>.f2d      little-endian: b"DS2F", u32 version, u32 N, f64 D, f64 t, f64 eps,
                    then N² complex128 row-major (interleaved re, im)
report.txt          key = value lines
exact_compare.csv   step,t,rel_error
"""

import os
import struct
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np
import pandas as pd

from dslab.core.exceptions import ConfigurationError, DataError, SnapshotFormatError
from dslab.enums.types import FieldSpace
from dslab.models.field import ComplexField2D
from dslab.schemas.results import DiagnosticsRecord, RunReport
from dslab.services.spectral.grid import make_grid

SERIES_COLUMNS = ["step", "t", "linf", "l2", "energy", "delta_e"]
EXACT_COLUMNS = ["step", "t", "rel_error"]
FLOAT_FORMAT = "%.17g"

SNAPSHOT_MAGIC = b"DS2F"
SNAPSHOT_VERSION = 1
_HEADER = struct.Struct("<4sIIddd")


@dataclass
class Snapshot:
    field: ComplexField2D
    t: float
    epsilon: float


def snapshot_name(seq: int) -> str:
    return f"snap_{seq:03d}.f2d"


def write_series(path: str, records: Sequence[DiagnosticsRecord]) -> str:
    df = pd.DataFrame([r.model_dump() for r in records], columns=SERIES_COLUMNS)
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def read_series(path: str) -> List[DiagnosticsRecord]:
    if not os.path.exists(path):
        raise DataError(f"Series file not found: {path}")
    try:
        df = pd.read_csv(path, float_precision="round_trip")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DataError(f"Unreadable series file {path}: {e}")
    missing = [c for c in SERIES_COLUMNS if c not in df.columns]
    if missing:
        raise DataError(f"Series file {path} lacks columns {missing}")
    return [DiagnosticsRecord(**row) for row in df[SERIES_COLUMNS].to_dict(orient="records")]


def write_snapshot(path: str, field: ComplexField2D, t: float, epsilon: float = 1.0) -> str:
    if field.space != FieldSpace.PHYSICAL:
        raise DataError("only physical fields are written as snapshots")
    grid = field.grid
    header = _HEADER.pack(SNAPSHOT_MAGIC, SNAPSHOT_VERSION, grid.N, grid.D, float(t), float(epsilon))
    with open(path, "wb") as f:
        f.write(header)
        f.write(np.ascontiguousarray(field.data, dtype="<c16").tobytes())
    return path


def read_snapshot(path: str) -> Snapshot:
    if not os.path.exists(path):
        raise DataError(f"Snapshot file not found: {path}")
    with open(path, "rb") as f:
        raw = f.read()
    if len(raw) < _HEADER.size:
        raise SnapshotFormatError(f"{path}: truncated header")
    magic, version, N, D, t, epsilon = _HEADER.unpack_from(raw)
    if magic != SNAPSHOT_MAGIC:
        raise SnapshotFormatError(f"{path}: bad magic {magic!r}")
    if version != SNAPSHOT_VERSION:
        raise SnapshotFormatError(f"{path}: unsupported version {version}")
    expected = _HEADER.size + 16 * N * N
    if len(raw) != expected:
        raise SnapshotFormatError(
            f"{path}: size {len(raw)} does not match N={N}", details={"expected": expected}
        )
    try:
        grid = make_grid(D, N)
    except ConfigurationError as e:
        raise SnapshotFormatError(f"{path}: invalid grid in header ({e.message})")
    data = np.frombuffer(raw, dtype="<c16", offset=_HEADER.size).reshape(N, N).astype(np.complex128)
    return Snapshot(field=ComplexField2D(grid, data), t=t, epsilon=epsilon)


def write_exact_compare(path: str, rows: Iterable[Tuple[int, float, float]]) -> str:
    df = pd.DataFrame(list(rows), columns=EXACT_COLUMNS)
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def _flatten(prefix: str, value: Any, out: Dict[str, Any]):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        for i, v in enumerate(value):
            _flatten(f"{prefix}.{i}", v, out)
    else:
        out[prefix] = value


def report_lines(report: RunReport) -> List[str]:
    flat: Dict[str, Any] = {}
    _flatten("", report.model_dump(mode="json"), flat)
    lines = []
    for key, value in flat.items():
        if isinstance(value, float):
            value = repr(value)
        elif isinstance(value, list):
            value = ", ".join(str(v) for v in value)
        lines.append(f"{key} = {value}")
    return lines


def write_report(path: str, report: RunReport) -> str:
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(report_lines(report)) + "\n")
    return path


def read_report(path: str) -> Dict[str, str]:
    """key = value lines back into a flat dict of strings."""
    if not os.path.exists(path):
        raise DataError(f"Report file not found: {path}")
    out: Dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            key, sep, value = line.rstrip("\n").partition(" = ")
            if sep:
                out[key] = value
    return out
