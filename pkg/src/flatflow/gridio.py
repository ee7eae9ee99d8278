"""On-disk formats: plain-text grid dumps, run-length snapshots, CSV tables.

The grid dump format is one header line

    FLATFLOW-GRID v1 n=<n> dims=<d1,...> spacing=<dx> origin=<o1,...>

followed by row-major whitespace-separated tokens: 0/1 for a GridSet,
decimal floats for a ScalarField.  GridSet round trips bit-exactly.
"""

from __future__ import annotations

import io
import re
from pathlib import Path

import numpy as np

from .grid import Grid, GridSet, ScalarField

_HEADER_RE = re.compile(
    r"^FLATFLOW-GRID v1 n=(\d+) dims=([\d,]+) spacing=(\S+) origin=(\S+)$"
)
_RLE_HEADER_RE = re.compile(
    r"^FLATFLOW-RLE v1 n=(\d+) dims=([\d,]+) spacing=(\S+) origin=(\S+) k=(\d+) t=(\S+)$"
)


def _format_float(x: float) -> str:
    return repr(float(x))


def _header(grid: Grid) -> str:
    dims = ",".join(str(s) for s in grid.shape)
    origin = ",".join(_format_float(o) for o in grid.origin)
    return (
        f"FLATFLOW-GRID v1 n={grid.ndim} dims={dims} "
        f"spacing={_format_float(grid.spacing)} origin={origin}"
    )


def _parse_header(line: str) -> Grid:
    m = _HEADER_RE.match(line.strip())
    if not m:
        raise ValueError(f"not a FLATFLOW-GRID v1 header: {line!r}")
    n = int(m.group(1))
    dims = tuple(int(t) for t in m.group(2).split(","))
    if len(dims) != n:
        raise ValueError("header dims do not match n")
    spacing = float(m.group(3))
    origin = tuple(float(t) for t in m.group(4).split(","))
    return Grid(dims, spacing, origin)


def write_gridset(E: GridSet, path) -> None:
    with open(path, "w") as f:
        f.write(_header(E.grid) + "\n")
        flat = E.cells.astype(np.uint8).ravel()
        for start in range(0, flat.size, 4096):
            chunk = flat[start : start + 4096]
            f.write(" ".join(map(str, chunk)))
            f.write("\n")


def read_gridset(path) -> GridSet:
    with open(path) as f:
        grid = _parse_header(f.readline())
        tokens = f.read().split()
    cells = np.array(tokens, dtype=np.uint8).reshape(grid.shape).astype(bool)
    return GridSet(grid, cells)


def write_scalarfield(field: ScalarField, path) -> None:
    with open(path, "w") as f:
        f.write(_header(field.grid) + "\n")
        flat = field.values.ravel()
        for start in range(0, flat.size, 1024):
            chunk = flat[start : start + 1024]
            f.write(" ".join(_format_float(v) for v in chunk))
            f.write("\n")


def read_scalarfield(path) -> ScalarField:
    with open(path) as f:
        grid = _parse_header(f.readline())
        tokens = f.read().split()
    values = np.array(tokens, dtype=np.float64).reshape(grid.shape)
    return ScalarField(grid, values)


# ---------------------------------------------------------------------------
# run-length encoded snapshots (trajectory storage)


def encode_rle(cells: np.ndarray) -> np.ndarray:
    """Run lengths of the flattened indicator, first run counts zeros (may be 0)."""
    flat = cells.ravel().astype(np.int8)
    if flat.size == 0:
        return np.zeros(0, dtype=np.int64)
    change = np.nonzero(np.diff(flat))[0]
    edges = np.concatenate(([-1], change, [flat.size - 1]))
    runs = np.diff(edges)
    if flat[0] == 1:
        runs = np.concatenate(([0], runs))
    return runs.astype(np.int64)


def decode_rle(runs: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    total = int(np.prod(shape))
    flat = np.zeros(total, dtype=bool)
    pos = 0
    val = False
    for run in runs:
        if val:
            flat[pos : pos + int(run)] = True
        pos += int(run)
        val = not val
    if pos != total:
        raise ValueError(f"run lengths sum to {pos}, expected {total}")
    return flat.reshape(shape)


def write_snapshot(E: GridSet, k: int, t: float, path) -> None:
    dims = ",".join(str(s) for s in E.grid.shape)
    origin = ",".join(_format_float(o) for o in E.grid.origin)
    runs = encode_rle(E.cells)
    with open(path, "w") as f:
        f.write(
            f"FLATFLOW-RLE v1 n={E.grid.ndim} dims={dims} "
            f"spacing={_format_float(E.grid.spacing)} origin={origin} "
            f"k={k} t={_format_float(t)}\n"
        )
        for start in range(0, runs.size, 512):
            chunk = runs[start : start + 512]
            f.write(" ".join(map(str, chunk)))
            f.write("\n")


def read_snapshot(path) -> tuple[GridSet, int, float]:
    with open(path) as f:
        line = f.readline()
        m = _RLE_HEADER_RE.match(line.strip())
        if not m:
            raise ValueError(f"not a FLATFLOW-RLE v1 header: {line!r}")
        n = int(m.group(1))
        dims = tuple(int(t) for t in m.group(2).split(","))
        grid = Grid(dims, float(m.group(3)), tuple(float(t) for t in m.group(4).split(",")))
        k = int(m.group(5))
        t = float(m.group(6))
        runs = np.array(f.read().split(), dtype=np.int64)
    return GridSet(grid, decode_rle(runs, grid.shape)), k, t


# ---------------------------------------------------------------------------
# CSV helpers (deterministic formatting)


def format_csv_row(values) -> str:
    parts = []
    for v in values:
        if isinstance(v, float):
            parts.append(_format_float(v))
        else:
            parts.append(str(v))
    return ",".join(parts)


def write_csv(path, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(format_csv_row(row) + "\n")
    Path(path).write_text(buf.getvalue())
