"""Uniform-grid representation of bounded sets and their geometric measurements.

Sets are stored as one indicator bit per cell; a cell belongs to the set iff
its center does.  All measurements (volume, perimeter, signed distance,
symmetrization) operate on these indicators and are pure functions of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

# Width (in cells) of the Gaussian used to anti-alias indicators before
# measuring their total variation.  See perimeter() for why raw indicators
# cannot be used directly.
_MOLLIFIER_SIGMA = 1.5


class GridMismatchError(ValueError):
    """Two operands live on different grids."""


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centered grid covering a rectangular box.

    shape   -- cells per axis (length n, n in {2, 3})
    spacing -- cell edge length, uniform across axes
    origin  -- coordinates of the low corner of the box
    """

    shape: tuple[int, ...]
    spacing: float
    origin: tuple[float, ...] = None

    def __post_init__(self):
        if self.origin is None:
            object.__setattr__(self, "origin", (0.0,) * len(self.shape))
        object.__setattr__(self, "shape", tuple(int(s) for s in self.shape))
        object.__setattr__(self, "origin", tuple(float(o) for o in self.origin))
        if len(self.shape) not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {len(self.shape)}")
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")
        if any(s < 4 for s in self.shape):
            raise ValueError("need at least 4 cells per axis")
        if len(self.origin) != len(self.shape):
            raise ValueError("origin and shape dimensions differ")

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.ndim

    @property
    def box_lengths(self) -> tuple[float, ...]:
        return tuple(s * self.spacing for s in self.shape)

    @property
    def box_volume(self) -> float:
        v = 1.0
        for length in self.box_lengths:
            v *= length
        return v

    @property
    def center(self) -> tuple[float, ...]:
        return tuple(o + 0.5 * length for o, length in zip(self.origin, self.box_lengths))

    def axis_centers(self, axis: int) -> np.ndarray:
        """Cell-center coordinates along one axis."""
        return self.origin[axis] + (np.arange(self.shape[axis]) + 0.5) * self.spacing

    def meshgrid(self) -> list[np.ndarray]:
        axes = [self.axis_centers(a) for a in range(self.ndim)]
        return np.meshgrid(*axes, indexing="ij")

    def index_of(self, axis: int, coordinate: float) -> int:
        """Index of the cell whose center is nearest to a coordinate."""
        i = int(np.round((coordinate - self.origin[axis]) / self.spacing - 0.5))
        return min(max(i, 0), self.shape[axis] - 1)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class GridSet:
    """Indicator of a set of cells on a grid.  Immutable after construction."""

    grid: Grid
    cells: np.ndarray = field(repr=False)

    def __post_init__(self):
        cells = np.ascontiguousarray(self.cells, dtype=bool)
        if cells.shape != self.grid.shape:
            raise ValueError(f"cell array shape {cells.shape} != grid shape {self.grid.shape}")
        object.__setattr__(self, "cells", _freeze(cells))

    @staticmethod
    def empty(grid: Grid) -> "GridSet":
        return GridSet(grid, np.zeros(grid.shape, dtype=bool))

    @staticmethod
    def full(grid: Grid) -> "GridSet":
        return GridSet(grid, np.ones(grid.shape, dtype=bool))

    @property
    def is_empty(self) -> bool:
        return not self.cells.any()

    @property
    def cell_count(self) -> int:
        return int(self.cells.sum())

    def union(self, other: "GridSet") -> "GridSet":
        _check_same_grid(self, other)
        return GridSet(self.grid, self.cells | other.cells)

    def intersection(self, other: "GridSet") -> "GridSet":
        _check_same_grid(self, other)
        return GridSet(self.grid, self.cells & other.cells)

    def difference(self, other: "GridSet") -> "GridSet":
        _check_same_grid(self, other)
        return GridSet(self.grid, self.cells & ~other.cells)

    def contains(self, other: "GridSet") -> bool:
        _check_same_grid(self, other)
        return bool(np.all(other.cells <= self.cells))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridSet):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.cells, other.cells)


@dataclass(frozen=True)
class ScalarField:
    """One real value per cell.  +/-inf sentinels are allowed (empty-set distance)."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.shape != self.grid.shape:
            raise ValueError(f"value array shape {values.shape} != grid shape {self.grid.shape}")
        if np.isnan(values).any():
            raise ValueError("field contains NaN")
        object.__setattr__(self, "values", _freeze(values))


def _check_same_grid(a, b):
    if a.grid != b.grid:
        raise GridMismatchError("operands live on different grids")


# ---------------------------------------------------------------------------
# constructors


def ball(grid: Grid, center, radius: float) -> GridSet:
    """Closed ball rasterized by the cell-center test |x - c| <= r."""
    mesh = grid.meshgrid()
    rho2 = sum((g - c) ** 2 for g, c in zip(mesh, center))
    return GridSet(grid, rho2 <= radius * radius)


def halfspace(grid: Grid, axis: int, threshold: float) -> GridSet:
    """Cells whose center coordinate along `axis` is below `threshold`."""
    mesh = grid.meshgrid()
    return GridSet(grid, mesh[axis] < threshold)


# ---------------------------------------------------------------------------
# measurements


def volume(E: GridSet) -> float:
    """Lebesgue measure: cell count times the cell volume."""
    return E.cell_count * E.grid.cell_volume


def symmetric_difference_volume(A: GridSet, B: GridSet) -> float:
    """Volume of A xor B; a metric on grid sets of one grid."""
    _check_same_grid(A, B)
    return int(np.logical_xor(A.cells, B.cells).sum()) * A.grid.cell_volume


def total_variation(grid: Grid, values: np.ndarray) -> float:
    """Discrete total variation: sum of Euclidean norms of forward differences.

    Cells beyond the grid count as 0, consistent with sets embedded in empty
    space.  This is the same functional the relaxed step minimizes.
    """
    values = np.asarray(values, dtype=np.float64)
    g2 = np.zeros(grid.shape, dtype=np.float64)
    n = grid.ndim
    for ax in range(n):
        d = np.empty(grid.shape, dtype=np.float64)
        hi = [slice(None)] * n
        lo = [slice(None)] * n
        hi[ax] = slice(1, None)
        lo[ax] = slice(0, -1)
        d[tuple(lo)] = values[tuple(hi)] - values[tuple(lo)]
        last = [slice(None)] * n
        last[ax] = slice(-1, None)
        d[tuple(last)] = -values[tuple(last)]
        g2 += d * d
    return float(np.sum(np.sqrt(g2))) * grid.spacing ** (n - 1)


def perimeter(E: GridSet) -> float:
    """Isotropic perimeter estimate.

    The total variation of a raw 0/1 indicator overestimates the perimeter of
    smooth shapes by 16% (2D) to 27% (3D): one-sided differences count rising
    and falling staircases with different weights, so the error does not vanish
    with resolution.  Measuring the TV of a slightly mollified indicator
    removes the staircase bias; errors are below 1% for balls at the
    resolutions used here.
    """
    if E.is_empty:
        return 0.0
    smooth = ndimage.gaussian_filter(E.cells.astype(np.float64), sigma=_MOLLIFIER_SIGMA, mode="constant")
    return total_variation(E.grid, smooth)


def indicator_total_variation(E: GridSet) -> float:
    """TV of the raw indicator: the exact perimeter term of the discrete step functional."""
    return total_variation(E.grid, E.cells.astype(np.float64))


# ---------------------------------------------------------------------------
# signed distance


def boundary_face_points(E: GridSet) -> np.ndarray:
    """Centers of the interfaces between set and unset cells, shape (m, n)."""
    u = E.cells
    n = E.grid.ndim
    dx = E.grid.spacing
    origin = np.asarray(E.grid.origin)
    pts = []
    for ax in range(n):
        hi = [slice(None)] * n
        lo = [slice(None)] * n
        hi[ax] = slice(1, None)
        lo[ax] = slice(0, -1)
        mask = u[tuple(hi)] != u[tuple(lo)]
        idx = np.argwhere(mask).astype(np.float64)
        c = origin + (idx + 0.5) * dx
        c[:, ax] += 0.5 * dx
        pts.append(c)
    if not pts:
        return np.zeros((0, n))
    return np.concatenate(pts, axis=0)


def _signed_distance_exact(E: GridSet) -> np.ndarray:
    pts = boundary_face_points(E)
    if len(pts) == 0:
        # uniform indicator: no internal interface
        fill = -np.inf if E.cells.all() else np.inf
        return np.full(E.grid.shape, fill)
    tree = cKDTree(pts)
    mesh = E.grid.meshgrid()
    q = np.stack([m.ravel() for m in mesh], axis=1)
    dist, _ = tree.query(q, workers=-1)
    dist = dist.reshape(E.grid.shape)
    return np.where(E.cells, -dist, dist)


def _signed_distance_edt(E: GridSet) -> np.ndarray:
    u = E.cells
    if u.all():
        return np.full(E.grid.shape, -np.inf)
    inside = ndimage.distance_transform_edt(u)
    outside = ndimage.distance_transform_edt(~u)
    # EDT measures to the nearest opposite cell center; the interface sits
    # half a cell closer.
    return np.where(u, -(inside - 0.5), outside - 0.5) * E.grid.spacing


# Above this many cells the exact face-center route is replaced by the
# EDT-based one (identical within one cell spacing; tested).
_EXACT_DISTANCE_CELL_LIMIT = 5 * 10 ** 6


def signed_distance(E: GridSet, method: str = "auto") -> ScalarField:
    """Signed distance to the polygonal interface of E, sampled at cell centers.

    Negative inside, positive outside.  The empty set maps to the all +inf
    sentinel.  `method` is one of "auto", "exact" (nearest boundary-face
    center, computed exactly) or "edt" (Euclidean distance transform with a
    half-cell interface correction; accurate within one cell).
    """
    if E.is_empty:
        return ScalarField(E.grid, np.full(E.grid.shape, np.inf))
    if method == "auto":
        n_cells = int(np.prod(E.grid.shape))
        method = "exact" if (E.grid.ndim == 2 or n_cells <= _EXACT_DISTANCE_CELL_LIMIT) else "edt"
    if method == "exact":
        values = _signed_distance_exact(E)
    elif method == "edt":
        values = _signed_distance_edt(E)
    else:
        raise ValueError(f"unknown signed-distance method {method!r}")
    return ScalarField(E.grid, values)


def band_containment(A: GridSet, B: GridSet, d: ScalarField, width: float) -> bool:
    """True iff every cell of A xor B has |d| <= width + one cell spacing."""
    _check_same_grid(A, B)
    if A.grid != d.grid:
        raise GridMismatchError("distance field lives on a different grid")
    diff = np.logical_xor(A.cells, B.cells)
    if not diff.any():
        return True
    return bool(np.max(np.abs(d.values[diff])) <= width + A.grid.spacing)


def clearance_from_boundary(E: GridSet) -> float:
    """Distance from the set to the box walls, in physical units (inf if empty)."""
    if E.is_empty:
        return np.inf
    idx = np.argwhere(E.cells)
    lo = idx.min(axis=0)
    hi = np.asarray(E.grid.shape) - 1 - idx.max(axis=0)
    return float(min(lo.min(), hi.min()) + 0.5) * E.grid.spacing


def touches_boundary(E: GridSet) -> bool:
    """True iff any set cell lies on the outermost ring of the grid."""
    u = E.cells
    n = u.ndim
    for ax in range(n):
        first = [slice(None)] * n
        first[ax] = 0
        last = [slice(None)] * n
        last[ax] = -1
        if u[tuple(first)].any() or u[tuple(last)].any():
            return True
    return False


# ---------------------------------------------------------------------------
# Schwarz symmetrization


@lru_cache(maxsize=16)
def _slice_rank_order(shape: tuple[int, ...], spacing: float) -> np.ndarray:
    """Flat indices of a slice's cells ordered by distance to the slice center.

    Ties break by lexicographic (row-major) index, which makes the
    symmetrization deterministic.
    """
    axes = [(np.arange(s) + 0.5) * spacing for s in shape]
    mesh = np.meshgrid(*axes, indexing="ij")
    center = [0.5 * s * spacing for s in shape]
    dist2 = sum((m - c) ** 2 for m, c in zip(mesh, center)).ravel()
    order = np.lexsort((np.arange(dist2.size), dist2))
    return order


def schwarz_symmetrize(E: GridSet, axis: int = 0) -> GridSet:
    """Replace each slice perpendicular to `axis` by a centered ball of equal cell count.

    Cell counts per slice are preserved exactly, so the volume is too.
    """
    u = E.cells
    n = u.ndim
    moved = np.moveaxis(u, axis, 0)
    slice_shape = moved.shape[1:]
    order = _slice_rank_order(slice_shape, E.grid.spacing)
    out = np.zeros_like(moved)
    out_flat = out.reshape(moved.shape[0], -1)
    counts = moved.reshape(moved.shape[0], -1).sum(axis=1)
    for i, m in enumerate(counts):
        if m:
            out_flat[i, order[:m]] = True
    return GridSet(E.grid, np.moveaxis(out, 0, axis).copy())
