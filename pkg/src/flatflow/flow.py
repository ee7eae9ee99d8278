"""Approximate flat flows: iterate the movement step under a forcing schedule."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .grid import GridSet, symmetric_difference_volume, touches_boundary, volume
from .solver import DualState, SolverDidNotConverge, StepParams, StepReport, mm_step


class PreconditionError(ValueError):
    pass


class BoundaryContactError(RuntimeError):
    """The evolving set reached the box wall; the run is invalid beyond this step."""


@dataclass(frozen=True)
class ForcingSchedule:
    """Bounded time-dependent forcing f(t), |f| <= c0.

    kind is one of "constant", "piecewise" (right-continuous steps between
    breakpoints) or "sampled" (piecewise-linear interpolation of samples,
    integrated by the trapezoid rule).
    """

    kind: str
    times: tuple[float, ...]
    values: tuple[float, ...]
    c0: float

    def __post_init__(self):
        if self.kind not in ("constant", "piecewise", "sampled"):
            raise ValueError(f"unknown forcing kind {self.kind!r}")
        if self.c0 < 0:
            raise ValueError("c0 must be non-negative")
        if any(abs(v) > self.c0 + 1e-15 for v in self.values):
            raise ValueError("forcing values exceed the bound c0")
        if self.kind != "constant":
            if len(self.times) != len(self.values):
                raise ValueError("times and values must have equal length")
            if any(b <= a for a, b in zip(self.times, self.times[1:])):
                raise ValueError("times must be strictly increasing")

    @staticmethod
    def constant(value: float, c0: float | None = None) -> "ForcingSchedule":
        bound = abs(value) if c0 is None else c0
        return ForcingSchedule("constant", (), (float(value),), bound)

    @staticmethod
    def piecewise(times, values, c0: float | None = None) -> "ForcingSchedule":
        values = tuple(float(v) for v in values)
        bound = max(abs(v) for v in values) if c0 is None else c0
        return ForcingSchedule("piecewise", tuple(float(t) for t in times), values, bound)

    @staticmethod
    def sampled(times, values, c0: float | None = None) -> "ForcingSchedule":
        values = tuple(float(v) for v in values)
        bound = max(abs(v) for v in values) if c0 is None else c0
        return ForcingSchedule("sampled", tuple(float(t) for t in times), values, bound)

    def value(self, t: float) -> float:
        if self.kind == "constant":
            return self.values[0]
        times = np.asarray(self.times)
        if self.kind == "piecewise":
            i = int(np.searchsorted(times, t, side="right")) - 1
            return self.values[max(i, 0)]
        return float(np.interp(t, times, self.values))

    def average(self, t0: float, t1: float) -> float:
        """Mean of f over [t0, t1]; exact for constant and piecewise kinds."""
        if t1 <= t0:
            raise ValueError("need t0 < t1")
        if self.kind == "constant":
            return self.values[0]
        if self.kind == "piecewise":
            ts = [t0] + [t for t in self.times if t0 < t < t1] + [t1]
            total = 0.0
            for a, b in zip(ts, ts[1:]):
                total += self.value(a) * (b - a)
            return total / (t1 - t0)
        # sampled: integrate the linear interpolant exactly (trapezoid on the
        # refined partition containing both sample points and the endpoints)
        ts = np.unique(np.concatenate((
            [t0, t1], [t for t in self.times if t0 < t < t1])))
        vals = np.array([self.value(t) for t in ts])
        return float(np.trapz(vals, ts)) / (t1 - t0)


def step_average_forcing(f: ForcingSchedule, h: float, k: int) -> float:
    """Mean forcing over the k-th step interval [kh, (k+1)h]."""
    if k < 0:
        raise ValueError("step index must be non-negative")
    return f.average(k * h, (k + 1) * h)


@dataclass(frozen=True)
class TrajectoryRecord:
    k: int
    t: float
    set: GridSet | None
    report: StepReport | None


@dataclass
class Trajectory:
    """Discrete evolution: E^{h,k+1} minimizes the step functional from E^{h,k}."""

    h: float
    initial_set: GridSet
    records: list[TrajectoryRecord] = field(default_factory=list)
    error: str | None = None

    @property
    def grid(self):
        return self.initial_set.grid

    def snapshots(self) -> list[tuple[int, float, GridSet]]:
        return [(r.k, r.t, r.set) for r in self.records if r.set is not None]

    def reports(self) -> list[tuple[int, StepReport]]:
        return [(r.k, r.report) for r in self.records if r.report is not None]

    def final_set(self) -> GridSet:
        for r in reversed(self.records):
            if r.set is not None:
                return r.set
        return self.initial_set

    def set_at_step(self, k: int) -> GridSet | None:
        for r in self.records:
            if r.k == k and r.set is not None:
                return r.set
        return None


def required_resolution_ok(grid, h: float) -> bool:
    """Movement-band resolvability: cell spacing at most sqrt(h)/8."""
    return grid.spacing <= math.sqrt(h) / 8.0 + 1e-15


def evolve(E0: GridSet, f: ForcingSchedule, h: float, T: float,
           snapshot_stride: int = 1, params: StepParams | None = None,
           progress=None) -> Trajectory:
    """Run ceil(T/h) movement steps from E0 under the forcing schedule.

    Snapshots are stored every `snapshot_stride` steps plus the first and last.
    Solver failure or boundary contact truncates the trajectory and marks it;
    the records collected so far are returned.
    """
    if params is None:
        params = StepParams(h=h)
    if not required_resolution_ok(E0.grid, h):
        raise PreconditionError(
            f"grid spacing {E0.grid.spacing:.3e} too coarse for h={h:.3e}; "
            f"need spacing <= sqrt(h)/8 = {math.sqrt(h)/8:.3e}"
        )
    n_steps = math.ceil(T / h)
    traj = Trajectory(h=h, initial_set=E0)
    traj.records.append(TrajectoryRecord(0, 0.0, E0, None))
    dual = DualState.zeros(E0.grid.shape)
    E = E0
    for k in range(n_steps):
        lam_k = step_average_forcing(f, h, k)
        step_params = replace(params, h=h, lam=lam_k)
        try:
            E_next, report = mm_step(E, step_params, dual_state=dual)
        except SolverDidNotConverge as exc:
            traj.error = f"solver did not converge at step {k + 1}: {exc}"
            return traj
        t = (k + 1) * h
        if touches_boundary(E_next):
            traj.records.append(TrajectoryRecord(k + 1, t, E_next, report))
            traj.error = f"set touched the domain boundary at step {k + 1}"
            return traj
        store = ((k + 1) % snapshot_stride == 0) or (k + 1 == n_steps)
        traj.records.append(TrajectoryRecord(k + 1, t, E_next if store else None, report))
        E = E_next
        if progress is not None:
            progress(k + 1, n_steps, E, report)
    return traj


def is_stationary(traj: Trajectory, tol: float) -> bool:
    """True iff no stored snapshot deviates from E0 by more than tol in relative volume."""
    snaps = traj.snapshots()
    if len(snaps) < 2:
        raise PreconditionError("need at least two snapshots")
    v0 = volume(traj.initial_set)
    if v0 == 0:
        raise PreconditionError("initial set has zero volume")
    worst = max(
        symmetric_difference_volume(E, traj.initial_set) for _, _, E in snaps
    )
    return worst / v0 <= tol


def max_relative_deviation(traj: Trajectory) -> float:
    v0 = volume(traj.initial_set)
    return max(
        symmetric_difference_volume(E, traj.initial_set) / v0
        for _, _, E in traj.snapshots()
    )


def one_cell_ring_volume(E: GridSet) -> float:
    """Volume of one ring of boundary cells, the standard comparison budget."""
    from .grid import perimeter as _perimeter

    if E.is_empty:
        return E.grid.cell_volume
    return _perimeter(E) * E.grid.spacing + E.grid.cell_volume


def check_comparison(E: GridSet, E_prime: GridSet, lam: float, lam_prime: float,
                     params: StepParams) -> tuple[bool, float]:
    """Weak comparison of one step: nested inputs with ordered forcing stay nested.

    Case lam_prime == lam requires compact containment (clearance of at least
    two cells); lam_prime < lam requires containment only.  Returns (ok,
    excess volume of E'_min beyond E_min); ok means the excess is within one
    boundary-cell ring of E'_min.
    """
    if E.grid != E_prime.grid:
        raise PreconditionError("sets live on different grids")
    if lam_prime > lam:
        raise PreconditionError("need lam_prime <= lam")
    if not E.contains(E_prime):
        raise PreconditionError("E_prime must be contained in E")
    if lam_prime == lam:
        inner = np.argwhere(E_prime.cells)
        if inner.size:
            # compact containment: E' dilated by 2 cells still inside E
            from scipy import ndimage

            dilated = ndimage.binary_dilation(E_prime.cells, iterations=2)
            if not bool(np.all(dilated <= E.cells)):
                raise PreconditionError(
                    "equal forcing constants need at least two cells of clearance"
                )
    E_min, _ = mm_step(E, replace(params, lam=lam))
    Ep_min, _ = mm_step(E_prime, replace(params, lam=lam_prime))
    excess = volume(Ep_min.difference(E_min))
    budget = one_cell_ring_volume(Ep_min)
    return excess <= budget, excess
