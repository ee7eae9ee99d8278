"""Discrete barrier family for the tangent-ball fattening argument.

Two balls of radius r shrink at rate eta per unit time while a parabolic neck
of half-length d_i, waist level l_i and curvature a_i grows linearly in
discrete time.  The inequality chain that makes the family a barrier (head
containment, Lipschitz neck profile, negative curvature with margin) is pure
arithmetic in the parameters and is verified exactly; the inclusion of the
barrier inside a simulated evolution is verified cellwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .axisym import Profile, rasterize_solid, revolution_mean_curvature
from .grid import Grid, GridSet, ball, perimeter, volume
from .flow import Trajectory


class BarrierParameterError(ValueError):
    """The horizon is too large for the requested constants."""


@dataclass(frozen=True)
class BarrierParams:
    """Constant bundle of the barrier construction.

    dim    -- ambient dimension (2 or 3)
    r      -- initial ball radius
    c0     -- forcing bound of the run
    eta    -- calibrated per-unit-time shrink rate of contained balls
    alpha  -- calibrated neck seed: the first step contains the cylinder of
              radius alpha h^(1/4) and half-length alpha h^(1/2)
    delta  -- certified time horizon
    h      -- step size of the run
    gamma  -- calibrated movement-band constant (used by the curvature margin)
    """

    dim: int
    r: float
    c0: float
    eta: float
    alpha: float
    delta: float
    h: float
    gamma: float = 0.0

    @property
    def lambda0(self) -> float:
        return max(4.0 * self.eta ** 2, 2.0 ** 9 * (self.dim - 2) ** 2, 1.0)

    @property
    def max_index(self) -> int:
        return int(math.floor(self.delta / self.h)) + 1

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise ValueError("dim must be 2 or 3")
        if min(self.r, self.eta, self.alpha, self.h) <= 0 or self.delta <= 0:
            raise ValueError("r, eta, alpha, delta, h must be positive")


@dataclass(frozen=True)
class BarrierStep:
    """Sequence values at one barrier index i >= 1."""

    index: int
    ball_radius: float      # r_i = r - eta h i
    neck_level: float       # l_i = Lambda0 h (i-1) + alpha h^(1/4)
    neck_half_length: float  # d_i = 2 eta h (i-1) + alpha h^(1/2)
    curvature: float        # a_i = sqrt(Lambda0) / l_i


def barrier_sequence(p: BarrierParams, i: int) -> BarrierStep:
    """The four sequence values at index i, 1 <= i <= floor(delta/h) + 1."""
    if not (1 <= i <= p.max_index):
        raise BarrierParameterError(f"index {i} outside 1..{p.max_index}")
    lam0 = p.lambda0
    r_i = p.r - p.eta * p.h * i
    l_i = lam0 * p.h * (i - 1) + p.alpha * p.h ** 0.25
    d_i = 2.0 * p.eta * p.h * (i - 1) + p.alpha * math.sqrt(p.h)
    a_i = math.sqrt(lam0) / l_i
    if a_i * d_i > 1.0:
        raise BarrierParameterError(
            f"a_i d_i = {a_i * d_i:.4f} > 1 at i={i}: horizon delta too large"
        )
    return BarrierStep(i, r_i, l_i, d_i, a_i)


def phi(step: BarrierStep, t: float) -> float:
    """Parabolic neck profile (a_i/2)(t^2 - d_i^2) + l_i on [-d_i, d_i]."""
    if abs(t) > step.neck_half_length:
        raise ValueError(f"|t|={abs(t)} outside the profile domain [0, {step.neck_half_length}]")
    return 0.5 * step.curvature * (t * t - step.neck_half_length ** 2) + step.neck_level


def neck_profile(step: BarrierStep) -> Profile:
    return Profile.parabola(step.curvature, step.neck_half_length, step.neck_level)


def verify_head_containment(p: BarrierParams, i: int) -> bool:
    """Pythagorean check that the neck's end disks sit inside the shrinking balls.

    The disk of radius l_i at x1 = +/- d_i is inside the ball of radius r_i
    centered at x1 = +/- r iff r_i^2 - (r - d_i)^2 >= l_i^2.
    """
    s = barrier_sequence(p, i)
    return s.ball_radius ** 2 - (p.r - s.neck_half_length) ** 2 >= s.neck_level ** 2


def profile_closeness_bound(p: BarrierParams, i: int) -> float:
    """max |phi_i - phi_{i-1}| over the common domain [-d_{i-1}, d_{i-1}], i >= 2."""
    s_prev = barrier_sequence(p, i - 1)
    s_cur = barrier_sequence(p, i)
    ts = np.linspace(-s_prev.neck_half_length, s_prev.neck_half_length, 513)
    vals_prev = 0.5 * s_prev.curvature * (ts ** 2 - s_prev.neck_half_length ** 2) + s_prev.neck_level
    vals_cur = 0.5 * s_cur.curvature * (ts ** 2 - s_cur.neck_half_length ** 2) + s_cur.neck_level
    return float(np.max(np.abs(vals_cur - vals_prev)))


def curvature_certificate(p: BarrierParams, i: int, samples: int = 257) -> tuple[float, float]:
    """(worst mean curvature along the lifted neck, certified bound).

    The worst case over interior points t and lift offsets tau in
    [0, 3 gamma sqrt(h)] must stay below -sqrt(Lambda0)/(2^{5/2} l_i); the
    horizon sweep additionally demands the stronger -(5 Lambda0 + c0) margin.
    """
    s = barrier_sequence(p, i)
    lam0 = p.lambda0
    tau_max = 3.0 * p.gamma * math.sqrt(p.h)
    if tau_max >= s.neck_level / 4.0:
        tau_max = s.neck_level / 4.0
    ts = np.linspace(-s.neck_half_length, s.neck_half_length, samples)[1:-1]
    worst = -math.inf
    prof = neck_profile(s)
    for tau in (0.0, tau_max):
        for t in ts:
            g = prof.value(t) - tau
            g1 = s.curvature * t
            sq = 1.0 + g1 * g1
            H = -s.curvature / sq ** 1.5 + (p.dim - 2) / (g * math.sqrt(sq))
            worst = max(worst, H)
    bound = -math.sqrt(lam0) / (2.0 ** 2.5 * s.neck_level)
    return worst, bound


def barrier_invariants_ok(p: BarrierParams, i: int) -> dict:
    """Exact-arithmetic inequality chain at index i.  All entries must be True."""
    s = barrier_sequence(p, i)
    lam0 = p.lambda0
    lipschitz = s.curvature * s.neck_half_length <= 1.0 + 1e-12
    waist = phi(s, 0.0)
    waist_bounds = (s.neck_level / 2.0 - 1e-12 <= waist <= s.neck_level + 1e-12)
    worst_H, cert_bound = curvature_certificate(p, i)
    out = {
        "slope_headroom": math.sqrt(lam0) * s.neck_half_length <= s.neck_level + 1e-12,
        "lipschitz": lipschitz,
        "waist_bounds": waist_bounds,
        "head_containment": verify_head_containment(p, i),
        "ball_radius_floor": s.ball_radius >= p.r / 2.0,
        "curvature_certificate": worst_H <= cert_bound + 1e-12,
        "curvature_margin": worst_H <= -(5.0 * lam0 + p.c0) + 1e-12,
    }
    if i >= 2:
        out["profile_closeness"] = profile_closeness_bound(p, i) <= 2.0 * lam0 * p.h + 1e-12
    return out


def sweep_delta(dim: int, r: float, c0: float, eta: float, alpha: float, h: float,
                gamma: float = 0.0, max_steps: int = 10000) -> tuple[float, int]:
    """Largest horizon delta = K h whose whole index range 1..K+1 passes the chain.

    Mirrors choosing "delta small enough": the constraints tighten with i, so
    the sweep extends the horizon one step at a time until an index fails.
    Raises when no horizon works at all (the run's h or alpha must shrink).
    """

    def index_ok(K: int, i: int) -> bool:
        probe = BarrierParams(dim=dim, r=r, c0=c0, eta=eta, alpha=alpha,
                              delta=K * h, h=h, gamma=gamma)
        try:
            return all(barrier_invariants_ok(probe, i).values())
        except BarrierParameterError:
            return False

    K = 0
    verified_up_to = 0
    while K < max_steps:
        top = K + 2  # horizon K+1 certifies indices 1 .. K+2
        if all(index_ok(K + 1, i) for i in range(verified_up_to + 1, top + 1)):
            K += 1
            verified_up_to = top
        else:
            break
    if K == 0:
        probe = BarrierParams(dim=dim, r=r, c0=c0, eta=eta, alpha=alpha, delta=h, h=h, gamma=gamma)
        try:
            checks = barrier_invariants_ok(probe, 1)
            failing = [k for k, v in checks.items() if not v]
        except BarrierParameterError as exc:
            failing = [str(exc)]
        raise BarrierParameterError(
            "no feasible barrier horizon at this h"
            + (f" (failing: {', '.join(failing)})" if failing else " (index 2 infeasible)")
        )
    return K * h, K


def barrier_set(p: BarrierParams, i: int, grid: Grid, center=None) -> GridSet:
    """Rasterized G_i: parabolic neck plus the two shrinking balls."""
    s = barrier_sequence(p, i)
    if center is None:
        center = grid.center
    left = list(center)
    left[0] -= p.r
    right = list(center)
    right[0] += p.r
    neck = rasterize_solid(neck_profile(s), grid, center=center)
    B1 = ball(grid, tuple(left), s.ball_radius)
    B2 = ball(grid, tuple(right), s.ball_radius)
    return neck.union(B1).union(B2)


@dataclass(frozen=True)
class InclusionRow:
    index: int
    t: float
    ball_radius: float
    neck_level: float
    neck_half_length: float
    curvature: float
    head_ok: bool
    gap_cells: float
    budget_cells: float
    curvature_margin: float

    def csv_row(self) -> list:
        return [
            self.index,
            self.t,
            self.ball_radius,
            self.neck_level,
            self.neck_half_length,
            self.curvature,
            int(self.head_ok),
            self.gap_cells,
            self.budget_cells,
            self.curvature_margin,
        ]


INCLUSION_CSV_HEADER = [
    "i",
    "t",
    "r_i",
    "l_i",
    "d_i",
    "a_i",
    "head_ok",
    "inclusion_gap_cells",
    "budget_cells",
    "curvature_margin",
]


@dataclass(frozen=True)
class InclusionReport:
    rows: list[InclusionRow]
    passed: bool
    first_failure: int | None


def verify_barrier_inclusion(traj: Trajectory, p: BarrierParams, center=None
                             ) -> InclusionReport:
    """Check G_i subset E^{h,i} for each certified index with a stored snapshot.

    The tolerance is one ring of boundary cells of the barrier (tangency
    rasterization is one-cell ambiguous).  Reports the first failing index.
    """
    grid = traj.grid
    dx = grid.spacing
    rows = []
    passed = True
    first_failure = None
    for i in range(1, p.max_index + 1):
        E_i = traj.set_at_step(i)
        if E_i is None:
            raise ValueError(f"trajectory has no snapshot at step {i}; use stride 1")
        s = barrier_sequence(p, i)
        G_i = barrier_set(p, i, grid, center=center)
        uncovered = G_i.difference(E_i)
        gap_cells = uncovered.cell_count
        budget_cells = perimeter(G_i) / dx ** (grid.ndim - 1) + 1.0
        worst_H, _ = curvature_certificate(p, i)
        margin = -(5.0 * p.lambda0 + p.c0) - worst_H
        head_ok = verify_head_containment(p, i)
        ok = gap_cells <= budget_cells and head_ok
        if not ok and first_failure is None:
            first_failure = i
            passed = False
        rows.append(InclusionRow(
            index=i,
            t=i * p.h,
            ball_radius=s.ball_radius,
            neck_level=s.neck_level,
            neck_half_length=s.neck_half_length,
            curvature=s.curvature,
            head_ok=head_ok,
            gap_cells=float(gap_cells),
            budget_cells=float(budget_cells),
            curvature_margin=float(margin),
        ))
    return InclusionReport(rows=rows, passed=passed, first_failure=first_failure)


@dataclass(frozen=True)
class NeckFit:
    """Least-squares slopes of the dumbbell trace.

    neck_growth_slope  -- growth rate of the inscribed neck radius at the
                          tangency plane (the cylinder-radius constant of the
                          dumbbell description)
    ball_shrink_slope  -- growth rate of r minus the inscribed ball radius
    residual bounds are 95% confidence half-widths of the slopes.
    """

    neck_growth_slope: float
    neck_ci: float
    ball_shrink_slope: float
    ball_ci: float
    times: tuple[float, ...]
    neck_radii: tuple[float, ...]
    inscribed_radii: tuple[float, ...]


class DegenerateFitError(RuntimeError):
    pass


def _slope_with_ci(t: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    if np.ptp(t) == 0:
        raise DegenerateFitError("all samples at one time")
    A = np.vstack([t, np.ones_like(t)]).T
    coef, res, _, _ = np.linalg.lstsq(A, y, rcond=None)
    slope = float(coef[0])
    dof = max(len(t) - 2, 1)
    sse = float(res[0]) if res.size else float(np.sum((y - A @ coef) ** 2))
    var = sse / dof / float(np.sum((t - t.mean()) ** 2))
    return slope, 1.96 * math.sqrt(max(var, 0.0))


def fit_neck_growth(traj: Trajectory, r: float, center=None, t_max: float | None = None
                    ) -> NeckFit:
    """Fit the neck-radius and inscribed-ball-radius traces of a tangent-ball run.

    Uses snapshots with 0 < t <= t_max.  Raises DegenerateFitError when the
    neck never resolves above two cells or the trace has no time spread.
    """
    from scipy import ndimage

    from .axisym import neck_radius

    grid = traj.grid
    dx = grid.spacing
    if center is None:
        center = grid.center
    left = list(center)
    left[0] -= r
    idx_left = tuple(grid.index_of(ax, c) for ax, c in enumerate(left))
    times, necks, inscribed = [], [], []
    for k, t, E in traj.snapshots():
        if k == 0 or (t_max is not None and t > t_max):
            continue
        times.append(t)
        necks.append(neck_radius(E, 0.0, center=center))
        inside = ndimage.distance_transform_edt(E.cells)
        inscribed.append(max(float(inside[idx_left]) - 0.5, 0.0) * dx)
    if len(times) < 5:
        raise DegenerateFitError(f"need at least 5 snapshots in (0, delta], got {len(times)}")
    t = np.asarray(times)
    neck = np.asarray(necks)
    if neck.max() <= 2 * dx:
        raise DegenerateFitError("neck never resolved above two cells")
    if np.ptp(neck) == 0 and np.ptp(inscribed) == 0:
        raise DegenerateFitError("stationary trace, slopes undefined")
    neck_slope, neck_ci = _slope_with_ci(t, neck)
    shrink_slope, ball_ci = _slope_with_ci(t, r - np.asarray(inscribed))
    return NeckFit(
        neck_growth_slope=neck_slope,
        neck_ci=neck_ci,
        ball_shrink_slope=shrink_slope,
        ball_ci=ball_ci,
        times=tuple(times),
        neck_radii=tuple(necks),
        inscribed_radii=tuple(float(x) for x in inscribed),
    )
