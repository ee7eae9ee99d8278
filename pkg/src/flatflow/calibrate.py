"""Empirical surrogates for the existential constants of the scheme.

gamma  -- movement-band constant: every step moves only inside
          {|d_E| <= gamma sqrt(h)}; fitted from observed bands on ball steps.
eta    -- per-unit-time shrink bound for balls carried inside an evolution.
alpha  -- neck seed: first-step neck radius over h^(1/4), fitted across h.

The fitted values feed the barrier construction; a safety margin keeps them
on the conservative side of the observations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from pathlib import Path

import numpy as np

from .grid import Grid, GridSet, ball, volume
from .solver import StepParams, mm_step


@dataclass(frozen=True)
class CalibrationRecord:
    dim: int
    r: float
    c0: float
    gamma_emp: float
    eta: float
    eta_margin: float
    alpha_emp: float
    alpha_exponent: float
    alpha_r2: float

    def write(self, path) -> None:
        lines = [f"{k} = {v!r}" for k, v in asdict(self).items()]
        Path(path).write_text("\n".join(lines) + "\n")

    @staticmethod
    def read(path) -> "CalibrationRecord":
        fields = {}
        for line in Path(path).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            fields[key.strip()] = eval(value.strip(), {}, {})
        fields["dim"] = int(fields["dim"])
        return CalibrationRecord(**fields)


class CalibrationError(RuntimeError):
    pass


def _single_ball_step(dim: int, radius: float, lam: float, h: float,
                      cells_per_axis: int, box: float, eps_pd: float = 2e-4):
    grid = Grid((cells_per_axis,) * dim, box / cells_per_axis)
    E = ball(grid, grid.center, radius)
    params = StepParams(h=h, lam=lam, eps_pd=eps_pd)
    E1, report = mm_step(E, params)
    v = volume(E1)
    if dim == 2:
        r_out = math.sqrt(v / math.pi)
    else:
        r_out = (3.0 * v / (4.0 * math.pi)) ** (1.0 / 3.0)
    return r_out, report


def calibrate_band_gamma(dim: int, r: float, c0: float, h_values,
                         cells_per_axis: int = 256, box: float = 1.0,
                         safety: float = 2.0) -> float:
    """Fit the observed movement band constant on single-ball steps.

    Runs one step per h at the extreme forcings (+/- c0 and 0) and returns
    safety * max(band_width / sqrt(h)).
    """
    worst = 0.0
    lams = sorted({0.0, c0, -c0})
    for h in h_values:
        for lam in lams:
            _, report = _single_ball_step(dim, r, lam, h, cells_per_axis, box)
            worst = max(worst, report.band_width_observed / math.sqrt(h))
    if worst == 0.0:
        raise CalibrationError("no movement observed; cannot fit a band constant")
    return safety * worst


def calibrate_eta(dim: int, r: float, c0: float, h: float,
                  cells_per_axis: int = 256, box: float = 1.0,
                  margin: float = 1.2) -> float:
    """Upper bound on the per-unit-time shrink of balls with radius in [r/2, r].

    The natural scale is |forcing - curvature|; measuring the worst observed
    one-step shrink across radii and admissible forcings and adding a margin
    gives a value the inclusion checks can actually hold against.
    """
    worst = 0.0
    lams = sorted({-c0, 0.0})
    for radius in (r, 0.75 * r, 0.5 * r):
        for lam in lams:
            r_out, _ = _single_ball_step(dim, radius, lam, h, cells_per_axis, box)
            shrink = (radius - r_out) / h
            worst = max(worst, shrink)
    if worst <= 0.0:
        raise CalibrationError("balls did not shrink; eta calibration needs shrinking steps")
    return margin * worst


def fit_neck_scaling(h_values, necks) -> tuple[float, float, float]:
    """Fit neck = alpha h^beta by least squares in log-log coordinates.

    Returns (alpha at the theoretical exponent 1/4, fitted exponent beta, R^2).
    """
    h_values = np.asarray(h_values, dtype=np.float64)
    necks = np.asarray(necks, dtype=np.float64)
    if h_values.size < 2:
        raise CalibrationError("need at least two h values to fit the scaling law")
    if np.any(necks <= 0):
        raise CalibrationError("neck measurements must be positive")
    x = np.log(h_values)
    y = np.log(necks)
    A = np.vstack([x, np.ones_like(x)]).T
    coef, _, _, _ = np.linalg.lstsq(A, y, rcond=None)
    beta = float(coef[0])
    fitted = A @ coef
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    alpha_quarter = float(np.exp(np.mean(y - 0.25 * x)))
    return alpha_quarter, beta, r2


def barrier_alpha(alpha_emp: float, r: float, c0: float, eta: float, h: float,
                  dim: int, safety: float = 0.5) -> float:
    """Neck seed actually used by the barrier at step size h.

    Any value below the measured seed works (the barrier only needs to fit
    inside the flow), so cap it by the measured seed with a safety factor, by
    r/4, and by the level the curvature-margin certificate can support.
    """
    lam0 = max(4.0 * eta ** 2, 2.0 ** 9 * (dim - 2) ** 2, 1.0)
    # the margin requires roughly a_1 = sqrt(lam0)/l_1 >= 5 lam0 + c0
    cap_level = math.sqrt(lam0) / (5.0 * lam0 + c0)
    cap_alpha = 0.45 * cap_level / h ** 0.25
    return min(safety * alpha_emp, r / 4.0, cap_alpha)
