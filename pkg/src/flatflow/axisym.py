"""Solids of revolution about the first grid axis: profiles, curvature, rasterization.

A profile g >= 0 on [a, b] describes the solid {x : x1 in [a,b], |x'| <= g(x1)}.
Closed-form profiles (constant, circle arc, parabola) carry exact derivatives;
sampled profiles fall back to central differences with Richardson refinement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import Grid, GridSet

_CLOSED_FORMS = ("constant", "circle_arc", "parabola")


class ProfileError(ValueError):
    pass


class CurvatureBlowupError(ArithmeticError):
    """Curvature evaluation where the profile vanishes."""


@dataclass(frozen=True)
class Profile:
    """Sampled non-negative function on [a, b], optionally tagged with a closed form.

    closed_form: None, or (kind, params) with kind one of
      "constant":   params {"radius": R}
      "circle_arc": params {"radius": r, "center": c}   g(x) = sqrt(r^2 - (x-c)^2)
      "parabola":   params {"curvature": a, "half_width": d, "level": l}
                    g(x) = (a/2)(x^2 - d^2) + l
    """

    a: float
    b: float
    samples: np.ndarray = field(repr=False)
    closed_form: tuple | None = None

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=np.float64)
        if self.b <= self.a:
            raise ProfileError("need a < b")
        if samples.ndim != 1 or samples.size < 2:
            raise ProfileError("need at least two samples")
        if samples.min() < 0:
            raise ProfileError("profile must be non-negative")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)
        if self.closed_form is not None:
            kind, _ = self.closed_form
            if kind not in _CLOSED_FORMS:
                raise ProfileError(f"unknown closed form {kind!r}")
            xs = self.sample_points()
            exact = self._closed_value(xs)
            if np.max(np.abs(exact - samples)) > 1e-12 * max(1.0, np.max(np.abs(samples))):
                raise ProfileError("samples disagree with the closed form")

    @property
    def spacing(self) -> float:
        return (self.b - self.a) / (self.samples.size - 1)

    def sample_points(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.samples.size)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_samples(a: float, b: float, samples) -> "Profile":
        return Profile(a, b, np.asarray(samples, dtype=np.float64))

    @staticmethod
    def constant(radius: float, a: float, b: float, m: int = 33) -> "Profile":
        xs = np.linspace(a, b, m)
        return Profile(a, b, np.full_like(xs, float(radius)), ("constant", {"radius": float(radius)}))

    @staticmethod
    def circle_arc(radius: float, center: float = 0.0, m: int = 257) -> "Profile":
        a, b = center - radius, center + radius
        xs = np.linspace(a, b, m)
        vals = np.sqrt(np.maximum(radius ** 2 - (xs - center) ** 2, 0.0))
        return Profile(a, b, vals, ("circle_arc", {"radius": float(radius), "center": float(center)}))

    @staticmethod
    def parabola(curvature: float, half_width: float, level: float, m: int = 65) -> "Profile":
        a, b = -half_width, half_width
        xs = np.linspace(a, b, m)
        vals = 0.5 * curvature * (xs ** 2 - half_width ** 2) + level
        if vals.min() < 0:
            raise ProfileError("parabola dips below zero on its domain")
        cf = ("parabola", {"curvature": float(curvature), "half_width": float(half_width), "level": float(level)})
        return Profile(a, b, vals, cf)

    # -- evaluation --------------------------------------------------------

    def _closed_value(self, x):
        kind, p = self.closed_form
        x = np.asarray(x, dtype=np.float64)
        if kind == "constant":
            return np.full_like(x, p["radius"])
        if kind == "circle_arc":
            return np.sqrt(np.maximum(p["radius"] ** 2 - (x - p["center"]) ** 2, 0.0))
        return 0.5 * p["curvature"] * (x ** 2 - p["half_width"] ** 2) + p["level"]

    def value(self, x):
        """g(x); linear interpolation between samples when no closed form is tagged."""
        if self.closed_form is not None:
            return self._closed_value(x)
        return np.interp(x, self.sample_points(), self.samples)

    def derivatives(self, x: float) -> tuple[float, float]:
        """(g'(x), g''(x)); exact for closed forms."""
        if self.closed_form is not None:
            kind, p = self.closed_form
            if kind == "constant":
                return 0.0, 0.0
            if kind == "circle_arc":
                r, c = p["radius"], p["center"]
                g = float(np.sqrt(max(r ** 2 - (x - c) ** 2, 0.0)))
                if g == 0.0:
                    raise CurvatureBlowupError("circle-arc derivative at the pole")
                g1 = -(x - c) / g
                g2 = -(1.0 + g1 * g1) / g
                return g1, g2
            return p["curvature"] * x, p["curvature"]
        return self._numeric_derivatives(x)

    def _numeric_derivatives(self, x: float) -> tuple[float, float]:
        # Central differences with one Richardson extrapolation step; needs
        # x at least 2*ds inside [a, b].
        ds = self.spacing
        if x - 2 * ds < self.a or x + 2 * ds > self.b:
            raise ProfileError("too close to the endpoint for numeric derivatives")
        f = self.value
        d1_h = (f(x + ds) - f(x - ds)) / (2 * ds)
        d1_2h = (f(x + 2 * ds) - f(x - 2 * ds)) / (4 * ds)
        d1 = (4 * d1_h - d1_2h) / 3
        d2_h = (f(x + ds) - 2 * f(x) + f(x - ds)) / ds ** 2
        d2_2h = (f(x + 2 * ds) - 2 * f(x) + f(x - 2 * ds)) / (4 * ds ** 2)
        d2 = (4 * d2_h - d2_2h) / 3
        return float(d1), float(d2)


def revolution_mean_curvature(profile: Profile, x1: float, dim: int) -> float:
    """Mean curvature of the revolution surface of g at x1, inside-out orientation.

        H = -g'' / (1 + g'^2)^(3/2) + (dim - 2) / (g (1 + g'^2)^(1/2))

    Positive for convex solids (sphere of radius r gives (dim-1)/r).
    """
    if not (profile.a < x1 < profile.b):
        raise ProfileError(f"x1={x1} is not interior to [{profile.a}, {profile.b}]")
    g = float(profile.value(x1))
    if g <= 0.0:
        raise CurvatureBlowupError(f"profile vanishes at x1={x1}")
    g1, g2 = profile.derivatives(x1)
    s = 1.0 + g1 * g1
    return -g2 / s ** 1.5 + (dim - 2) / (g * np.sqrt(s))


# ---------------------------------------------------------------------------
# rasterization and measurement


def _axis_center(grid: Grid) -> tuple[float, ...]:
    """Default revolution axis: through the box center, along axis 0."""
    return grid.center


def rasterize_solid(profile: Profile, grid: Grid, center=None) -> GridSet:
    """Cells with x1 - c1 in [a, b] and |x' - c'| <= g(x1 - c1).

    `center` shifts the solid; by default the profile's x1 is measured from the
    box center along axis 0 and the revolution axis passes through the box
    center in the remaining coordinates.
    """
    if center is None:
        center = _axis_center(grid)
    mesh = grid.meshgrid()
    x1 = mesh[0] - center[0]
    rad2 = sum((mesh[ax] - center[ax]) ** 2 for ax in range(1, grid.ndim))
    inside_span = (x1 >= profile.a) & (x1 <= profile.b)
    g = profile.value(np.clip(x1, profile.a, profile.b))
    cells = inside_span & (rad2 <= g * g)
    E = GridSet(grid, cells)
    from .grid import touches_boundary

    if touches_boundary(E):
        raise ValueError("rasterized solid touches the box boundary; enlarge the grid")
    return E


def _slice_inscribed_radius(slice_cells: np.ndarray, grid: Grid, center) -> float:
    """Largest s with the centered (n-1)-ball of radius s inside the slice.

    Equals the distance from the axis to the nearest excluded cell center;
    this is the exact supremum of the containment test over s.
    """
    axes = [grid.axis_centers(ax) for ax in range(1, grid.ndim)]
    mesh = np.meshgrid(*axes, indexing="ij")
    rad = np.sqrt(sum((m - c) ** 2 for m, c in zip(mesh, center[1:])))
    excluded = ~slice_cells
    if not excluded.any():
        return float(rad.max())
    return float(rad[excluded].min())


def neck_radius(E: GridSet, x1: float, center=None) -> float:
    """Inscribed axis-centered disk radius of the slice nearest to coordinate x1.

    x1 is measured from the box center along axis 0 (matching rasterize_solid).
    Returns 0 for slices that miss the set.
    """
    if center is None:
        center = _axis_center(E.grid)
    i = E.grid.index_of(0, x1 + center[0])
    s = _slice_inscribed_radius(E.cells[i], E.grid, center)
    if not E.cells[i].any():
        return 0.0
    return s


def profile_extract(E: GridSet, center=None) -> Profile:
    """Per-slice inscribed radii along axis 0 (largest centered ball convention).

    The returned profile spans the nonempty slices, sampled at cell centers in
    coordinates relative to the box center;
    rasterize_solid(profile_extract(E), grid) reproduces E up to one cell ring
    for solids of revolution.
    """
    if E.is_empty:
        raise ValueError("cannot extract a profile from the empty set")
    if center is None:
        center = _axis_center(E.grid)
    nonempty = np.nonzero(E.cells.reshape(E.grid.shape[0], -1).any(axis=1))[0]
    i0, i1 = int(nonempty[0]), int(nonempty[-1])
    xs = E.grid.axis_centers(0)[i0 : i1 + 1] - center[0]
    radii = np.empty(xs.size)
    for j, i in enumerate(range(i0, i1 + 1)):
        if E.cells[i].any():
            radii[j] = _slice_inscribed_radius(E.cells[i], E.grid, center)
        else:
            radii[j] = 0.0
    if xs.size == 1:
        # degenerate single-slice solid: widen artificially so the Profile is valid
        xs = np.array([xs[0] - 0.5 * E.grid.spacing, xs[0] + 0.5 * E.grid.spacing])
        radii = np.array([radii[0], radii[0]])
    return Profile(float(xs[0]), float(xs[-1]), radii)
