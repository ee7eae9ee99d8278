"""Run configuration: INI-style sections [grid], [step], [forcing], [experiment].

All physical quantities are in box units.  Unknown presets and missing keys
raise ConfigError with the offending key named, which the CLI maps to exit
code 2.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path

from .flow import ForcingSchedule
from .grid import Grid
from .solver import StepParams

PRESETS = (
    "shrinking_ball",
    "stationary_ball",
    "stationary_union",
    "tangent_balls",
    "comparison",
    "symmetry_check",
    "barrier_verify",
    "calibrate",
)


class ConfigError(ValueError):
    pass


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"cannot parse float list {text!r}") from exc


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"cannot parse int list {text!r}") from exc


class RunConfig:
    """Typed view over a parsed configuration file."""

    def __init__(self, parser: configparser.ConfigParser, source: str = "<memory>"):
        self._cp = parser
        self.source = source

    @staticmethod
    def load(path) -> "RunConfig":
        cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        read = cp.read(path)
        if not read:
            raise ConfigError(f"cannot read config file {path}")
        return RunConfig(cp, source=str(path))

    @staticmethod
    def from_text(text: str) -> "RunConfig":
        cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        cp.read_string(text)
        return RunConfig(cp)

    # -- raw access ---------------------------------------------------------

    def get(self, section: str, key: str, default=None, required: bool = False) -> str:
        if self._cp.has_option(section, key):
            return self._cp.get(section, key)
        if required:
            raise ConfigError(f"missing key '{key}' in [{section}]")
        return default

    def get_float(self, section: str, key: str, default=None, required: bool = False) -> float:
        raw = self.get(section, key, required=required)
        if raw is None:
            return default
        try:
            return float(raw)
        except ValueError as exc:
            raise ConfigError(f"key '{key}' in [{section}] is not a number: {raw!r}") from exc

    def get_int(self, section: str, key: str, default=None, required: bool = False) -> int:
        raw = self.get(section, key, required=required)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError as exc:
            raise ConfigError(f"key '{key}' in [{section}] is not an integer: {raw!r}") from exc

    def get_floats(self, section: str, key: str, default=None, required: bool = False):
        raw = self.get(section, key, required=required)
        return default if raw is None else _floats(raw)

    def get_ints(self, section: str, key: str, default=None, required: bool = False):
        raw = self.get(section, key, required=required)
        return default if raw is None else _ints(raw)

    def text(self) -> str:
        import io

        buf = io.StringIO()
        self._cp.write(buf)
        return buf.getvalue()

    # -- typed sections ------------------------------------------------------

    def grid(self) -> Grid:
        dim = self.get_int("grid", "dim", required=True)
        cells = self.get_ints("grid", "cells", required=True)
        box = self.get_floats("grid", "box", default=(1.0,))
        if len(cells) == 1:
            cells = cells * dim
        if len(box) == 1:
            box = box * dim
        if len(cells) != dim or len(box) != dim:
            raise ConfigError("cells/box length must be 1 or match dim")
        spacing = box[0] / cells[0]
        for b, c in zip(box, cells):
            if abs(b / c - spacing) > 1e-12 * spacing:
                raise ConfigError("spacing must be uniform across axes (box/cells per axis)")
        return Grid(tuple(cells), spacing)

    def step_params(self) -> StepParams:
        return StepParams(
            h=self.get_float("step", "h", required=True),
            lam=0.0,
            eps_pd=self.get_float("step", "eps_pd", default=1e-6),
            max_iters=self.get_int("step", "max_iters", default=60000),
            theta=self.get_float("step", "theta", default=0.5),
            band_gamma=self.get_float("step", "band_gamma", default=None),
            sd_method=self.get("step", "sd_method", default="auto"),
        )

    def forcing(self) -> ForcingSchedule:
        kind = self.get("forcing", "kind", default="constant")
        c0 = self.get_float("forcing", "c0", default=None)
        if kind == "constant":
            value = self.get_float("forcing", "value", required=True)
            return ForcingSchedule.constant(value, c0=c0)
        times = self.get_floats("forcing", "times", required=True)
        values = self.get_floats("forcing", "values", required=True)
        if kind == "piecewise":
            return ForcingSchedule.piecewise(times, values, c0=c0)
        if kind == "sampled":
            return ForcingSchedule.sampled(times, values, c0=c0)
        raise ConfigError(f"unknown forcing kind {kind!r}")

    def preset(self) -> str:
        name = self.get("experiment", "preset", required=True)
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}; choose one of {', '.join(PRESETS)}")
        return name

    def seed(self) -> int:
        return self.get_int("experiment", "seed", default=0)
