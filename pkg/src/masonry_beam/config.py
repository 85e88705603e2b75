"""Run configuration: a JSON object of flat keys, validated before any solve."""

from __future__ import annotations

import dataclasses
import json
import math
import re
from dataclasses import dataclass, field

from .constitutive import BeamSpec
from .exceptions import ConfigError
from .second_order import SolverSettings


@dataclass
class RunConfig:
    # beam (defaults: L/h = 10, so alphabar = 9e-3 gives |N|/N_E ~ 0.22)
    b: float = 0.4
    h: float = 0.4
    L: float = 4.0
    E: float = 3e9
    rho: float = 1800.0
    # solver
    n: int = 2000
    epsilon: float = 0.001
    max_iter: int = 30
    bisection_tol: float = 1e-4
    # flags; None means "the subcommand's default"
    geometric: bool | None = None
    first_order_reference: bool = True
    allow_partial: bool = False
    gnuplot: bool = False
    workers: int = 1
    # sweeps; None means "the subcommand's default"
    samples: int = 41
    refine: bool = False
    e_over_h: list[float] | None = None
    e_over_h_max: float = 0.45
    N_over_gamma: list[float] | None = None
    N_over_gamma_max: float = 1.0
    N_over_NE: list[float] | None = None
    alphabar: list[float] | None = None
    H_over_Hmax_max: float = 0.99

    _lines: dict = field(default_factory=dict, repr=False, compare=False)
    _source: str = field(default="<flags>", repr=False, compare=False)

    @property
    def beam(self) -> BeamSpec:
        return BeamSpec(b=self.b, h=self.h, L=self.L, E=self.E, rho=self.rho)

    @property
    def settings(self) -> SolverSettings:
        return SolverSettings(n=self.n, epsilon=self.epsilon, max_iter=self.max_iter)

    def resolved(self) -> dict:
        """Public fields as a plain dict (used for the CSV header)."""
        return {f.name: getattr(self, f.name) for f in dataclasses.fields(self) if not f.name.startswith("_")}

    def error(self, key: str, message: str) -> ConfigError:
        line = self._lines.get(key)
        where = f"{self._source}:{line}" if line else self._source
        return ConfigError(f"{where}: {key}: {message}")

    # ------------------------------------------------------------------

    def validate(self) -> RunConfig:
        for key in ("b", "h", "L", "E", "rho", "epsilon", "bisection_tol"):
            v = getattr(self, key)
            if not _is_number(v) or not math.isfinite(v) or v <= 0:
                raise self.error(key, f"must be a positive number, got {v!r}")
        for key, low in (("n", 100), ("max_iter", 1), ("workers", 1), ("samples", 2)):
            v = getattr(self, key)
            if not isinstance(v, int) or isinstance(v, bool) or v < low:
                raise self.error(key, f"must be an integer >= {low}, got {v!r}")
        for key in ("first_order_reference", "allow_partial", "gnuplot", "refine"):
            if not isinstance(getattr(self, key), bool):
                raise self.error(key, "must be true or false")
        if self.geometric is not None and not isinstance(self.geometric, bool):
            raise self.error("geometric", "must be true, false or null")
        _check_range(self, "e_over_h_max", 0.0, 0.5, lo_open=True, hi_open=True)
        _check_range(self, "N_over_gamma_max", 0.0, math.inf, lo_open=True, hi_open=True)
        _check_range(self, "H_over_Hmax_max", 0.0, 1.0, lo_open=True, hi_open=True)
        _check_list(self, "e_over_h", 0.0, 0.5, lo_open=False)
        _check_list(self, "N_over_gamma", 0.0, math.inf, lo_open=False)
        _check_list(self, "N_over_NE", 0.0, 1.0, lo_open=True)
        _check_list(self, "alphabar", 0.0, math.inf, lo_open=True)
        return self


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _check_range(cfg, key, lo, hi, lo_open, hi_open):
    v = getattr(cfg, key)
    ok = _is_number(v) and math.isfinite(v) and (v > lo if lo_open else v >= lo) and (v < hi if hi_open else v <= hi)
    if not ok:
        raise cfg.error(key, f"must lie in {'(' if lo_open else '['}{lo}, {hi}), got {v!r}")


def _check_list(cfg, key, lo, hi, lo_open):
    values = getattr(cfg, key)
    if values is None:
        return
    if not isinstance(values, list) or not values:
        raise cfg.error(key, "must be a non-empty list of numbers")
    for v in values:
        if not _is_number(v) or not ((v > lo if lo_open else v >= lo) and v < hi):
            raise cfg.error(key, f"value {v!r} outside {'(' if lo_open else '['}{lo}, {hi})")


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig) if not f.name.startswith("_")}


def load_config(path: str | None, overrides: dict | None = None) -> RunConfig:
    """Read ``path`` (JSON object), apply ``overrides`` and validate."""
    values: dict = {}
    lines: dict = {}
    source = "<flags>"
    if path is not None:
        source = str(path)
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"{source}: cannot read config: {exc.strerror}") from None
        try:
            values = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        if not isinstance(values, dict):
            raise ConfigError(f"{source}:1: top level must be a JSON object")
        for key in values:
            m = re.search(r'"%s"\s*:' % re.escape(key), text)
            lines[key] = text.count("\n", 0, m.start()) + 1 if m else None
        for key in values:
            if key not in _FIELDS:
                where = f"{source}:{lines[key]}" if lines.get(key) else source
                raise ConfigError(f"{where}: unknown key {key!r}")
    for key, v in (overrides or {}).items():
        if v is not None:
            values[key] = v
            lines.pop(key, None)
    cfg = RunConfig(**values)
    cfg._lines = lines
    cfg._source = source
    # integers written as 1e3 etc. are accepted if integral
    for key in ("n", "max_iter", "workers", "samples"):
        v = getattr(cfg, key)
        if isinstance(v, float) and v.is_integer():
            setattr(cfg, key, int(v))
    return cfg.validate()
