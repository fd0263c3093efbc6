"""Run configuration: numerical knobs with file and flag overrides.

Config files are flat ``key = value`` text; unknown keys are rejected so
typos fail loudly. The ZH_CONFIG environment variable points at a default
file; explicit --config wins over it and --set flags win over both.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .errors import UsageError


@dataclass(frozen=True)
class RunConfig:
    coeff_cutoff_multiplier: float = 1.1
    scan_step: float = 0.01
    bisect_tol: float = 1e-9
    prime_cutoff: int = 10 ** 6
    contour_offset: float = 2.0
    contour_step: float = 0.05
    contour_halfwidth_log: float = 48.0
    wgrid_step_factor: float = 3.0e-3
    panel_width: float = 0.25
    panel_order: int = 16
    weight_rel_tol: float = 1e-18
    max_height: float = 40.0
    direct_n_small: int = 10 ** 6
    direct_n_large: int = 1_500_000
    output_dir: str = "out"
    format: str = "json"

    def __post_init__(self):
        for name in ("scan_step", "bisect_tol", "contour_step", "panel_width",
                     "weight_rel_tol", "coeff_cutoff_multiplier"):
            if getattr(self, name) <= 0:
                raise UsageError(f"{name} must be positive")
        if self.scan_step > 0.05:
            raise UsageError("scan_step must be <= 0.05")
        if self.format not in ("json", "csv"):
            raise UsageError("format must be json or csv")

    def direct_series_N(self, degree: int) -> int:
        return self.direct_n_small if degree <= 2 else self.direct_n_large

    def cache_key(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def digest(self) -> str:
        payload = ";".join(f"{f.name}={getattr(self, f.name)!r}"
                           for f in fields(self))
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_DEFAULT = None


def default_config() -> RunConfig:
    global _DEFAULT
    if _DEFAULT is None:
        path = os.environ.get("ZH_CONFIG")
        _DEFAULT = load_config(path) if path else RunConfig()
    return _DEFAULT


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(name: str, raw: str):
    if name not in _FIELD_TYPES:
        raise UsageError(f"unknown config key {name!r}")
    kind = _FIELD_TYPES[name]
    raw = raw.strip()
    try:
        if kind == "int":
            return int(float(raw)) if ("e" in raw or "." in raw) else int(raw)
        if kind == "float":
            return float(raw)
    except ValueError:
        raise UsageError(f"bad value for {name}: {raw!r}") from None
    return raw


def load_config(path: str | os.PathLike | None,
                overrides: dict | None = None) -> RunConfig:
    """RunConfig from a flat key=value file plus explicit overrides."""
    values = {}
    if path:
        text = Path(path).read_text()
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, _, raw = line.partition("=")
            key = key.strip()
            values[key] = _coerce(key, raw)
    if overrides:
        for key, raw in overrides.items():
            values[key] = _coerce(key, str(raw))
    return replace(RunConfig(), **values) if values else RunConfig()
