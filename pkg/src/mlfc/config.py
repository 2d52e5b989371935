"""Run configuration: defaults table, flat key=value config files, merging.

Precedence: built-in defaults < config file (MLFC_CONFIG or --config) <
explicit command-line flags.  The effective configuration is echoed under
``config`` in every JSON report, and that block fed back as a config file
reproduces the identical report.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields

from .errors import ConfigError

ENV_VAR = "MLFC_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    # evaluation regime switch radii
    r0: float = 5.0
    r1: float = 40.0
    # tolerances
    rel_tol: float = 1e-10
    quad_tol: float = 1e-9
    oracle_digits: int = 50
    # decay verification
    slope_tol: float = 0.07
    ratio_cap: float = 1e3
    lambda_grid: str = "10:1e4:16"
    t_grid: str = "1:100:12"
    x_grid: str = "-10:10:401"
    # budgets
    osc_budget: int = 4_000_000
    oracle_budget: int = 8_000_000
    mp_dps_cap: int = 4000
    mp_terms_cap: int = 120_000
    # parallelism
    threads: int = 1

    def as_dict(self) -> dict:
        return asdict(self)


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, raw: str):
    default = getattr(RunConfig(), key)
    if isinstance(default, bool):
        if raw.lower() in ("1", "true", "yes"):
            return True
        if raw.lower() in ("0", "false", "no"):
            return False
        raise ConfigError(f"bad boolean for {key}: {raw!r}")
    if isinstance(default, int):
        try:
            return int(float(raw))
        except ValueError as exc:
            raise ConfigError(f"bad integer for {key}: {raw!r}") from exc
    if isinstance(default, float):
        try:
            return float(raw)
        except ValueError as exc:
            raise ConfigError(f"bad number for {key}: {raw!r}") from exc
    return raw


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = _coerce(key, raw)
    return values


def load_config_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read(), source=path)


def build_config(file_path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Merge defaults, optional config file, and explicit overrides."""
    values: dict = {}
    env_path = os.environ.get(ENV_VAR)
    if file_path is None and env_path:
        file_path = env_path
    if file_path:
        values.update(load_config_file(file_path))
    for key, val in (overrides or {}).items():
        if val is None:
            continue
        if key not in _FIELD_TYPES:
            raise ConfigError(f"unknown config key {key!r}")
        values[key] = val
    return RunConfig(**values)


def format_config(cfg: RunConfig) -> str:
    """Render a config as a file that parses back to the same values."""
    lines = [f"{key} = {value}" for key, value in cfg.as_dict().items()]
    return "\n".join(lines) + "\n"


def parse_geometric_grid(spec: str, *, name: str = "grid"):
    """``lo:hi:n`` -> n geometrically spaced points on [lo, hi]."""
    import numpy as np

    try:
        lo_s, hi_s, n_s = spec.split(":")
        lo, hi, n = float(lo_s), float(hi_s), int(n_s)
    except ValueError as exc:
        raise ConfigError(f"bad {name} {spec!r}; expected lo:hi:n") from exc
    if not (0 < lo < hi) or n < 2:
        raise ConfigError(f"bad {name} {spec!r}; need 0 < lo < hi and n >= 2")
    return np.geomspace(lo, hi, n)


def parse_linear_grid(spec: str, *, name: str = "grid"):
    """``lo:hi:n`` -> n uniformly spaced points on [lo, hi]."""
    import numpy as np

    try:
        lo_s, hi_s, n_s = spec.split(":")
        lo, hi, n = float(lo_s), float(hi_s), int(n_s)
    except ValueError as exc:
        raise ConfigError(f"bad {name} {spec!r}; expected lo:hi:n") from exc
    if not (lo < hi) or n < 2:
        raise ConfigError(f"bad {name} {spec!r}; need lo < hi and n >= 2")
    return np.linspace(lo, hi, n)
