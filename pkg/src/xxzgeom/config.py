"""Sweep configuration: defaults, config-file parsing, CLI merging.

Config files are line-based ``key = value`` with '#' comments.  Values
from a file sit between the built-in defaults and explicit CLI flags,
which always win.
"""

from __future__ import annotations

import dataclasses
import math

from .dynamics import Method
from .model import Convention, ModelParams

#: quantity tokens accepted in ``quantities`` and their CSV columns
QUANTITY_COLUMNS = {
    "C": "C",
    "LHS": "L_HS",
    "VHS": "V_HS",
    "F": "F_sep",
    "LB": "L_B",
    "VB": "V_B",
    "PHI": "Phi_g",
}

_CONFIG_KEYS = (
    "J",
    "gamma",
    "B",
    "alpha",
    "alphas",
    "eta_max",
    "n_points",
    "method",
    "convention",
    "seed",
    "quantities",
)


class ConfigError(Exception):
    """Bad configuration input; the CLI maps this to exit code 2."""


@dataclasses.dataclass(frozen=True)
class SweepSpec:
    """Resolved parameters of one sweep run."""

    params_base: ModelParams
    alphas: tuple[float, ...]
    eta_max: float
    n_points: int
    quantities: frozenset[str]
    method: Method
    seed: int

    def __post_init__(self) -> None:
        if self.n_points < 2:
            raise ConfigError(f"n_points must be at least 2, got {self.n_points}")
        if not self.alphas:
            raise ConfigError("alphas must not be empty")
        if any(a < 0 for a in self.alphas):
            raise ConfigError("alphas must all be nonnegative")
        if self.eta_max <= 0:
            raise ConfigError(f"eta_max must be positive, got {self.eta_max}")
        unknown = set(self.quantities) - set(QUANTITY_COLUMNS)
        if unknown:
            raise ConfigError(f"unknown quantities: {sorted(unknown)}")


def _parse_float(raw: str, key: str, where: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{where}: malformed number for '{key}': {raw!r}") from None


def _parse_int(raw: str, key: str, where: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{where}: malformed integer for '{key}': {raw!r}") from None


def load_config(path: str) -> dict:
    """Parse a config file into typed values keyed by config key names."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None

    values: dict = {}
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        where = f"{path}:{lineno}"
        if "=" not in text:
            raise ConfigError(f"{where}: expected 'key = value', got {text!r}")
        key, raw = (part.strip() for part in text.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{where}: unknown key '{key}'")
        if key in ("J", "gamma", "B", "eta_max"):
            values[key] = _parse_float(raw, key, where)
        elif key == "alpha":
            values["alphas"] = (_parse_float(raw, key, where),)
        elif key == "alphas":
            parts = [p.strip() for p in raw.split(",") if p.strip()]
            if not parts:
                raise ConfigError(f"{where}: empty alphas list")
            values["alphas"] = tuple(_parse_float(p, key, where) for p in parts)
        elif key in ("n_points", "seed"):
            values[key] = _parse_int(raw, key, where)
        elif key == "method":
            try:
                values[key] = Method(raw)
            except ValueError:
                raise ConfigError(
                    f"{where}: method must be one of "
                    f"{[m.value for m in Method]}, got {raw!r}"
                ) from None
        elif key == "convention":
            try:
                values[key] = Convention(raw)
            except ValueError:
                raise ConfigError(
                    f"{where}: convention must be one of "
                    f"{[c.value for c in Convention]}, got {raw!r}"
                ) from None
        elif key == "quantities":
            tokens = tuple(p.strip() for p in raw.split(",") if p.strip())
            bad = [t for t in tokens if t not in QUANTITY_COLUMNS]
            if bad:
                raise ConfigError(f"{where}: unknown quantities {bad}")
            values[key] = frozenset(tokens)
    return values


def build_spec(file_values: dict | None = None, cli_values: dict | None = None) -> SweepSpec:
    """Merge defaults, config-file values and CLI values into a SweepSpec.

    ``cli_values`` entries that are None count as absent.
    """
    merged: dict = {
        "J": 0.3,
        "gamma": 0.0,
        "B": 0.0,
        "alphas": (0.0,),
        "eta_max": 2.0 * math.pi,
        "n_points": 2001,
        "method": Method.ANALYTIC,
        "convention": Convention.PAPER,
        "seed": 0,
        "quantities": frozenset(QUANTITY_COLUMNS),
    }
    for layer in (file_values or {}, cli_values or {}):
        for key, value in layer.items():
            if value is not None:
                merged[key] = value

    try:
        params = ModelParams(
            coupling_j=merged["J"],
            anisotropy_gamma=merged["gamma"],
            field_b=merged["B"],
            noise_alpha=0.0,
            convention=merged["convention"],
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return SweepSpec(
        params_base=params,
        alphas=tuple(float(a) for a in merged["alphas"]),
        eta_max=float(merged["eta_max"]),
        n_points=int(merged["n_points"]),
        quantities=frozenset(merged["quantities"]),
        method=Method(merged["method"]),
        seed=int(merged["seed"]),
    )
