"""Run configuration with CLI > environment > config file precedence.

Environment variables use the ``VARIANT_`` prefix; the optional config
file is JSON. Exactly one embedding provider is selected per run.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any, Mapping

from .levels import LEVELS, LevelWeights, resolve_weights

__all__ = ["RunConfig", "load_run_config", "ENV_PREFIX"]

ENV_PREFIX = "VARIANT_"

PROVIDERS = ("hash", "service", "precomputed")


@dataclass
class RunConfig:
    """Resolved settings for one assessment run."""

    provider: str = "hash"
    provider_params: dict[str, Any] = field(default_factory=dict)
    weights_spec: Any = "paper-default"
    k: int | None = None
    output: str | None = None
    data_dir: str = "variant-data"

    def __post_init__(self):
        if self.provider not in PROVIDERS:
            raise ValueError(
                f"unknown provider {self.provider!r}; expected one of {PROVIDERS}"
            )

    @property
    def weights(self) -> LevelWeights:
        return resolve_weights(self.weights_spec)

    def weights_dict(self) -> dict[str, float]:
        resolved = self.weights
        return {lvl.column: resolved[lvl] for lvl in LEVELS}

    def describe(self) -> dict[str, Any]:
        """The config echo embedded in result documents."""
        return {
            "provider": self.provider,
            "provider_params": {
                k: v for k, v in self.provider_params.items() if k != "token"
            },
            "weights": self.weights_dict(),
            "weights_preset": self.weights_spec if isinstance(self.weights_spec, str) else None,
            "k": self.k,
        }


def _parse_weights_value(value: str) -> Any:
    value = value.strip()
    if "," in value:
        return [float(x) for x in value.split(",")]
    return value


def load_run_config(
    cli: Mapping[str, Any] | None = None,
    env: Mapping[str, str] | None = None,
    config_path: str | None = None,
) -> RunConfig:
    """Merge the three config sources, most specific winning.

    ``cli`` entries with value ``None`` are treated as unset.
    """
    env = os.environ if env is None else env
    merged: dict[str, Any] = {}

    path = config_path or env.get(ENV_PREFIX + "CONFIG")
    if path:
        with open(path, encoding="utf-8") as fh:
            merged.update(json.load(fh))

    env_map = {
        "PROVIDER": "provider",
        "WEIGHTS": "weights_spec",
        "K": "k",
        "OUT": "output",
        "DATA_DIR": "data_dir",
    }
    for suffix, key in env_map.items():
        raw = env.get(ENV_PREFIX + suffix)
        if raw:
            if key == "k":
                merged[key] = int(raw)
            elif key == "weights_spec":
                merged[key] = _parse_weights_value(raw)
            else:
                merged[key] = raw
    params = dict(merged.get("provider_params", {}))
    for suffix, key in (
        ("SERVICE_URL", "url"),
        ("SERVICE_MODEL", "model"),
        ("SERVICE_TOKEN", "token"),
        ("VECTORS", "path"),
    ):
        raw = env.get(ENV_PREFIX + suffix)
        if raw:
            params[key] = raw
    if params:
        merged["provider_params"] = params

    for key, value in (cli or {}).items():
        if value is None:
            continue
        if key == "provider_params":
            merged.setdefault("provider_params", {})
            merged["provider_params"] = {**merged["provider_params"], **value}
        elif key == "weights_spec" and isinstance(value, str):
            merged[key] = _parse_weights_value(value)
        else:
            merged[key] = value

    allowed = {"provider", "provider_params", "weights_spec", "k", "output", "data_dir"}
    unknown = set(merged) - allowed
    if unknown:
        raise ValueError(f"unknown config keys {sorted(unknown)}")
    return RunConfig(**merged)
