"""
Run configuration: a JSON document with one object per parameter group.

    {
      "bubble":    {"R0_um": 4.5, "rho0": 3e19, "a_liquid_A": 3.2, ...},
      "coherence": {"omega0": 12.06, "g_squared": 0.0, ...},
      "spectrum":  {"opacity_cutoff": 5.0, ...},
      "flash":     {"fluctuation_scale": 1e-5, "interface_speed": 1.5e5},
      "output":    {"format": "json", "path": null, "domain": "omega",
                    "grid": "0:36:0.05"}
    }

Every key is optional; missing ones take the built-in defaults, so an empty
document (or no file at all) reproduces the reference numbers.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

from .coherence import CoherenceParams
from .errors import DomainError
from .flash import FlashParams
from .geometry import BubbleParams
from .spectrum import SpectrumParams


class ConfigError(DomainError):
    pass


DEFAULT_GRIDS = {"omega": "0:36:0.05", "lambda": "100:1000:1"}

SECTIONS = {
    "bubble": BubbleParams,
    "coherence": CoherenceParams,
    "spectrum": SpectrumParams,
    "flash": FlashParams,
}

OUTPUT_KEYS = {"format", "path", "domain", "grid"}


@dataclass
class OutputSpec:
    format: str | None = None
    path: str | None = None
    domain: str = "omega"
    grid: str | None = None


@dataclass
class RunConfig:
    bubble: BubbleParams = field(default_factory=BubbleParams)
    coherence: CoherenceParams = field(default_factory=CoherenceParams)
    spectrum: SpectrumParams = field(default_factory=SpectrumParams)
    flash: FlashParams = field(default_factory=FlashParams)
    output: OutputSpec = field(default_factory=OutputSpec)
    # "<section>.<key>" -> "config" | "flag"; anything absent is a default
    sources: dict = field(default_factory=dict)

    def source(self, section, key):
        return self.sources.get(f"{section}.{key}", "default")


def parse_grid(spec: str):
    """Parse 'min:max:step' into three floats."""
    parts = str(spec).split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must be 'min:max:step', got {spec!r}")
    try:
        lo, hi, step = (float(x) for x in parts)
    except ValueError:
        raise ConfigError(f"grid values must be numbers, got {spec!r}") from None
    if not step > 0:
        raise ConfigError("grid step must be positive")
    if not hi > lo:
        raise ConfigError("grid max must exceed grid min")
    return lo, hi, step


def _build(cls, values, section):
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(values) - names
    if unknown:
        raise ConfigError(f"unknown key(s) in '{section}': {', '.join(sorted(unknown))}")
    for k, v in values.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{section}.{k} must be a number, got {v!r}")
    try:
        return cls(**values)
    except DomainError as exc:
        raise ConfigError(f"{section}: {exc}") from None


def config_from_dict(doc: dict, overrides: dict | None = None) -> RunConfig:
    """
    Build a RunConfig from a parsed document plus flag overrides.

    `overrides` maps "section.key" to a value and wins over the document.
    """
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(doc) - set(SECTIONS) - {"output"}
    if unknown:
        raise ConfigError(f"unknown config section(s): {', '.join(sorted(unknown))}")

    sources = {}
    merged = {}
    for name in list(SECTIONS) + ["output"]:
        sec = doc.get(name, {})
        if not isinstance(sec, dict):
            raise ConfigError(f"section '{name}' must be an object")
        merged[name] = dict(sec)
        sources.update({f"{name}.{k}": "config" for k in sec})
    for dotted, value in (overrides or {}).items():
        name, key = dotted.split(".", 1)
        merged[name][key] = value
        sources[dotted] = "flag"

    out = merged.pop("output")
    bad = set(out) - OUTPUT_KEYS
    if bad:
        raise ConfigError(f"unknown key(s) in 'output': {', '.join(sorted(bad))}")
    output = OutputSpec(**out)
    if output.format not in (None, "csv", "json", "text"):
        raise ConfigError(f"output format must be csv, json or text, got {output.format!r}")
    if output.domain not in DEFAULT_GRIDS:
        raise ConfigError(f"output domain must be omega or lambda, got {output.domain!r}")

    return RunConfig(
        **{name: _build(cls, merged[name], name) for name, cls in SECTIONS.items()},
        output=output,
        sources=sources,
    )


def load_config(path=None, overrides=None) -> RunConfig:
    doc = {}
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"malformed config {path}: {exc}") from None
    return config_from_dict(doc, overrides)
