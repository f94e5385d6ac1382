"""INI run configuration.

A run file has three sections:

    [slab_a]
    material = drude_lorentz
    omega_pe = 1.0
    omega_te = 0.5
    gamma_e = 0.005
    omega_pm = 1.0
    omega_tm = 1.0
    gamma_m = 0.01
    thickness = semi_infinite

    [slab_b]
    material = perfect_conductor

    [run]
    gap = 0.25 lambda0
    rel_tol = 1e-6

Materials: drude_lorentz (omega_pe required, the five other oscillator keys
default to 0), constant (eps required, mu defaults to 1), perfect_conductor,
infinitely_permeable, vacuum. Lengths accept "0.5 lambda0", "3.14 c_over_w0",
or a bare number meaning c_over_w0. Unknown keys are rejected, not ignored.

[run] keys beyond the shared quadrature overrides (rel_tol, abs_tol,
max_subdivisions, tail_cutoff) belong to individual subcommands and are
validated there; parse_config only collects them.
"""

from __future__ import annotations

import configparser
import dataclasses
import math
from dataclasses import dataclass

from .lifshitz import LAMBDA0, QuadratureSpec, Slab
from .materials import (
    Constant,
    DrudeLorentz,
    InfinitelyPermeable,
    OscillatorParams,
    PerfectConductor,
    Vacuum,
)

__all__ = ["ConfigError", "RunConfig", "parse_config", "parse_length"]


class ConfigError(ValueError):
    """Malformed run file; the message carries a section.key path."""


@dataclass(frozen=True)
class RunConfig:
    slab_a: Slab
    slab_b: Slab
    quad: QuadratureSpec
    run: dict[str, str]  # subcommand-specific keys, validated by the caller
    text: str            # verbatim file contents, echoed into run records


_LENGTH_UNITS = {"lambda0": LAMBDA0, "c_over_w0": 1.0}


def parse_length(raw: str, where: str = "length") -> float:
    """A positive length in units c/w0. Accepts "<number>", "<number>
    c_over_w0", or "<number> lambda0"."""
    parts = raw.split()
    if len(parts) == 1:
        number, scale = parts[0], 1.0
    elif len(parts) == 2 and parts[1] in _LENGTH_UNITS:
        number, scale = parts[0], _LENGTH_UNITS[parts[1]]
    else:
        raise ConfigError(
            f"{where}: expected '<number> [lambda0|c_over_w0]', got {raw!r}")
    try:
        value = float(number) * scale
    except ValueError:
        raise ConfigError(f"{where}: not a number: {number!r}") from None
    if not (math.isfinite(value) and value > 0.0):
        raise ConfigError(f"{where}: length must be positive and finite, got {raw!r}")
    return value


def _take_float(entries: dict[str, str], key: str, where: str,
                default: float | None = None) -> float | None:
    if key not in entries:
        if default is None:
            raise ConfigError(f"{where}.{key}: required key is missing")
        return default
    raw = entries.pop(key)
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{where}.{key}: not a number: {raw!r}") from None
    return value


_OSC_KEYS = ("omega_pe", "omega_te", "gamma_e", "omega_pm", "omega_tm", "gamma_m")
_IDEAL_MATERIALS = {
    "perfect_conductor": PerfectConductor,
    "infinitely_permeable": InfinitelyPermeable,
    "vacuum": Vacuum,
}


def _parse_slab(section: str, entries: dict[str, str]) -> Slab:
    entries = dict(entries)
    kind = entries.pop("material", None)
    if kind is None:
        raise ConfigError(f"{section}.material: required key is missing")

    thickness_raw = entries.pop("thickness", "semi_infinite")
    if thickness_raw == "semi_infinite":
        thickness = None
    else:
        thickness = parse_length(thickness_raw, f"{section}.thickness")

    if kind == "drude_lorentz":
        omega_pe = _take_float(entries, "omega_pe", section)
        values = {k: _take_float(entries, k, section, default=0.0)
                  for k in _OSC_KEYS[1:]}
        try:
            material = DrudeLorentz(
                electric=OscillatorParams(
                    omega_pe, values["omega_te"], values["gamma_e"]),
                magnetic=OscillatorParams(
                    values["omega_pm"], values["omega_tm"], values["gamma_m"]),
            )
        except ValueError as err:
            raise ConfigError(f"{section}: {err}") from None
    elif kind == "constant":
        eps = _take_float(entries, "eps", section)
        mu = _take_float(entries, "mu", section, default=1.0)
        try:
            material = Constant(eps, mu)
        except ValueError as err:
            raise ConfigError(f"{section}: {err}") from None
    elif kind in _IDEAL_MATERIALS:
        material = _IDEAL_MATERIALS[kind]()
    else:
        raise ConfigError(
            f"{section}.material: unknown material {kind!r}; expected "
            "drude_lorentz, constant, perfect_conductor, infinitely_permeable, "
            "or vacuum")

    if entries:
        stray = ", ".join(f"{section}.{k}" for k in sorted(entries))
        raise ConfigError(f"unknown keys: {stray}")
    try:
        return Slab(material, thickness)
    except ValueError as err:
        raise ConfigError(f"{section}: {err}") from None


_QUAD_KEYS = ("rel_tol", "abs_tol", "max_subdivisions", "tail_cutoff")


def _parse_quad(run: dict[str, str]) -> QuadratureSpec:
    quad = QuadratureSpec()
    updates: dict[str, object] = {}
    for key in _QUAD_KEYS:
        if key not in run:
            continue
        raw = run.pop(key)
        try:
            updates[key] = int(raw) if key == "max_subdivisions" else float(raw)
        except ValueError:
            raise ConfigError(f"run.{key}: not a number: {raw!r}") from None
    try:
        return dataclasses.replace(quad, **updates)
    except ValueError as err:
        raise ConfigError(f"run: {err}") from None


def parse_config(text: str) -> RunConfig:
    """Parse a run file. Slabs and quadrature are fully validated here;
    remaining [run] keys pass through for the subcommand to check."""
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text)
    except configparser.Error as err:
        raise ConfigError(f"bad INI syntax: {err}") from None

    sections = set(parser.sections())
    for required in ("slab_a", "slab_b"):
        if required not in sections:
            raise ConfigError(f"missing [{required}] section")
    stray_sections = sections - {"slab_a", "slab_b", "run"}
    if stray_sections:
        raise ConfigError(f"unknown sections: {', '.join(sorted(stray_sections))}")

    slab_a = _parse_slab("slab_a", dict(parser["slab_a"]))
    slab_b = _parse_slab("slab_b", dict(parser["slab_b"]))
    run = dict(parser["run"]) if "run" in sections else {}
    quad = _parse_quad(run)
    return RunConfig(slab_a=slab_a, slab_b=slab_b, quad=quad, run=run, text=text)
