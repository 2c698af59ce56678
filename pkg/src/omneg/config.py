"""Key-value config files for sweeps and single-point runs.

Grammar, one statement per line (``#`` starts a comment):

    base.<param> = <number> [* omega_m1]
    axes.<param> = linspace(<a>, <b>, <n>) [* omega_m1]
    axes.<param> = list(<v1>, <v2>, ...) [* omega_m1]

``<param>`` is any SystemParams field name. ``detuning`` and
``coulomb_lambda`` additionally accept an ``_in_omega_m`` spelling
whose values are multiples of ``omega_m1``. Giving both spellings of
one parameter in a section, repeating a key, or combining the
``_in_omega_m`` spelling with an explicit ``* omega_m1`` factor is a
ConfigError. Scaling always resolves against the base ``omega_m1``
(file value or default), even when ``omega_m1`` itself is swept.
Parameters present in both sections take the axis value at every grid
point.
"""

from __future__ import annotations

import dataclasses
import re

import numpy as np

from .errors import ConfigError
from .params import SystemParams

__all__ = [
    "PARAM_NAMES",
    "SCALED_ALIASES",
    "parse_config",
    "load_config",
    "parse_override",
    "apply_overrides",
]

PARAM_NAMES = tuple(f.name for f in dataclasses.fields(SystemParams))
# convenience spellings: values are multiples of the base omega_m1
SCALED_ALIASES = {
    "detuning_in_omega_m": "detuning",
    "coulomb_lambda_in_omega_m": "coulomb_lambda",
}

_FLOAT = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_NUM_RE = re.compile(rf"^{_FLOAT}$")
_SCALE_RE = re.compile(r"^(.*?)\s*\*\s*omega_m1$")
_LINSPACE_RE = re.compile(
    rf"^linspace\(\s*({_FLOAT})\s*,\s*({_FLOAT})\s*,\s*(\d+)\s*\)$"
)
_LIST_RE = re.compile(r"^list\((.*)\)$")


def _fail(lineno: int | None, message: str) -> ConfigError:
    where = f"line {lineno}: " if lineno is not None else ""
    return ConfigError(where + message)


def _split_key(key: str, lineno: int | None):
    """(section, canonical name, scaled-alias flag) for a dotted key."""
    if "." not in key:
        raise _fail(lineno, f"key {key!r} needs a base. or axes. prefix")
    section, _, name = key.partition(".")
    if section not in ("base", "axes"):
        raise _fail(lineno, f"unknown section {section!r} (expected base or axes)")
    if name in SCALED_ALIASES:
        return section, SCALED_ALIASES[name], True
    if name in PARAM_NAMES:
        return section, name, False
    raise _fail(lineno, f"unknown parameter {name!r}")


def _parse_values(value: str, section: str, lineno: int | None):
    """(values tuple, wants-omega-scale flag) for a raw value string."""
    scaled = False
    m = _SCALE_RE.match(value)
    if m:
        scaled = True
        value = m.group(1).strip()
    if _NUM_RE.match(value):
        if section == "axes":
            raise _fail(lineno, "axes values must be linspace(...) or list(...)")
        return (float(value),), scaled
    m = _LINSPACE_RE.match(value)
    if m:
        if section == "base":
            raise _fail(lineno, "base values must be single numbers")
        count = int(m.group(3))
        if count < 1:
            raise _fail(lineno, "linspace needs at least one point")
        grid = np.linspace(float(m.group(1)), float(m.group(2)), count)
        return tuple(float(v) for v in grid), scaled
    m = _LIST_RE.match(value)
    if m:
        if section == "base":
            raise _fail(lineno, "base values must be single numbers")
        items = [s.strip() for s in m.group(1).split(",")]
        if items == [""]:
            raise _fail(lineno, "list(...) must not be empty")
        for item in items:
            if not _NUM_RE.match(item):
                raise _fail(lineno, f"bad number {item!r} in list(...)")
        return tuple(float(v) for v in items), scaled
    raise _fail(lineno, f"cannot parse value {value!r}")


def parse_config(text: str):
    """Parse config text into (base SystemParams, ordered axes list).

    Axes come back as [(parameter-name, value-tuple), ...] in file
    order. Raises ConfigError on any grammar or schema violation;
    SystemParams validation failures surface as ConfigError too.
    """
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise _fail(lineno, f"expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not value:
            raise _fail(lineno, f"empty value for {key!r}")
        section, name, alias = _split_key(key, lineno)
        values, scaled = _parse_values(value, section, lineno)
        if alias and scaled:
            raise _fail(lineno, f"{key!r} is already a multiple of omega_m1")
        entries.append((lineno, section, name, alias or scaled, values))

    seen: set[tuple[str, str]] = set()
    for lineno, section, name, _, _ in entries:
        if (section, name) in seen:
            raise _fail(lineno, f"duplicate setting of {section}.{name}")
        seen.add((section, name))

    omega_scale = SystemParams.__dataclass_fields__["omega_m1"].default
    for lineno, section, name, scaled, values in entries:
        if section == "base" and name == "omega_m1":
            if scaled:
                raise _fail(lineno, "omega_m1 cannot be scaled by itself")
            omega_scale = values[0]

    base_kwargs: dict[str, float] = {}
    axes: list[tuple[str, tuple[float, ...]]] = []
    for lineno, section, name, scaled, values in entries:
        if scaled and name == "omega_m1":
            raise _fail(lineno, "omega_m1 cannot be scaled by itself")
        if scaled:
            values = tuple(v * omega_scale for v in values)
        if section == "base":
            base_kwargs[name] = values[0]
        else:
            axes.append((name, values))

    try:
        base = SystemParams(**base_kwargs)
    except ValueError as exc:
        raise ConfigError(f"invalid base parameters: {exc}") from exc
    return base, axes


def load_config(path):
    """Read and parse a config file; I/O errors propagate as OSError."""
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    return parse_config(text)


def parse_override(spec: str):
    """Parse one ``name=value`` override into (canonical-name, value, scaled).

    The value must be a single number, optionally ``* omega_m1`` scaled
    or using the ``_in_omega_m`` spelling; scaling is resolved later
    against the parameters being overridden.
    """
    if "=" not in spec:
        raise ConfigError(f"override {spec!r} must look like name=value")
    key, _, value = spec.partition("=")
    key = key.strip()
    value = value.strip()
    if key in SCALED_ALIASES:
        name, alias = SCALED_ALIASES[key], True
    elif key in PARAM_NAMES:
        name, alias = key, False
    else:
        raise ConfigError(f"unknown parameter {key!r}")
    values, scaled = _parse_values(value, "base", None)
    if alias and scaled:
        raise ConfigError(f"{key!r} is already a multiple of omega_m1")
    if (alias or scaled) and name == "omega_m1":
        raise ConfigError("omega_m1 cannot be scaled by itself")
    return name, values[0], alias or scaled


def apply_overrides(base: SystemParams, specs) -> SystemParams:
    """Apply ``name=value`` overrides to a SystemParams instance.

    omega_m1 overrides land first so that scaled values resolve against
    the final omega_m1; for repeats of one name the last wins.
    """
    parsed = [parse_override(s) for s in specs]
    resolved: dict[str, tuple[float, bool]] = {}
    for name, value, scaled in parsed:
        resolved[name] = (value, scaled)
    kwargs: dict[str, float] = {}
    omega_scale = base.omega_m1
    if "omega_m1" in resolved:
        omega_scale = resolved.pop("omega_m1")[0]
        kwargs["omega_m1"] = omega_scale
    for name, (value, scaled) in resolved.items():
        kwargs[name] = value * omega_scale if scaled else value
    try:
        return dataclasses.replace(base, **kwargs)
    except ValueError as exc:
        raise ConfigError(f"invalid parameters after overrides: {exc}") from exc
