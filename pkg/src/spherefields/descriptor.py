"""TOML field descriptors.

Schema (one field per file)::

    kind = "spin"            # theta = (k-1) beta
    k = 4

    kind = "north_south"     # v = e2

    kind = "grid"            # sampled theta, rows = latitudes (south to north)
    theta_csv = "theta.csv"  # path relative to the descriptor, or
    theta = [[...], ...]     # inline rows, or
    [source]                 # an analytic descriptor sampled on the grid
    kind = "spin"
    k = 3
    # with [source], n_alpha and n_beta are required

    kind = "perturbed"
    [base]
    kind = "spin"
    k = 4
    [bump]
    amplitude = 0.3
    center = [0.0, 3.14159]  # latitude, longitude (radians)
    width = 0.5
    # or: random = true, optional max_amplitude; drawn from the CLI --seed
"""
from __future__ import annotations

import re
from pathlib import Path

import numpy as np
import tomli

from .fields import BumpSpec, GridField, NorthSouth, Spin, make_grid, perturb, random_bump
from .geometry import SphericalPoint

__all__ = ["DescriptorError", "load_descriptor", "parse_descriptor", "field_from_mapping"]

KINDS = ("spin", "north_south", "grid", "perturbed")


class DescriptorError(ValueError):
    pass


def _locate(text, key):
    if text is None:
        return ""
    for lineno, line in enumerate(text.splitlines(), start=1):
        m = re.match(rf"\s*{re.escape(key)}\s*=", line)
        if m:
            return f" (at line {lineno}, column {line.index(key) + 1})"
    return ""


def _fail(msg, key=None, text=None):
    raise DescriptorError(msg + (_locate(text, key) if key else ""))


def _require(table, key, kinds, text, where):
    if key not in table:
        _fail(f"{where}: missing key {key!r}", text=text)
    value = table[key]
    if not isinstance(value, kinds) or isinstance(value, bool):
        _fail(f"{where}: key {key!r} has wrong type {type(value).__name__}", key, text)
    return value


def field_from_mapping(table, base_dir=Path("."), rng=None, text=None, where="descriptor"):
    """Build a field from an already-parsed descriptor mapping."""
    kind = table.get("kind")
    if kind not in KINDS:
        _fail(f"{where}: kind must be one of {', '.join(KINDS)}, got {kind!r}", "kind", text)
    try:
        if kind == "spin":
            return Spin(_require(table, "k", int, text, where))
        if kind == "north_south":
            return NorthSouth()
        if kind == "grid":
            return _grid(table, base_dir, rng, text, where)
        base = table.get("base")
        if not isinstance(base, dict):
            _fail(f"{where}: perturbed field needs a [base] table", text=text)
        field = field_from_mapping(base, base_dir, rng, text, where + ".base")
        bump = table.get("bump")
        if not isinstance(bump, dict):
            _fail(f"{where}: perturbed field needs a [bump] table", text=text)
        return perturb(field, _bump(bump, rng, text, where + ".bump"))
    except DescriptorError:
        raise
    except ValueError as exc:
        raise DescriptorError(f"{where}: {exc}") from exc


def _bump(table, rng, text, where):
    if table.get("random", False):
        if rng is None:
            rng = np.random.default_rng(0)
        return random_bump(rng, max_amplitude=float(table.get("max_amplitude", 0.5)))
    amplitude = float(_require(table, "amplitude", (int, float), text, where))
    width = float(_require(table, "width", (int, float), text, where))
    center = _require(table, "center", list, text, where)
    if len(center) != 2:
        _fail(f"{where}: center must be [latitude, longitude]", "center", text)
    return BumpSpec(amplitude, SphericalPoint(float(center[0]), float(center[1])), width)


def _grid(table, base_dir, rng, text, where):
    if "source" in table:
        n_alpha = _require(table, "n_alpha", int, text, where)
        n_beta = _require(table, "n_beta", int, text, where)
        source = field_from_mapping(table["source"], base_dir, rng, text, where + ".source")
        return make_grid(source, n_alpha, n_beta)
    if "theta_csv" in table:
        path = Path(base_dir) / _require(table, "theta_csv", str, text, where)
        try:
            values = np.loadtxt(path, delimiter=",", ndmin=2)
        except (OSError, ValueError) as exc:
            raise DescriptorError(f"{where}: cannot read {path}: {exc}") from exc
    elif "theta" in table:
        try:
            values = np.array(table["theta"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise DescriptorError(f"{where}: theta must be a rectangular array of numbers") from exc
    else:
        _fail(f"{where}: grid needs one of theta, theta_csv or [source]", text=text)
    for key, axis in (("n_alpha", 0), ("n_beta", 1)):
        if key in table and (values.ndim != 2 or table[key] != values.shape[axis]):
            _fail(f"{where}: {key} = {table[key]} does not match the sample array", key, text)
    return GridField(values)


def parse_descriptor(text, base_dir=Path("."), seed=None):
    try:
        table = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise DescriptorError(f"malformed descriptor: {exc}") from exc
    rng = np.random.default_rng(seed) if seed is not None else None
    return field_from_mapping(table, base_dir, rng, text)


def load_descriptor(path, seed=None):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DescriptorError(f"cannot read descriptor {path}: {exc}") from exc
    return parse_descriptor(text, path.parent, seed)
