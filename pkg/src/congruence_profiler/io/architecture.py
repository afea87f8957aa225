"""YAML architecture files.

Schema (every key except ``name`` and ``grid`` is optional)::

    name: densest
    grid: {width: 26, height: 16}
    column_layout:              # a pattern over the core columns ...
      dsp: {period: 3, offset: 0}
      bram: {period: 3, offset: 1}
    # column_layout: [IO, CLB, DSP, ..., IO]   ... or one entry per column
    cluster_capacity: 10
    lut_inputs: 6
    delays:                     # ps, or strings such as "0.2ns"
      lut: 200
      setup: 50
      clk_to_q: 80
      dsp: 1500
      bram: 1200
    routing:
      base_delay: 80
      per_hop_delay: 120
      local_interconnect: interconnect

Omitted delay entries take the built-in defaults.
"""

from __future__ import annotations

from typing import Any

import yaml

from ..errors import ArchitectureError
from ..fabric.variants import expand_columns
from ..model import ArchitectureSpec, Category, RoutingModel, TileType
from ..units import parse_duration

_TOP_KEYS = {"name", "grid", "column_layout", "cluster_capacity", "lut_inputs", "delays", "routing"}
_ROUTING_KEYS = {"base_delay", "per_hop_delay", "local_interconnect"}


def _mapping(value, path) -> dict:
    if not isinstance(value, dict):
        raise ArchitectureError(f"expected a mapping, got {type(value).__name__}", path)
    return value


def _no_extra(d: dict, allowed: set, prefix: str = ""):
    for k in d:
        if k not in allowed:
            raise ArchitectureError(f"unknown key (allowed: {', '.join(sorted(allowed))})", f"{prefix}{k}")


def _int(value, path, minimum=None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ArchitectureError(f"expected an integer, got {value!r}", path)
    if minimum is not None and value < minimum:
        raise ArchitectureError(f"must be >= {minimum}, got {value}", path)
    return value


def _duration(value, path) -> float:
    try:
        v = parse_duration(value)
    except ValueError as exc:
        # parse_duration rejects a leading minus, so report negatives plainly
        if isinstance(value, str) and value.strip().startswith("-"):
            raise ArchitectureError(f"negative delay {value!r}", path) from None
        raise ArchitectureError(str(exc), path) from None
    if v < 0:
        raise ArchitectureError(f"negative delay {value!r}", path)
    return v


def _layout(value, width: int) -> tuple[TileType, ...]:
    if isinstance(value, list):
        out = []
        for i, t in enumerate(value):
            try:
                out.append(TileType(str(t).upper()))
            except ValueError:
                raise ArchitectureError(f"unknown tile type {t!r}", f"column_layout[{i}]") from None
        return tuple(out)
    pattern = _mapping(value, "column_layout")
    _no_extra(pattern, {"dsp", "bram"}, "column_layout.")
    kw = {}
    for kind in ("dsp", "bram"):
        if kind not in pattern:
            continue
        entry = _mapping(pattern[kind], f"column_layout.{kind}")
        _no_extra(entry, {"period", "offset"}, f"column_layout.{kind}.")
        kw[f"{kind}_period"] = _int(entry.get("period", 0), f"column_layout.{kind}.period", 0)
        kw[f"{kind}_offset"] = _int(entry.get("offset", 0), f"column_layout.{kind}.offset", 0)
    return expand_columns(width, **kw)


def architecture_from_dict(doc: Any) -> ArchitectureSpec:
    doc = _mapping(doc, "<root>")
    _no_extra(doc, _TOP_KEYS)
    for key in ("name", "grid"):
        if key not in doc:
            raise ArchitectureError("missing required key", key)
    name = doc["name"]
    if not isinstance(name, str) or not name:
        raise ArchitectureError("expected a non-empty string", "name")
    grid = _mapping(doc["grid"], "grid")
    _no_extra(grid, {"width", "height"}, "grid.")
    width = _int(grid.get("width"), "grid.width", 1)
    height = _int(grid.get("height"), "grid.height", 1)

    layout = _layout(doc.get("column_layout", {}), width)
    delays = {}
    for k, v in _mapping(doc.get("delays", {}) or {}, "delays").items():
        delays[str(k)] = _duration(v, f"delays.{k}")
    routing = _mapping(doc.get("routing", {}) or {}, "routing")
    _no_extra(routing, _ROUTING_KEYS, "routing.")
    default = RoutingModel()
    model = RoutingModel(
        _duration(routing.get("base_delay", default.base_delay_ps), "routing.base_delay"),
        _duration(routing.get("per_hop_delay", default.per_hop_delay_ps), "routing.per_hop_delay"),
    )
    try:
        local = Category(str(routing.get("local_interconnect", "interconnect")).lower())
    except ValueError:
        raise ArchitectureError("expected interconnect or logic", "routing.local_interconnect") from None
    return ArchitectureSpec(
        name, width, height, layout,
        cluster_capacity=_int(doc.get("cluster_capacity", 10), "cluster_capacity", 1),
        lut_inputs=_int(doc.get("lut_inputs", 6), "lut_inputs", 1),
        intrinsic_delays=delays,
        routing=model,
        local_interconnect=local,
    )


def parse_architecture(text: str) -> ArchitectureSpec:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}" if mark is not None else None
        raise ArchitectureError(f"malformed YAML: {getattr(exc, 'problem', exc)}", where) from None
    return architecture_from_dict(doc)


def _num(v: float):
    return int(v) if float(v).is_integer() else v


def architecture_to_dict(arch: ArchitectureSpec) -> dict:
    return {
        "name": arch.name,
        "grid": {"width": arch.grid_width, "height": arch.grid_height},
        "column_layout": [t.value for t in arch.column_layout],
        "cluster_capacity": arch.cluster_capacity,
        "lut_inputs": arch.lut_inputs,
        "delays": {k: _num(v) for k, v in sorted(arch.intrinsic_delays.items())},
        "routing": {
            "base_delay": _num(arch.routing.base_delay_ps),
            "per_hop_delay": _num(arch.routing.per_hop_delay_ps),
            "local_interconnect": arch.local_interconnect.value,
        },
    }


class _FlowListDumper(yaml.SafeDumper):
    pass


def _represent_list(dumper, data):
    # one-line column layout keeps files readable
    return dumper.represent_sequence("tag:yaml.org,2002:seq", data, flow_style=True)


_FlowListDumper.add_representer(list, _represent_list)


def write_architecture(arch: ArchitectureSpec) -> str:
    """Explicit-layout YAML; ``parse_architecture(write_architecture(a)) == a``."""
    return yaml.dump(architecture_to_dict(arch), Dumper=_FlowListDumper, sort_keys=False, width=10_000)


def read_architecture(path) -> ArchitectureSpec:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_architecture(text)
    except ArchitectureError as exc:
        exc.args = (f"{path}: {exc.args[0]}",) + exc.args[1:]
        raise
