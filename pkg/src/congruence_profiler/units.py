"""Duration parsing. Internally everything is picoseconds."""

from __future__ import annotations

import re

_DURATION = re.compile(r"^\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*(ps|ns|us)?\s*$")
_SCALE = {"ps": 1.0, "ns": 1000.0, "us": 1_000_000.0, None: 1.0}


def parse_duration(value) -> float:
    """``"0.2ns"`` -> 200.0. Bare numbers are taken as picoseconds."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    m = _DURATION.match(str(value))
    if not m:
        raise ValueError(f"not a duration: {value!r} (expected e.g. 200ps or 0.2ns)")
    return float(m.group(1)) * _SCALE[m.group(2)]


def ps_to_ns(ps: float) -> float:
    return ps / 1000.0
