"""Column-pattern expansion and the three built-in architecture variants.

The variant densities are invented configuration, not calibrated data:
baseline places a DSP column every 8th core column and BRAM every 6th,
denser every 5th/4th, densest every 3rd/3rd. Where two patterns land on the
same column, DSP wins.
"""

from __future__ import annotations

from ..errors import ArchitectureError
from ..model import ArchitectureSpec, TileType

DEFAULT_WIDTH = 26
DEFAULT_HEIGHT = 16


def expand_columns(width: int, dsp_period: int = 0, dsp_offset: int = 0,
                   bram_period: int = 0, bram_offset: int = 0) -> tuple[TileType, ...]:
    """IO on the two edge columns; core column k (0-based, excluding the IO
    columns) is DSP when ``k % dsp_period == dsp_offset``, else BRAM when
    ``k % bram_period == bram_offset``, else CLB. A period of 0 disables
    that column type."""
    if width < 3:
        raise ArchitectureError(f"pattern layouts need width >= 3, got {width}", "grid.width")
    for name, period, offset in (("dsp", dsp_period, dsp_offset), ("bram", bram_period, bram_offset)):
        if period < 0 or (period and not 0 <= offset < period):
            raise ArchitectureError(f"bad period/offset {period}/{offset}", f"columns.{name}")
    core = []
    for k in range(width - 2):
        if dsp_period and k % dsp_period == dsp_offset:
            core.append(TileType.DSP)
        elif bram_period and k % bram_period == bram_offset:
            core.append(TileType.BRAM)
        else:
            core.append(TileType.CLB)
    return (TileType.IO, *core, TileType.IO)


VARIANT_PATTERNS = {
    "baseline": dict(dsp_period=8, dsp_offset=3, bram_period=6, bram_offset=0),
    "denser": dict(dsp_period=5, dsp_offset=2, bram_period=4, bram_offset=0),
    "densest": dict(dsp_period=3, dsp_offset=0, bram_period=3, bram_offset=1),
}


def variant(name: str, width: int = DEFAULT_WIDTH, height: int = DEFAULT_HEIGHT) -> ArchitectureSpec:
    try:
        pattern = VARIANT_PATTERNS[name]
    except KeyError:
        raise ArchitectureError(f"unknown variant {name!r}; choose from {sorted(VARIANT_PATTERNS)}") from None
    return ArchitectureSpec(name, width, height, expand_columns(width, **pattern))


def default_architecture() -> ArchitectureSpec:
    return variant("baseline")
