"""Desk-scale fabric model: pack, place, delay-annotate, and synthesize benchmarks."""

from __future__ import annotations

from ..model import ArchitectureSpec, LogicalNetlist, PlacedDesign
from .pack import Packing, pack
from .place import Placement, place, wirelength
from .synthetic import BOTTLENECKS, BlockCounts, SyntheticProfile, generate_synthetic
from .timing import build_timing_graph, route_delay_estimate
from .variants import default_architecture, expand_columns, variant


def implement(netlist: LogicalNetlist, arch: ArchitectureSpec, seed: int = 1, effort: float = 1.0) -> PlacedDesign:
    """Pack, place and delay-annotate once; the result is reused by every masked analysis."""
    packing = pack(netlist, arch)
    placement = place(packing, arch, seed, effort=effort)
    graph = build_timing_graph(netlist, placement, arch)
    return PlacedDesign(netlist, packing.clusters, dict(placement.positions), graph, arch.name)


__all__ = [
    "BOTTLENECKS", "BlockCounts", "Packing", "Placement", "SyntheticProfile", "build_timing_graph",
    "default_architecture", "expand_columns", "generate_synthetic", "implement", "pack", "place",
    "route_delay_estimate", "variant", "wirelength",
]
