"""JSON serialization of placed designs and timing graphs."""

from __future__ import annotations

import json

from ..model import (
    Cluster,
    DelayClass,
    PlacedDesign,
    TileType,
    TimingEdge,
    TimingGraph,
    TimingNode,
)
from .netlist import parse_netlist, write_netlist

DESIGN_FORMAT = "congruence-design/1"


def graph_to_dict(graph: TimingGraph) -> dict:
    return {
        "clock_period_hint_ps": graph.clock_period_hint,
        "nodes": [[n.id, n.role.value, list(n.origin) if n.origin else None] for n in graph.nodes],
        "edges": [[e.src, e.dst, e.delay, str(e.dclass)] for e in graph.edges],
    }


def graph_from_dict(d: dict) -> TimingGraph:
    nodes = [TimingNode(nid, role, tuple(origin) if origin else None) for nid, role, origin in d["nodes"]]
    edges = [TimingEdge(src, dst, delay, DelayClass.parse(cls)) for src, dst, delay, cls in d["edges"]]
    return TimingGraph(tuple(nodes), tuple(edges), d.get("clock_period_hint_ps"))


def write_design(design: PlacedDesign) -> str:
    doc = {
        "format": DESIGN_FORMAT,
        "arch": design.arch_name,
        "netlist": write_netlist(design.netlist),
        "clusters": [{"id": c.id, "tile": c.tile_type.value, "members": list(c.members)} for c in design.clusters],
        "placement": {cid: list(pos) for cid, pos in design.placement.items()},
        "timing_graph": graph_to_dict(design.timing_graph),
    }
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def parse_design(text: str) -> PlacedDesign:
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("format") != DESIGN_FORMAT:
        raise ValueError(f"not a {DESIGN_FORMAT} document")
    return PlacedDesign(
        parse_netlist(doc["netlist"]),
        tuple(Cluster(c["id"], TileType(c["tile"]), tuple(c["members"])) for c in doc["clusters"]),
        {cid: tuple(pos) for cid, pos in doc["placement"].items()},
        graph_from_dict(doc["timing_graph"]),
        doc["arch"],
    )
