"""Delay annotation: turn a placed netlist into a classed timing graph."""

from __future__ import annotations

from ..errors import CongruenceError, CycleError
from ..model import (
    DelayClass,
    INTERCONNECT,
    LOGIC,
    ArchitectureSpec,
    BlockType,
    LogicalNetlist,
    NodeRole,
    TimingEdge,
    TimingGraph,
    TimingNode,
    validate_graph,
)
from .place import Placement


def route_delay_estimate(src: tuple[int, int], dst: tuple[int, int], arch: ArchitectureSpec) -> float:
    """Manhattan-hop delay model: base + per_hop * (|dcol| + |drow|)."""
    for col, row in (src, dst):
        if not arch.contains(col, row):
            raise CongruenceError(f"tile ({col}, {row}) is outside the {arch.grid_width}x{arch.grid_height} grid")
    hops = abs(src[0] - dst[0]) + abs(src[1] - dst[1])
    return arch.routing.base_delay_ps + arch.routing.per_hop_delay_ps * hops


def pin_node(block_id: str, pin: str) -> str:
    return f"{block_id}/{pin}"


def build_timing_graph(netlist: LogicalNetlist, placement: Placement, arch: ArchitectureSpec) -> TimingGraph:
    """One node per block pin plus launch/capture nodes for each register.

    Cell arcs: LUT input->output (Logic, ``lut``), register clk->q
    (Logic, ``clk_to_q``) and d->capture (Logic, ``setup``), DSP/BRAM
    every input->every output (HBlock, ``dsp``/``bram``). Each net adds one
    Interconnect arc per driver->sink pair, delayed by the route estimate
    between the two blocks' tiles.
    """
    nodes: list[TimingNode] = []
    edges: list[TimingEdge] = []

    def node(block_id, pin, role=NodeRole.COMBINATIONAL):
        nid = pin_node(block_id, pin)
        nodes.append(TimingNode(nid, role, (block_id, pin)))
        return nid

    for b in netlist.blocks:
        if b.type is BlockType.INPUT:
            node(b.id, b.output_pin(0), NodeRole.PRIMARY_INPUT)
        elif b.type is BlockType.OUTPUT:
            node(b.id, b.input_pin(0), NodeRole.PRIMARY_OUTPUT)
        elif b.type is BlockType.FF:
            clk = node(b.id, "clk", NodeRole.REGISTER_LAUNCH)
            q = node(b.id, b.output_pin(0))
            d = node(b.id, b.input_pin(0))
            cap = node(b.id, "cap", NodeRole.REGISTER_CAPTURE)
            edges.append(TimingEdge(clk, q, arch.delay("clk_to_q"), LOGIC))
            edges.append(TimingEdge(d, cap, arch.delay("setup"), LOGIC))
        else:
            ins = [node(b.id, b.input_pin(i)) for i in range(len(b.inputs))]
            outs = [node(b.id, b.output_pin(i)) for i in range(len(b.outputs))]
            if b.type is BlockType.LUT:
                dclass, delay = LOGIC, arch.delay("lut")
            else:
                dclass, delay = DelayClass.hblock(b.kind), arch.delay(b.kind)
            edges.extend(TimingEdge(i, o, delay, dclass) for i in ins for o in outs)

    local = DelayClass(arch.local_interconnect)
    blocks = netlist.block_map
    for net in netlist.nets.values():
        drv_id, drv_idx = net.driver
        src = pin_node(drv_id, blocks[drv_id].output_pin(drv_idx))
        src_cluster = placement.block_cluster[drv_id]
        src_tile = placement.positions[src_cluster]
        for sink_id, sink_idx in net.sinks:
            sink_cluster = placement.block_cluster[sink_id]
            delay = route_delay_estimate(src_tile, placement.positions[sink_cluster], arch)
            dclass = local if sink_cluster == src_cluster else INTERCONNECT
            edges.append(TimingEdge(src, pin_node(sink_id, blocks[sink_id].input_pin(sink_idx)), delay, dclass))

    graph = TimingGraph(tuple(nodes), tuple(edges))
    report = validate_graph(graph)
    if not report.ok:
        cycles = report.of_kind("cycle")
        if cycles:
            raise CycleError(cycles[0].witness)
        raise CongruenceError("invalid timing graph: " + "; ".join(v.message for v in report.violations))
    return graph
