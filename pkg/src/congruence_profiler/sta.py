"""Longest-path static timing analysis over a :class:`TimingGraph`.

Arrival times are propagated in a single topological pass. Paths start at
launch points (primary inputs, register launch nodes) and end at capture
points (primary outputs, register capture nodes). Register clk-to-q and
setup are ordinary Logic-classed edges, so a capture node's arrival already
includes setup.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .errors import CycleError, GraphError, GraphTooLargeError, NoConstrainedPathError
from .model import DelayClass, TimingGraph, find_cycle, validate_graph


@dataclass(frozen=True)
class PathReport:
    delay_ps: float
    path: tuple[str, ...]
    per_class_breakdown: dict[DelayClass, float] = field(default_factory=dict)
    edge_delays: tuple[float, ...] = ()


def topological_order(graph: TimingGraph) -> list[str]:
    """Kahn's algorithm; ready nodes are taken in declaration order."""
    pos = {n.id: i for i, n in enumerate(graph.nodes)}
    indeg = {nid: len(graph.fanin[nid]) for nid in pos}
    ready = [pos[nid] for nid, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        nid = graph.nodes[heapq.heappop(ready)].id
        order.append(nid)
        for ei in graph.fanout[nid]:
            dst = graph.edges[ei].dst
            indeg[dst] -= 1
            if indeg[dst] == 0:
                heapq.heappush(ready, pos[dst])
    if len(order) != len(pos):
        succ = {nid: [graph.edges[i].dst for i in graph.fanout[nid]] for nid in pos}
        raise CycleError(find_cycle(list(pos), succ) or [])
    return order


def _check(graph: TimingGraph) -> None:
    report = validate_graph(graph)
    if report.ok:
        return
    cycles = report.of_kind("cycle")
    if cycles:
        raise CycleError(cycles[0].witness)
    raise GraphError("; ".join(v.message for v in report.violations))


def _propagate(graph: TimingGraph):
    """Arrival (``-inf`` when no launch point reaches the node) plus, per node,
    the lexicographically smallest max-delay path and the edge indices used."""
    _check(graph)
    arrival: dict[str, float] = {}
    best: dict[str, tuple[tuple[str, ...], tuple[int, ...]]] = {}
    nodes = graph.node_map
    for nid in topological_order(graph):
        if nodes[nid].role.is_launch:
            arrival[nid] = 0.0
            best[nid] = ((nid,), ())
            continue
        cur = -math.inf
        cur_path = None
        for ei in graph.fanin[nid]:
            e = graph.edges[ei]
            a = arrival[e.src]
            if a == -math.inf:
                continue
            t = a + e.delay
            if t > cur:
                cur = t
                cur_path = (best[e.src][0] + (nid,), best[e.src][1] + (ei,))
            elif t == cur:
                cand = best[e.src][0] + (nid,)
                if cand < cur_path[0]:
                    cur_path = (cand, best[e.src][1] + (ei,))
        arrival[nid] = cur
        if cur_path is not None:
            best[nid] = cur_path
    return arrival, best


def arrival_times(graph: TimingGraph) -> dict[str, float]:
    """Worst-case arrival per node, in ps.

    Nodes that no launch point reaches report 0.
    """
    arrival, _ = _propagate(graph)
    return {n.id: (arrival[n.id] if arrival[n.id] != -math.inf else 0.0) for n in graph.nodes}


def _report(graph: TimingGraph, path: tuple[str, ...], edge_ids: tuple[int, ...]) -> PathReport:
    breakdown: dict[DelayClass, float] = {}
    delays = []
    total = 0.0
    for ei in edge_ids:
        e = graph.edges[ei]
        breakdown[e.dclass] = breakdown.get(e.dclass, 0.0) + e.delay
        delays.append(e.delay)
        total += e.delay
    return PathReport(total, path, dict(sorted(breakdown.items())), tuple(delays))


def critical_path(graph: TimingGraph) -> PathReport:
    """The maximum-delay launch-to-capture path.

    Equal-delay candidates are broken by the lexicographically smallest
    node-id sequence so reports are reproducible.
    """
    arrival, best = _propagate(graph)
    chosen = None
    for n in graph.nodes:
        if not n.role.is_capture or arrival[n.id] == -math.inf:
            continue
        path, eids = best[n.id]
        if not eids:
            continue  # a capture point that is its own launch point is not a path
        key = (-arrival[n.id], path)
        if chosen is None or key < chosen[0]:
            chosen = (key, path, eids)
    if chosen is None:
        raise NoConstrainedPathError("no launch point reaches any capture point")
    return _report(graph, chosen[1], chosen[2])


def enumerate_paths_bruteforce(graph: TimingGraph, max_nodes: int = 16) -> list[tuple[tuple[str, ...], float]]:
    """Every launch-to-capture path with its summed delay, by exhaustive DFS.

    Exponential; a test oracle for :func:`critical_path`. Parallel edges
    yield one entry each.
    """
    if len(graph.nodes) > max_nodes:
        raise GraphTooLargeError(f"graph has {len(graph.nodes)} nodes, brute force limited to {max_nodes}")
    _check(graph)
    nodes = graph.node_map
    found: list[tuple[tuple[str, ...], float]] = []

    def walk(nid, path, delay):
        if len(path) > 1 and nodes[nid].role.is_capture:
            found.append((tuple(path), delay))
        for ei in graph.fanout[nid]:
            e = graph.edges[ei]
            path.append(e.dst)
            walk(e.dst, path, delay + e.delay)
            path.pop()

    for n in graph.nodes:
        if n.role.is_launch:
            walk(n.id, [n.id], 0.0)
    return found
