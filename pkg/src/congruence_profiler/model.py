"""Domain types shared by the timing, fabric, scoring and I/O layers.

All delays are picoseconds. Every type here is immutable once built.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

from .errors import ArchitectureError, NetlistError


class Category(str, enum.Enum):
    INTERCONNECT = "interconnect"
    LOGIC = "logic"
    HBLOCK = "hblock"


@dataclass(frozen=True, order=True)
class DelayClass:
    """Subsystem tag carried by every timing edge."""

    category: Category
    kind: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "category", Category(self.category))
        if self.category is Category.HBLOCK:
            if not self.kind:
                raise ValueError("HBlock delay class needs a non-empty kind")
        elif self.kind:
            raise ValueError(f"{self.category.value} delay class cannot carry a kind")
        else:
            object.__setattr__(self, "kind", None)

    @classmethod
    def interconnect(cls) -> DelayClass:
        return cls(Category.INTERCONNECT)

    @classmethod
    def logic(cls) -> DelayClass:
        return cls(Category.LOGIC)

    @classmethod
    def hblock(cls, kind: str) -> DelayClass:
        return cls(Category.HBLOCK, kind)

    @classmethod
    def parse(cls, text: str) -> DelayClass:
        cat, _, kind = text.partition(":")
        return cls(Category(cat), kind or None)

    def __str__(self):
        return f"{self.category.value}:{self.kind}" if self.kind else self.category.value


INTERCONNECT = DelayClass.interconnect()
LOGIC = DelayClass.logic()

# A selector is either an exact class or a whole category (e.g. every HBlock kind).
Selector = Union[DelayClass, Category]


def selector_matches(selector: Selector, dclass: DelayClass) -> bool:
    if isinstance(selector, Category):
        return dclass.category is selector
    return dclass == selector


# --------------------------------------------------------------------------
# Timing graph
# --------------------------------------------------------------------------


class NodeRole(str, enum.Enum):
    PRIMARY_INPUT = "primary-input"
    PRIMARY_OUTPUT = "primary-output"
    REGISTER_LAUNCH = "register-launch"
    REGISTER_CAPTURE = "register-capture"
    COMBINATIONAL = "combinational-pin"

    @property
    def is_launch(self) -> bool:
        return self in (NodeRole.PRIMARY_INPUT, NodeRole.REGISTER_LAUNCH)

    @property
    def is_capture(self) -> bool:
        return self in (NodeRole.PRIMARY_OUTPUT, NodeRole.REGISTER_CAPTURE)


@dataclass(frozen=True)
class TimingNode:
    id: str
    role: NodeRole = NodeRole.COMBINATIONAL
    # (block id, pin name) in the netlist this node was derived from
    origin: Optional[tuple[str, str]] = None

    def __post_init__(self):
        object.__setattr__(self, "role", NodeRole(self.role))


@dataclass(frozen=True)
class TimingEdge:
    src: str
    dst: str
    delay: float
    dclass: DelayClass

    def with_delay(self, delay: float) -> TimingEdge:
        return TimingEdge(self.src, self.dst, delay, self.dclass)


@dataclass(frozen=True)
class TimingGraph:
    nodes: tuple[TimingNode, ...]
    edges: tuple[TimingEdge, ...]
    clock_period_hint: Optional[float] = None
    # diagnostics attached by transformations such as masking; not part of identity
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))

    @cached_property
    def node_map(self) -> dict[str, TimingNode]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def fanout(self) -> dict[str, list[int]]:
        """node id -> indices of outgoing edges, in edge order."""
        out: dict[str, list[int]] = {n.id: [] for n in self.nodes}
        for i, e in enumerate(self.edges):
            out.setdefault(e.src, []).append(i)
        return out

    @cached_property
    def fanin(self) -> dict[str, list[int]]:
        inc: dict[str, list[int]] = {n.id: [] for n in self.nodes}
        for i, e in enumerate(self.edges):
            inc.setdefault(e.dst, []).append(i)
        return inc

    def edge_classes(self) -> set[DelayClass]:
        return {e.dclass for e in self.edges}

    def with_edges(self, edges: Iterable[TimingEdge], notes: Iterable[str] = ()) -> TimingGraph:
        return TimingGraph(self.nodes, tuple(edges), self.clock_period_hint, tuple(notes))


@dataclass(frozen=True)
class Violation:
    kind: str  # "cycle", "dangling-edge", "negative-delay", "duplicate-node", "register-cut"
    message: str
    witness: tuple[str, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def of_kind(self, kind: str) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]


def find_cycle(node_ids: list[str], succ: Mapping[str, list[str]]) -> Optional[list[str]]:
    """Return the nodes of one directed cycle, or None when the graph is acyclic."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = {n: WHITE for n in node_ids}
    for root in node_ids:
        if color[root] != WHITE:
            continue
        stack: list[tuple[str, int]] = [(root, 0)]
        on_path = [root]
        color[root] = GREY
        while stack:
            node, i = stack[-1]
            nxt = succ.get(node, [])
            if i < len(nxt):
                stack[-1] = (node, i + 1)
                child = nxt[i]
                if color.get(child, BLACK) == GREY:
                    return on_path[on_path.index(child):]
                if color.get(child) == WHITE:
                    color[child] = GREY
                    stack.append((child, 0))
                    on_path.append(child)
            else:
                color[node] = BLACK
                stack.pop()
                on_path.pop()
    return None


def validate_graph(graph: TimingGraph) -> ValidationReport:
    """Check structural soundness; returns every violation rather than raising."""
    found: list[Violation] = []
    seen: set[str] = set()
    for n in graph.nodes:
        if n.id in seen:
            found.append(Violation("duplicate-node", f"node id {n.id!r} used twice", (n.id,)))
        seen.add(n.id)
    nodes = graph.node_map
    succ: dict[str, list[str]] = {n.id: [] for n in graph.nodes}
    for e in graph.edges:
        missing = [x for x in (e.src, e.dst) if x not in nodes]
        if missing:
            found.append(Violation("dangling-edge", f"edge {e.src}->{e.dst} references unknown node(s) {missing}",
                                   (e.src, e.dst)))
            continue
        if not e.delay >= 0 or math.isinf(e.delay):
            found.append(Violation("negative-delay", f"edge {e.src}->{e.dst} has delay {e.delay} ps",
                                   (e.src, e.dst)))
        if nodes[e.dst].role.is_launch:
            found.append(Violation("register-cut", f"{nodes[e.dst].role.value} node {e.dst} has an incoming edge",
                                   (e.src, e.dst)))
        if nodes[e.src].role is NodeRole.REGISTER_CAPTURE:
            found.append(Violation("register-cut", f"register-capture node {e.src} has an outgoing edge",
                                   (e.src, e.dst)))
        succ[e.src].append(e.dst)
    cycle = find_cycle(list(succ), succ)
    if cycle is not None:
        found.append(Violation("cycle", "combinational cycle through " + " -> ".join(cycle), tuple(cycle)))
    return ValidationReport(tuple(found))


# --------------------------------------------------------------------------
# Architecture
# --------------------------------------------------------------------------


class TileType(str, enum.Enum):
    CLB = "CLB"
    DSP = "DSP"
    BRAM = "BRAM"
    IO = "IO"


# Invented desk-scale defaults; every entry can be overridden per architecture.
DEFAULT_DELAYS: dict[str, float] = {
    "lut": 200.0,
    "setup": 50.0,
    "clk_to_q": 80.0,
    "dsp": 1500.0,
    "bram": 1200.0,
}
DEFAULT_BASE_DELAY_PS = 80.0
DEFAULT_PER_HOP_DELAY_PS = 120.0


@dataclass(frozen=True)
class RoutingModel:
    base_delay_ps: float = DEFAULT_BASE_DELAY_PS
    per_hop_delay_ps: float = DEFAULT_PER_HOP_DELAY_PS


@dataclass(frozen=True)
class ArchitectureSpec:
    name: str
    grid_width: int
    grid_height: int
    column_layout: tuple[TileType, ...]
    cluster_capacity: int = 10
    lut_inputs: int = 6
    intrinsic_delays: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_DELAYS))
    routing: RoutingModel = field(default_factory=RoutingModel)
    # class given to nets whose driver and sink share a cluster
    local_interconnect: Category = Category.INTERCONNECT

    def __post_init__(self):
        object.__setattr__(self, "column_layout", tuple(TileType(t) for t in self.column_layout))
        object.__setattr__(self, "local_interconnect", Category(self.local_interconnect))
        delays = dict(DEFAULT_DELAYS)
        delays.update({k: float(v) for k, v in self.intrinsic_delays.items()})
        object.__setattr__(self, "intrinsic_delays", delays)
        if self.grid_width < 1 or self.grid_height < 1:
            raise ArchitectureError(f"grid must be at least 1x1, got {self.grid_width}x{self.grid_height}", "grid")
        if len(self.column_layout) != self.grid_width:
            raise ArchitectureError(
                f"column layout has {len(self.column_layout)} entries for grid width {self.grid_width}", "columns")
        for t in (TileType.CLB, TileType.IO):
            if t not in self.column_layout:
                raise ArchitectureError(f"layout needs at least one {t.value} column", "columns")
        if self.cluster_capacity < 1 or self.lut_inputs < 1:
            raise ArchitectureError("cluster_capacity and lut_inputs must be positive")
        for k, v in delays.items():
            if not v >= 0:
                raise ArchitectureError(f"negative delay {v}", f"delays.{k}")
        if not (self.routing.base_delay_ps >= 0 and self.routing.per_hop_delay_ps >= 0):
            raise ArchitectureError("negative routing delay", "routing")
        if self.local_interconnect is Category.HBLOCK:
            raise ArchitectureError("local interconnect must be classed interconnect or logic",
                                    "routing.local_interconnect")

    def delay(self, key: str) -> float:
        return self.intrinsic_delays.get(key, 0.0)

    def tiles(self, tile_type: TileType) -> list[tuple[int, int]]:
        return [(c, r) for c, t in enumerate(self.column_layout) if t is tile_type
                for r in range(self.grid_height)]

    def tile_type_at(self, col: int, row: int) -> TileType:
        return self.column_layout[col]

    def contains(self, col: int, row: int) -> bool:
        return 0 <= col < self.grid_width and 0 <= row < self.grid_height


# --------------------------------------------------------------------------
# Netlist
# --------------------------------------------------------------------------


class BlockType(str, enum.Enum):
    LUT = "LUT"
    FF = "FF"
    DSP = "DSP"
    BRAM = "BRAM"
    INPUT = "INPUT"
    OUTPUT = "OUTPUT"


HBLOCK_TILE = {BlockType.DSP: TileType.DSP, BlockType.BRAM: TileType.BRAM}


@dataclass(frozen=True)
class Block:
    id: str
    type: BlockType
    inputs: tuple[str, ...] = ()
    outputs: tuple[str, ...] = ()
    cover: tuple[str, ...] = ()       # LUT truth-table rows, kept verbatim
    formals: tuple[str, ...] = ()     # H-block port names, inputs then outputs
    clock: Optional[str] = None       # FF clock net (not a timing arc)
    latch_type: Optional[str] = None
    init: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "type", BlockType(self.type))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "cover", tuple(self.cover))
        object.__setattr__(self, "formals", tuple(self.formals))

    @property
    def kind(self) -> Optional[str]:
        return self.type.value.lower() if self.type in HBLOCK_TILE else None

    def input_pin(self, i: int) -> str:
        if self.formals:
            return self.formals[i]
        return "d" if self.type is BlockType.FF else ("i" if self.type is BlockType.OUTPUT else f"i{i}")

    def output_pin(self, i: int) -> str:
        if self.formals:
            return self.formals[len(self.inputs) + i]
        return "q" if self.type is BlockType.FF else "o" if i == 0 else f"o{i}"


@dataclass(frozen=True)
class Net:
    name: str
    driver: tuple[str, int]
    sinks: tuple[tuple[str, int], ...]
    clock_sinks: tuple[str, ...] = ()


@dataclass(frozen=True)
class LogicalNetlist:
    name: str
    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        self.nets  # validates

    @cached_property
    def block_map(self) -> dict[str, Block]:
        return {b.id: b for b in self.blocks}

    @cached_property
    def nets(self) -> dict[str, Net]:
        drivers: dict[str, tuple[str, int]] = {}
        sinks: dict[str, list[tuple[str, int]]] = {}
        clocks: dict[str, list[str]] = {}
        ids: set[str] = set()
        for b in self.blocks:
            if b.id in ids:
                raise NetlistError(f"duplicate block id {b.id!r}")
            ids.add(b.id)
            for i, n in enumerate(b.outputs):
                if n in drivers:
                    raise NetlistError(f"net {n!r} has multiple drivers ({drivers[n][0]} and {b.id})")
                drivers[n] = (b.id, i)
            for i, n in enumerate(b.inputs):
                sinks.setdefault(n, []).append((b.id, i))
            if b.clock is not None:
                clocks.setdefault(b.clock, []).append(b.id)
        for n in list(sinks) + list(clocks):
            if n not in drivers:
                raise NetlistError(f"net {n!r} is used but never driven")
        out = {}
        for n, drv in drivers.items():
            if n not in sinks and n not in clocks:
                raise NetlistError(f"net {n!r} has no sinks")
            out[n] = Net(n, drv, tuple(sinks.get(n, ())), tuple(clocks.get(n, ())))
        return out

    def count(self, block_type: BlockType) -> int:
        return sum(1 for b in self.blocks if b.type is block_type)


# --------------------------------------------------------------------------
# Placement and results
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Cluster:
    id: str
    tile_type: TileType
    members: tuple[str, ...]


@dataclass(frozen=True)
class PlacedDesign:
    netlist: LogicalNetlist
    clusters: tuple[Cluster, ...]
    placement: Mapping[str, tuple[int, int]]
    timing_graph: TimingGraph
    arch_name: str

    @cached_property
    def block_cluster(self) -> dict[str, str]:
        return {m: c.id for c in self.clusters for m in c.members}

    def placement_hash(self) -> str:
        import hashlib

        h = hashlib.sha256()
        for cid in sorted(self.placement):
            col, row = self.placement[cid]
            h.update(f"{cid}@{col},{row};".encode())
        return h.hexdigest()[:16]


@dataclass(frozen=True)
class ClassGroup:
    """A named set of selectors masked together in one analysis."""

    name: str
    selectors: tuple[Selector, ...]


ICS_GROUP = ClassGroup("ics", (Category.INTERCONNECT,))
HRCS_GROUP = ClassGroup("hrcs", (Category.HBLOCK,))
LBCS_GROUP = ClassGroup("lbcs", (Category.LOGIC,))
DEFAULT_GROUPS = (ICS_GROUP, HRCS_GROUP, LBCS_GROUP)


@dataclass(frozen=True)
class ProfileConfig:
    beta_ps: float = 200.0
    epsilon_ps: float = 0.0
    classes: tuple[ClassGroup, ...] = DEFAULT_GROUPS
    per_kind_hrcs: bool = False
    normalize_aggregate: bool = False
    clamp_scores: bool = False

    def __post_init__(self):
        if not self.beta_ps >= 0:
            raise ValueError(f"beta_ps must be >= 0, got {self.beta_ps}")
        if not self.epsilon_ps >= 0:
            raise ValueError(f"epsilon_ps must be >= 0, got {self.epsilon_ps}")


@dataclass(frozen=True)
class ScoreSet:
    ics: Optional[float]
    hrcs: Optional[float]
    lbcs: Optional[float]
    aggregate_raw: float
    aggregate_normalized: float
    gamma_ps: float
    alphas_ps: Mapping[str, float]
    beta_ps: float
    epsilon_ps: float = 0.0
    per_kind: Mapping[str, float] = field(default_factory=dict)
    raw_scores: Mapping[str, float] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()

    def components(self) -> tuple[float, ...]:
        return tuple(v for v in (self.ics, self.hrcs, self.lbcs) if v is not None)

    def aggregate(self, normalized: bool = False) -> float:
        return self.aggregate_normalized if normalized else self.aggregate_raw
