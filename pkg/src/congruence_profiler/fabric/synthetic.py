"""Seeded synthetic benchmarks with a chosen dominant delay class.

* ``routing-bound``: wide, shallow logic whose LUT inputs are drawn from the
  whole design, so no placement can keep nets short.
* ``logic-bound``: a few deep register-to-register LUT chains with purely
  local side inputs; the chains pack into neighbouring clusters.
* ``hblock-bound``: register-to-register spines threaded through cascades of
  DSP and BRAM blocks; remaining logic is shallow.
* ``balanced``: the routing-bound construction with more depth and some
  H-blocks mid-way.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from typing import Optional

from ..errors import GenerationError
from ..model import ArchitectureSpec, Block, BlockType, LogicalNetlist, TileType
from .variants import default_architecture

BOTTLENECKS = ("routing-bound", "logic-bound", "hblock-bound", "balanced")

HBLOCK_PORTS = {"dsp": (("a", "b"), ("out",)), "bram": (("addr", "din"), ("dout",))}


@dataclass(frozen=True)
class BlockCounts:
    luts: int = 0
    ffs: int = 0
    dsps: int = 0
    brams: int = 0
    ios: int = 0


_PRESETS = {
    "routing-bound": (BlockCounts(luts=180, ffs=40, dsps=2, brams=2, ios=24), 3),
    "logic-bound": (BlockCounts(luts=36, ffs=8, dsps=0, brams=0, ios=10), 9),
    "hblock-bound": (BlockCounts(luts=24, ffs=8, dsps=8, brams=4, ios=10), 2),
    "balanced": (BlockCounts(luts=80, ffs=16, dsps=4, brams=4, ios=16), 5),
}


@dataclass(frozen=True)
class SyntheticProfile:
    bottleneck: str
    block_counts: BlockCounts = field(default_factory=BlockCounts)
    depth: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.bottleneck not in BOTTLENECKS:
            raise GenerationError(f"unknown bottleneck {self.bottleneck!r}; choose from {', '.join(BOTTLENECKS)}")
        c = self.block_counts
        if min(c.luts, c.ffs, c.dsps, c.brams, c.ios) < 0:
            raise GenerationError("block counts must be >= 0")
        if self.depth < 1:
            raise GenerationError("depth must be >= 1")

    @classmethod
    def preset(cls, bottleneck: str, seed: int = 0, **overrides) -> SyntheticProfile:
        if bottleneck not in _PRESETS:
            raise GenerationError(f"unknown bottleneck {bottleneck!r}; choose from {', '.join(BOTTLENECKS)}")
        counts, depth = _PRESETS[bottleneck]
        depth = overrides.pop("depth", None) or depth
        counts = replace(counts, **{k: v for k, v in overrides.items() if v is not None})
        return cls(bottleneck, counts, depth, seed)

    @property
    def name(self) -> str:
        return f"{self.bottleneck.replace('-', '_')}_s{self.seed}"


class _Builder:
    """Accumulates blocks while tracking net levels, locality groups and fanout."""

    def __init__(self, rng: random.Random, lut_inputs: int):
        self.rng = rng
        self.k = lut_inputs
        self.inputs: list[str] = []
        self.outputs: list[str] = []
        self.cells: list[dict] = []
        self.level: dict[str, int] = {}
        self.group: dict[str, int] = {}
        self.uses: dict[str, int] = {}
        self.order: list[str] = []
        self.has_clock = False
        self._count = {"n": 0, "r": 0, "pi": 0}

    def _net(self, prefix: str, level: int, group: int) -> str:
        name = f"{prefix}{self._count[prefix]}"
        self._count[prefix] += 1
        self.level[name] = level
        self.group[name] = group
        self.uses[name] = 0
        self.order.append(name)
        return name

    def _use(self, nets):
        for n in nets:
            self.uses[n] += 1

    def pi(self, group: int = 0) -> str:
        net = self._net("pi", 0, group)
        self.inputs.append(net)
        return net

    def ff(self, group: int = 0) -> dict:
        self.has_clock = True
        cell = {"type": BlockType.FF, "ins": [], "out": self._net("r", 0, group)}
        self.cells.append(cell)
        return cell

    def set_d(self, cell: dict, net: str) -> None:
        cell["ins"] = [net]
        self._use([net])

    def lut(self, ins: list[str], level: int, group: int = 0) -> str:
        ins = list(dict.fromkeys(ins))
        assert 1 <= len(ins) <= self.k and all(self.level[n] < level for n in ins)
        cell = {"type": BlockType.LUT, "ins": ins, "out": self._net("n", level, group), "level": level}
        self.cells.append(cell)
        self._use(ins)
        return cell["out"]

    def hblock(self, kind: str, ins: list[str], level: int, group: int = 0) -> str:
        formals_in, _ = HBLOCK_PORTS[kind]
        assert len(ins) == len(formals_in) and all(self.level[n] < level for n in ins)
        idx = sum(1 for c in self.cells if c.get("kind") == kind)
        out = f"{kind}{idx}_{HBLOCK_PORTS[kind][1][0]}"
        self.level[out] = level
        self.group[out] = group
        self.uses[out] = 0
        self.order.append(out)
        self.cells.append({"type": BlockType.DSP if kind == "dsp" else BlockType.BRAM, "kind": kind,
                           "ins": list(ins), "out": out, "level": level})
        self._use(ins)
        return out

    def pad(self, net: str) -> None:
        assert net not in self.outputs
        self.outputs.append(net)
        self._use([net])

    def unconsumed(self) -> list[str]:
        return [n for n in self.order if self.uses[n] == 0]

    def assign_sinks(self, open_ffs: list[dict], n_out: int, preferred: list[str]) -> None:
        """Give every undriven FF a D input and create ``n_out`` output pads,
        soaking up unconsumed nets first."""
        rng = self.rng
        # unconsumed nets, deepest first; preferred (e.g. chain ends) ahead of all
        pool = [n for n in preferred if self.uses[n] == 0]
        rest = sorted((n for n in self.unconsumed() if n not in pool),
                      key=lambda n: -self.level[n])
        pool += rest
        for cell in open_ffs:
            if pool:
                self.set_d(cell, pool.pop(0))
            else:
                candidates = [n for n in self.order if self.level[n] > 0] or self.order
                self.set_d(cell, rng.choice(candidates))
        pool = [n for n in pool if self.uses[n] == 0]
        for _ in range(n_out):
            if pool:
                self.pad(pool.pop(0))
                continue
            spare = [n for n in preferred if n not in self.outputs]
            if spare:
                self.pad(spare[0])
                continue
            candidates = [n for n in self.order if n not in self.outputs]
            if not candidates:
                raise GenerationError("not enough distinct nets to drive every output")
            deepest = max(self.level[n] for n in candidates)
            self.pad(rng.choice([n for n in candidates if self.level[n] == deepest]))

    def fixup(self, local: bool) -> None:
        """Attach each still-unconsumed net as an extra input of a later LUT."""
        luts = [c for c in self.cells if c["type"] is BlockType.LUT]
        for net in self.unconsumed():
            lvl = self.level[net]
            cands = [c for c in luts if c["level"] > lvl and len(c["ins"]) < self.k and net not in c["ins"]]
            if not cands:
                raise GenerationError(f"cannot give net {net} a sink; profile counts are unachievable")
            if local:
                g = self.group[net]
                target = min(cands, key=lambda c: (abs(self.group[c["out"]] - g), c["level"]))
            else:
                target = self.rng.choice(cands)
            target["ins"].append(net)
            self._use([net])

    def finish(self, name: str) -> LogicalNetlist:
        blocks = [Block(f"in:{n}", BlockType.INPUT, outputs=(n,)) for n in self.inputs]
        if self.has_clock:
            blocks.insert(0, Block("in:clk", BlockType.INPUT, outputs=("clk",)))
        blocks += [Block(f"out:{n}", BlockType.OUTPUT, inputs=(n,)) for n in self.outputs]
        for c in self.cells:
            if c["type"] is BlockType.LUT:
                cover = ("1" * len(c["ins"]) + " 1",)
                blocks.append(Block(f"lut:{c['out']}", BlockType.LUT, tuple(c["ins"]), (c["out"],), cover=cover))
            elif c["type"] is BlockType.FF:
                blocks.append(Block(f"ff:{c['out']}", BlockType.FF, tuple(c["ins"]), (c["out"],),
                                    clock="clk", latch_type="re", init="0"))
            else:
                fin, fout = HBLOCK_PORTS[c["kind"]]
                blocks.append(Block(f"{c['kind']}:{c['out']}", c["type"], tuple(c["ins"]), (c["out"],),
                                    formals=fin + fout))
        return LogicalNetlist(name, tuple(blocks))


def _split_io(counts: BlockCounts) -> tuple[int, int]:
    data = counts.ios - (1 if counts.ffs else 0)
    n_in = data // 2
    n_out = data - n_in
    if n_in < 1 or n_out < 1:
        raise GenerationError(f"need at least one input and one output pad besides the clock, got ios={counts.ios}")
    return n_in, n_out


def _random_levels(b: _Builder, counts: BlockCounts, depth: int, n_in: int, n_out: int) -> None:
    rng, k = b.rng, b.k
    sources = [b.pi() for _ in range(n_in)]
    ffs = [b.ff() for _ in range(counts.ffs)]
    sources += [c["out"] for c in ffs]
    n_sinks = counts.ffs + n_out
    L = counts.luts
    if L == 0:
        raise GenerationError("this profile needs at least one LUT")
    depth = min(depth, L)
    top = min(math.ceil(L / depth), n_sinks) if depth > 1 else L
    lower = L - top
    sizes = [0] + [lower // (depth - 1) + (1 if i < lower % (depth - 1) else 0) for i in range(depth - 1)] + [top] \
        if depth > 1 else [0, top]
    if any(s == 0 for s in sizes[1:]):
        raise GenerationError("too few LUTs for the requested depth")
    hb_kinds = ["dsp"] * counts.dsps + ["bram"] * counts.brams
    hb_level = max(1, depth - 1)

    by_level: dict[int, list[str]] = {0: list(sources)}
    below: list[str] = list(sources)
    for lvl in range(1, depth + 1):
        prev = by_level[lvl - 1]
        pending = [n for n in prev if b.uses[n] == 0]
        rng.shuffle(pending)
        made = []
        for _ in range(sizes[lvl]):
            first = pending.pop() if pending else rng.choice(prev)
            others = [n for n in below if n != first]
            extra = rng.sample(others, min(len(others), rng.randint(2, k - 1)))
            made.append(b.lut([first] + extra, lvl))
        if lvl == hb_level:
            for kind in hb_kinds:
                made.append(b.hblock(kind, rng.sample(below, 2), lvl))
        by_level[lvl] = made
        below = below + made
    b.assign_sinks(ffs, n_out, preferred=list(by_level[depth]))
    b.fixup(local=False)


def _chain(b: _Builder, sources: list[str], length: int, group: int, side_max: int = 1) -> list[str]:
    """LUT chain fed by ``sources``; each stage may also tap earlier local nets."""
    rng, k = b.rng, b.k
    prev = sources[0]
    local = list(sources)
    made = []
    for lvl in range(1, length + 1):
        pending = [s for s in sources if b.uses[s] == 0 and s != prev][: k - 1]
        sides = pending
        pool = [n for n in local if n != prev and n not in sides]
        if len(sides) < k - 1 and pool:
            sides = sides + rng.sample(pool, min(len(pool), rng.randint(0, side_max), k - 1 - len(sides)))
        prev = b.lut([prev] + sides, lvl, group)
        local.append(prev)
        made.append(prev)
    return made


def _logic_chains(b: _Builder, counts: BlockCounts, depth: int, n_in: int, n_out: int) -> None:
    L = counts.luts
    if L == 0:
        raise GenerationError("logic-bound profile needs at least one LUT")
    w = max(1, L // depth)
    if counts.ffs < w:
        raise GenerationError(f"logic-bound profile with {w} chains needs at least {w} registers")
    if counts.dsps or counts.brams:
        raise GenerationError("logic-bound profile does not use DSP or BRAM blocks")
    lengths = [L // w + (1 if i < L % w else 0) for i in range(w)]
    chain_ffs = [b.ff(group=i) for i in range(w)]
    extra_ffs = [b.ff(group=i % w) for i in range(counts.ffs - w)]
    ins = [b.pi(group=i % w) for i in range(n_in)]
    # register the inputs where possible so pad nets stay off the chains
    for c, net in zip(extra_ffs, ins):
        b.set_d(c, net)
    for i in range(w):
        sources = [chain_ffs[i]["out"]] + [n for n in ins if b.group[n] == i and b.uses[n] == 0] \
            + [c["out"] for c in extra_ffs if b.group[c["out"]] == i]
        made = _chain(b, sources, lengths[i], group=i, side_max=0)
        b.set_d(chain_ffs[i], made[-1])
    for c in extra_ffs[len(ins):]:
        chain = b.group[c["out"]]
        b.set_d(c, b.rng.choice([n for n in b.order if b.group[n] == chain and b.level[n] > 0]))
    regs = [c["out"] for c in chain_ffs + extra_ffs]
    b.assign_sinks([], n_out, preferred=regs)
    b.fixup(local=True)


def _hblock_spines(b: _Builder, counts: BlockCounts, depth: int, n_in: int, n_out: int) -> None:
    kinds = ["dsp"] * counts.dsps + ["bram"] * counts.brams
    if not kinds:
        raise GenerationError("hblock-bound profile needs at least one DSP or BRAM")
    s = max(1, math.ceil(len(kinds) / 3))
    if counts.ffs < s or counts.luts < 2 * s:
        raise GenerationError(f"hblock-bound profile with {s} spines needs >= {s} registers and >= {2 * s} LUTs")
    spine_ffs = [b.ff(group=j) for j in range(s)]
    for j in range(s):
        q = spine_ffs[j]["out"]
        head = b.lut([q], 1, group=j)
        prev, lvl = head, 2
        for kind in kinds[j::s]:
            prev = b.hblock(kind, [prev, head if prev != head else q], lvl, group=j)
            lvl += 1
        b.set_d(spine_ffs[j], b.lut([prev], lvl, group=j))

    # shallow local filler from the remaining registers and inputs
    rem = counts.luts - 2 * s
    extra_ffs = [b.ff(group=s + i) for i in range(counts.ffs - s)]
    ins = [b.pi(group=s + i) for i in range(n_in)]
    sources = [c["out"] for c in extra_ffs] + ins
    ends = []
    if rem:
        n_chains = min(math.ceil(rem / depth), max(1, len(sources)))
        lengths = [rem // n_chains + (1 if i < rem % n_chains else 0) for i in range(n_chains)]
        for i, length in enumerate(lengths):
            mine = sources[i::n_chains] or [spine_ffs[i % s]["out"]]
            ends.append(_chain(b, mine, length, group=s + i)[-1])
    b.assign_sinks(extra_ffs, n_out, preferred=ends)
    b.fixup(local=True)


_BUILDERS = {
    "routing-bound": _random_levels,
    "balanced": _random_levels,
    "logic-bound": _logic_chains,
    "hblock-bound": _hblock_spines,
}


def generate_synthetic(profile: SyntheticProfile, arch: Optional[ArchitectureSpec] = None) -> LogicalNetlist:
    """Build the netlist for ``profile``; identical (profile, seed) give identical netlists."""
    arch = arch or default_architecture()
    c = profile.block_counts
    clb_need = math.ceil(max(c.luts, c.ffs) / arch.cluster_capacity)
    for tile, need in ((TileType.CLB, clb_need), (TileType.DSP, c.dsps), (TileType.BRAM, c.brams),
                       (TileType.IO, c.ios)):
        have = len(arch.tiles(tile))
        if need > have:
            raise GenerationError(f"{profile.bottleneck} profile needs {need} {tile.value} tiles, "
                                  f"{arch.name} has {have}")
    n_in, n_out = _split_io(c)
    seed_material = BOTTLENECKS.index(profile.bottleneck) * 1_000_003 + profile.seed
    b = _Builder(random.Random(seed_material), arch.lut_inputs)
    _BUILDERS[profile.bottleneck](b, c, profile.depth, n_in, n_out)
    return b.finish(profile.name)
