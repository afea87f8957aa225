"""Greedy connectivity-driven packing of LUTs and flip-flops into CLB clusters."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..errors import CapacityError, CongruenceError
from ..model import HBLOCK_TILE, ArchitectureSpec, BlockType, Cluster, LogicalNetlist, TileType

# attraction bonus for a candidate fed by a single-sink net from inside the cluster
_CHAIN_BONUS = 1000


@dataclass(frozen=True)
class Packing:
    clusters: tuple[Cluster, ...]
    # data nets spanning two or more clusters, as tuples of cluster ids
    nets: tuple[tuple[str, ...], ...]

    @cached_property
    def block_cluster(self) -> dict[str, str]:
        return {m: c.id for c in self.clusters for m in c.members}


def _basic_elements(netlist: LogicalNetlist) -> list[tuple[str, ...]]:
    """Pair each FF with the LUT that exclusively drives it; everything else stands alone."""
    nets = netlist.nets
    blocks = netlist.block_map
    partner: dict[str, str] = {}
    for b in netlist.blocks:
        if b.type is not BlockType.FF:
            continue
        drv_id, _ = nets[b.inputs[0]].driver
        drv = blocks[drv_id]
        if drv.type is BlockType.LUT and len(nets[b.inputs[0]].sinks) == 1 and drv_id not in partner:
            partner[drv_id] = b.id
            partner[b.id] = drv_id
    bles = []
    for b in netlist.blocks:
        if b.type not in (BlockType.LUT, BlockType.FF):
            continue
        if b.id in partner:
            if b.type is BlockType.LUT:
                bles.append((b.id, partner[b.id]))
        else:
            bles.append((b.id,))
    return bles


def _cluster_clb(netlist: LogicalNetlist, capacity: int) -> list[list[str]]:
    bles = _basic_elements(netlist)
    owner = {blk: i for i, ble in enumerate(bles) for blk in ble}
    nets = netlist.nets
    # BLE -> nets it touches; net -> BLEs on it (clock nets excluded)
    ble_nets: list[list[str]] = [[] for _ in bles]
    net_bles: dict[str, list[int]] = {}
    for name, net in nets.items():
        members = []
        for blk, _ in (net.driver, *net.sinks):
            i = owner.get(blk)
            if i is not None and i not in members:
                members.append(i)
        if len(members) > 1:
            net_bles[name] = members
            for i in members:
                ble_nets[i].append(name)

    clustered = [False] * len(bles)
    groups: list[list[str]] = []
    next_seed = 0
    while True:
        while next_seed < len(bles) and clustered[next_seed]:
            next_seed += 1
        if next_seed == len(bles):
            break
        current = [next_seed]
        clustered[next_seed] = True
        inside: set[str] = set(bles[next_seed])
        attraction: dict[int, int] = {}

        def absorb(i):
            for name in ble_nets[i]:
                net = nets[name]
                chain = len(net.sinks) == 1 and net.driver[0] in inside
                for j in net_bles[name]:
                    if not clustered[j]:
                        attraction[j] = attraction.get(j, 0) + 1 + (_CHAIN_BONUS if chain else 0)

        absorb(next_seed)
        while len(current) < capacity:
            if attraction:
                pick = min(attraction, key=lambda j: (-attraction[j], j))
                del attraction[pick]
            else:
                # only orphans may fill spare room; unrelated connected logic
                # would pull this cluster's nets in two directions
                pick = next((j for j in range(next_seed, len(bles)) if not clustered[j] and not ble_nets[j]), None)
                if pick is None:
                    break
            clustered[pick] = True
            current.append(pick)
            inside.update(bles[pick])
            attraction.pop(pick, None)
            absorb(pick)
        groups.append([blk for i in current for blk in bles[i]])
    return groups


def pack(netlist: LogicalNetlist, arch: ArchitectureSpec) -> Packing:
    """Group blocks into clusters and check every tile type has enough supply.

    LUT/FF pairs are clustered greedily by shared nets, with single-fanout
    chains absorbed first; each CLB cluster holds at most
    ``arch.cluster_capacity`` LUT/FF pairs. DSP, BRAM and IO blocks are
    singleton clusters.
    """
    for b in netlist.blocks:
        if b.type is BlockType.LUT and len(b.inputs) > arch.lut_inputs:
            raise CongruenceError(f"LUT {b.id} has {len(b.inputs)} inputs; architecture LUTs have {arch.lut_inputs}")

    clusters: list[Cluster] = []
    for b in netlist.blocks:
        if b.type in (BlockType.INPUT, BlockType.OUTPUT):
            clusters.append(Cluster(b.id, TileType.IO, (b.id,)))
        elif b.type in HBLOCK_TILE:
            clusters.append(Cluster(b.id, HBLOCK_TILE[b.type], (b.id,)))
    for i, members in enumerate(_cluster_clb(netlist, arch.cluster_capacity)):
        clusters.append(Cluster(f"clb{i}", TileType.CLB, tuple(members)))

    for t in TileType:
        demand = sum(1 for c in clusters if c.tile_type is t)
        supply = len(arch.tiles(t))
        if demand > supply:
            raise CapacityError(t.value, demand, supply)

    owner = {m: c.id for c in clusters for m in c.members}
    nets = []
    for net in netlist.nets.values():
        ids = []
        for blk, _ in (net.driver, *net.sinks):
            cid = owner[blk]
            if cid not in ids:
                ids.append(cid)
        if len(ids) > 1:
            nets.append(tuple(ids))
    return Packing(tuple(clusters), tuple(nets))
