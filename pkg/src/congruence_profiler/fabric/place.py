"""Seeded simulated-annealing placement minimising half-perimeter wirelength."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Mapping

from ..errors import CapacityError
from ..model import ArchitectureSpec, TileType
from .pack import Packing

# annealing moves per movable cluster, before the effort multiplier
_BUDGET_PER_CLUSTER = 160
_MIN_BUDGET = 10_000


@dataclass(frozen=True)
class Placement:
    positions: Mapping[str, tuple[int, int]]
    block_cluster: Mapping[str, str]
    initial_wirelength: float = 0.0
    wirelength: float = 0.0
    stats: Mapping[str, float] = field(default_factory=dict, compare=False)

    def block_tile(self, block_id: str) -> tuple[int, int]:
        return self.positions[self.block_cluster[block_id]]


def _bbox(net, pos) -> int:
    xs = [pos[c][0] for c in net]
    ys = [pos[c][1] for c in net]
    return max(xs) - min(xs) + max(ys) - min(ys)


def wirelength(packing: Packing, positions: Mapping[str, tuple[int, int]]) -> float:
    """Total bounding-box (half-perimeter) wirelength over inter-cluster nets."""
    return float(sum(_bbox(net, positions) for net in packing.nets))


def place(packing: Packing, arch: ArchitectureSpec, seed: int = 1, effort: float = 1.0) -> Placement:
    """Anneal cluster positions on type-compatible tiles.

    Moves relocate a cluster to a nearby free tile of its type or swap it with
    the occupant. Cooling is geometric over a move budget proportional to the
    cluster count; the move range shrinks with the acceptance rate. The best
    placement seen is returned, so the result never has more
    wirelength than the random start.
    """
    rng = random.Random(seed)
    ids = [c.id for c in packing.clusters]
    index = {cid: i for i, cid in enumerate(ids)}
    ctype = [c.tile_type for c in packing.clusters]
    tiles_of: dict[TileType, list[tuple[int, int]]] = {t: arch.tiles(t) for t in TileType}
    for t in TileType:
        demand = ctype.count(t)
        if demand > len(tiles_of[t]):
            raise CapacityError(t.value, demand, len(tiles_of[t]))

    pos: list[tuple[int, int]] = [(0, 0)] * len(ids)
    occupant: dict[tuple[int, int], int] = {}
    for t in TileType:
        members = [i for i, ct in enumerate(ctype) if ct is t]
        if not members:
            continue
        slots = rng.sample(tiles_of[t], len(members))
        for i, tile in zip(members, slots):
            pos[i] = tile
            occupant[tile] = i

    nets = [tuple(index[c] for c in net) for net in packing.nets]
    nets_of: list[list[int]] = [[] for _ in ids]
    for n, net in enumerate(nets):
        for i in net:
            nets_of[i].append(n)

    def bbox(net):
        xs = [pos[i][0] for i in net]
        ys = [pos[i][1] for i in net]
        return max(xs) - min(xs) + max(ys) - min(ys)

    net_cost = [bbox(net) for net in nets]
    cost = sum(net_cost)
    initial = cost
    best_cost, best_pos = cost, list(pos)

    movable = [i for i in range(len(ids)) if nets_of[i] and len(tiles_of[ctype[i]]) > 1]
    if not movable or not nets:
        positions = {cid: pos[i] for i, cid in enumerate(ids)}
        return Placement(positions, packing.block_cluster, float(initial), float(cost))

    span = max(arch.grid_width, arch.grid_height)

    def propose(rlim):
        i = movable[rng.randrange(len(movable))]
        col, row = pos[i]
        t = ctype[i]
        target = None
        for _ in range(8):
            c = col + rng.randint(-rlim, rlim)
            r = row + rng.randint(-rlim, rlim)
            if (c, r) != (col, row) and arch.contains(c, r) and arch.column_layout[c] is t:
                target = (c, r)
                break
        if target is None:
            target = tiles_of[t][rng.randrange(len(tiles_of[t]))]
            if target == (col, row):
                return None
        return i, target

    def try_move(i, target, temperature):
        nonlocal cost
        j = occupant.get(target)
        old_i = pos[i]
        pos[i] = target
        if j is not None:
            pos[j] = old_i
        touched = set(nets_of[i])
        if j is not None:
            touched.update(nets_of[j])
        new = {n: bbox(nets[n]) for n in touched}
        delta = sum(new[n] - net_cost[n] for n in touched)
        if delta <= 0 or (temperature > 0 and rng.random() < math.exp(-delta / temperature)):
            for n, v in new.items():
                net_cost[n] = v
            cost += delta
            occupant[target] = i
            if j is not None:
                occupant[old_i] = j
            else:
                del occupant[old_i]
            return True, delta
        pos[i] = old_i
        if j is not None:
            pos[j] = target
        return False, delta

    # starting temperature from the spread of random-move deltas
    deltas = []
    for _ in range(len(movable)):
        mv = propose(span)
        if mv is None:
            continue
        _, d = try_move(*mv, temperature=math.inf)
        deltas.append(d)
    if cost < best_cost:
        best_cost, best_pos = cost, list(pos)
    mean = sum(deltas) / len(deltas) if deltas else 0.0
    std = math.sqrt(sum((d - mean) ** 2 for d in deltas) / len(deltas)) if deltas else 1.0

    moves_per_temp = max(20, int(effort * 4 * len(movable)))
    budget = effort * max(_MIN_BUDGET, _BUDGET_PER_CLUSTER * len(movable))
    n_temps = max(10, int(budget) // moves_per_temp)
    t_start = 2.0 * max(std, 1.0)
    t_end = 0.05
    factor = (t_end / t_start) ** (1.0 / (n_temps - 1))
    temperature = t_start
    rlim = float(span)
    for _ in range(n_temps):
        accepted_count = 0
        for _ in range(moves_per_temp):
            mv = propose(max(1, int(rlim)))
            if mv is None:
                continue
            accepted, _ = try_move(*mv, temperature)
            if accepted:
                accepted_count += 1
                if cost < best_cost:
                    best_cost, best_pos = cost, list(pos)
        rate = accepted_count / moves_per_temp
        rlim = min(float(span), max(1.0, rlim * (1.0 - 0.44 + rate)))
        temperature *= factor

    # final greedy quench at zero temperature
    for _ in range(moves_per_temp):
        mv = propose(1)
        if mv is None:
            continue
        try_move(*mv, 0.0)
        if cost < best_cost:
            best_cost, best_pos = cost, list(pos)

    positions = {cid: best_pos[i] for i, cid in enumerate(ids)}
    stats = {"temperatures": n_temps, "moves_per_temperature": moves_per_temp}
    return Placement(positions, packing.block_cluster, float(initial), float(best_cost), stats)
