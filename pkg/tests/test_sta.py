import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from congruence_profiler.errors import CycleError, GraphTooLargeError, NoConstrainedPathError
from congruence_profiler.model import INTERCONNECT, LOGIC, NodeRole, TimingEdge, TimingGraph, TimingNode
from congruence_profiler.sta import arrival_times, critical_path, enumerate_paths_bruteforce, topological_order

from oracles import chain, longest_constrained_path, random_dag

seeds = st.integers(0, 2**32 - 1)


def diamond():
    nodes = (TimingNode("A", NodeRole.PRIMARY_INPUT), TimingNode("B"), TimingNode("C"),
             TimingNode("D", NodeRole.PRIMARY_OUTPUT))
    edges = (TimingEdge("A", "B", 3, LOGIC), TimingEdge("A", "C", 1, LOGIC),
             TimingEdge("B", "D", 1, INTERCONNECT), TimingEdge("C", "D", 5, INTERCONNECT))
    return TimingGraph(nodes, edges)


class TestArrival:
    def test_chain(self):
        assert arrival_times(chain([1, 2])) == {"A": 0, "B": 1, "C": 3}

    def test_diamond(self):
        assert arrival_times(diamond())["D"] == 6

    def test_isolated_registers(self):
        g = TimingGraph((TimingNode("l", NodeRole.REGISTER_LAUNCH), TimingNode("c", NodeRole.REGISTER_CAPTURE)), ())
        assert arrival_times(g) == {"l": 0, "c": 0}

    def test_cycle(self):
        nodes = (TimingNode("A", NodeRole.PRIMARY_INPUT), TimingNode("B"), TimingNode("C"))
        edges = (TimingEdge("A", "B", 1, LOGIC), TimingEdge("B", "C", 1, LOGIC), TimingEdge("C", "B", 1, LOGIC))
        with pytest.raises(CycleError) as exc:
            arrival_times(TimingGraph(nodes, edges))
        assert sorted(exc.value.witness) == ["B", "C"]


class TestCriticalPath:
    def test_chain(self):
        r = critical_path(chain([1, 2, 3]))
        assert r.delay_ps == 6
        assert r.path == ("A", "B", "C", "D")
        assert r.edge_delays == (1, 2, 3)

    def test_parallel_register_chains(self):
        reg = dict(launch=NodeRole.REGISTER_LAUNCH, capture=NodeRole.REGISTER_CAPTURE)
        a, b = chain([3, 4], prefix="x", **reg), chain([4, 5], prefix="y", **reg)
        g = TimingGraph(a.nodes + b.nodes, a.edges + b.edges)
        r = critical_path(g)
        assert r.delay_ps == 9
        assert r.path == ("yA", "yB", "yC")

    def test_diamond_breakdown(self):
        r = critical_path(diamond())
        assert r.path == ("A", "C", "D")
        assert r.per_class_breakdown == {INTERCONNECT: 5, LOGIC: 1}

    def test_tie_break_lexicographic(self):
        nodes = (TimingNode("s", NodeRole.PRIMARY_INPUT), TimingNode("b"), TimingNode("a"),
                 TimingNode("t", NodeRole.PRIMARY_OUTPUT))
        edges = (TimingEdge("s", "b", 2, LOGIC), TimingEdge("s", "a", 2, LOGIC),
                 TimingEdge("b", "t", 2, LOGIC), TimingEdge("a", "t", 2, LOGIC))
        assert critical_path(TimingGraph(nodes, edges)).path == ("s", "a", "t")

    def test_no_constrained_path(self):
        g = TimingGraph((TimingNode("A", NodeRole.PRIMARY_INPUT), TimingNode("B")),
                        (TimingEdge("A", "B", 1, LOGIC),))
        with pytest.raises(NoConstrainedPathError):
            critical_path(g)

    def test_seed_42(self):
        g = random_dag(random.Random(42), max_nodes=12)
        paths = enumerate_paths_bruteforce(g)
        assert critical_path(g).delay_ps == max(d for _, d in paths)


class TestBruteForce:
    def test_diamond(self):
        assert sorted(d for _, d in enumerate_paths_bruteforce(diamond())) == [4, 6]

    def test_chain(self):
        assert len(enumerate_paths_bruteforce(chain([1, 2]))) == 1

    def test_unreachable_capture(self):
        g = TimingGraph((TimingNode("A", NodeRole.PRIMARY_INPUT), TimingNode("B", NodeRole.PRIMARY_OUTPUT)), ())
        assert enumerate_paths_bruteforce(g) == []

    def test_refuses_large(self):
        with pytest.raises(GraphTooLargeError):
            enumerate_paths_bruteforce(chain([1] * 20))


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_oracle_equivalence(seed):
    g = random_dag(random.Random(seed))
    expected = longest_constrained_path(g)
    if expected == -math.inf:
        with pytest.raises(NoConstrainedPathError):
            critical_path(g)
        return
    r = critical_path(g)
    assert r.delay_ps == expected
    assert max(d for _, d in enumerate_paths_bruteforce(g)) == expected
    # the witness is a real path with the claimed delay and valid endpoints
    roles = g.node_map
    assert roles[r.path[0]].role.is_launch and roles[r.path[-1]].role.is_capture
    assert math.isclose(sum(r.per_class_breakdown.values()), r.delay_ps, rel_tol=1e-9, abs_tol=1e-12)
    assert (r.path, r.delay_ps) in enumerate_paths_bruteforce(g)


@settings(max_examples=100, deadline=None)
@given(seeds, st.data())
def test_monotone_in_edge_delay(seed, data):
    g = random_dag(random.Random(seed))
    if not g.edges or longest_constrained_path(g) == -math.inf:
        return
    i = data.draw(st.integers(0, len(g.edges) - 1))
    cut = data.draw(st.integers(0, int(g.edges[i].delay)))
    edges = list(g.edges)
    edges[i] = edges[i].with_delay(edges[i].delay - cut)
    assert critical_path(g.with_edges(edges)).delay_ps <= critical_path(g).delay_ps


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_deterministic(seed):
    g1, g2 = random_dag(random.Random(seed)), random_dag(random.Random(seed))
    if longest_constrained_path(g1) == -math.inf:
        return
    assert critical_path(g1) == critical_path(g2)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_topological_order_respects_edges(seed):
    g = random_dag(random.Random(seed))
    pos = {n: i for i, n in enumerate(topological_order(g))}
    assert all(pos[e.src] < pos[e.dst] for e in g.edges)
