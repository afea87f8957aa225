"""Delay-class masking and congruence scoring.

For a subsystem ``i`` with original critical path ``gamma``, target ``beta``
and masked critical path ``alpha``::

    score_i = 1 - (alpha - beta) / (gamma - beta)

A score near 1 marks the subsystem as the dominant bottleneck; near 0 means
idealising it barely moves the critical path.
"""

from __future__ import annotations

import logging
import math
from typing import Iterable, Mapping, Sequence

from .errors import TargetNotBelowBaselineError
from .model import (
    Category,
    ClassGroup,
    DelayClass,
    PlacedDesign,
    ProfileConfig,
    ScoreSet,
    Selector,
    TimingGraph,
    selector_matches,
)
from .sta import critical_path

log = logging.getLogger(__name__)


def mask_delays(graph: TimingGraph, selectors: Iterable[Selector], epsilon_ps: float = 0.0) -> TimingGraph:
    """Copy of ``graph`` with every edge matched by a selector set to ``epsilon_ps``.

    Nodes, edge endpoints, classes and ordering are untouched. Selectors that
    match nothing are reported in the returned graph's ``notes``.
    """
    if not epsilon_ps >= 0:
        raise ValueError(f"epsilon_ps must be >= 0, got {epsilon_ps}")
    selectors = tuple(selectors)
    hits = [0] * len(selectors)
    edges = []
    for e in graph.edges:
        matched = False
        for i, sel in enumerate(selectors):
            if selector_matches(sel, e.dclass):
                hits[i] += 1
                matched = True
        edges.append(e.with_delay(epsilon_ps) if matched else e)
    notes = list(graph.notes)
    for sel, n in zip(selectors, hits):
        if n == 0:
            label = sel.value if isinstance(sel, Category) else str(sel)
            notes.append(f"class unused: selector {label} matched no edges")
            log.warning("mask selector %s matched no edges", label)
    return graph.with_edges(edges, notes)


def congruence_score(alpha_ps: float, beta_ps: float, gamma_ps: float, clamp: bool = False) -> float:
    if not gamma_ps > beta_ps:
        raise TargetNotBelowBaselineError(
            f"target delay {beta_ps} ps is not below the unmodified critical path {gamma_ps} ps")
    # written as (gamma - alpha) / (gamma - beta) so both boundaries are exact
    score = (gamma_ps - alpha_ps) / (gamma_ps - beta_ps)
    if clamp:
        score = min(1.0, max(0.0, score))
    return score


def aggregate(components: Sequence[float], normalize: bool = False) -> float:
    """Euclidean magnitude of the score vector, optionally divided by sqrt(n).

    Components are summed in sorted order so the result does not depend on
    their order. Lower is better.
    """
    comps = sorted(abs(float(c)) for c in components)
    if not all(math.isfinite(c) for c in comps):
        raise ValueError("aggregate needs finite components")
    if not comps:
        return 0.0
    mag = math.hypot(*comps)
    return mag / math.sqrt(len(comps)) if normalize else mag


def mean_score(values: Sequence[float]) -> float:
    if len(values) == 0:
        raise ValueError("mean of an empty list")
    return math.fsum(values) / len(values)


def rank_architectures(results: Mapping[str, float]) -> list[str]:
    """Architecture names, best (lowest aggregate) first; ties go alphabetical."""
    if not results:
        raise ValueError("nothing to rank")
    return [name for name, _ in sorted(results.items(), key=lambda kv: (kv[1], kv[0]))]


def _hblock_kinds(graph: TimingGraph) -> list[str]:
    return sorted({e.dclass.kind for e in graph.edges if e.dclass.category is Category.HBLOCK})


def profile(design: PlacedDesign | TimingGraph, config: ProfileConfig = ProfileConfig()) -> ScoreSet:
    """Score one placed design: one unmasked STA, then one masked STA per group.

    The graph is reused as-is for every masked run; nothing is re-placed.
    """
    graph = design.timing_graph if isinstance(design, PlacedDesign) else design
    gamma = critical_path(graph).delay_ps
    warnings: list[str] = []

    groups: list[ClassGroup] = list(config.classes)
    if config.per_kind_hrcs:
        groups += [ClassGroup(f"hrcs:{k}", (DelayClass.hblock(k),)) for k in _hblock_kinds(graph)]

    alphas: dict[str, float] = {}
    raw: dict[str, float] = {}
    scores: dict[str, float] = {}
    for group in groups:
        masked = mask_delays(graph, group.selectors, config.epsilon_ps)
        warnings.extend(f"{group.name}: {n}" for n in masked.notes)
        alpha = critical_path(masked).delay_ps
        alphas[group.name] = alpha
        value = congruence_score(alpha, config.beta_ps, gamma)
        raw[group.name] = value
        if not 0.0 <= value <= 1.0:
            warnings.append(f"{group.name}: score {value:.6g} outside [0, 1]")
        scores[group.name] = min(1.0, max(0.0, value)) if config.clamp_scores else value

    main = [scores[g] for g in ("ics", "hrcs", "lbcs") if g in scores]
    return ScoreSet(
        ics=scores.get("ics"),
        hrcs=scores.get("hrcs"),
        lbcs=scores.get("lbcs"),
        aggregate_raw=aggregate(main),
        aggregate_normalized=aggregate(main, normalize=True),
        gamma_ps=gamma,
        alphas_ps=alphas,
        beta_ps=config.beta_ps,
        epsilon_ps=config.epsilon_ps,
        per_kind={k.split(":", 1)[1]: v for k, v in scores.items() if k.startswith("hrcs:")},
        raw_scores=raw if config.clamp_scores else {},
        warnings=tuple(warnings),
    )
