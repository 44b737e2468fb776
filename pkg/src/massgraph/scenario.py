"""Scenario execution: scripted runs, seeded random generation, metrics.

A scenario is a phase-0 state plus an ordered event list. Replay is fully
deterministic: the generator owns a single seeded RNG and consumes it in a
fixed order, and every transition is pure, so the same config always
produces the same history byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass, field

from .engine import AddEdge, AddNode, Event, Prune, PruneReport, apply_event, settle_phase_one
from .errors import GenerationError, InputError, MassGraphError, ParameterError, SimulationError
from .graph import GraphState, new_graph, validate_state
from .kernel import KernelParams

_MAX_REDRAWS = 1000


@dataclass(frozen=True)
class KernelDraw:
    """Ask the generator to draw kernel parameters once, from the seed."""

    mu_range: tuple[float, float]
    sigma_range: tuple[float, float]

    def __post_init__(self):
        mu_lo, mu_hi = self.mu_range
        sig_lo, sig_hi = self.sigma_range
        if not (math.isfinite(mu_lo) and math.isfinite(mu_hi) and mu_lo <= mu_hi):
            raise ParameterError(f"mu range must be ordered and finite, got {self.mu_range}")
        if not (0 < sig_lo <= sig_hi and math.isfinite(sig_hi)):
            raise ParameterError(f"sigma range must satisfy 0 < lo <= hi, got {self.sigma_range}")


def _check_range(name: str, rng: tuple[float, float]) -> None:
    lo, hi = rng
    if not (math.isfinite(lo) and math.isfinite(hi) and 1 < lo <= hi):
        raise ParameterError(f"{name} must satisfy 1 < lo <= hi, got {rng}")


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything a seeded random scenario needs.

    ``event_mix`` gives (add_edge, add_node, prune) probabilities summing
    to 1; ``n_phases`` is the final phase index the run should reach, so
    the generator emits n_phases - 1 events (settlement owns phase 1).
    """

    seed: int
    n_initial: int
    mass_range: tuple[float, float] = (2.0, 100.0)
    weight_range: tuple[float, float] = (2.0, 100.0)
    initial_edge_density: float = 0.25
    n_phases: int = 1
    event_mix: tuple[float, float, float] = (1.0, 0.0, 0.0)
    prune_threshold: float = 0.0
    kernel: KernelParams | KernelDraw = field(default_factory=KernelParams)

    def __post_init__(self):
        if self.n_initial < 0:
            raise ParameterError(f"n_initial must be >= 0, got {self.n_initial}")
        if self.n_phases < 0:
            raise ParameterError(f"n_phases must be >= 0, got {self.n_phases}")
        _check_range("mass_range", self.mass_range)
        _check_range("weight_range", self.weight_range)
        if not 0 <= self.initial_edge_density <= 1:
            raise ParameterError(
                f"initial_edge_density must lie in [0, 1], got {self.initial_edge_density}"
            )
        if len(self.event_mix) != 3 or any(p < 0 for p in self.event_mix):
            raise ParameterError(f"event_mix needs three probabilities >= 0, got {self.event_mix}")
        if abs(sum(self.event_mix) - 1.0) > 1e-12:
            raise ParameterError(f"event_mix must sum to 1, got {self.event_mix}")
        if not math.isfinite(self.prune_threshold):
            raise ParameterError(f"prune_threshold must be finite, got {self.prune_threshold}")


@dataclass
class PhaseHistory:
    """Ordered record of one run: snapshots, the events that made them,
    and every prune's report.

    ``snapshots[i]`` is the state at phase i (or a ``(phase, digest)``
    pair when the run was captured digests-only for long simulations).
    """

    source: dict | None
    snapshots: list[GraphState] | list[tuple[int, str]]
    events: list[Event]
    prune_reports: list[PruneReport]
    digests_only: bool = False

    @property
    def final(self) -> GraphState:
        if self.digests_only:
            raise InputError("digest-only histories do not keep full states")
        return self.snapshots[-1]


def state_digest(state: GraphState) -> str:
    """Stable content hash of a state, for snapshot-immutability checks
    and digest-only histories."""
    payload = {
        "phase": state.phase,
        "next_id": state.next_id,
        "params": [state.params.mu, state.params.sigma],
        "nodes": [
            [i, rec.mass, rec.label, rec.alive]
            for i, rec in sorted(state.nodes.items())
        ],
        "edges": [
            [key[0], key[1], edge.weight, edge.created_phase]
            for key, edge in sorted(state.edges.items())
        ],
    }
    blob = json.dumps(payload, separators=(",", ":"), sort_keys=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def run_script(initial: GraphState, events: list[Event], *,
               source: dict | None = None,
               digests_only: bool = False) -> PhaseHistory:
    """Settle the initial state, then apply the events in order.

    A snapshot is captured after every transition (phase 0 included). Any
    transition failure aborts the run with the phase index and offending
    event attached.
    """
    problems = validate_state(initial)
    if problems:
        raise InputError("invalid initial state: " + "; ".join(problems))
    snapshots: list[GraphState] = [initial]
    reports: list[PruneReport] = []
    try:
        state = settle_phase_one(initial)
    except MassGraphError as err:
        raise SimulationError(f"settlement failed: {err}", phase=1) from err
    snapshots.append(state)
    for event in events:
        try:
            state, report = apply_event(state, event)
        except MassGraphError as err:
            raise SimulationError(
                f"phase {state.phase + 1} event {event!r} failed: {err}",
                phase=state.phase + 1, event=event,
            ) from err
        snapshots.append(state)
        if report is not None:
            reports.append(report)
    if digests_only:
        digested = [(s.phase, state_digest(s)) for s in snapshots]
        return PhaseHistory(source=source, snapshots=digested, events=list(events),
                            prune_reports=reports, digests_only=True)
    return PhaseHistory(source=source, snapshots=snapshots, events=list(events),
                        prune_reports=reports)


def _draw_kind(rng: random.Random, mix: tuple[float, float, float]) -> str:
    kinds = [(p, kind) for p, kind in zip(mix, ("add_edge", "add_node", "prune")) if p > 0]
    u = rng.random()
    acc = 0.0
    for p, kind in kinds[:-1]:
        acc += p
        if u < acc:
            return kind
    return kinds[-1][1]


def _free_pairs(state: GraphState) -> list[tuple[int, int]]:
    alive = state.alive_ids()
    return [
        (a, b)
        for idx, a in enumerate(alive)
        for b in alive[idx + 1:]
        if (a, b) not in state.edges
    ]


def generate_scenario(config: ScenarioConfig) -> tuple[GraphState, list[Event]]:
    """Draw a reproducible scenario from the config's seed.

    Draw order is fixed: kernel parameters (if requested), then initial
    masses, then one inclusion coin plus weight per candidate pair in
    ascending order, then the events. Edge events pick uniformly among the
    currently unconnected alive pairs; when none exist the event kind is
    redrawn, and generation fails after a bounded number of redraws.
    """
    rng = random.Random(config.seed)
    if isinstance(config.kernel, KernelDraw):
        mu = rng.uniform(*config.kernel.mu_range)
        sigma = rng.uniform(*config.kernel.sigma_range)
        params = KernelParams(mu=mu, sigma=sigma)
    else:
        params = config.kernel
    masses = [rng.uniform(*config.mass_range) for _ in range(config.n_initial)]
    edges = []
    for i in range(1, config.n_initial + 1):
        for j in range(i + 1, config.n_initial + 1):
            if rng.random() < config.initial_edge_density:
                edges.append((i, j, rng.uniform(*config.weight_range)))
    initial = new_graph(masses, edges, params)

    events: list[Event] = []
    state = settle_phase_one(initial)
    for _ in range(max(0, config.n_phases - 1)):
        event: Event | None = None
        for _attempt in range(_MAX_REDRAWS):
            kind = _draw_kind(rng, config.event_mix)
            if kind == "add_edge":
                free = _free_pairs(state)
                if not free:
                    continue
                k, l = free[rng.randrange(len(free))]
                event = AddEdge(k=k, l=l, initial_weight=rng.uniform(*config.weight_range))
            elif kind == "add_node":
                event = AddNode(initial_mass=rng.uniform(*config.mass_range))
            else:
                event = Prune(threshold=config.prune_threshold)
            break
        if event is None:
            raise GenerationError(
                f"phase {state.phase + 1}: no unconnected alive pair is available "
                f"and the event mix offers no alternative"
            )
        state, _ = apply_event(state, event)
        events.append(event)
    return initial, events


@dataclass(frozen=True)
class MetricsReport:
    """Summary statistics of one snapshot, for analysis and export."""

    phase: int
    total_mass: float
    alive_nodes: int
    alive_edges: int
    max_mass_node: tuple[int, float] | None
    top_k_mass_share: float
    degree_histogram: tuple[int, ...]


def metrics(state: GraphState, k: int = 1) -> MetricsReport:
    """Mass and degree summary; the top-k share is 1 for graphs with at
    most k alive nodes (and for the empty graph, by convention)."""
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    alive = state.alive_ids()
    masses = [state.nodes[i].mass for i in alive]
    total = sum(masses)
    if not alive:
        return MetricsReport(phase=state.phase, total_mass=0.0, alive_nodes=0,
                             alive_edges=0, max_mass_node=None,
                             top_k_mass_share=1.0, degree_histogram=())
    best_id = alive[0]
    best_mass = masses[0]
    for i, m in zip(alive[1:], masses[1:]):
        if m > best_mass:
            best_id, best_mass = i, m
    share = sum(sorted(masses, reverse=True)[:k]) / total if len(alive) > k else 1.0
    degrees = {i: 0 for i in alive}
    for a, b in state.edges:
        degrees[a] += 1
        degrees[b] += 1
    hist = [0] * (max(degrees.values()) + 1)
    for d in degrees.values():
        hist[d] += 1
    return MetricsReport(phase=state.phase, total_mass=total, alive_nodes=len(alive),
                         alive_edges=len(state.edges),
                         max_mass_node=(best_id, best_mass),
                         top_k_mass_share=share, degree_histogram=tuple(hist))
