"""Phase transitions: settlement, edge and node arrivals, threshold pruning.

Each transition is a pure function from one :class:`GraphState` to the
next; the phase counter advances by exactly one per applied event. All
iteration orders are fixed (ascending ids / ascending endpoint pairs) so
that identical inputs reproduce bit-identical states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import (
    DiagonalError,
    DuplicateEdgeError,
    InputError,
    NodeLookupError,
    SequencingError,
)
from .graph import EdgeRecord, GraphState, NodeRecord, edge_key
from .kernel import reinforcement


@dataclass(frozen=True)
class AddEdge:
    """Dynamic input: connect nodes k and l with a fresh initial weight > 1."""

    k: int
    l: int
    initial_weight: float


@dataclass(frozen=True)
class AddNode:
    """Static expansion: a new node with an initial mass > 1."""

    initial_mass: float
    label: str | None = None


@dataclass(frozen=True)
class Prune:
    """Forgetting: drop edges below the threshold, then delete isolated nodes."""

    threshold: float


Event = AddEdge | AddNode | Prune


@dataclass(frozen=True)
class PruneReport:
    """What one prune removed: edges with their last weights, then node ids."""

    threshold: float
    removed_edges: tuple[tuple[tuple[int, int], float], ...]
    removed_nodes: tuple[int, ...]


def settle_phase_one(state: GraphState) -> GraphState:
    """Turn the raw phase-0 inputs into the settled phase-1 state.

    Every node's mass grows by the summed reinforcement of its incident
    initial weights (absent pairs contribute nothing); afterwards every
    existing edge is re-weighted by ln of its endpoints' new mass sum.
    Pairs without an initial edge stay unconnected.
    """
    if state.phase != 0:
        raise SequencingError(
            f"settlement applies to a phase-0 state, got phase {state.phase}"
        )
    params = state.params
    incident: dict[int, list[tuple[int, float]]] = {i: [] for i in state.nodes}
    for key in sorted(state.edges):
        a, b = key
        w = state.edges[key].weight
        incident[a].append((b, w))
        incident[b].append((a, w))
    new_nodes: dict[int, NodeRecord] = {}
    for i in sorted(state.nodes):
        rec = state.nodes[i]
        gain = 0.0
        for _, w in sorted(incident[i]):
            gain += reinforcement(w, params)
        new_nodes[i] = replace(rec, mass=rec.mass + gain) if gain else rec
    new_edges: dict[tuple[int, int], EdgeRecord] = {}
    for key in sorted(state.edges):
        a, b = key
        edge = state.edges[key]
        lifted = edge.weight + math.log(new_nodes[a].mass + new_nodes[b].mass)
        new_edges[key] = replace(edge, weight=lifted)
    return replace(state, phase=1, nodes=new_nodes, edges=new_edges)


def apply_edge_event(state: GraphState, k: int, l: int,
                     initial_weight: float) -> GraphState:
    """Apply one dynamic edge input, in this fixed order.

    1. Both endpoint masses grow by the reinforcement of the initial
       weight; every other mass is untouched.
    2. The new edge's weight is the initial weight plus ln of the
       endpoints' *new* mass sum.
    3. Every pre-existing edge incident to either endpoint gains
       ln(mass increase) -- which is negative whenever the increase is
       below 1, so incident weights can shrink. Edges between other
       nodes are untouched. Incident edges are visited in ascending
       endpoint order.
    4. The phase advances by one.

    The pair must not currently be connected; a pair whose edge was pruned
    earlier may be reconnected.
    """
    if state.phase < 1:
        raise SequencingError(
            f"edge events require a settled state (phase >= 1), got phase {state.phase}"
        )
    key = edge_key(k, l)
    for i in (k, l):
        rec = state.nodes.get(i)
        if rec is None:
            raise NodeLookupError(f"unknown node id {i}")
        if not rec.alive:
            raise NodeLookupError(f"node {i} has been deleted")
    if key in state.edges:
        raise DuplicateEdgeError(
            f"nodes {k} and {l} are already connected; only one edge per pair"
        )
    w = float(initial_weight)
    if not (math.isfinite(w) and w > 1):
        raise InputError(f"dynamic edge weight must be > 1, got {initial_weight}")

    gain = reinforcement(w, state.params)
    new_nodes = dict(state.nodes)
    new_nodes[k] = replace(state.nodes[k], mass=state.nodes[k].mass + gain)
    new_nodes[l] = replace(state.nodes[l], mass=state.nodes[l].mass + gain)

    phase = state.phase + 1
    delta = math.log(gain)
    new_edges = dict(state.edges)
    for other_key in sorted(state.edges):
        a, b = other_key
        if a == k or a == l or b == k or b == l:
            edge = state.edges[other_key]
            new_edges[other_key] = replace(edge, weight=edge.weight + delta)
    new_edges[key] = EdgeRecord(
        endpoints=key,
        weight=w + math.log(new_nodes[k].mass + new_nodes[l].mass),
        created_phase=phase,
    )
    return replace(state, phase=phase, nodes=new_nodes, edges=new_edges)


def apply_node_event(state: GraphState, initial_mass: float,
                     label: str | None = None) -> GraphState:
    """Add a fresh node with the next id; no existing mass or weight changes."""
    m = float(initial_mass)
    if not (math.isfinite(m) and m > 1):
        raise InputError(f"initial mass of a new node must be > 1, got {initial_mass}")
    node_id = state.next_id
    new_nodes = dict(state.nodes)
    new_nodes[node_id] = NodeRecord(id=node_id, mass=m, label=label)
    return replace(state, phase=state.phase + 1, nodes=new_nodes,
                   next_id=node_id + 1)


def apply_prune(state: GraphState, threshold: float) -> tuple[GraphState, PruneReport]:
    """Remove every edge weighing less than the threshold, then every
    isolated alive node (including nodes that were already isolated).

    Deleted nodes keep their id and last mass but are marked dead; they
    never reappear and their masses stop counting toward totals.
    """
    thr = float(threshold)
    removed_edges: list[tuple[tuple[int, int], float]] = []
    kept: dict[tuple[int, int], EdgeRecord] = {}
    for key in sorted(state.edges):
        edge = state.edges[key]
        if edge.weight < thr:
            removed_edges.append((key, edge.weight))
        else:
            kept[key] = edge
    degree = {i: 0 for i, rec in state.nodes.items() if rec.alive}
    for a, b in kept:
        degree[a] += 1
        degree[b] += 1
    removed_nodes = tuple(i for i in sorted(degree) if degree[i] == 0)
    new_nodes = dict(state.nodes)
    for i in removed_nodes:
        new_nodes[i] = replace(state.nodes[i], alive=False)
    report = PruneReport(threshold=thr, removed_edges=tuple(removed_edges),
                         removed_nodes=removed_nodes)
    next_state = replace(state, phase=state.phase + 1, nodes=new_nodes, edges=kept)
    return next_state, report


def apply_event(state: GraphState, event: Event) -> tuple[GraphState, PruneReport | None]:
    """Dispatch one event to its transition; prunes also return their report."""
    if isinstance(event, AddEdge):
        return apply_edge_event(state, event.k, event.l, event.initial_weight), None
    if isinstance(event, AddNode):
        return apply_node_event(state, event.initial_mass, event.label), None
    if isinstance(event, Prune):
        return apply_prune(state, event.threshold)
    raise TypeError(f"not an event: {event!r}")
