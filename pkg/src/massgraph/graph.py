"""Graph state: node masses, a sparse symmetric weight structure, and a
phase counter.

States are values: every transition in :mod:`massgraph.engine` builds a new
state and never mutates an old one, so snapshots can be kept and compared
across phases. Node ids are 1-based and permanent; deletion marks a node
dead instead of renumbering, and ids are never reused.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DiagonalError, DuplicateEdgeError, InputError, NodeLookupError
from .kernel import KernelParams


@dataclass(frozen=True)
class NodeRecord:
    """One node: permanent id, current mass, optional label, liveness."""

    id: int
    mass: float
    label: str | None = None
    alive: bool = True


@dataclass(frozen=True)
class EdgeRecord:
    """One undirected edge; endpoints are stored as an ordered (low, high) pair."""

    endpoints: tuple[int, int]
    weight: float
    created_phase: int


def edge_key(i: int, j: int) -> tuple[int, int]:
    """Canonical dictionary key for the unordered pair {i, j}."""
    if i == j:
        raise DiagonalError(f"self-edge on node {i} is not allowed")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class GraphState:
    """Immutable snapshot of the graph at one phase.

    ``edges`` is keyed by the canonical (low, high) pair, so symmetry and
    the zero diagonal hold by construction; an absent pair reads as
    weight 0. ``next_id`` is the id the next added node will receive.
    """

    phase: int
    nodes: dict[int, NodeRecord] = field(default_factory=dict)
    edges: dict[tuple[int, int], EdgeRecord] = field(default_factory=dict)
    next_id: int = 1
    params: KernelParams = field(default_factory=KernelParams)

    def _record(self, i: int) -> NodeRecord:
        try:
            return self.nodes[i]
        except KeyError:
            raise NodeLookupError(f"unknown node id {i}") from None

    def mass(self, i: int) -> float:
        return self._record(i).mass

    def alive(self, i: int) -> bool:
        return self._record(i).alive

    def label(self, i: int) -> str | None:
        return self._record(i).label

    def weight(self, i: int, j: int) -> float:
        """Weight of the pair {i, j}; 0 for the diagonal and for absent edges."""
        self._record(i)
        self._record(j)
        if i == j:
            return 0.0
        edge = self.edges.get(edge_key(i, j))
        return edge.weight if edge is not None else 0.0

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and edge_key(i, j) in self.edges

    def degree(self, i: int) -> int:
        """Number of live edges incident to node i."""
        self._record(i)
        return sum(1 for a, b in self.edges if a == i or b == i)

    def edge_list(self) -> list[EdgeRecord]:
        """All edges in ascending endpoint order."""
        return [self.edges[key] for key in sorted(self.edges)]

    def node_ids(self) -> list[int]:
        return sorted(self.nodes)

    def alive_ids(self) -> list[int]:
        return sorted(i for i, rec in self.nodes.items() if rec.alive)

    def total_mass(self) -> float:
        """Sum of the masses of alive nodes, in ascending id order."""
        return sum(self.nodes[i].mass for i in self.alive_ids())


def new_graph(masses: list[float], weights: list[tuple[int, int, float]],
              params: KernelParams | None = None) -> GraphState:
    """Build the phase-0 state from raw inputs.

    ``masses[i]`` seeds node i+1; ``weights`` lists (i, j, w) triples for
    the initially connected pairs. Every mass and weight must be strictly
    greater than 1 (the logarithmic kernel is undefined below that), pairs
    must be distinct and off-diagonal, and indices must be in 1..n.
    """
    if params is None:
        params = KernelParams()
    n = len(masses)
    nodes: dict[int, NodeRecord] = {}
    for idx, raw in enumerate(masses):
        m = float(raw)
        if not (math.isfinite(m) and m > 1):
            raise InputError(f"initial mass of node {idx + 1} must be > 1, got {raw}")
        nodes[idx + 1] = NodeRecord(id=idx + 1, mass=m)
    edges: dict[tuple[int, int], EdgeRecord] = {}
    for i, j, raw_w in weights:
        key = edge_key(i, j)
        for endpoint in key:
            if not 1 <= endpoint <= n:
                raise NodeLookupError(
                    f"edge ({i}, {j}) references node {endpoint}, but only 1..{n} exist"
                )
        if key in edges:
            raise DuplicateEdgeError(f"duplicate initial edge for pair {key}")
        w = float(raw_w)
        if not (math.isfinite(w) and w > 1):
            raise InputError(f"initial weight of edge {key} must be > 1, got {raw_w}")
        edges[key] = EdgeRecord(endpoints=key, weight=w, created_phase=0)
    return GraphState(phase=0, nodes=nodes, edges=dict(sorted(edges.items())),
                      next_id=n + 1, params=params)


def validate_state(state: GraphState) -> list[str]:
    """Check every structural invariant; returns one message per violation.

    Violations are data, not exceptions: a freshly built or engine-produced
    state must always come back clean, and tests corrupt states on purpose
    to see them named here.
    """
    problems: list[str] = []
    if state.phase < 0:
        problems.append(f"phase must be >= 0, got {state.phase}")
    for i, rec in sorted(state.nodes.items()):
        if rec.id != i:
            problems.append(f"node keyed {i} carries id {rec.id}")
        if rec.alive and not (math.isfinite(rec.mass) and rec.mass > 1):
            problems.append(f"alive node {i} has mass {rec.mass}, must be > 1")
        if i >= state.next_id:
            problems.append(f"node id {i} is not below next_id {state.next_id}")
    for key, edge in sorted(state.edges.items()):
        a, b = key
        if a == b:
            problems.append(f"edge {key} sits on the diagonal")
            continue
        if a > b or edge.endpoints != key:
            problems.append(
                f"edge keyed {key} is not stored in canonical (low, high) form"
            )
        for endpoint in (a, b):
            rec = state.nodes.get(endpoint)
            if rec is None:
                problems.append(f"edge {key} references unknown node {endpoint}")
            elif not rec.alive:
                problems.append(f"edge {key} touches dead node {endpoint}")
        if not math.isfinite(edge.weight):
            problems.append(f"edge {key} has non-finite weight {edge.weight}")
    return problems
