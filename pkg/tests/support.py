"""Glue between engine states and the dense oracle, shared by tests."""

from __future__ import annotations

import numpy as np

from dense_oracle import DenseOracle
from massgraph import AddEdge, AddNode, GraphState, Prune, apply_event, settle_phase_one


def dense_weights(state: GraphState, n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=np.float64)
    for (a, b), edge in state.edges.items():
        out[a - 1, b - 1] = edge.weight
        out[b - 1, a - 1] = edge.weight
    return out


def assert_state_matches(state: GraphState, oracle: DenseOracle, atol: float = 1e-9) -> None:
    assert state.phase == oracle.phase
    assert state.node_ids() == list(range(1, oracle.n + 1))
    for i in range(1, oracle.n + 1):
        assert state.alive(i) == bool(oracle.alive[i - 1]), f"aliveness differs at node {i}"
    engine_mass = np.array([state.mass(i) for i in range(1, oracle.n + 1)])
    np.testing.assert_allclose(engine_mass, oracle.mass, atol=atol, rtol=0)
    np.testing.assert_allclose(dense_weights(state, oracle.n), oracle.weight,
                               atol=atol, rtol=0)


def replay_oracle(oracle: DenseOracle, event) -> None:
    if isinstance(event, AddEdge):
        oracle.add_edge(event.k, event.l, event.initial_weight)
    elif isinstance(event, AddNode):
        oracle.add_node(event.initial_mass)
    elif isinstance(event, Prune):
        oracle.prune(event.threshold)
    else:
        raise TypeError(event)


def run_both(initial: GraphState, events, atol: float = 1e-9) -> GraphState:
    """Replay the same scenario through engine and oracle, comparing
    every phase; returns the engine's final state."""
    masses = [initial.nodes[i].mass for i in initial.node_ids()]
    triples = [(a, b, e.weight) for (a, b), e in sorted(initial.edges.items())]
    oracle = DenseOracle(masses, triples, initial.params.mu, initial.params.sigma)
    state = settle_phase_one(initial)
    oracle.settle()
    assert_state_matches(state, oracle, atol)
    for event in events:
        state, _ = apply_event(state, event)
        replay_oracle(oracle, event)
        assert_state_matches(state, oracle, atol)
    return state
