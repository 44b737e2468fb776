"""Graph construction, queries, and structural validation."""

from __future__ import annotations

from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from massgraph import (
    DiagonalError,
    DuplicateEdgeError,
    EdgeRecord,
    GraphState,
    InputError,
    KernelParams,
    NodeLookupError,
    NodeRecord,
    new_graph,
    validate_state,
)


@pytest.fixture
def two_nodes():
    return new_graph([2, 2], [(1, 2, 2)])


class TestConstruction:
    def test_echoes_inputs(self, two_nodes):
        assert two_nodes.phase == 0
        assert two_nodes.node_ids() == [1, 2]
        assert two_nodes.mass(1) == 2.0
        assert two_nodes.mass(2) == 2.0
        assert two_nodes.weight(1, 2) == 2.0
        assert len(two_nodes.edges) == 1
        assert two_nodes.next_id == 3

    def test_self_edge_rejected(self):
        with pytest.raises(DiagonalError):
            new_graph([2, 2], [(1, 1, 2)])

    def test_low_mass_names_the_node(self):
        with pytest.raises(InputError, match="node 2"):
            new_graph([2, 0.5], [])

    def test_low_weight_names_the_edge(self):
        with pytest.raises(InputError, match=r"\(1, 2\)"):
            new_graph([2, 2], [(1, 2, 1.0)])

    def test_duplicate_pair_rejected_in_either_orientation(self):
        with pytest.raises(DuplicateEdgeError):
            new_graph([2, 2], [(1, 2, 3), (2, 1, 4)])

    def test_out_of_range_endpoint(self):
        with pytest.raises(NodeLookupError):
            new_graph([2, 2], [(1, 3, 2)])

    def test_empty_graph_is_fine(self):
        state = new_graph([], [])
        assert state.node_ids() == []
        assert state.next_id == 1


class TestQueries:
    def test_symmetry(self, two_nodes):
        assert two_nodes.weight(1, 2) == two_nodes.weight(2, 1) == 2.0

    def test_zero_diagonal(self, two_nodes):
        assert two_nodes.weight(1, 1) == 0.0

    def test_absent_pair_reads_zero(self):
        state = new_graph([2, 2, 2], [(1, 2, 2)])
        assert state.weight(1, 3) == 0.0
        assert not state.has_edge(1, 3)

    def test_degree(self, two_nodes):
        assert two_nodes.degree(1) == 1
        assert two_nodes.degree(2) == 1

    def test_unknown_id_raises(self, two_nodes):
        with pytest.raises(NodeLookupError):
            two_nodes.mass(7)
        with pytest.raises(NodeLookupError):
            two_nodes.weight(1, 7)
        with pytest.raises(NodeLookupError):
            two_nodes.degree(0)

    def test_edge_list_is_sorted(self):
        state = new_graph([2, 2, 2], [(2, 3, 4), (1, 3, 3), (1, 2, 2)])
        assert [e.endpoints for e in state.edge_list()] == [(1, 2), (1, 3), (2, 3)]

    def test_total_mass(self, two_nodes):
        assert two_nodes.total_mass() == 4.0


class TestValidate:
    def test_fresh_state_is_clean(self, two_nodes):
        assert validate_state(two_nodes) == []

    def test_corrupted_mass_is_named(self, two_nodes):
        bad_nodes = dict(two_nodes.nodes)
        bad_nodes[2] = replace(bad_nodes[2], mass=0.5)
        violations = validate_state(replace(two_nodes, nodes=bad_nodes))
        assert len(violations) == 1
        assert "node 2" in violations[0]

    def test_edge_to_dead_node_is_named(self, two_nodes):
        bad_nodes = dict(two_nodes.nodes)
        bad_nodes[2] = replace(bad_nodes[2], alive=False)
        violations = validate_state(replace(two_nodes, nodes=bad_nodes))
        assert len(violations) == 1
        assert "(1, 2)" in violations[0] and "dead" in violations[0]

    def test_unnormalized_edge_key_is_caught(self):
        state = GraphState(
            phase=0,
            nodes={1: NodeRecord(1, 2.0), 2: NodeRecord(2, 2.0)},
            edges={(2, 1): EdgeRecord((2, 1), 2.0, 0)},
            next_id=3,
        )
        assert any("canonical" in v for v in validate_state(state))

    def test_edge_to_unknown_node_is_caught(self):
        state = GraphState(
            phase=1,
            nodes={1: NodeRecord(1, 2.0)},
            edges={(1, 9): EdgeRecord((1, 9), 2.0, 0)},
            next_id=2,
        )
        assert any("unknown node 9" in v for v in validate_state(state))

    def test_stale_next_id_is_caught(self, two_nodes):
        assert any("next_id" in v for v in validate_state(replace(two_nodes, next_id=1)))


@st.composite
def graph_inputs(draw):
    n = draw(st.integers(min_value=0, max_value=6))
    masses = draw(st.lists(st.floats(min_value=1.01, max_value=100),
                           min_size=n, max_size=n))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    weights = [
        (i, j, draw(st.floats(min_value=1.01, max_value=100)))
        for i, j in chosen
    ]
    return masses, weights


@given(graph_inputs())
def test_construction_round_trips_inputs(inputs):
    """Building then querying returns every input exactly and validates clean."""
    masses, weights = inputs
    state = new_graph(masses, weights, KernelParams())
    assert validate_state(state) == []
    for idx, m in enumerate(masses):
        assert state.mass(idx + 1) == m
        assert state.alive(idx + 1)
    for i, j, w in weights:
        assert state.weight(i, j) == w
        assert state.weight(j, i) == w
    connected = {(min(i, j), max(i, j)) for i, j, _ in weights}
    n = len(masses)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and (min(i, j), max(i, j)) not in connected:
                assert state.weight(i, j) == 0.0
