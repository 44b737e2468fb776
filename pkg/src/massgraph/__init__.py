"""Deterministic simulator for mass-based graph memory dynamics.

Nodes carry mass (the importance of an atomic proposition), edges carry
weight (the strength of an association); each phase applies one dynamic
input through a logarithmic reinforcement kernel with a log-Cauchy
perturbation, and threshold pruning models forgetting.
"""

from .errors import (
    DiagonalError,
    DuplicateEdgeError,
    GenerationError,
    InputError,
    KernelDomainError,
    MassGraphError,
    NodeLookupError,
    ParameterError,
    ScriptError,
    SequencingError,
    SimulationError,
)
from .kernel import (
    KernelParams,
    MonotonicityReport,
    log_cauchy_pdf,
    reinforcement,
    validate_kernel_params,
)
from .graph import EdgeRecord, GraphState, NodeRecord, edge_key, new_graph, validate_state
from .engine import (
    AddEdge,
    AddNode,
    Event,
    Prune,
    PruneReport,
    apply_edge_event,
    apply_event,
    apply_node_event,
    apply_prune,
    settle_phase_one,
)
from .scenario import (
    KernelDraw,
    MetricsReport,
    PhaseHistory,
    ScenarioConfig,
    generate_scenario,
    metrics,
    run_script,
    state_digest,
)
from .io import (
    DotStyle,
    canonical_json_bytes,
    event_to_json,
    export_dot,
    export_history_json,
    load_history,
    parse_script,
    script_document,
)
from .cli import cli_main

__version__ = "0.1.0"

__all__ = [
    "AddEdge",
    "AddNode",
    "DiagonalError",
    "DotStyle",
    "DuplicateEdgeError",
    "EdgeRecord",
    "Event",
    "GenerationError",
    "GraphState",
    "InputError",
    "KernelDomainError",
    "KernelDraw",
    "KernelParams",
    "MassGraphError",
    "MetricsReport",
    "MonotonicityReport",
    "NodeLookupError",
    "NodeRecord",
    "ParameterError",
    "PhaseHistory",
    "Prune",
    "PruneReport",
    "ScenarioConfig",
    "ScriptError",
    "SequencingError",
    "SimulationError",
    "apply_edge_event",
    "apply_event",
    "apply_node_event",
    "apply_prune",
    "canonical_json_bytes",
    "cli_main",
    "edge_key",
    "event_to_json",
    "export_dot",
    "export_history_json",
    "generate_scenario",
    "load_history",
    "log_cauchy_pdf",
    "metrics",
    "new_graph",
    "parse_script",
    "reinforcement",
    "run_script",
    "script_document",
    "settle_phase_one",
    "state_digest",
    "validate_kernel_params",
    "validate_state",
]
