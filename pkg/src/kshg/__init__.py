"""Weighted hyper-graphs of qutrit rays: non-contextual bounds, exact
value-assignment oracles, and quantum violation classification."""

from .bounds import (
    CheckResult,
    Classification,
    ClassicalBound,
    DecompositionCheck,
    QuantumRange,
    RealizationReport,
    ViolationReport,
    check_subgraph_decomposition,
    classical_bound,
    classify,
    family_bound,
    hypergraph_observable_value,
    quantum_range,
    tetrahedron_rays,
    verify_realization,
    wheel7_demo_rays,
)
from .errors import CapacityError, ValidationError
from .expansion import (
    Assignment,
    AuxVertex,
    CoreVertex,
    ExpandedGraph,
    Fragment,
    PropagationOutcome,
    PropagationStep,
    Violation,
    brute_force_max,
    evaluate,
    evaluate_edge_observable,
    expand,
    expand_hyper_edge,
    ks_propagate,
    max_edge_observable,
    mis_oracle,
    to_dot,
    vertex_label,
)
from .hypergraph import (
    FAMILIES,
    FamilySpec,
    HyperEdge,
    HyperGraph,
    IndependentSetResult,
    build_from_rays,
    closed_form_independence,
    family_edge_pairs,
    family_vertex_count,
    generate,
    hyper_edge_weight,
    max_independent_set,
    random_hypergraph,
    remove_vertex,
)
from .linalg3 import (
    EigenDecomposition,
    Hermitian3,
    Ray,
    eigensystem,
    overlap,
    projector,
    projector_sum,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "AuxVertex",
    "CapacityError",
    "CheckResult",
    "Classification",
    "ClassicalBound",
    "CoreVertex",
    "DecompositionCheck",
    "EigenDecomposition",
    "ExpandedGraph",
    "FAMILIES",
    "FamilySpec",
    "Fragment",
    "Hermitian3",
    "HyperEdge",
    "HyperGraph",
    "IndependentSetResult",
    "PropagationOutcome",
    "PropagationStep",
    "QuantumRange",
    "Ray",
    "RealizationReport",
    "ValidationError",
    "Violation",
    "ViolationReport",
    "brute_force_max",
    "build_from_rays",
    "check_subgraph_decomposition",
    "classical_bound",
    "classify",
    "closed_form_independence",
    "eigensystem",
    "evaluate",
    "evaluate_edge_observable",
    "expand",
    "expand_hyper_edge",
    "family_bound",
    "family_edge_pairs",
    "family_vertex_count",
    "generate",
    "hyper_edge_weight",
    "hypergraph_observable_value",
    "ks_propagate",
    "max_edge_observable",
    "max_independent_set",
    "mis_oracle",
    "overlap",
    "projector",
    "projector_sum",
    "quantum_range",
    "random_hypergraph",
    "remove_vertex",
    "tetrahedron_rays",
    "to_dot",
    "verify_realization",
    "vertex_label",
    "wheel7_demo_rays",
]
