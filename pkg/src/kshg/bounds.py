"""Classical bounds, the subgraph decomposition identity, quantum ranges,
violation classification, and realization verification."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .errors import ValidationError
from .expansion import (
    Assignment,
    CoreVertex,
    ExpandedGraph,
    evaluate_edge_observable,
    expand,
    expand_hyper_edge,
    vertex_label,
)
from .hypergraph import (
    DEFAULT_MIS_LIMIT,
    FamilySpec,
    HyperGraph,
    closed_form_independence,
    family_edge_pairs,
    hyper_edge_weight,
    max_independent_set,
    remove_vertex,
)
from .linalg3 import Ray, eigensystem, overlap, projector_sum

SPECTRAL_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ClassicalBound:
    """Non-contextual maximum: twice the weight sum plus the independence number."""

    total: int
    weight_term: int
    independence_term: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class QuantumRange:
    """Quantum expectation range: weight term plus the projector-sum spectrum."""

    lo: float
    hi: float
    lambda_min: float
    lambda_max: float
    weight_term: int


class Classification(Enum):
    STATE_INDEPENDENT = "state-independent"
    STATE_DEPENDENT = "state-dependent"
    NO_VIOLATION = "no-violation"


@dataclass(frozen=True)
class ViolationReport:
    classical: ClassicalBound
    quantum: QuantumRange
    classification: Classification
    margin: float


@dataclass(frozen=True)
class DecompositionCheck:
    equal: bool
    lhs: int
    rhs: int


def classical_bound(h: HyperGraph, *, max_vertices: int = DEFAULT_MIS_LIMIT) -> ClassicalBound:
    """Exact classical bound 2*sum(weights) + independence number, with witness."""
    mis = max_independent_set(h, max_vertices=max_vertices)
    weight_term = 2 * h.weight_sum
    return ClassicalBound(weight_term + mis.size, weight_term, mis.size, mis.witness)


def family_bound(spec: FamilySpec) -> ClassicalBound:
    """Closed-form classical bound for a family instance (no witness computed)."""
    pairs = family_edge_pairs(spec)
    if isinstance(spec.weights, int):
        weight_sum = spec.weights * len(pairs)
    else:
        if len(spec.weights) != len(pairs):
            raise ValidationError(
                f"family {spec.family!r} has {len(pairs)} edges but "
                f"{len(spec.weights)} weights were given"
            )
        weight_sum = sum(spec.weights)
    independence = closed_form_independence(spec)
    weight_term = 2 * weight_sum
    return ClassicalBound(weight_term + independence, weight_term, independence, ())


def hypergraph_observable_value(h: HyperGraph, g: ExpandedGraph, a: Assignment) -> int:
    """Sum of core values plus the sum of all edge observables, exactly."""
    if len(a) != len(g.vertices):
        raise ValidationError(
            f"assignment covers {len(a)} vertices but the expansion has {len(g.vertices)}"
        )
    total = sum(a.values[: h.vertex_count])
    for frag in g.fragments:
        sub = expand_hyper_edge(frag.weight, frag.edge_id)
        sub_assignment = Assignment(tuple(a.values[t] for t in frag.vertex_indices))
        total += evaluate_edge_observable(sub, sub_assignment)
    return total


def check_subgraph_decomposition(h: HyperGraph, a: Assignment) -> DecompositionCheck:
    """Exact integer check of the vertex-removal decomposition identity.

    Left side: (|V| - 2) times the hyper-graph observable under `a`. Right
    side: the observables of all single-vertex-removal subgraphs under the
    restricted assignment, minus the sum of core values. Both sides are
    computed from actually reconstructed subgraphs, so the check also
    exercises `remove_vertex` and the expansion bookkeeping.
    """
    if h.vertex_count < 3:
        raise ValidationError(
            f"subgraph decomposition needs at least 3 vertices, got {h.vertex_count}"
        )
    g = expand(h)
    if len(a) != len(g.vertices):
        raise ValidationError(
            f"assignment covers {len(a)} vertices but the expansion has {len(g.vertices)}"
        )
    value = hypergraph_observable_value(h, g, a)
    lhs = (h.vertex_count - 2) * value
    rhs = -sum(a.values[: h.vertex_count])
    for removed in range(h.vertex_count):
        sub_h, old_of_new = remove_vertex(h, removed)
        sub_g = expand(sub_h)
        sub_a = _restrict_assignment(h, g, a, sub_h, sub_g, old_of_new)
        rhs += hypergraph_observable_value(sub_h, sub_g, sub_a)
    return DecompositionCheck(lhs == rhs, lhs, rhs)


def _restrict_assignment(
    h: HyperGraph,
    g: ExpandedGraph,
    a: Assignment,
    sub_h: HyperGraph,
    sub_g: ExpandedGraph,
    old_of_new: tuple[int, ...],
) -> Assignment:
    """Carry an expanded assignment over to the expansion of a removal subgraph."""
    values = []
    for vert in sub_g.vertices:
        if isinstance(vert, CoreVertex):
            values.append(a.values[old_of_new[vert.index]])
        else:
            sub_edge = sub_h.edges[vert.edge]
            old_pair = (old_of_new[sub_edge.i], old_of_new[sub_edge.j])
            original_edge_id = h.edge_index[old_pair]
            values.append(a.values[g.aux_index(original_edge_id, vert.kind, vert.level)])
    return Assignment(tuple(values))


def quantum_range(h: HyperGraph, *, underweight: str = "error") -> QuantumRange:
    """Spectral range of the observable for a ray-bound hyper-graph.

    Every basis in an edge gadget contributes exactly 1 to the quantum
    expectation, so each edge observable is worth exactly twice its weight
    and only the core projector sum needs diagonalizing. Edges whose weight
    is below what their endpoint overlap requires make the model
    unrealizable; set `underweight="warn"` to downgrade that to a warning.
    """
    if underweight not in ("error", "warn"):
        raise ValidationError(f"underweight must be 'error' or 'warn', got {underweight!r}")
    if h.rays is None:
        raise ValidationError("quantum range needs a ray bound to every vertex")
    for e in h.edges:
        required = hyper_edge_weight(overlap(h.rays[e.i], h.rays[e.j]))
        if e.weight < required:
            message = (
                f"edge (p{e.i + 1}, p{e.j + 1}) has weight {e.weight} but its ray overlap "
                f"requires at least {required}; the model is unrealizable"
            )
            if underweight == "error":
                raise ValidationError(message)
            warnings.warn(message, stacklevel=2)
    eig = eigensystem(projector_sum(h.rays))
    lam_min = eig.eigenvalues[0]
    lam_max = eig.eigenvalues[2]
    weight_term = 2 * h.weight_sum
    return QuantumRange(weight_term + lam_min, weight_term + lam_max, lam_min, lam_max, weight_term)


def classify(
    h: HyperGraph,
    *,
    underweight: str = "error",
    max_vertices: int = DEFAULT_MIS_LIMIT,
) -> ViolationReport:
    """Compare the spectrum against the independence number.

    state-independent: lambda_min exceeds |U|; state-dependent: only
    lambda_max does; otherwise no violation. Boundary cases within 1e-9
    resolve to the weaker class so floating-point noise never over-claims
    contextuality.
    """
    quantum = quantum_range(h, underweight=underweight)
    classical = classical_bound(h, max_vertices=max_vertices)
    u = classical.independence_term
    if quantum.lambda_min > u + SPECTRAL_TOLERANCE:
        verdict = Classification.STATE_INDEPENDENT
        margin = quantum.lambda_min - u
    elif quantum.lambda_max > u + SPECTRAL_TOLERANCE:
        verdict = Classification.STATE_DEPENDENT
        margin = quantum.lambda_max - u
    else:
        verdict = Classification.NO_VIOLATION
        margin = quantum.lambda_max - u
    return ViolationReport(classical, quantum, verdict, margin)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst_deviation: float
    worst_item: str


@dataclass(frozen=True)
class RealizationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_realization(
    g: ExpandedGraph,
    coords: Sequence[Ray] | Mapping[int, Ray],
    tol: float,
) -> RealizationReport:
    """Check user-supplied coordinates against the expanded graph.

    (a) every edge joins rays of overlap <= tol; (b) every basis triple is
    orthonormal and complete (projector sum = identity within tol); (c) each
    gadget's endpoint overlap fits its weight, overlap <= n/(n+2) + tol;
    (d) each gadget's auxiliary projectors sum to 2n times the identity
    within tol. Each check reports its worst deviation and where it occurs.
    """
    n = len(g.vertices)
    if isinstance(coords, Mapping):
        missing = [v for v in range(n) if v not in coords]
        if missing:
            raise ValidationError(
                f"missing coordinates for vertices {[vertex_label(g.vertices[v]) for v in missing]}"
            )
        rays = [coords[v] for v in range(n)]
    else:
        if len(coords) != n:
            raise ValidationError(
                f"expected {n} coordinate rays, got {len(coords)}"
            )
        rays = list(coords)
    identity = np.eye(3, dtype=np.complex128)
    checks = []

    worst, item = 0.0, "-"
    for i, j in g.sorted_edges:
        d = overlap(rays[i], rays[j])
        if d > worst:
            worst = d
            item = f"edge ({vertex_label(g.vertices[i])}, {vertex_label(g.vertices[j])})"
    checks.append(CheckResult("edge-orthogonality", worst <= tol, worst, item))

    worst, item = 0.0, "-"
    for pos, triple in enumerate(g.bases):
        d = 0.0
        for a in range(3):
            for b in range(a + 1, 3):
                d = max(d, overlap(rays[triple[a]], rays[triple[b]]))
        total = sum(
            (np.outer(rays[t].amplitudes, rays[t].amplitudes.conj()) for t in triple),
            start=np.zeros((3, 3), dtype=np.complex128),
        )
        d = max(d, float(np.max(np.abs(total - identity))))
        if d > worst:
            worst = d
            item = f"basis {pos}"
    checks.append(CheckResult("basis-completeness", worst <= tol, worst, item))

    worst, item = 0.0, "-"
    for frag in g.fragments:
        i, j = frag.endpoints
        limit = frag.weight / (frag.weight + 2)
        excess = max(0.0, overlap(rays[i], rays[j]) - limit)
        if excess > worst:
            worst = excess
            item = (
                f"edge e{frag.edge_id} "
                f"({vertex_label(g.vertices[i])}, {vertex_label(g.vertices[j])})"
            )
    checks.append(CheckResult("endpoint-overlap", worst <= tol, worst, item))

    worst, item = 0.0, "-"
    for frag in g.fragments:
        total = np.zeros((3, 3), dtype=np.complex128)
        for t in frag.vertex_indices[2:]:
            v = rays[t].amplitudes
            total += np.outer(v, v.conj())
        d = float(np.max(np.abs(total - 2 * frag.weight * identity)))
        if d > worst:
            worst = d
            item = f"edge e{frag.edge_id}"
    checks.append(CheckResult("gadget-projector-sum", worst <= tol, worst, item))

    return RealizationReport(tuple(checks))


def tetrahedron_rays() -> tuple[Ray, Ray, Ray, Ray]:
    """Four real rays toward the vertices of a regular tetrahedron; any two
    have overlap 1/3 and their projectors sum to 4/3 times the identity."""
    s = 1.0 / math.sqrt(3.0)
    return (
        Ray((s, s, s)),
        Ray((s, -s, -s)),
        Ray((-s, s, -s)),
        Ray((-s, -s, s)),
    )


def wheel7_demo_rays(delta: float = 0.005) -> tuple[Ray, ...]:
    """Seven-ray demo set: the tetrahedron rays plus the standard basis
    tilted by `delta` radians about the (1,1,1) axis.

    The tilt keeps the last three rays an exact orthonormal basis (their
    projectors sum to the identity) while avoiding any special alignment
    with the tetrahedron rays, so the seven-projector sum is 7/3 times the
    identity up to O(delta) and nothing is parallel.
    """
    if not 0.0 < abs(delta) < 0.1:
        raise ValidationError(f"tilt angle must be small and nonzero, got {delta!r}")
    axis = np.ones(3) / math.sqrt(3.0)
    cross = np.array(
        [
            [0.0, -axis[2], axis[1]],
            [axis[2], 0.0, -axis[0]],
            [-axis[1], axis[0], 0.0],
        ]
    )
    rotation = (
        math.cos(delta) * np.eye(3)
        + math.sin(delta) * cross
        + (1.0 - math.cos(delta)) * np.outer(axis, axis)
    )
    basis = tuple(Ray(rotation[:, k]) for k in range(3))
    return tetrahedron_rays() + basis
