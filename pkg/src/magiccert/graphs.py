"""Event graphs, overlap weightings, and linear overlap functionals.

An event graph carries one vertex per prepared state and one edge per
measured pairwise overlap. Functionals are linear forms in the edge
weights with a known classical bound: the maximum over incoherent
weightings, which arise from partitioning vertices into groups of
identical states (weight 1 inside a group, 0 across groups).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np

from .states import State, overlap

WEIGHT_TOL = 1e-9
MAX_PARTITION_VERTICES = 12

Edge = tuple[int, int]


def edge_key(i: int, j: int) -> Edge:
    if i == j:
        raise ValueError(f"self-loop at vertex {i}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class EventGraph:
    """Simple connected graph on vertices 1..m with canonically sorted edges."""

    m: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("graph needs at least 2 vertices")
        canon = sorted(edge_key(i, j) for i, j in self.edges)
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate edges")
        for i, j in canon:
            if not (1 <= i <= self.m and 1 <= j <= self.m):
                raise ValueError(f"edge ({i},{j}) outside vertex range 1..{self.m}")
        object.__setattr__(self, "edges", tuple(canon))
        if not self._connected():
            raise ValueError("graph is not connected")

    def _connected(self) -> bool:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.m + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.m

    @property
    def vertices(self) -> range:
        return range(1, self.m + 1)

    def is_cycle(self) -> bool:
        if self.m < 3 or len(self.edges) != self.m:
            return False
        degree = {v: 0 for v in self.vertices}
        for i, j in self.edges:
            degree[i] += 1
            degree[j] += 1
        return all(d == 2 for d in degree.values())


def cycle(m: int) -> EventGraph:
    if m < 3:
        raise ValueError("cycle needs at least 3 vertices")
    edges = [(i, i + 1) for i in range(1, m)] + [(1, m)]
    return EventGraph(m, tuple(edges))


def complete(m: int) -> EventGraph:
    if m < 2:
        raise ValueError("complete graph needs at least 2 vertices")
    edges = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    return EventGraph(m, tuple(edges))


@dataclass(frozen=True)
class EdgeWeights:
    """One real weight in [0, 1] per graph edge."""

    graph: EventGraph
    weights: Mapping[Edge, float]

    def __post_init__(self):
        fixed = {}
        for e, w in self.weights.items():
            e = edge_key(*e)
            if e not in self.graph.edges:
                raise ValueError(f"weight on non-edge {e}")
            if not -WEIGHT_TOL <= w <= 1.0 + WEIGHT_TOL:
                raise ValueError(f"weight {w!r} on edge {e} outside [0, 1]")
            fixed[e] = float(min(max(w, 0.0), 1.0))
        missing = set(self.graph.edges) - set(fixed)
        if missing:
            raise ValueError(f"missing weights for edges {sorted(missing)}")
        object.__setattr__(self, "weights", fixed)

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(self.weights[e] for e in self.graph.edges)


@dataclass(frozen=True)
class VertexLabeling:
    """Assignment of a quantum state to each vertex, all of equal dimension."""

    states: Mapping[int, State]

    def __post_init__(self):
        states = dict(self.states)
        if not states:
            raise ValueError("labeling is empty")
        dims = {s.dim for s in states.values()}
        if len(dims) != 1:
            raise ValueError(f"mixed state dimensions {sorted(dims)}")
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return next(iter(self.states.values())).dim


@dataclass(frozen=True)
class LinearFunctional:
    """Linear form in edge weights: constant + sum of coefficient * weight.

    The coefficient support may be a subset of the graph's edges. The
    classical bound is the maximum over incoherent weightings and is
    trusted as given; `classical_max` recomputes it from scratch.
    """

    graph: EventGraph
    coefficients: Mapping[Edge, float]
    classical_bound: float
    name: str
    constant: float = 0.0

    def __post_init__(self):
        fixed = {}
        for e, c in self.coefficients.items():
            e = edge_key(*e)
            if e not in self.graph.edges:
                raise ValueError(f"coefficient on non-edge {e}")
            fixed[e] = float(c)
        if not fixed:
            raise ValueError("functional needs at least one coefficient")
        object.__setattr__(self, "coefficients", fixed)

    @property
    def support(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.graph.edges if self.coefficients.get(e, 0.0) != 0.0)


def cycle_functional(m: int) -> LinearFunctional:
    """Cycle witness c_m: all consecutive edges +1, the closing edge (1, m) -1.

    Classical bound m - 2; any violation witnesses set magic.
    """
    if m < 3:
        raise ValueError("cycle functional needs m >= 3")
    g = cycle(m)
    coeffs = {e: 1.0 for e in g.edges}
    coeffs[(1, m)] = -1.0
    return LinearFunctional(g, coeffs, float(m - 2), f"c{m}")


def hub_functional(m: int) -> LinearFunctional:
    """Complete-graph witness h_m: +1 on hub edges (1, k), -1 elsewhere.

    Built by the defining recursion: h_3 is the triangle form
    r_12 + r_13 - r_23, and h_m adds r_1m minus every r_im for
    2 <= i < m. Classical bound 1.
    """
    if m < 3:
        raise ValueError("hub functional needs m >= 3")
    coeffs: dict[Edge, float] = {(1, 2): 1.0, (1, 3): 1.0, (2, 3): -1.0}
    for k in range(4, m + 1):
        coeffs[(1, k)] = 1.0
        for i in range(2, k):
            coeffs[edge_key(i, k)] = coeffs.get(edge_key(i, k), 0.0) - 1.0
    return LinearFunctional(complete(m), coeffs, 1.0, f"h{m}")


def evaluate(f: LinearFunctional, r: EdgeWeights) -> float:
    if f.graph != r.graph:
        raise ValueError("functional and weights live on different graphs")
    return f.constant + sum(c * r.weights[e] for e, c in f.coefficients.items())


def overlaps_from_labeling(g: EventGraph, labeling: VertexLabeling) -> EdgeWeights:
    missing = set(g.vertices) - set(labeling.states)
    if missing:
        raise ValueError(f"labeling misses vertices {sorted(missing)}")
    w = {e: overlap(labeling.states[e[0]], labeling.states[e[1]]) for e in g.edges}
    return EdgeWeights(g, w)


def set_partitions(items: list) -> Iterator[list[list]]:
    """All partitions of items into nonempty groups, deterministic order."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def incoherent_vertices(g: EventGraph) -> list[EdgeWeights]:
    """Deduplicated 0/1 weightings induced by vertex partitions.

    A partition assigns weight 1 to edges inside a group and 0 across
    groups. Distinct partitions can induce the same weighting, so the
    result is deduplicated; order is descending by weight tuple.
    """
    if g.m > MAX_PARTITION_VERTICES:
        raise ValueError(f"partition enumeration capped at {MAX_PARTITION_VERTICES} vertices")
    seen: dict[tuple, dict[Edge, float]] = {}
    for part in set_partitions(list(g.vertices)):
        group_of = {}
        for gi, group in enumerate(part):
            for v in group:
                group_of[v] = gi
        w = {e: 1.0 if group_of[e[0]] == group_of[e[1]] else 0.0 for e in g.edges}
        seen[tuple(w[e] for e in g.edges)] = w
    return [EdgeWeights(g, seen[k]) for k in sorted(seen, reverse=True)]


def classical_max(f: LinearFunctional) -> float:
    """Exact classical bound by enumerating incoherent vertices."""
    return max(evaluate(f, r) for r in incoherent_vertices(f.graph))


def restrict(f: LinearFunctional, e: Edge) -> LinearFunctional:
    """Specialize a cycle functional to r_e = 1 by contracting edge e.

    The contracted functional keeps every other coefficient, absorbs
    coefficient(e) into the constant, and gets a freshly computed
    classical bound. Only cycles of length >= 4 contract to a simple
    graph, so anything else is rejected.
    """
    if not f.graph.is_cycle():
        raise ValueError("restrict is defined for cycle functionals only")
    if f.graph.m < 4:
        raise ValueError("contracting a triangle would create a double edge")
    e = edge_key(*e)
    if e not in f.graph.edges:
        raise ValueError(f"{e} is not an edge of the graph")
    u, v = e
    relabel = {}
    for old in f.graph.vertices:
        if old == v:
            continue
        relabel[old] = len(relabel) + 1
    relabel[v] = relabel[u]
    new_edges = set()
    new_coeffs: dict[Edge, float] = {}
    for a, b in f.graph.edges:
        if (a, b) == e:
            continue
        na, nb = relabel[a], relabel[b]
        ne = edge_key(na, nb)
        new_edges.add(ne)
        c = f.coefficients.get((a, b), 0.0)
        new_coeffs[ne] = new_coeffs.get(ne, 0.0) + c
    g2 = EventGraph(f.graph.m - 1, tuple(sorted(new_edges)))
    out = LinearFunctional(
        g2,
        new_coeffs,
        classical_bound=0.0,
        name=f"{f.name}|r{u}{v}=1",
        constant=f.constant + f.coefficients.get(e, 0.0),
    )
    return LinearFunctional(g2, new_coeffs, classical_max(out), out.name, out.constant)


_NAME_RE = re.compile(r"^([ch])(\d+)$")


def functional_by_name(name: str) -> LinearFunctional:
    """Parse compact functional names: c<m> for cycles, h<m> for hub forms."""
    match = _NAME_RE.match(name)
    if not match:
        raise ValueError(f"unrecognized functional name {name!r}")
    kind, m = match.group(1), int(match.group(2))
    if m < 3:
        raise ValueError(f"functional {name!r} needs m >= 3")
    return cycle_functional(m) if kind == "c" else hub_functional(m)


def functional_to_doc(f: LinearFunctional) -> dict:
    """Interchange form: {"m", "edges", "coeffs", "classical_bound", "name"}.

    The format has no slot for a constant offset, so restricted
    functionals with one are not exportable.
    """
    if f.constant != 0.0:
        raise ValueError("functionals with a constant offset have no interchange form")
    edges = list(f.support)
    return {
        "m": f.graph.m,
        "edges": [list(e) for e in edges],
        "coeffs": [f.coefficients[e] for e in edges],
        "classical_bound": f.classical_bound,
        "name": f.name,
    }


def functional_from_doc(doc: Mapping) -> LinearFunctional:
    required = {"m", "edges", "coeffs", "classical_bound", "name"}
    if set(doc) != required:
        raise ValueError(f"functional document must have exactly the keys {sorted(required)}")
    m = doc["m"]
    if not isinstance(m, int) or m < 2:
        raise ValueError("m must be an integer >= 2")
    edges = [edge_key(int(i), int(j)) for i, j in doc["edges"]]
    coeffs = doc["coeffs"]
    if len(coeffs) != len(edges):
        raise ValueError("coeffs and edges must have equal length")
    graph = EventGraph(m, tuple(edges))
    coefficients = {e: float(c) for e, c in zip(edges, coeffs)}
    return LinearFunctional(
        graph, coefficients, float(doc["classical_bound"]), str(doc["name"])
    )
