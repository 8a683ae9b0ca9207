"""Weighted finite graphs with boundary and their combinatorics.

A :class:`Graph` is immutable. Vertex ids are strings, and every numerical
routine in the package uses the order of ``Graph.vertices`` for arrays of
vertex values. Edge values (flows) are arrays aligned with ``Graph.edges``,
where each stored edge ``(u, v)`` carries the orientation ``u -> v``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DisconnectedGraph,
    DuplicateEdge,
    DuplicateVertex,
    LoopEdge,
    NonPositiveWeight,
    NotAComb,
    NotASubgraph,
    UnknownEndpoint,
    WedgePointOnBoundary,
)

COMBINATORIAL = "combinatorial"


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple graph with vertex measure, edge weight and a boundary set.

    Use :func:`build_graph` rather than calling the constructor; the
    constructor assumes already normalized input but still validates it.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    measures: tuple[float, ...]
    weights: tuple[float, ...]
    boundary: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise DuplicateVertex(f"vertex {v!r} listed twice")
            seen.add(v)
        if len(self.measures) != len(self.vertices):
            raise ValueError("one measure per vertex required")
        if len(self.weights) != len(self.edges):
            raise ValueError("one weight per edge required")
        for v, m in zip(self.vertices, self.measures):
            if not m > 0:
                raise NonPositiveWeight(f"measure of {v!r} is {m}, must be > 0")
        keys = set()
        for (u, v), w in zip(self.edges, self.weights):
            if u == v:
                raise LoopEdge(f"loop at {u!r}")
            for x in (u, v):
                if x not in seen:
                    raise UnknownEndpoint(f"edge endpoint {x!r} is not a vertex")
            key = frozenset((u, v))
            if key in keys:
                raise DuplicateEdge(f"edge {{{u!r}, {v!r}}} listed twice")
            keys.add(key)
            if not w > 0:
                raise NonPositiveWeight(f"weight of {{{u!r}, {v!r}}} is {w}, must be > 0")
        missing = set(self.boundary) - seen
        if missing:
            raise UnknownEndpoint(f"boundary vertices not in graph: {sorted(missing)}")

    # -- lookups ---------------------------------------------------------

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _edge_weight(self) -> dict[frozenset, float]:
        return {frozenset(e): w for e, w in zip(self.edges, self.weights)}

    @cached_property
    def adjacency(self) -> dict[str, tuple[tuple[str, float], ...]]:
        nbrs: dict[str, list] = {v: [] for v in self.vertices}
        for (u, v), w in zip(self.edges, self.weights):
            nbrs[u].append((v, w))
            nbrs[v].append((u, w))
        return {v: tuple(ns) for v, ns in nbrs.items()}

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def boundary_list(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if v in self.boundary)

    @cached_property
    def interior_list(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if v not in self.boundary)

    @property
    def interior(self) -> frozenset[str]:
        return frozenset(self.interior_list)

    def measure(self, v: str) -> float:
        return self.measures[self.index[v]]

    def weight(self, u: str, v: str) -> float:
        """Edge weight, extended by zero to non-adjacent pairs."""
        return self._edge_weight.get(frozenset((u, v)), 0.0)

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self._edge_weight

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: str) -> list[str]:
        return [u for u, _ in self.adjacency[v]]

    @cached_property
    def mass(self) -> np.ndarray:
        return np.asarray(self.measures, dtype=float)

    def vector(self, values: Mapping[str, float] | Sequence[float], default: float | None = None) -> np.ndarray:
        """Array of vertex values in vertex order."""
        if isinstance(values, Mapping):
            if default is None:
                return np.array([values[v] for v in self.vertices], dtype=float)
            return np.array([values.get(v, default) for v in self.vertices], dtype=float)
        arr = np.asarray(values, dtype=float)
        if arr.shape != (self.n,):
            raise ValueError(f"expected {self.n} vertex values, got shape {arr.shape}")
        return arr

    def as_dict(self, values: Sequence[float]) -> dict[str, float]:
        return {v: float(x) for v, x in zip(self.vertices, values)}

    def is_unit_weight(self) -> bool:
        return all(m == 1.0 for m in self.measures) and all(w == 1.0 for w in self.weights)

    def __repr__(self):
        return f"Graph(|V|={self.n}, |E|={len(self.edges)}, |B|={len(self.boundary)})"

    # -- derived graphs --------------------------------------------------

    def with_boundary(self, boundary: Iterable[str] | str) -> "Graph":
        if boundary == COMBINATORIAL:
            boundary = combinatorial_boundary(self)
        return Graph(self.vertices, self.edges, self.measures, self.weights, frozenset(boundary))

    def relabel(self, mapping: Mapping[str, str] | Callable[[str], str]) -> "Graph":
        f = mapping.__getitem__ if isinstance(mapping, Mapping) else mapping
        return Graph(
            tuple(f(v) for v in self.vertices),
            tuple((f(u), f(v)) for u, v in self.edges),
            self.measures,
            self.weights,
            frozenset(f(v) for v in self.boundary),
        )

    def induced(self, vertices: Iterable[str], boundary: Iterable[str] | None = None) -> "Graph":
        """Induced subgraph; boundary defaults to the restriction of ours."""
        keep = set(vertices)
        verts = tuple(v for v in self.vertices if v in keep)
        es = [(e, w) for e, w in zip(self.edges, self.weights) if e[0] in keep and e[1] in keep]
        bnd = self.boundary & keep if boundary is None else frozenset(boundary)
        return Graph(
            verts,
            tuple(e for e, _ in es),
            tuple(self.measure(v) for v in verts),
            tuple(w for _, w in es),
            frozenset(bnd),
        )


def _parse_vertex(spec):
    if isinstance(spec, str):
        return spec, 1.0, False
    if isinstance(spec, Mapping):
        return str(spec["id"]), float(spec.get("measure", 1.0)), bool(spec.get("boundary", False))
    spec = tuple(spec)
    vid = str(spec[0])
    measure = float(spec[1]) if len(spec) > 1 else 1.0
    bnd = bool(spec[2]) if len(spec) > 2 else False
    return vid, measure, bnd


def _parse_edge(spec):
    if isinstance(spec, Mapping):
        return str(spec["u"]), str(spec["v"]), float(spec.get("weight", 1.0))
    spec = tuple(spec)
    w = float(spec[2]) if len(spec) > 2 else 1.0
    return str(spec[0]), str(spec[1]), w


def build_graph(vertex_specs, edge_specs, boundary=None) -> Graph:
    """Validated graph from loose vertex and edge specifications.

    A vertex spec is an id, an ``(id, measure[, boundary])`` tuple or a dict
    with keys ``id``, ``measure``, ``boundary``. An edge spec is ``(u, v)``,
    ``(u, v, weight)`` or a dict with keys ``u``, ``v``, ``weight``. Missing
    measures and weights default to 1.

    ``boundary`` overrides the per-vertex flags: pass an iterable of ids, or
    ``"combinatorial"`` for the vertices of degree at most one.
    """
    verts = [_parse_vertex(s) for s in vertex_specs]
    edges = [_parse_edge(s) for s in edge_specs]
    g = Graph(
        tuple(v for v, _, _ in verts),
        tuple((u, v) for u, v, _ in edges),
        tuple(m for _, m, _ in verts),
        tuple(w for _, _, w in edges),
        frozenset(v for v, _, b in verts if b),
    )
    if boundary is not None:
        g = g.with_boundary(boundary)
    return g


def graph_from_edges(edges, boundary=COMBINATORIAL, vertices=None) -> Graph:
    """Unit-weight graph from an edge list; vertices in first-seen order."""
    order: dict[str, None] = {}
    for v in vertices or ():
        order[str(v)] = None
    for e in edges:
        order[str(e[0])] = None
        order[str(e[1])] = None
    return build_graph(list(order), edges, boundary=boundary)


def combinatorial_boundary(g: Graph) -> frozenset[str]:
    return frozenset(v for v in g.vertices if g.degree(v) <= 1)


def combinatorial(g: Graph) -> Graph:
    """Same vertices and edges with unit weight and boundary ``deg <= 1``."""
    unit = Graph(g.vertices, g.edges, (1.0,) * g.n, (1.0,) * len(g.edges))
    return unit.with_boundary(COMBINATORIAL)


def leaves(g: Graph) -> frozenset[str]:
    return frozenset(v for v in g.vertices if g.degree(v) == 1)


def degree(g: Graph, v: str) -> int:
    return g.degree(v)


def components(g: Graph, vertices: Iterable[str] | None = None, skip_edges=()) -> list[list[str]]:
    """Connected components of the subgraph induced on ``vertices``.

    Edges in ``skip_edges`` (iterable of pairs) are treated as deleted.
    Components come out in vertex order of their first member.
    """
    allowed = set(g.vertices if vertices is None else vertices)
    skip = {frozenset(e) for e in skip_edges}
    seen: set[str] = set()
    out = []
    for s in g.vertices:
        if s not in allowed or s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, _ in g.adjacency[x]:
                if y in allowed and y not in seen and frozenset((x, y)) not in skip:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def hop_distances(g: Graph, source: str) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y, _ in g.adjacency[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def diameter(g: Graph) -> int:
    """Largest hop distance between two vertices; edge weights are ignored."""
    if not is_connected(g):
        raise DisconnectedGraph("diameter of a disconnected graph")
    return max(max(hop_distances(g, v).values()) for v in g.vertices)


def is_tree(g: Graph) -> bool:
    return is_connected(g) and len(g.edges) == g.n - 1


# -- combs -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ToothDecomposition:
    """Witness that ``ambient`` is a comb over ``base``."""

    base: Graph
    ambient: Graph
    teeth: dict[str, frozenset[str]]
    tooth_boundaries: dict[str, frozenset[str]]

    @cached_property
    def owner(self) -> dict[str, str]:
        """Ambient vertex -> base vertex whose tooth contains it."""
        return {v: x for x, tooth in self.teeth.items() for v in tooth}

    def tooth_graph(self, x: str) -> Graph:
        """The tooth at ``x`` with ambient weights and boundary ``B~ ∩ tooth``."""
        return self.ambient.induced(self.teeth[x])

    def tooth_mass(self, x: str) -> float:
        return sum(self.ambient.measure(v) for v in self.tooth_boundaries[x])


def check_subgraph(ambient: Graph, base: Graph) -> None:
    missing = [v for v in base.vertices if v not in ambient.index]
    if missing:
        raise NotASubgraph(f"base vertices missing from ambient: {missing[:5]}")
    bad = [e for e in base.edges if not ambient.has_edge(*e)]
    if bad:
        raise NotASubgraph(f"base edges missing from ambient: {bad[:5]}")


def comb_decompose(ambient: Graph, base: Graph) -> ToothDecomposition:
    """Split ``ambient`` into teeth, one per base vertex.

    Deleting the base edges must leave exactly ``|V(base)|`` components, each
    holding exactly one base vertex; otherwise :class:`NotAComb` is raised.
    """
    check_subgraph(ambient, base)
    comps = components(ambient, skip_edges=base.edges)
    if len(comps) != base.n:
        raise NotAComb(f"deleting base edges leaves {len(comps)} components, base has {base.n} vertices")
    base_set = set(base.vertices)
    teeth = {}
    for comp in comps:
        roots = [v for v in comp if v in base_set]
        if len(roots) != 1:
            raise NotAComb(f"component containing {comp[0]!r} holds {len(roots)} base vertices")
        teeth[roots[0]] = frozenset(comp)
    teeth = {x: teeth[x] for x in base.vertices}
    tb = {x: teeth[x] & ambient.boundary for x in base.vertices}
    return ToothDecomposition(base, ambient, teeth, tb)


def _tooth_edge_count(decomp: ToothDecomposition) -> dict[str, int]:
    counts = dict.fromkeys(decomp.teeth, 0)
    owner = decomp.owner
    for u, v in decomp.ambient.edges:
        if decomp.base.has_edge(u, v):
            continue
        counts[owner[u]] += 1
    return counts


def is_homotopy_faithful(ambient: Graph, base: Graph) -> bool:
    """True iff ``ambient`` is a comb over ``base`` whose teeth are all trees.

    Equivalently every cycle of the ambient graph already lies in the base.
    Raises :class:`NotAComb` when the comb decomposition fails.
    """
    decomp = comb_decompose(ambient, base)
    counts = _tooth_edge_count(decomp)
    return all(counts[x] == len(decomp.teeth[x]) - 1 for x in decomp.teeth)


def constant_extension(decomp: ToothDecomposition, f) -> np.ndarray:
    """Lift a base function to the ambient graph, constant on every tooth.

    ``f`` is a mapping or an array in base vertex order; the result is an array
    in ambient vertex order.
    """
    values = decomp.base.as_dict(decomp.base.vector(f))
    owner = decomp.owner
    return np.array([values[owner[v]] for v in decomp.ambient.vertices])


# -- wedge sums -----------------------------------------------------------------


def _glued_measure(m1: float, m2: float, unit_measure: bool) -> float:
    if unit_measure and m1 == 1.0 and m2 == 1.0:
        return 1.0
    return m1 + m2


def wedge_sum(g1: Graph, z1: str, g2: Graph, z2: str, *, prefixes=("", "w."), unit_measure=False) -> Graph:
    """Glue ``g1`` and ``g2`` by identifying interior vertices ``z1`` and ``z2``.

    Vertex ``v`` of ``g_i`` becomes ``prefixes[i] + v``; the glued vertex keeps
    the id ``prefixes[0] + z1``. Its measure is ``m(z1) + m(z2)``, or 1 when
    ``unit_measure`` is set and both measures are 1. Interior measures do not
    enter the Steklov spectrum, so either choice leaves it unchanged.
    """
    for g, z in ((g1, z1), (g2, z2)):
        if z not in g.index:
            raise UnknownEndpoint(f"wedge point {z!r} is not a vertex")
        if z in g.boundary:
            raise WedgePointOnBoundary(f"wedge point {z!r} lies on the boundary")
    p1, p2 = prefixes
    glued = p1 + z1

    def name2(v):
        return glued if v == z2 else p2 + v

    verts = [(p1 + v, m) for v, m in zip(g1.vertices, g1.measures)]
    verts[g1.index[z1]] = (glued, _glued_measure(g1.measure(z1), g2.measure(z2), unit_measure))
    verts += [(name2(v), m) for v, m in zip(g2.vertices, g2.measures) if v != z2]
    edges = [(p1 + u, p1 + v, w) for (u, v), w in zip(g1.edges, g1.weights)]
    edges += [(name2(u), name2(v), w) for (u, v), w in zip(g2.edges, g2.weights)]
    bnd = {p1 + v for v in g1.boundary} | {p2 + v for v in g2.boundary}
    return build_graph(verts, edges, boundary=bnd)


def wedge_power(g: Graph, z: str, r: int, *, unit_measure=False) -> Graph:
    """Wedge sum of ``r`` copies of ``g`` at ``z``.

    Copy ``i`` (1-based) renames ``v`` to ``f"{i}.{v}"``; the common vertex is
    called ``z``.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if z not in g.index:
        raise UnknownEndpoint(f"wedge point {z!r} is not a vertex")
    if z in g.boundary:
        raise WedgePointOnBoundary(f"wedge point {z!r} lies on the boundary")

    def name(i, v):
        return z if v == z else f"{i}.{v}"

    mz = g.measure(z)
    glued_m = mz
    for _ in range(r - 1):
        glued_m = _glued_measure(glued_m, mz, unit_measure)
    verts = [(z, glued_m)]
    edges = []
    bnd = set()
    for i in range(1, r + 1):
        verts += [(name(i, v), m) for v, m in zip(g.vertices, g.measures) if v != z]
        edges += [(name(i, u), name(i, v), w) for (u, v), w in zip(g.edges, g.weights)]
        bnd |= {name(i, v) for v in g.boundary}
    return build_graph(verts, edges, boundary=bnd)
