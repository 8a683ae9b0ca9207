"""Random trees, subtrees, connected graphs and combs for property tests and fuzzing."""
from __future__ import annotations

import networkx as nx
import numpy as np

from .graph import Graph, build_graph


def _uniform(rng, lo=0.5, hi=2.0):
    return float(rng.uniform(lo, hi))


def random_tree_edges(rng: np.random.Generator, n: int) -> list[tuple[int, int]]:
    """Edges of a uniform random labeled tree on ``0 .. n-1`` (Prüfer decoding)."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    t = nx.from_prufer_sequence(seq)
    return sorted((min(u, v), max(u, v)) for u, v in t.edges())


def random_tree(rng: np.random.Generator, n: int, weighted: bool = False, prefix: str = "v") -> Graph:
    """Random labeled tree with combinatorial boundary (its leaves).

    With ``weighted`` the measures and weights are drawn from [0.5, 2].
    """
    verts = [(f"{prefix}{i}", _uniform(rng) if weighted else 1.0) for i in range(n)]
    edges = [(f"{prefix}{u}", f"{prefix}{v}", _uniform(rng) if weighted else 1.0) for u, v in random_tree_edges(rng, n)]
    return build_graph(verts, edges, boundary="combinatorial")


def random_connected_graph(rng: np.random.Generator, n: int, extra_edges: int | None = None,
                           weighted: bool = True, boundary_size: int | None = None, prefix: str = "v") -> Graph:
    """Random tree plus ``extra_edges`` random chords, with a random boundary.

    ``boundary_size`` defaults to a uniform draw from ``1 .. n``.
    """
    pairs = set(random_tree_edges(rng, n))
    if extra_edges is None:
        extra_edges = int(rng.integers(0, n + 1))
    possible = n * (n - 1) // 2
    extra_edges = min(extra_edges, possible - len(pairs))
    while extra_edges > 0:
        u, v = sorted(int(x) for x in rng.choice(n, size=2, replace=False))
        if (u, v) not in pairs:
            pairs.add((u, v))
            extra_edges -= 1
    k = int(rng.integers(1, n + 1)) if boundary_size is None else boundary_size
    bnd = {f"{prefix}{i}" for i in rng.choice(n, size=k, replace=False)}
    verts = [(f"{prefix}{i}", _uniform(rng) if weighted else 1.0) for i in range(n)]
    edges = [(f"{prefix}{u}", f"{prefix}{v}", _uniform(rng) if weighted else 1.0) for u, v in sorted(pairs)]
    return build_graph(verts, edges, boundary=bnd)


def random_subtree(rng: np.random.Generator, tree: Graph, size: int | None = None) -> Graph:
    """Connected subtree grown from a random root by random frontier edges.

    Not uniform over subtrees. The result keeps the tree's weights and
    measures and gets its own combinatorial boundary.
    """
    n = tree.n
    if size is None:
        size = int(rng.integers(2, n + 1))
    root = tree.vertices[int(rng.integers(n))]
    chosen = [root]
    inside = {root}
    while len(chosen) < size:
        frontier = sorted({y for x in chosen for y in tree.neighbors(x) if y not in inside}, key=tree.index.get)
        if not frontier:
            break
        y = frontier[int(rng.integers(len(frontier)))]
        chosen.append(y)
        inside.add(y)
    return tree.induced(inside).with_boundary("combinatorial")


def random_comb(rng: np.random.Generator, base: Graph, extra_vertices: int, cycle_prob: float = 0.3,
                boundary_prob: float = 0.3) -> Graph:
    """Weighted comb over ``base`` with ``m(B~_x) >= m_x`` for every ``x`` in B(base).

    The base keeps its measures and weights. Tooth vertices ``{x}/t{k}`` hang
    off a random tree rooted at ``x``; with probability ``cycle_prob`` a tooth
    also gets one chord. Boundary vertices are sampled per tooth, nonempty on
    teeth over base boundary vertices, and their measures are scaled up where
    the mass condition would otherwise fail.
    """
    xs = list(base.vertices)
    sizes = dict.fromkeys(xs, 0)
    for i in rng.integers(0, len(xs), size=extra_vertices):
        sizes[xs[int(i)]] += 1
    measures = {v: base.measure(v) for v in xs}
    edges = [(u, v, w) for (u, v), w in zip(base.edges, base.weights)]
    teeth = {}
    for x in xs:
        tooth = [x]
        for k in range(sizes[x]):
            v = f"{x}/t{k}"
            parent = tooth[int(rng.integers(len(tooth)))]
            measures[v] = _uniform(rng)
            edges.append((parent, v, _uniform(rng)))
            tooth.append(v)
        if len(tooth) >= 3 and rng.random() < cycle_prob:
            have = {frozenset((u, v)) for u, v, _ in edges}
            u, v = (tooth[int(i)] for i in rng.choice(len(tooth), size=2, replace=False))
            if frozenset((u, v)) not in have:
                edges.append((u, v, _uniform(rng)))
        teeth[x] = tooth

    boundary = set()
    for x in xs:
        tooth = teeth[x]
        picks = [v for v in tooth if rng.random() < boundary_prob]
        if x in base.boundary:
            if not picks:
                picks = [tooth[int(rng.integers(len(tooth)))]]
            if x not in picks:
                mass = sum(measures[v] for v in picks)
                if mass < measures[x]:
                    factor = measures[x] / mass * (1.0 + 0.5 * rng.random())
                    for v in picks:
                        measures[v] *= factor
        boundary.update(picks)
    order = xs + [v for x in xs for v in teeth[x][1:]]
    return build_graph([(v, measures[v]) for v in order], edges, boundary=boundary)
