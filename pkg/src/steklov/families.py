"""Paths, stars, regular combs and homogeneous tree balls with exact spectra.

Every constructor returns a unit-weight graph whose boundary is its set of
vertices of degree at most one. Vertex names are part of the contract:

* path of length ``l``: ``v0 ... v{l}``
* star: center ``o``; vertex ``k`` of arm ``j`` (1-based, arms sorted by
  length) is ``a{j}.{k}``
* comb ``Comb(r; l)``: base ``b0 ... b{r}``; tooth vertex ``j`` above ``b{k}``
  is ``t{k}.{j}``
* tree ball ``T(r, d)``: root ``o``; children append ``.{i}`` to the parent id
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BadParameter, RootFindingFailure
from .graph import Graph, build_graph


@dataclass(frozen=True)
class StarSpec:
    """Arm lengths of a star, stored sorted ascending."""

    arm_lengths: tuple[int, ...]

    def __post_init__(self):
        arms = tuple(sorted(int(x) for x in self.arm_lengths))
        if len(arms) < 2:
            raise BadParameter("a star needs at least two arms")
        if arms[0] < 1:
            raise BadParameter("arm lengths must be >= 1")
        object.__setattr__(self, "arm_lengths", arms)

    @property
    def r(self) -> int:
        return len(self.arm_lengths)

    def label(self) -> str:
        return "St(" + ",".join(map(str, self.arm_lengths)) + ")"


def _as_spec(spec) -> StarSpec:
    return spec if isinstance(spec, StarSpec) else StarSpec(tuple(spec))


@dataclass(frozen=True)
class ClosedFormSpectrum:
    """Exact spectrum as ``(value, multiplicity)`` pairs, ascending."""

    family: str
    params: dict
    groups: tuple[tuple[float, int], ...]
    exact: tuple = field(default=(), compare=False)

    @property
    def sigma(self) -> np.ndarray:
        return np.array([v for v, m in self.groups for _ in range(m)])

    @property
    def size(self) -> int:
        return sum(m for _, m in self.groups)

    def oracle_json(self) -> dict:
        return {"family": self.family, "params": dict(self.params), "sigma": [float(x) for x in self.sigma]}


def _group(values, exact=False):
    out = []
    for v in sorted(values):
        if out and (v == out[-1][0] if exact else math.isclose(v, out[-1][0], rel_tol=1e-12, abs_tol=1e-15)):
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return tuple((float(v), m) for v, m in out)


# -- constructors --------------------------------------------------------------


def make_path(l: int) -> Graph:
    if l < 0:
        raise BadParameter("path length must be >= 0")
    verts = [f"v{k}" for k in range(l + 1)]
    return build_graph(verts, zip(verts, verts[1:]), boundary="combinatorial")


def rooted_path(l: int, root: str = "p0", prefix: str = "p") -> Graph:
    """Path ``root ~ p1 ~ ... ~ p{l}`` whose only boundary vertex is the far end.

    This is the pendant tooth used in wedge constructions; the root is interior.
    """
    if l < 0:
        raise BadParameter("path length must be >= 0")
    verts = [root] + [f"{prefix}{k}" for k in range(1, l + 1)]
    bnd = {verts[-1]} if l >= 1 else set()
    return build_graph(verts, zip(verts, verts[1:]), boundary=bnd)


def make_star(spec) -> Graph:
    spec = _as_spec(spec)
    verts = ["o"]
    edges = []
    for j, l in enumerate(spec.arm_lengths, start=1):
        prev = "o"
        for k in range(1, l + 1):
            v = f"a{j}.{k}"
            verts.append(v)
            edges.append((prev, v))
            prev = v
    return build_graph(verts, edges, boundary="combinatorial")


def make_regular_star(r: int, l: int) -> Graph:
    if r < 2 or l < 1:
        raise BadParameter("regular star needs r >= 2 and l >= 1")
    return make_star([l] * r)


def make_regular_comb(r: int, l: int) -> Graph:
    if r < 1 or l < 1:
        raise BadParameter("regular comb needs r >= 1 and l >= 1")
    verts, edges = [], []
    for k in range(r + 1):
        verts.append(f"b{k}")
        if k:
            edges.append((f"b{k - 1}", f"b{k}"))
    for k in range(r + 1):
        prev = f"b{k}"
        for j in range(1, l + 1):
            v = f"t{k}.{j}"
            verts.append(v)
            edges.append((prev, v))
            prev = v
    return build_graph(verts, edges, boundary="combinatorial")


def _tree_ball_levels(r: int, d: int) -> list[list[str]]:
    levels = [["o"]]
    for depth in range(1, r + 1):
        nxt = []
        for p in levels[-1]:
            nchild = d if p == "o" else d - 1
            nxt += [f"{p}.{i}" for i in range(1, nchild + 1)]
        levels.append(nxt)
    return levels


def make_tree_ball(r: int, d: int) -> Graph:
    if r < 1 or d < 3:
        raise BadParameter("tree ball needs r >= 1 and d >= 3")
    levels = _tree_ball_levels(r, d)
    verts = [v for lvl in levels for v in lvl]
    edges = [(v.rsplit(".", 1)[0], v) for v in verts[1:]]
    return build_graph(verts, edges, boundary="combinatorial")


# -- paths -----------------------------------------------------------------------


def path_spectrum(l: int) -> ClosedFormSpectrum:
    if l < 1:
        raise BadParameter("path spectrum needs l >= 1")
    return ClosedFormSpectrum("path", {"l": l}, ((0.0, 1), (2.0 / l, 1)), (Fraction(0), Fraction(2, l)))


def path_laplacian_eigen(r: int):
    """Laplacian eigenvalues ``μ_i`` and eigenvectors ``φ_i`` of the path of length ``r``.

    Returns ``(mu, phi)`` with ``phi[i - 1][j]`` the value of ``φ_i`` at vertex ``j``.
    """
    i = np.arange(r + 1)
    mu = 2.0 - 2.0 * np.cos(i * np.pi / (r + 1))
    j = np.arange(r + 1)
    phi = np.cos(np.outer(i, 2 * j + 1) * np.pi / (2 * (r + 1)))
    return mu, phi


# -- stars --------------------------------------------------------------------------


def elementary_symmetric(values: Sequence) -> list:
    """``[p_0, p_1, ..., p_n]`` of ``values`` (exact for ints and Fractions)."""
    p = [1] + [0] * len(values)
    for x in values:
        for k in range(len(values), 0, -1):
            p[k] = p[k] + p[k - 1] * x
    return p


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_from_roots(roots):
    poly = [1]
    for t in roots:
        poly = _poly_mul(poly, [-t, 1])
    return poly


def star_char_polynomial(spec) -> list[int]:
    """Coefficients ``c_0 .. c_{r-1}`` (ascending powers) of the star polynomial.

    ``P(t) = sum_i prod_{j != i} (t - l_j)``. Both the product-sum and the
    elementary-symmetric expansion are evaluated and must agree exactly.
    """
    arms = _as_spec(spec).arm_lengths
    r = len(arms)
    prod_sum = [0] * r
    for i in range(r):
        term = _poly_from_roots(arms[:i] + arms[i + 1:])
        prod_sum = [a + b for a, b in zip(prod_sum, term)]
    p = elementary_symmetric(arms)
    sym = [(-1) ** (r - i - 1) * (i + 1) * p[r - i - 1] for i in range(r)]
    if sym != prod_sum:
        raise AssertionError(f"star polynomial expansions disagree: {prod_sum} vs {sym}")
    return sym


def _horner(coeffs, t):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def star_polynomial_roots(spec) -> list[float]:
    """The ``r - 1`` roots of the star polynomial, ascending, with multiplicity.

    An arm length ``v`` occurring ``m >= 2`` times is a root of multiplicity
    exactly ``m - 1``; those are split off exactly. The remaining factor has
    one simple root strictly between consecutive distinct arm lengths and is
    solved through its companion matrix.
    """
    arms = _as_spec(spec).arm_lengths
    coeffs = star_char_polynomial(arms)
    counts: dict[int, int] = {}
    for l in arms:
        counts[l] = counts.get(l, 0) + 1
    distinct = sorted(counts)
    roots = [float(v) for v in distinct for _ in range(counts[v] - 1)]
    reduced = [0] * len(distinct)
    for v in distinct:
        term = _poly_from_roots([u for u in distinct if u != v])
        reduced = [a + counts[v] * b for a, b in zip(reduced, term)]
    if len(reduced) > 1:
        found = np.polynomial.polynomial.polyroots(np.array(reduced, dtype=float))
        if np.max(np.abs(np.imag(found))) > 1e-9 * max(distinct):
            raise RootFindingFailure(f"complex roots for {arms}: {found}")
        roots += [float(t) for t in np.real(found)]
    roots.sort()
    lo, hi = arms[0], arms[-1]
    scale = max(abs(c) for c in coeffs) * max(1.0, hi) ** (len(coeffs) - 1)
    for t in roots:
        if not (lo - 1e-9 * hi <= t <= hi + 1e-9 * hi):
            raise RootFindingFailure(f"root {t} outside [{lo}, {hi}]")
        if abs(_horner(coeffs, t)) > 1e-8 * scale:
            raise RootFindingFailure(f"|P({t})| = {abs(_horner(coeffs, t))} too large")
    return roots


def star_spectrum(spec) -> ClosedFormSpectrum:
    spec = _as_spec(spec)
    roots = star_polynomial_roots(spec)
    values = [0.0] + [1.0 / t for t in roots]
    return ClosedFormSpectrum("star", {"arms": list(spec.arm_lengths)}, _group(values))


def star_Z(spec) -> tuple[frozenset[str], int | None]:
    """Zero set predicted by the arm-length criterion, with its depth ``d``.

    Nonempty iff the first ``r - 1`` arms are equal and the last one is
    ``r d + l_1`` long for an integer ``d >= 0``; then the set is the vertex at
    distance ``d`` from the center on the last arm (the center itself when
    ``d == 0``).
    """
    spec = _as_spec(spec)
    arms = spec.arm_lengths
    r = spec.r
    if len(set(arms[:-1])) != 1:
        return frozenset(), None
    excess = arms[-1] - arms[0]
    if excess % r:
        return frozenset(), None
    d = excess // r
    return frozenset({"o" if d == 0 else f"a{r}.{d}"}), d


def regular_star_spectrum(r: int, l: int) -> ClosedFormSpectrum:
    if r < 2 or l < 1:
        raise BadParameter("regular star needs r >= 2 and l >= 1")
    return ClosedFormSpectrum("regular-star", {"r": r, "l": l}, ((0.0, 1), (1.0 / l, r - 1)), (Fraction(0), Fraction(1, l)))


def regular_star_eigenfunctions(r: int, l: int) -> list[tuple[float, dict[str, float]]]:
    """Generators ``f_2 .. f_r`` of the ``1/l`` eigenspace of ``St(r; l)``."""
    if r < 2 or l < 1:
        raise BadParameter("regular star needs r >= 2 and l >= 1")
    g = make_regular_star(r, l)
    out = []
    for j in range(2, r + 1):
        f = dict.fromkeys(g.vertices, 0.0)
        for k in range(1, l + 1):
            f[f"a1.{k}"] = k / l
            f[f"a{j}.{k}"] = -k / l
        out.append((1.0 / l, f))
    return out


# -- combs -------------------------------------------------------------------------


def regular_comb_spectrum(r: int, l: int) -> ClosedFormSpectrum:
    if r < 1 or l < 1:
        raise BadParameter("regular comb needs r >= 1 and l >= 1")
    mu, _ = path_laplacian_eigen(r)
    return ClosedFormSpectrum("comb", {"r": r, "l": l}, _group(mu / (1 + mu * l)))


def comb_sine_form(r: int, l: int) -> np.ndarray:
    """The comb eigenvalues written with ``4 sin^2``; same numbers as the μ form."""
    s = 4 * np.sin(np.arange(r + 1) * np.pi / (2 * (r + 1))) ** 2
    return s / (1 + l * s)


def comb_eigenfunctions(r: int, l: int) -> list[tuple[float, dict[str, float]]]:
    """``f_i(t{k}.{j}) = φ_i(k) (1 + j μ_i)`` for ``i = 1 .. r + 1``."""
    if r < 1 or l < 1:
        raise BadParameter("regular comb needs r >= 1 and l >= 1")
    mu, phi = path_laplacian_eigen(r)
    out = []
    for i in range(r + 1):
        f = {}
        for k in range(r + 1):
            f[f"b{k}"] = phi[i, k]
            for j in range(1, l + 1):
                f[f"t{k}.{j}"] = phi[i, k] * (1 + j * mu[i])
        out.append((float(mu[i] / (1 + mu[i] * l)), f))
    return out


# -- tree balls ----------------------------------------------------------------------


def _geom(q: int, lo: int, hi: int) -> int:
    return sum(q**i for i in range(lo, hi + 1))


def tree_ball_eigenvalue(r: int, d: int, k: int) -> Fraction:
    """``σ̄_k`` of ``T(r, d)`` for ``k = 1 .. r + 1`` as an exact fraction."""
    if not 1 <= k <= r + 1:
        raise BadParameter(f"k must lie in 1..{r + 1}")
    if k == 1:
        return Fraction(0)
    value = Fraction(1, _geom(d - 1, 0, r + 1 - k))
    if value != Fraction(d - 2, (d - 1) ** (r + 2 - k) - 1):
        raise AssertionError("tree-ball eigenvalue forms disagree")
    return value


def tree_ball_multiplicity(r: int, d: int, k: int) -> int:
    if k == 1:
        return 1
    if k == 2:
        return d - 1
    return (d - 2) * d * (d - 1) ** (k - 3)


def tree_ball_spectrum(r: int, d: int) -> ClosedFormSpectrum:
    if r < 1 or d < 3:
        raise BadParameter("tree ball needs r >= 1 and d >= 3")
    exact = tuple(tree_ball_eigenvalue(r, d, k) for k in range(1, r + 2))
    groups = tuple((float(v), tree_ball_multiplicity(r, d, k)) for k, v in enumerate(exact, start=1))
    return ClosedFormSpectrum("tree-ball", {"r": r, "d": d}, groups, exact)


def tree_ball_band(d: int, j: int) -> int:
    """The ``k`` with ``d (d-1)^(k-3) < j <= d (d-1)^(k-2)`` (for ``j >= 2``)."""
    if j < 2:
        raise BadParameter("bands start at j = 2")
    k = 2
    while j > d * (d - 1) ** (k - 2):
        k += 1
    return k


def tree_ball_eigenfunctions(r: int, d: int) -> list[tuple[float, dict[str, float]]]:
    """Eigenspace generators of ``T(r, d)`` for every ``σ̄_k``, ``k >= 2``.

    For a parent ``x`` at depth ``k - 2`` with children ``y_1, y_2, ...``,
    each function is ``+h(j)`` on the depth-``j`` descendants of ``y_1``,
    ``-h(j)`` on those of ``y_α``, and zero elsewhere, where
    ``h(j) = sum_{i=r+1-k-j}^{r+1-k} (d-1)^i / sum_{i=0}^{r+1-k} (d-1)^i``.
    """
    if r < 1 or d < 3:
        raise BadParameter("tree ball needs r >= 1 and d >= 3")
    levels = _tree_ball_levels(r, d)
    verts = [v for lvl in levels for v in lvl]
    out = []
    for k in range(2, r + 2):
        top = r + 1 - k
        denom = _geom(d - 1, 0, top)
        h = [Fraction(_geom(d - 1, top - j, top), denom) for j in range(top + 1)]
        sigma = float(tree_ball_eigenvalue(r, d, k))
        for x in levels[k - 2]:
            children = [c for c in levels[k - 1] if c.rsplit(".", 1)[0] == x]

            def subtree(y):
                depth = y.count(".")
                return {v: v.count(".") - depth for v in verts if v == y or v.startswith(y + ".")}

            first = subtree(children[0])
            for y in children[1:]:
                f = dict.fromkeys(verts, 0.0)
                for v, j in first.items():
                    f[v] = float(h[j])
                for v, j in subtree(y).items():
                    f[v] = -float(h[j])
                out.append((sigma, f))
    return out


# -- dispatch used by the CLI and the self-test ------------------------------------------


FAMILIES = ("path", "star", "regular-star", "comb", "tree-ball")


def make_family(name: str, params: dict) -> tuple[Graph, ClosedFormSpectrum]:
    """Graph and closed-form spectrum of a named family."""
    try:
        if name == "path":
            return make_path(params["l"]), path_spectrum(params["l"])
        if name == "star":
            spec = StarSpec(tuple(params["arms"]))
            return make_star(spec), star_spectrum(spec)
        if name == "regular-star":
            return make_regular_star(params["r"], params["l"]), regular_star_spectrum(params["r"], params["l"])
        if name == "comb":
            return make_regular_comb(params["r"], params["l"]), regular_comb_spectrum(params["r"], params["l"])
        if name == "tree-ball":
            return make_tree_ball(params["r"], params["d"]), tree_ball_spectrum(params["r"], params["d"])
    except KeyError as exc:
        raise BadParameter(f"family {name!r} needs parameter {exc.args[0]!r}") from None
    raise BadParameter(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def oracle_grid():
    """Parameter grid of the closed-form self-test, as ``(family, params)`` pairs."""
    for r in range(2, 6):
        for arms in itertools.combinations_with_replacement(range(1, 7), r):
            yield "star", {"arms": list(arms)}
    for r in range(2, 6):
        for l in range(1, 6):
            yield "regular-star", {"r": r, "l": l}
    for r in range(1, 7):
        for l in range(1, 6):
            yield "comb", {"r": r, "l": l}
    for d in (3, 4):
        for r in range(1, 4):
            yield "tree-ball", {"r": r, "d": d}
