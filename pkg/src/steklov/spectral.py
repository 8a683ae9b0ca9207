"""Laplacian, harmonic extension, Dirichlet-to-Neumann maps and Steklov spectra.

Vertex functions are arrays in ``Graph.vertices`` order; boundary data are
arrays in ``Graph.boundary_list`` order. All solves are dense: the interior
stiffness block is Cholesky-factored and the DtN map is the Schur complement
of the stiffness matrix onto the boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.linalg as sla

from .errors import BadParameter, DisconnectedGraph, NotBoundaryVertex, SingularInterior, ToleranceAmbiguity
from .graph import Graph, components, is_connected


@dataclass(frozen=True)
class Tolerances:
    """Named numerical tolerances.

    compare: absolute slack when comparing two eigenvalues or testing an
        inequality between spectral quantities.
    eig_gap: relative gap under which two eigenvalues count as equal
        (multiplicities, eigenspace grouping).
    zero: absolute threshold for a vertex value to count as zero, after the
        functions involved are normalized to unit boundary norm.
    """

    compare: float = 1e-8
    eig_gap: float = 1e-7
    zero: float = 1e-8

    def as_dict(self):
        return {"compare": self.compare, "eig_gap": self.eig_gap, "zero": self.zero}


DEFAULT_TOL = Tolerances()


# -- operators ---------------------------------------------------------------


def stiffness_matrix(g: Graph) -> np.ndarray:
    """Measure-free weighted Laplacian ``L_w`` (positive semidefinite)."""
    L = np.zeros((g.n, g.n))
    idx = g.index
    for (u, v), w in zip(g.edges, g.weights):
        i, j = idx[u], idx[v]
        L[i, j] -= w
        L[j, i] -= w
        L[i, i] += w
        L[j, j] += w
    return L


def laplacian_matrix(g: Graph) -> np.ndarray:
    """Matrix of ``Δ_G = -M^{-1} L_w``."""
    return -stiffness_matrix(g) / g.mass[:, None]


def laplacian_apply(g: Graph, f) -> np.ndarray:
    f = g.vector(f)
    out = np.zeros(g.n)
    idx = g.index
    for (u, v), w in zip(g.edges, g.weights):
        i, j = idx[u], idx[v]
        out[i] += (f[j] - f[i]) * w
        out[j] += (f[i] - f[j]) * w
    return out / g.mass


def exterior_differential(g: Graph, f) -> np.ndarray:
    """``df(u, v) = f(v) - f(u)`` for each stored edge ``(u, v)``."""
    f = g.vector(f)
    idx = g.index
    return np.array([f[idx[v]] - f[idx[u]] for u, v in g.edges])


def _mask(g: Graph, subset: Iterable[str] | None) -> np.ndarray:
    if subset is None:
        return np.ones(g.n, dtype=bool)
    keep = set(subset)
    return np.array([v in keep for v in g.vertices])


def vertex_inner(g: Graph, f, h, subset: Iterable[str] | None = None) -> float:
    """``<f, h>_A = sum_{x in A} f(x) h(x) m_x``; ``A`` defaults to all of V."""
    f, h = g.vector(f), g.vector(h)
    m = _mask(g, subset)
    return float(np.sum(f[m] * h[m] * g.mass[m]))


def edge_inner(g: Graph, alpha, beta) -> float:
    """``<α, β>_G = sum over edges α(x, y) β(x, y) w_xy``."""
    return float(np.sum(np.asarray(alpha) * np.asarray(beta) * np.asarray(g.weights)))


def measure_of(g: Graph, subset: Iterable[str]) -> float:
    return float(sum(g.measure(v) for v in subset))


def dirichlet_energy(g: Graph, f) -> float:
    df = exterior_differential(g, f)
    return edge_inner(g, df, df)


def normal_derivative(g: Graph, f, x: str) -> float:
    if x not in g.boundary:
        raise NotBoundaryVertex(f"{x!r} is not a boundary vertex")
    f = g.vector(f)
    i = g.index[x]
    s = sum((f[i] - f[g.index[y]]) * w for y, w in g.adjacency[x])
    return s / g.measure(x)


def normal_derivatives(g: Graph, f) -> np.ndarray:
    """``∂f/∂n`` on the whole boundary, in boundary order."""
    lap = laplacian_apply(g, f)
    return np.array([-lap[g.index[x]] for x in g.boundary_list])


# -- harmonic extension and DtN ------------------------------------------------


def _check_zero_set(g: Graph, zero_set) -> tuple[str, ...]:
    zs = tuple(v for v in g.vertices if v in set(zero_set))
    extra = set(zero_set) - set(zs)
    if extra:
        raise BadParameter(f"zero-set vertices not in graph: {sorted(extra)}")
    on_b = [v for v in zs if v in g.boundary]
    if on_b:
        raise BadParameter(f"zero set must lie in the interior, got boundary vertices {on_b}")
    return zs


@dataclass(frozen=True, eq=False)
class _InteriorSystem:
    boundary_idx: np.ndarray
    free_idx: np.ndarray
    zero_idx: np.ndarray
    L: np.ndarray
    chol: tuple | None

    def extension_matrix(self) -> np.ndarray:
        """``X`` with ``f[free] = -X u`` for harmonic ``f`` equal to ``u`` on B."""
        L_fb = self.L[np.ix_(self.free_idx, self.boundary_idx)]
        if self.chol is None:
            return np.zeros((0, len(self.boundary_idx)))
        return sla.cho_solve(self.chol, L_fb)


def _interior_system(g: Graph, zero_set=()) -> _InteriorSystem:
    if not is_connected(g):
        raise DisconnectedGraph(f"graph with {len(components(g))} components")
    zs = set(_check_zero_set(g, zero_set))
    free = [v for v in g.interior_list if v not in zs]
    fixed = g.boundary | zs
    for comp in components(g, free):
        if not any(y in fixed for x in comp for y, _ in g.adjacency[x]):
            raise SingularInterior(
                f"interior component {comp[:6]}{'...' if len(comp) > 6 else ''} has no edge to boundary or zero set",
                comp,
            )
    idx = g.index
    L = stiffness_matrix(g)
    b_idx = np.array([idx[v] for v in g.boundary_list], dtype=int)
    f_idx = np.array([idx[v] for v in free], dtype=int)
    z_idx = np.array([idx[v] for v in g.vertices if v in zs], dtype=int)
    chol = sla.cho_factor(L[np.ix_(f_idx, f_idx)]) if len(f_idx) else None
    return _InteriorSystem(b_idx, f_idx, z_idx, L, chol)


def _boundary_values(g: Graph, u) -> np.ndarray:
    if isinstance(u, Mapping):
        return np.array([u[x] for x in g.boundary_list], dtype=float)
    u = np.asarray(u, dtype=float)
    if u.shape[0] != len(g.boundary_list):
        raise ValueError(f"expected {len(g.boundary_list)} boundary values, got {u.shape[0]}")
    return u


def _extend(system: _InteriorSystem, n: int, U: np.ndarray) -> np.ndarray:
    """Harmonic extensions of the columns of ``U`` (boundary-order rows)."""
    F = np.zeros((n, U.shape[1]))
    F[system.boundary_idx] = U
    if len(system.free_idx):
        F[system.free_idx] = -system.extension_matrix() @ U
    return F


def harmonic_extension(g: Graph, u, zero_set=()) -> np.ndarray:
    """The function equal to ``u`` on B, 0 on ``zero_set``, harmonic elsewhere."""
    system = _interior_system(g, zero_set)
    U = _boundary_values(g, u)
    if U.ndim == 1:
        return _extend(system, g.n, U[:, None])[:, 0]
    return _extend(system, g.n, U)


@dataclass(frozen=True, eq=False)
class DtNMap:
    """Schur-complement realization of the DtN map.

    ``schur`` is the boundary quadratic form ``<Λu, v>_B = u^T S v`` and
    ``mass`` the boundary measures, so the Steklov problem is
    ``S φ = σ diag(mass) φ``.
    """

    graph: Graph
    boundary: tuple[str, ...]
    schur: np.ndarray
    mass: np.ndarray
    zero_set: tuple[str, ...] = ()

    def apply(self, u) -> np.ndarray:
        """``Λu`` as boundary values (the normal derivative of the extension)."""
        return (self.schur @ np.asarray(u, dtype=float)) / self.mass

    def symmetrized(self) -> np.ndarray:
        d = 1.0 / np.sqrt(self.mass)
        return d[:, None] * self.schur * d[None, :]


def _schur(system: _InteriorSystem) -> np.ndarray:
    b = system.boundary_idx
    S = system.L[np.ix_(b, b)]
    if len(system.free_idx):
        S = S - system.L[np.ix_(b, system.free_idx)] @ system.extension_matrix()
    return S


def dtn_operator(g: Graph, zero_set=()) -> DtNMap:
    system = _interior_system(g, zero_set)
    zs = tuple(g.vertices[i] for i in system.zero_idx)
    return DtNMap(g, g.boundary_list, _schur(system), g.mass[system.boundary_idx], zs)


# -- spectra ---------------------------------------------------------------------


def _sign_fix(V: np.ndarray) -> np.ndarray:
    V = V.copy()
    for k in range(V.shape[1]):
        col = V[:, k]
        scale = np.max(np.abs(col)) if col.size else 0.0
        nz = np.flatnonzero(np.abs(col) > 1e-10 * scale)
        if nz.size and col[nz[0]] < 0:
            V[:, k] = -col
    return V


def multiplicity_groups(values: Sequence[float], rel_gap: float = DEFAULT_TOL.eig_gap, abs_floor: float = 1e-12):
    """Half-open index ranges ``(i, j)`` of consecutive (sorted) equal values."""
    groups = []
    start = 0
    for k in range(1, len(values) + 1):
        if k == len(values) or values[k] - values[start] > rel_gap * max(abs(values[start]), abs(values[k])) + abs_floor:
            groups.append((start, k))
            start = k
    return groups


@dataclass(frozen=True, eq=False)
class SteklovSpectrum:
    """Steklov eigenvalues and eigenfunctions of a graph with boundary.

    Only the ``|B|`` finite eigenvalues are stored (ascending). ``vectors``
    holds boundary eigenvectors as columns, orthonormal for ``<·,·>_B``;
    ``functions`` holds their harmonic extensions to all vertices.
    """

    graph: Graph
    eigenvalues: np.ndarray
    vectors: np.ndarray
    functions: np.ndarray

    def __len__(self):
        return len(self.eigenvalues)

    def sigma(self, i: int) -> float:
        """1-based eigenvalue; ``+inf`` for ``i > |B|``."""
        if i < 1:
            raise IndexError("eigenvalue indices start at 1")
        return float(self.eigenvalues[i - 1]) if i <= len(self.eigenvalues) else math.inf

    def eigenfunction(self, i: int) -> np.ndarray:
        return self.functions[:, i - 1]

    def groups(self, rel_gap: float = DEFAULT_TOL.eig_gap):
        return multiplicity_groups(self.eigenvalues, rel_gap)

    def eigenspace(self, i: int, rel_gap: float = DEFAULT_TOL.eig_gap) -> np.ndarray:
        """Columns spanning the eigenspace of the ``i``-th eigenvalue."""
        for a, b in self.groups(rel_gap):
            if a < i <= b:
                return self.functions[:, a:b]
        raise IndexError(i)


@dataclass(frozen=True, eq=False)
class DirichletSteklovSpectrum(SteklovSpectrum):
    """Steklov spectrum with vanishing Dirichlet data on ``zero_set``."""

    zero_set: tuple[str, ...] = field(default=())

    def lam(self, i: int) -> float:
        return self.sigma(i)


def _solve_spectrum(g: Graph, zero_set):
    if not g.boundary:
        if not is_connected(g):
            raise DisconnectedGraph("graph is disconnected")
        return np.zeros(0), np.zeros((0, 0)), np.zeros((g.n, 0)), _check_zero_set(g, zero_set)
    system = _interior_system(g, zero_set)
    S = _schur(system)
    mass = g.mass[system.boundary_idx]
    d = 1.0 / np.sqrt(mass)
    A = d[:, None] * S * d[None, :]
    A = 0.5 * (A + A.T)
    w, U = np.linalg.eigh(A)
    V = _sign_fix(d[:, None] * U)
    F = _extend(system, g.n, V)
    zs = tuple(g.vertices[i] for i in system.zero_idx)
    return w, V, F, zs


def steklov_spectrum(g: Graph) -> SteklovSpectrum:
    w, V, F, _ = _solve_spectrum(g, ())
    return SteklovSpectrum(g, w, V, F)


def dirichlet_steklov_spectrum(g: Graph, zero_set) -> DirichletSteklovSpectrum:
    w, V, F, zs = _solve_spectrum(g, zero_set)
    return DirichletSteklovSpectrum(g, w, V, F, zs)


def lambda1(g: Graph, zero_set, boundary: Iterable[str] | None = None) -> float:
    """First Steklov eigenvalue with vanishing Dirichlet data on ``zero_set``.

    ``boundary`` optionally replaces the boundary of ``g``. Returns ``+inf``
    when the boundary is empty.
    """
    if boundary is not None:
        g = g.with_boundary(boundary)
    if not g.boundary:
        return math.inf
    return dirichlet_steklov_spectrum(g, zero_set).lam(1)


def rayleigh_quotient(g: Graph, u, zero_set=()) -> float:
    """``<dû, dû>_G / <u, u>_B`` for boundary data ``u``."""
    u = _boundary_values(g, u)
    f = harmonic_extension(g, u, zero_set)
    b = g.mass[[g.index[x] for x in g.boundary_list]]
    return dirichlet_energy(g, f) / float(np.sum(u * u * b))


def laplacian_spectrum(g: Graph, vectors: bool = False):
    """Eigenvalues of ``-Δ_G`` (generalized problem ``L_w φ = μ M φ``)."""
    L = stiffness_matrix(g)
    if vectors:
        return sla.eigh(L, np.diag(g.mass))
    return sla.eigh(L, np.diag(g.mass), eigvals_only=True)


def steklov_residuals(g: Graph, f, sigma: float) -> dict[str, float]:
    """Worst violation of the Steklov equations by ``f`` scaled to unit sup norm."""
    f = g.vector(f)
    scale = np.max(np.abs(f))
    if scale == 0:
        raise ValueError("zero function is not an eigenfunction")
    f = f / scale
    lap = laplacian_apply(g, f)
    interior = [g.index[v] for v in g.interior_list]
    bidx = [g.index[v] for v in g.boundary_list]
    return {
        "interior": float(np.max(np.abs(lap[interior]))) if interior else 0.0,
        "boundary": float(np.max(np.abs(-lap[bidx] - sigma * f[bidx]))) if bidx else 0.0,
    }


# -- zero sets ---------------------------------------------------------------------


def _mean_zero_basis(mass: np.ndarray, seed: int) -> np.ndarray:
    """Random ``<·,·>_B``-orthonormal basis of ``{u : <u, 1>_B = 0}``."""
    k = len(mass)
    rng = np.random.default_rng(seed)
    s = np.sqrt(mass)
    G = rng.standard_normal((k, k - 1))
    G -= np.outer(s, s @ G) / (s @ s)
    Q, _ = np.linalg.qr(G)
    return Q / s[:, None]


def zero_set_Z(g: Graph, tol: Tolerances = DEFAULT_TOL, seeds=(0, 1)) -> frozenset[str]:
    """Interior vertices where every harmonic function with ``<f, 1>_B = 0`` vanishes.

    Computed twice from independent random bases; disagreement raises
    :class:`ToleranceAmbiguity`.
    """
    if len(g.boundary) < 2:
        # the function space is {0}: every interior vertex qualifies
        return g.interior
    system = _interior_system(g)
    mass = g.mass[system.boundary_idx]
    found = []
    for seed in seeds:
        F = _extend(system, g.n, _mean_zero_basis(mass, seed))
        norms = np.linalg.norm(F, axis=1)
        found.append(frozenset(v for v in g.interior_list if norms[g.index[v]] < tol.zero))
    if any(z != found[0] for z in found[1:]):
        raise ToleranceAmbiguity(f"zero set depends on basis: {[sorted(z) for z in found]}")
    return found[0]


def sigma2_eigenspace(spec: SteklovSpectrum, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    if len(spec) < 2:
        raise BadParameter("sigma_2 needs at least two boundary vertices")
    return spec.eigenspace(2, tol.eig_gap)


def zero_set_Z1(g: Graph, tol: Tolerances = DEFAULT_TOL, spectrum: SteklovSpectrum | None = None) -> frozenset[str]:
    """Vertices where every eigenfunction of ``σ_2`` vanishes."""
    spec = spectrum if spectrum is not None else steklov_spectrum(g)
    F = sigma2_eigenspace(spec, tol)
    norms = np.linalg.norm(F, axis=1)
    return frozenset(v for v in g.vertices if norms[g.index[v]] < tol.zero)
