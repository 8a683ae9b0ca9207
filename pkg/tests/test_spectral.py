import math

import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given
from hypothesis import strategies as st

from steklov.errors import BadParameter, DisconnectedGraph, NotBoundaryVertex, SingularInterior
from steklov.families import make_path, make_regular_star, make_star, make_tree_ball, rooted_path
from steklov.graph import build_graph, graph_from_edges
from steklov.spectral import (
    dirichlet_energy,
    dirichlet_steklov_spectrum,
    dtn_operator,
    exterior_differential,
    harmonic_extension,
    lambda1,
    laplacian_apply,
    laplacian_matrix,
    laplacian_spectrum,
    multiplicity_groups,
    normal_derivative,
    normal_derivatives,
    rayleigh_quotient,
    steklov_residuals,
    steklov_spectrum,
    stiffness_matrix,
    vertex_inner,
    zero_set_Z,
    zero_set_Z1,
)

from conftest import weighted_graphs


def pencil_eigenvalues(g, zero_set=()):
    """Finite eigenvalues of ``K u = σ M_B u`` with ``u = 0`` on the zero set (QZ, no Schur complement)."""
    keep = [i for i, v in enumerate(g.vertices) if v not in set(zero_set)]
    K = stiffness_matrix(g)[np.ix_(keep, keep)]
    M = np.diag([g.measures[i] if g.vertices[i] in g.boundary else 0.0 for i in keep])
    w = sla.eigvals(K, M)
    w = w[np.isfinite(w)]
    return np.sort(w.real)


@pytest.mark.parametrize("l", [1, 2, 3, 7])
def test_path_spectrum(l):
    spec = steklov_spectrum(make_path(l))
    np.testing.assert_allclose(spec.eigenvalues, [0.0, 2.0 / l], atol=1e-12)
    assert spec.sigma(3) == math.inf


def test_trivial_graph_has_zero_spectrum():
    g = graph_from_edges([], vertices=["x"])
    spec = steklov_spectrum(g)
    assert list(spec.eigenvalues) == [0.0]
    assert spec.sigma(2) == math.inf


def test_empty_boundary_gives_infinite_lambda1():
    g = build_graph(["a", "b"], [("a", "b")], boundary=[])
    assert lambda1(g, []) == math.inf
    assert len(steklov_spectrum(g)) == 0
    with pytest.raises(SingularInterior):
        harmonic_extension(g, [])


def test_disconnected_graph_is_rejected():
    g = build_graph(["a", "b"], [], boundary=["a", "b"])
    with pytest.raises(DisconnectedGraph):
        steklov_spectrum(g)


def test_zero_set_must_be_interior():
    with pytest.raises(BadParameter):
        lambda1(make_path(2), ["v0"])
    with pytest.raises(BadParameter):
        lambda1(make_path(2), ["nope"])


def test_normal_derivative_only_on_boundary():
    g = make_path(2)
    f = [0.0, 1.0, 3.0]
    assert normal_derivative(g, f, "v2") == 2.0
    assert normal_derivative(g, f, "v0") == -1.0
    with pytest.raises(NotBoundaryVertex):
        normal_derivative(g, f, "v1")


@pytest.mark.parametrize("l", [1, 2, 5])
def test_rooted_path_lambda1(l):
    g = rooted_path(l)
    assert lambda1(g, {"p0"}) == pytest.approx(1.0 / l, abs=1e-12)


def test_lambda1_with_replaced_boundary():
    g = make_path(4)
    assert lambda1(g, {"v2"}, boundary={"v4"}) == pytest.approx(0.5, abs=1e-12)


def test_dirichlet_spectrum_of_star_center():
    # St(2;1) with zero center: each leaf decouples with value 1
    spec = dirichlet_steklov_spectrum(make_regular_star(2, 1), {"o"})
    np.testing.assert_allclose(spec.eigenvalues, [1.0, 1.0], atol=1e-12)
    assert spec.zero_set == ("o",)
    assert spec.lam(1) == pytest.approx(1.0)


def test_multiplicity_groups():
    vals = [0.0, 0.5, 0.5 + 1e-12, 1.0, 1.0, 1.0]
    assert multiplicity_groups(vals, 1e-7) == [(0, 1), (1, 3), (3, 6)]
    assert multiplicity_groups([], 1e-7) == []


def test_laplacian_spectrum_of_unit_path():
    mu = laplacian_spectrum(make_path(2))
    np.testing.assert_allclose(mu, [0.0, 1.0, 3.0], atol=1e-12)


def test_zero_sets_of_symmetric_examples():
    assert zero_set_Z(make_regular_star(3, 2)) == {"o"}
    assert zero_set_Z(make_star([1, 1, 4])) == {"a3.1"}
    assert zero_set_Z1(make_tree_ball(2, 3)) == {"o"}
    assert zero_set_Z(make_path(3)) == frozenset()
    # with a single boundary vertex every interior vertex qualifies
    assert zero_set_Z(rooted_path(3)) == {"p0", "p1", "p2"}


def test_eigenvectors_are_mass_orthonormal():
    g = make_star([1, 2, 3, 3])
    spec = steklov_spectrum(g)
    mB = np.array([g.measure(x) for x in g.boundary_list])
    gram = spec.vectors.T @ (mB[:, None] * spec.vectors)
    np.testing.assert_allclose(gram, np.eye(len(mB)), atol=1e-12)


@given(weighted_graphs())
def test_matches_generalized_pencil(g):
    got = steklov_spectrum(g).eigenvalues
    want = pencil_eigenvalues(g)
    assert len(want) == len(got)
    np.testing.assert_allclose(got, want, atol=1e-8 * max(1.0, float(np.max(np.abs(want)))))


@given(weighted_graphs(min_n=3))
def test_dirichlet_spectrum_matches_pencil(g):
    if not g.interior:
        return
    z = sorted(g.interior)[:1]
    got = dirichlet_steklov_spectrum(g, z).eigenvalues
    np.testing.assert_allclose(got, pencil_eigenvalues(g, z), atol=1e-8 * max(1.0, float(np.max(got))))


@given(weighted_graphs())
def test_first_eigenvalue_zero_with_constant_eigenvector(g):
    spec = steklov_spectrum(g)
    assert abs(spec.sigma(1)) < 1e-10
    f = spec.eigenfunction(1)
    assert np.ptp(f) < 1e-10
    assert np.all(spec.eigenvalues > -1e-10)


@given(weighted_graphs())
def test_eigenfunctions_solve_steklov_problem(g):
    spec = steklov_spectrum(g)
    for i in range(1, len(spec) + 1):
        res = steklov_residuals(g, spec.eigenfunction(i), spec.sigma(i))
        assert res["interior"] < 1e-10 * max(1.0, spec.sigma(i))
        assert res["boundary"] < 1e-10 * max(1.0, spec.sigma(i))
        assert rayleigh_quotient(g, spec.vectors[:, i - 1]) == pytest.approx(spec.sigma(i), abs=1e-9)


@given(weighted_graphs(), st.integers(0, 2**31))
def test_harmonic_extension_is_harmonic(g, seed):
    u = np.random.default_rng(seed).normal(size=len(g.boundary))
    f = harmonic_extension(g, u)
    lap = laplacian_apply(g, f)
    for v in g.interior:
        assert abs(lap[g.index[v]]) < 1e-10 * max(1.0, np.max(np.abs(u)))
    np.testing.assert_allclose(f[[g.index[x] for x in g.boundary_list]], u)


@given(weighted_graphs(), st.integers(0, 2**31))
def test_dtn_is_symmetric_and_annihilates_constants(g, seed):
    dtn = dtn_operator(g)
    S = dtn.schur
    np.testing.assert_allclose(S, S.T, atol=1e-10 * max(1.0, np.max(np.abs(S))))
    np.testing.assert_allclose(S @ np.ones(len(S)), 0.0, atol=1e-10 * max(1.0, np.max(np.abs(S))))
    u = np.random.default_rng(seed).normal(size=len(S))
    f = harmonic_extension(g, u)
    np.testing.assert_allclose(dtn.apply(u), normal_derivatives(g, f), atol=1e-9 * max(1.0, np.max(np.abs(S))))


@given(weighted_graphs(), st.integers(0, 2**31))
def test_greens_identity(g, seed):
    rng = np.random.default_rng(seed)
    f, h = rng.normal(size=g.n), rng.normal(size=g.n)
    df, dh = exterior_differential(g, f), exterior_differential(g, h)
    lhs = float(np.sum(df * dh * np.asarray(g.weights)))
    lap = laplacian_apply(g, f)
    interior = -vertex_inner(g, lap, h, g.interior)
    boundary = vertex_inner(g, -lap, h, g.boundary)
    assert lhs == pytest.approx(interior + boundary, rel=1e-10, abs=1e-10)
    np.testing.assert_allclose(laplacian_matrix(g) @ f, lap, atol=1e-10 * max(1.0, np.max(np.abs(lap))))
    assert dirichlet_energy(g, f) == pytest.approx(float(f @ stiffness_matrix(g) @ f), rel=1e-10, abs=1e-12)
