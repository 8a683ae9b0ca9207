from fractions import Fraction
import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from steklov.errors import BadParameter
from steklov import families as fam
from steklov.spectral import steklov_residuals, steklov_spectrum, zero_set_Z, zero_set_Z1

GRID = list(fam.oracle_grid())


def _grid_id(item):
    name, params = item
    return name + ":" + ",".join(f"{k}={v}" for k, v in params.items())


@pytest.mark.parametrize(
    "name, params, expected",
    [
        ("regular-star", {"r": 3, "l": 2}, [0, 0.5, 0.5]),
        ("comb", {"r": 2, "l": 1}, [0, 0.5, 0.75]),
        ("tree-ball", {"r": 2, "d": 3}, [0, 1 / 3, 1 / 3, 1, 1, 1]),
        ("star", {"arms": [1, 1, 4]}, [0, 1 / 3, 1]),
        ("path", {"l": 4}, [0, 0.5]),
    ],
)
def test_spot_values(name, params, expected):
    g, oracle = fam.make_family(name, params)
    np.testing.assert_allclose(oracle.sigma, expected, atol=1e-14)
    np.testing.assert_allclose(steklov_spectrum(g).eigenvalues, expected, atol=1e-10)


@pytest.mark.parametrize("item", GRID, ids=_grid_id)
def test_oracle_grid_matches_solver(item):
    g, oracle = fam.make_family(*item)
    spec = steklov_spectrum(g)
    np.testing.assert_allclose(spec.eigenvalues, oracle.sigma, atol=1e-8)
    assert [b - a for a, b in spec.groups(1e-7)] == [m for _, m in oracle.groups]


def test_star_polynomial_both_forms():
    assert fam.star_char_polynomial([1, 2, 3]) == [11, -12, 3]


def test_elementary_symmetric():
    assert fam.elementary_symmetric([1, 2, 3]) == [1, 6, 11, 6]
    assert fam.elementary_symmetric([]) == [1]


@given(st.lists(st.integers(1, 9), min_size=2, max_size=6))
def test_star_roots_interlace_arm_lengths(arms):
    roots = fam.star_polynomial_roots(arms)
    ls = sorted(arms)
    assert len(roots) == len(ls) - 1
    for k, t in enumerate(roots):
        assert ls[k] - 1e-9 <= t <= ls[k + 1] + 1e-9


def test_repeated_arm_lengths_are_exact_roots():
    roots = fam.star_polynomial_roots([2, 2, 2, 5])
    assert roots[:2] == [2.0, 2.0]


def test_star_spec_validation():
    with pytest.raises(BadParameter):
        fam.StarSpec((3,))
    with pytest.raises(BadParameter):
        fam.StarSpec((0, 1))
    assert fam.StarSpec((3, 1, 2)).arm_lengths == (1, 2, 3)


@pytest.mark.parametrize("d", [3, 4, 5])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_tree_ball_eigenvalues_two_forms(r, d):
    for k in range(2, r + 2):
        value = fam.tree_ball_eigenvalue(r, d, k)
        assert isinstance(value, Fraction)
        assert value == Fraction(d - 2, (d - 1) ** (r + 2 - k) - 1)
    boundary = d * (d - 1) ** (r - 1)
    assert sum(fam.tree_ball_multiplicity(r, d, k) for k in range(1, r + 2)) == boundary


@pytest.mark.parametrize("d", [3, 4])
def test_tree_ball_band_follows_multiplicities(d):
    r = 4
    expected = [k for k in range(1, r + 2) for _ in range(fam.tree_ball_multiplicity(r, d, k))]
    assert [fam.tree_ball_band(d, j) for j in range(2, len(expected) + 1)] == expected[1:]


def test_unknown_family():
    with pytest.raises(BadParameter):
        fam.make_family("cycle", {})
    with pytest.raises(BadParameter):
        fam.make_family("comb", {"r": 2})


def test_oracle_json_shape():
    _, oracle = fam.make_family("regular-star", {"r": 3, "l": 2})
    assert oracle.oracle_json() == {"family": "regular-star", "params": {"r": 3, "l": 2}, "sigma": [0.0, 0.5, 0.5]}


def _eigenfunction_cases():
    for r, l in itertools.product(range(2, 6), range(1, 6)):
        yield "regular-star", (r, l)
    for r, l in itertools.product(range(1, 7), range(1, 6)):
        yield "comb", (r, l)
    for d, r in itertools.product((3, 4), (1, 2, 3)):
        yield "tree-ball", (r, d)


_EIGEN = {
    "regular-star": (fam.make_regular_star, fam.regular_star_eigenfunctions),
    "comb": (fam.make_regular_comb, fam.comb_eigenfunctions),
    "tree-ball": (fam.make_tree_ball, fam.tree_ball_eigenfunctions),
}


@pytest.mark.parametrize("name, args", list(_eigenfunction_cases()))
def test_claimed_eigenfunctions_certify(name, args):
    make, funcs = _EIGEN[name]
    g = make(*args)
    pairs = funcs(*args)
    assert pairs
    for sigma, f in pairs:
        res = steklov_residuals(g, f, sigma)
        assert res["interior"] <= 1e-10 and res["boundary"] <= 1e-10


def test_star_Z_zero_case_is_center():
    assert fam.star_Z([2, 2, 2]) == (frozenset({"o"}), 0)


@pytest.mark.parametrize("arms", [a for name, p in GRID if name == "star" for a in [p["arms"]]][::7])
def test_star_Z_agrees_with_numeric(arms):
    z, _ = fam.star_Z(arms)
    assert zero_set_Z(fam.make_star(arms)) == z


@pytest.mark.parametrize("r, l", [(2, 1), (3, 2), (5, 4)])
def test_Z1_of_regular_star_is_center(r, l):
    assert zero_set_Z1(fam.make_regular_star(r, l)) == {"o"}
