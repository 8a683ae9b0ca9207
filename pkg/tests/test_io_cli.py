import json
import math

import numpy as np
import pytest
from hypothesis import given

from steklov import cli
from steklov.errors import GraphFormatError
from steklov.families import make_path, make_regular_star, rooted_path
from steklov.io import dumps, graph_from_json, graph_to_json, load_graph, save_graph

from conftest import weighted_graphs


@given(weighted_graphs())
def test_graph_json_round_trip(g):
    h = graph_from_json(json.loads(dumps(graph_to_json(g))))
    assert h.vertices == g.vertices and h.edges == g.edges
    assert h.measures == g.measures and h.weights == g.weights
    assert h.boundary == g.boundary


def test_defaults_fill_in():
    g = graph_from_json({"vertices": [{"id": "a", "boundary": True}, {"id": "b"}], "edges": [{"u": "a", "v": "b"}]})
    assert g.measure("b") == 1.0 and g.weight("a", "b") == 1.0
    assert g.boundary == {"a"}


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {"vertices": [], "extra": 1},
        {"vertices": [{"id": "a", "colour": "red"}]},
        {"vertices": [{"id": "a"}, {"id": "b"}], "edges": [{"u": "a", "v": "b", "w": 2}]},
        {"vertices": [{"id": 3}]},
        {"vertices": [{"id": "a", "measure": "heavy"}]},
        {"vertices": [{"id": "a", "boundary": "yes"}]},
        {"edges": []},
    ],
)
def test_malformed_graph_json(obj):
    with pytest.raises(GraphFormatError):
        graph_from_json(obj)


def test_dumps_uses_17_digits_and_signed_infinity():
    text = dumps({"x": 0.1, "y": math.inf, "z": np.float64(1 / 3), "n": np.int64(4), "ok": np.bool_(True)})
    assert text == '{"x": 0.10000000000000001, "y": "+inf", "z": 0.33333333333333331, "n": 4, "ok": true}'
    assert float(json.loads(text)["x"]) == 0.1


def test_dumps_indent():
    assert dumps({"a": [1, 2]}, indent=2) == '{\n  "a": [\n    1,\n    2\n  ]\n}'
    assert dumps({"a": []}, indent=2) == '{\n  "a": []\n}'


def _run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_family_oracle_to_stdout(capsys):
    code, out, _ = _run(capsys, "family", "regular-star", "--r", 3, "--l", 2, "--oracle", "-")
    assert code == 0
    assert json.loads(out)["sigma"] == [0, 0.5, 0.5]


@pytest.mark.parametrize(
    "argv",
    [
        ["family", "star", "--arms", "1,2,3"],
        ["family", "star", "--params", "arms=1:2:3"],
        ["family", "star", "--params", '{"arms": [1, 2, 3]}'],
        ["family", "comb", "--params", "r=2,l=2"],
        ["family", "tree-ball", "--r", "2", "--d", "3"],
        ["family", "path", "--l", "5"],
    ],
)
def test_emit_then_spectrum_matches_oracle(tmp_path, capsys, argv):
    gpath, opath = tmp_path / "g.json", tmp_path / "o.json"
    code, _, _ = _run(capsys, *argv, "--emit", gpath, "--oracle", opath)
    assert code == 0
    code, out, _ = _run(capsys, "spectrum", gpath)
    assert code == 0
    got = json.loads(out)["sigma"]
    want = json.loads(opath.read_text())["sigma"]
    np.testing.assert_allclose(got, want, atol=1e-8)


def test_spectrum_report_fields(tmp_path, capsys):
    gpath, rpath = tmp_path / "s.json", tmp_path / "r.json"
    save_graph(make_regular_star(3, 2), gpath)
    code, out, _ = _run(capsys, "spectrum", gpath, "--report", rpath)
    rep = json.loads(out)
    assert code == 0 and json.loads(rpath.read_text()) == rep
    assert rep["Z"] == ["o"] and rep["Z1"] == ["o"]
    assert rep["multiplicity_groups"][1] == {"value": 0.5, "indices": [2, 3], "multiplicity": 2}
    assert rep["note"] == "sigma_i = +infinity for i >= 4"


def test_trivial_graph_spectrum(tmp_path, capsys):
    gpath = tmp_path / "t.json"
    gpath.write_text('{"vertices": [{"id": "a", "boundary": true}]}')
    code, out, _ = _run(capsys, "spectrum", gpath)
    rep = json.loads(out)
    assert code == 0 and rep["sigma"] == [0] and rep["note"] == "sigma_i = +infinity for i >= 2"
    assert "Z" not in rep


def test_spectrum_with_zero_set_and_lambda1(tmp_path, capsys):
    gpath = tmp_path / "p.json"
    save_graph(rooted_path(4), gpath)
    code, out, _ = _run(capsys, "spectrum", gpath, "--z", "p0")
    assert code == 0 and json.loads(out)["sigma"] == pytest.approx([0.25])
    code, out, _ = _run(capsys, "lambda1", gpath, "--z", "p0")
    assert json.loads(out)["lambda1"] == pytest.approx(0.25)


def test_verify_wedge_on_path(tmp_path, capsys):
    gpath = tmp_path / "path4.json"
    save_graph(make_path(4), gpath)
    code, out, _ = _run(capsys, "verify", "wedge", "--graph", gpath, "--z", "v2", "--seed", 7)
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "pass" and rep["seed"] == 7


def test_verify_mono_exit_codes(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save_graph(make_regular_star(3, 2), a)
    save_graph(make_regular_star(3, 1), b)
    assert _run(capsys, "verify", "mono", "--ambient", a, "--base", b)[0] == 0
    # swapped roles: not a comb extension
    code, out, _ = _run(capsys, "verify", "mono", "--ambient", b, "--base", a)
    assert code == 2 and json.loads(out)["verdict"] == "hypothesis-not-met"


def test_verify_rigidity_sym(tmp_path, capsys):
    gamma, tooth = tmp_path / "gamma.json", tmp_path / "tooth.json"
    save_graph(rooted_path(2, root="o", prefix="a"), gamma)
    save_graph(rooted_path(3), tooth)
    code, out, _ = _run(
        capsys, "verify", "rigidity-sym", "--gamma", gamma, "--z", "o", "--r", 2, "--tooth", tooth, "--tooth-root", "p0"
    )
    rep = json.loads(out)
    assert code == 0 and rep["details"]["lhs"] is False


def test_verify_estimate_with_certificate(tmp_path, capsys):
    g, cert = tmp_path / "g.json", tmp_path / "c.json"
    save_graph(make_regular_star(2, 1).relabel({"o": "c", "a1.1": "x", "a2.1": "y"}), g)
    cert.write_text(json.dumps({"o": "c", "a1.1": "x", "a2.1": "y"}))
    code, out, _ = _run(capsys, "verify", "estimate", "--kind", "regular-star", "--r", 2, "--l", 1,
                        "--graph", g, "--certificate", cert)
    assert code == 0, out


def test_fuzz_command_and_planted_bug(tmp_path, capsys):
    code, out, _ = _run(capsys, "fuzz", "--trials", 5, "--max-vertices", 12, "--report", tmp_path / "f.json")
    assert code == 0 and json.loads(out)["summary"]["violations"] == 0
    code, out, _ = _run(capsys, "fuzz", "--trials", 5, "--max-vertices", 12, "--plant-bug")
    assert code == 1 and json.loads(out)["planted_bug"] is True


def test_selftest(capsys):
    code, out, _ = _run(capsys, "selftest")
    assert code == 0 and "511/511" in out


def test_tolerance_flag(tmp_path, capsys):
    gpath = tmp_path / "p.json"
    save_graph(make_path(2), gpath)
    code, out, _ = _run(capsys, "--tol", "1e-6", "spectrum", gpath)
    assert json.loads(out)["tolerances"]["compare"] == 1e-6
    code, _, err = _run(capsys, "--tol", "-1", "spectrum", gpath)
    assert code == 2 and err.count("\n") == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "/nonexistent/g.json"],
        ["bogus"],
        ["family", "comb", "--r", "2"],
        ["family", "star", "--params", "arms"],
        ["verify", "mono", "--ambient", "x.json"],
        ["lambda1"],
    ],
)
def test_errors_are_single_line(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2
    assert err.startswith("error: ") and err.count("\n") == 1


def test_bad_json_file(tmp_path, capsys):
    gpath = tmp_path / "bad.json"
    gpath.write_text("{not json")
    code, _, err = _run(capsys, "spectrum", gpath)
    assert code == 2 and "GraphFormatError" in err


def test_load_graph_from_file(tmp_path):
    p = tmp_path / "g.json"
    save_graph(make_path(3), p)
    assert load_graph(p).boundary == {"v0", "v3"}
