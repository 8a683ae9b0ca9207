"""Command-line interface.

Exit codes: 0 when everything passes, 1 when a verifier or the fuzz harness
finds a violation, 2 on malformed input or unmet hypotheses. Errors are
printed to stderr as one line ``error: <Kind>: <reason>``.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import families, theorems
from .errors import SteklovError, ToleranceAmbiguity
from .fuzz import FuzzConfig, fuzz_report_text
from .io import dumps, graph_to_json, load_graph, write_json
from .spectral import (
    DEFAULT_TOL,
    Tolerances,
    dirichlet_steklov_spectrum,
    lambda1,
    steklov_spectrum,
    zero_set_Z,
    zero_set_Z1,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2

VERIFIERS = ("mono", "mono-homotopy", "rigidity", "rigidity-geom", "rigidity-sigma2", "rigidity-sym", "wedge", "estimate")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ids(text: str | None) -> list[str]:
    if not text:
        return []
    return [s.strip() for s in text.split(",") if s.strip()]


def _ints(text: str) -> list[int]:
    try:
        return [int(s) for s in _ids(text)]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _parse_params(text: str | None) -> dict:
    """``--params`` as JSON (``{"r": 3}``) or ``k=v`` pairs (``r=3,l=2`` / ``arms=1:2:3``)."""
    if not text:
        return {}
    text = text.strip()
    if text.startswith("{"):
        try:
            out = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--params is not valid JSON: {exc}") from None
        if not isinstance(out, dict):
            raise UsageError("--params JSON must be an object")
        return out
    out = {}
    for item in _ids(text):
        if "=" not in item:
            raise UsageError(f"--params entry {item!r} is not key=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = [int(x) for x in v.split(":")] if ":" in v or k.strip() == "arms" else int(v)
        except ValueError:
            raise UsageError(f"--params value {v!r} is not an integer") from None
    return out


def _family_params(args) -> dict:
    params = _parse_params(args.params)
    for key in ("r", "l", "d"):
        if getattr(args, key, None) is not None:
            params[key] = getattr(args, key)
    if getattr(args, "arms", None):
        params["arms"] = _ints(args.arms)
    return params


def _tolerances(args) -> Tolerances:
    tol = DEFAULT_TOL
    if args.tol is not None:
        tol = Tolerances(compare=args.tol, eig_gap=tol.eig_gap, zero=args.tol)
    if args.eig_gap is not None:
        tol = Tolerances(compare=tol.compare, eig_gap=args.eig_gap, zero=tol.zero)
    if args.zero_tol is not None:
        tol = Tolerances(compare=tol.compare, eig_gap=tol.eig_gap, zero=args.zero_tol)
    for name, value in tol.as_dict().items():
        if not value > 0:
            raise UsageError(f"tolerance {name} must be positive")
    return tol


def _emit(obj, target) -> None:
    if target == "-":
        sys.stdout.write(dumps(obj) + "\n")
    else:
        write_json(obj, target)


# -- commands -------------------------------------------------------------------------


def spectrum_report(g, zero_set=(), tol: Tolerances = DEFAULT_TOL) -> dict:
    """Spectrum, 1-based inclusive multiplicity groups and (when ``|B| >= 2``) Z and Z1."""
    spec = dirichlet_steklov_spectrum(g, zero_set) if zero_set else steklov_spectrum(g)
    values = [float(x) for x in spec.eigenvalues]
    groups = [
        {"value": float(np.mean(spec.eigenvalues[a:b])), "indices": [a + 1, b], "multiplicity": b - a}
        for a, b in spec.groups(tol.eig_gap)
    ]
    out = {"sigma": values, "multiplicity_groups": groups}
    if zero_set:
        out["zero_set"] = sorted(zero_set)
    elif len(g.boundary) >= 2:
        try:
            out["Z"] = sorted(zero_set_Z(g, tol))
        except ToleranceAmbiguity as exc:
            out["Z"] = None
            out["Z_error"] = str(exc)
        out["Z1"] = sorted(zero_set_Z1(g, tol, spec))
    out["tolerances"] = tol.as_dict()
    out["note"] = f"sigma_i = +infinity for i >= {len(g.boundary) + 1}"
    return out


def cmd_spectrum(args, tol) -> int:
    g = load_graph(args.graph)
    report = spectrum_report(g, _ids(args.z), tol)
    sys.stdout.write(dumps(report) + "\n")
    if args.report:
        write_json(report, args.report)
    return EXIT_OK


def cmd_lambda1(args, tol) -> int:
    g = load_graph(args.graph)
    zs = _ids(args.z)
    if not zs:
        raise UsageError("lambda1 needs --z")
    sys.stdout.write(dumps({"lambda1": lambda1(g, zs), "zero_set": sorted(zs)}) + "\n")
    return EXIT_OK


def cmd_family(args, tol) -> int:
    g, oracle = families.make_family(args.name, _family_params(args))
    if args.emit:
        _emit(graph_to_json(g), args.emit)
    if args.oracle:
        _emit({"sigma": [float(x) for x in oracle.sigma], **{k: v for k, v in oracle.oracle_json().items() if k != "sigma"}},
              args.oracle)
    if not args.emit and not args.oracle:
        _emit(graph_to_json(g), "-")
    return EXIT_OK


def _need(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) in (None, "")]
    if missing:
        raise UsageError(f"verify {args.which} needs " + ", ".join("--" + n for n in missing))


def run_verifier(args, tol) -> theorems.VerdictReport:
    w = args.which
    if w in ("mono", "mono-homotopy", "rigidity", "rigidity-geom", "rigidity-sigma2"):
        _need(args, "ambient", "base")
        ambient, base = load_graph(args.ambient), load_graph(args.base)
        fn = {
            "mono": theorems.verify_monotonicity,
            "mono-homotopy": theorems.verify_monotonicity_homotopy,
            "rigidity": theorems.verify_rigidity_full,
            "rigidity-geom": theorems.verify_rigidity_geometric,
            "rigidity-sigma2": theorems.verify_rigidity_sigma2,
        }[w]
        return fn(ambient, base, tol)
    if w == "rigidity-sym":
        _need(args, "gamma", "z", "r", "tooth", "tooth-root")
        return theorems.verify_symmetric_rigidity(
            load_graph(args.gamma), args.z, args.r, load_graph(args.tooth), args.tooth_root, tol
        )
    if w == "wedge":
        _need(args, "graph", "z")
        return theorems.verify_wedge_identity(load_graph(args.graph), args.z, tol)
    _need(args, "kind", "graph")
    cert = None
    if args.certificate:
        with open(args.certificate) as fh:
            cert = json.load(fh)
    return theorems.verify_estimates(args.kind, _family_params(args), load_graph(args.graph), cert, tol)


def cmd_verify(args, tol) -> int:
    report = run_verifier(args, tol)
    report.seed = args.seed
    text = dumps(report.to_json())
    sys.stdout.write(text + "\n")
    if args.report:
        write_json(report.to_json(), args.report)
    if report.verdict == theorems.PASS:
        return EXIT_OK
    return EXIT_VIOLATION if report.verdict == theorems.FAIL else EXIT_INPUT


def cmd_fuzz(args, tol) -> int:
    mix = {"tree": 1.0, "comb": 1.0}
    if args.mix:
        mix = {}
        for item in _ids(args.mix):
            k, _, v = item.partition("=")
            try:
                mix[k] = float(v) if v else 1.0
            except ValueError:
                raise UsageError(f"bad --mix entry {item!r}") from None
    try:
        cfg = FuzzConfig(
            trials=args.trials, max_vertices=args.max_vertices, seed=args.seed, weighted=args.weighted,
            mix=mix, tol=tol, planted_bug=args.plant_bug, workers=args.workers,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = fuzz_report_text(cfg)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
        summary = json.loads(text)["summary"]
        sys.stdout.write(dumps({"verdict": json.loads(text)["verdict"], "summary": summary}) + "\n")
    else:
        sys.stdout.write(text)
    return EXIT_VIOLATION if json.loads(text)["verdict"] != theorems.PASS else EXIT_OK


def selftest(tol: Tolerances = DEFAULT_TOL, out=None) -> int:
    """Compare every family in the oracle grid against the eigensolver; returns failure count."""
    out = out or sys.stdout
    failures = 0
    worst = 0.0
    count = 0
    for name, params in families.oracle_grid():
        g, oracle = families.make_family(name, params)
        got = steklov_spectrum(g).eigenvalues
        want = oracle.sigma
        err = float(np.max(np.abs(got - want))) if len(got) == len(want) else float("inf")
        groups_ok = [b - a for a, b in steklov_spectrum(g).groups(tol.eig_gap)] == [m for _, m in oracle.groups]
        ok = err <= tol.compare and groups_ok
        failures += not ok
        worst = max(worst, err)
        count += 1
        if not ok:
            out.write(f"FAIL {name} {json.dumps(params)} max_err={err:.3e} groups_ok={groups_ok}\n")
    out.write(f"selftest: {count - failures}/{count} families match closed forms, max error {worst:.3e}\n")
    return failures


def cmd_selftest(args, tol) -> int:
    return EXIT_OK if selftest(tol) == 0 else EXIT_VIOLATION


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="steklov", description="Steklov spectra of graphs with boundary.")
    p.add_argument("--tol", type=float, default=None,
                   help=f"absolute comparison and zero-set tolerance (default {DEFAULT_TOL.compare:g})")
    p.add_argument("--eig-gap", type=float, default=None,
                   help=f"relative gap for grouping eigenvalues (default {DEFAULT_TOL.eig_gap:g})")
    p.add_argument("--zero-tol", type=float, default=None,
                   help=f"threshold for zero-set membership (default {DEFAULT_TOL.zero:g})")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("spectrum", help="Steklov spectrum, Z and Z1 of a graph JSON file")
    s.add_argument("graph")
    s.add_argument("--z", help="comma-separated vertices with vanishing Dirichlet data")
    s.add_argument("--report", help="also write the report to this path")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("lambda1", help="first eigenvalue with vanishing data on --z")
    s.add_argument("graph")
    s.add_argument("--z", required=True)
    s.set_defaults(func=cmd_lambda1)

    s = sub.add_parser("family", help="build a named family and its closed-form spectrum")
    s.add_argument("name", choices=families.FAMILIES)
    _family_flags(s)
    s.add_argument("--emit", help="write the graph JSON here ('-' for stdout)")
    s.add_argument("--oracle", help="write the closed-form spectrum here ('-' for stdout)")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("verify", help="run a theorem verifier and print verdict JSON")
    s.add_argument("which", choices=VERIFIERS)
    s.add_argument("--ambient")
    s.add_argument("--base")
    s.add_argument("--graph")
    s.add_argument("--gamma")
    s.add_argument("--tooth")
    s.add_argument("--tooth-root")
    s.add_argument("--z")
    s.add_argument("--kind", choices=theorems.ESTIMATE_KINDS)
    s.add_argument("--certificate", help="JSON object mapping vertices of the smaller graph into the larger")
    s.add_argument("--seed", type=int, default=None, help="recorded in the verdict")
    s.add_argument("--report")
    _family_flags(s)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("fuzz", help="randomized search for violations")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--max-vertices", type=int, default=40)
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--weighted", action="store_true", help="random measures and weights on tree trials")
    s.add_argument("--mix", help="trial kind weights, e.g. tree=1,comb=2")
    s.add_argument("--plant-bug", action="store_true", help="reverse the monotonicity comparison (self-test)")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--report", help="write the full report here and print only the summary")
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("selftest", help="check all closed-form families against the eigensolver")
    s.set_defaults(func=cmd_selftest)
    return p


def _family_flags(s):
    s.add_argument("--r", type=int)
    s.add_argument("--l", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--arms", help="comma-separated arm lengths")
    s.add_argument("--params", help="JSON object or k=v list")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        tol = _tolerances(args)
        return args.func(args, tol)
    except UsageError as exc:
        print(f"error: UsageError: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SteklovError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        msg = str(exc).replace("\n", " ")
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
