"""Randomized search for violations of the monotonicity, wedge and diameter results.

Each trial draws from its own generator ``default_rng([seed, trial])`` so the
aggregate report does not depend on worker count or execution order.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import SteklovError
from .graph import Graph, build_graph, comb_decompose
from .io import dumps, graph_to_json
from .randgraph import random_comb, random_connected_graph, random_subtree, random_tree
from .spectral import DEFAULT_TOL, Tolerances
from .theorems import (
    FAIL,
    PASS,
    VerdictReport,
    verify_isodiametric,
    verify_monotonicity,
    verify_rigidity_geometric,
    verify_wedge_identity,
)

KINDS = ("tree", "comb")


@dataclass(frozen=True)
class FuzzConfig:
    trials: int = 200
    max_vertices: int = 40
    seed: int = 7
    weighted: bool = False
    mix: dict = field(default_factory=lambda: {"tree": 1.0, "comb": 1.0})
    tol: Tolerances = DEFAULT_TOL
    planted_bug: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.trials < 0:
            raise ValueError("trials must be >= 0")
        if self.max_vertices < 3:
            raise ValueError("max_vertices must be >= 3")
        unknown = set(self.mix) - set(KINDS)
        if unknown:
            raise ValueError(f"unknown trial kinds in mix: {sorted(unknown)}")
        if sum(self.mix.values()) <= 0 or min(self.mix.values()) < 0:
            raise ValueError("mix weights must be nonnegative with positive sum")

    def as_dict(self) -> dict:
        out = asdict(self)
        out["tol"] = self.tol.as_dict()
        out.pop("workers")
        return out


def _pick_kind(rng, mix) -> str:
    kinds = [k for k in KINDS if mix.get(k, 0) > 0]
    w = np.array([mix[k] for k in kinds], dtype=float)
    return kinds[int(rng.choice(len(kinds), p=w / w.sum()))]


def _tree_pair(rng, cfg: FuzzConfig):
    n = int(rng.integers(3, cfg.max_vertices + 1))
    tree = random_tree(rng, n, weighted=cfg.weighted)
    sub = random_subtree(rng, tree)
    if cfg.weighted:
        # a subtree leaf that is interior in the tree may carry more mass than
        # its tooth boundary; top the tooth boundary up
        tree = _fix_tree_masses(tree, sub)
    return tree, sub


def _fix_tree_masses(tree: Graph, sub: Graph) -> Graph:
    decomp = comb_decompose(tree, sub)
    measures = dict(zip(tree.vertices, tree.measures))
    for x in sub.boundary_list:
        tb = decomp.tooth_boundaries[x]
        mass = sum(measures[v] for v in tb)
        if x not in tb and mass < sub.measure(x):
            for v in tb:
                measures[v] *= 1.25 * sub.measure(x) / mass
    verts = [(v, measures[v]) for v in tree.vertices]
    edges = [(u, v, w) for (u, v), w in zip(tree.edges, tree.weights)]
    return build_graph(verts, edges, boundary=tree.boundary)


def _comb_pair(rng, cfg: FuzzConfig):
    nb = int(rng.integers(2, max(3, cfg.max_vertices // 3) + 1))
    base = random_connected_graph(rng, nb, extra_edges=int(rng.integers(0, nb)), weighted=True)
    extra = int(rng.integers(0, cfg.max_vertices - nb + 1))
    return random_comb(rng, base, extra), base


def _summary(rep: VerdictReport, *keys) -> dict:
    out = {"verdict": rep.verdict}
    for k in keys:
        out[k] = rep.details.get(k)
    if rep.residuals:
        out["min_residual"] = min(rep.residuals.values())
    return out


def run_trial(cfg: FuzzConfig, trial: int) -> dict:
    rng = np.random.default_rng([cfg.seed, trial])
    kind = _pick_kind(rng, cfg.mix)
    ambient, base = _tree_pair(rng, cfg) if kind == "tree" else _comb_pair(rng, cfg)
    rec = {"trial": trial, "kind": kind, "n_ambient": ambient.n, "n_base": base.n}
    failures = []

    mono = verify_monotonicity(ambient, base, cfg.tol, planted_bug=cfg.planted_bug)
    rec["monotonicity"] = _summary(mono)
    if mono.verdict != PASS:
        failures.append(("monotonicity", mono))

    interior = base.interior_list
    if interior and base.boundary:
        z = interior[int(rng.integers(len(interior)))]
        wedge = verify_wedge_identity(base, z, cfg.tol)
        rec["wedge"] = {"z": z, **_summary(wedge, "identity_error", "max_abs_at_z")}
        if wedge.verdict == FAIL:
            failures.append(("wedge", wedge))
    else:
        rec["wedge"] = None

    if kind == "tree" and not cfg.weighted:
        iso = verify_isodiametric(ambient, cfg.tol)
        rec["isodiametric"] = _summary(iso, "diameter", "sigma2")
        if iso.verdict == FAIL:
            failures.append(("isodiametric", iso))
    else:
        rec["isodiametric"] = None

    if len(base.boundary) >= 2:
        try:
            geo = verify_rigidity_geometric(ambient, base, cfg.tol)
            rec["converse_instance"] = bool(geo.details.get("converse_instance", False))
        except SteklovError as exc:
            rec["converse_instance"] = None
            rec["converse_error"] = type(exc).__name__

    rec["counterexamples"] = [
        {"check": name, "report": rep.to_json(), "ambient": graph_to_json(ambient), "base": graph_to_json(base)}
        for name, rep in failures
    ]
    return rec


def _run_one(args):
    return run_trial(*args)


def fuzz(cfg: FuzzConfig) -> dict:
    """Run all trials and merge them in trial order into one report dict."""
    jobs = [(cfg, t) for t in range(cfg.trials)]
    if cfg.workers > 1 and cfg.trials > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(_run_one, jobs, chunksize=8))
    else:
        records = [_run_one(j) for j in jobs]

    def collect(check, key):
        vals = [r[check][key] for r in records if r.get(check) and r[check].get(key) is not None]
        return vals

    mono_min = collect("monotonicity", "min_residual")
    wedge_err = collect("wedge", "identity_error")
    wedge_z = collect("wedge", "max_abs_at_z")
    iso_slack = [
        2.0 / r["isodiametric"]["diameter"] - r["isodiametric"]["sigma2"]
        for r in records
        if r.get("isodiametric") and r["isodiametric"].get("diameter")
    ]
    counterexamples = [dict(trial=r["trial"], **c) for r in records for c in r["counterexamples"]]
    for r in records:
        del r["counterexamples"]
    not_met = sum(1 for r in records if r["monotonicity"]["verdict"] not in (PASS, FAIL))
    summary = {
        "trials": len(records),
        "by_kind": {k: sum(1 for r in records if r["kind"] == k) for k in KINDS},
        "violations": len(counterexamples),
        "hypothesis_not_met": not_met,
        "min_monotonicity_residual": min(mono_min) if mono_min else math.inf,
        "max_wedge_error": max(wedge_err) if wedge_err else 0.0,
        "max_wedge_abs_at_z": max(wedge_z) if wedge_z else 0.0,
        "min_isodiametric_slack": min(iso_slack) if iso_slack else math.inf,
        "converse_instances": [r["trial"] for r in records if r.get("converse_instance")],
    }
    return {
        "theorem": "fuzz",
        "config": cfg.as_dict(),
        "planted_bug": cfg.planted_bug,
        "summary": summary,
        "verdict": FAIL if counterexamples else PASS,
        "counterexamples": counterexamples,
        "trials": records,
    }


def fuzz_report_text(cfg: FuzzConfig) -> str:
    """Serialized report; byte-identical for identical configs."""
    return dumps(fuzz(cfg), indent=2) + "\n"
