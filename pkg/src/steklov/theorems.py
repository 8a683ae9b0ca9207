"""Executable checks of the monotonicity, rigidity and estimate theorems.

Each verifier checks the hypotheses of its theorem, evaluates both sides
numerically and returns a :class:`VerdictReport`. Verifiers never raise on a
failed hypothesis; they report ``hypothesis-not-met`` instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
import scipy.linalg as sla

from . import families
from .errors import BadCertificate, BadParameter, NotAComb, NotASubgraph, SteklovError
from .graph import (
    Graph,
    ToothDecomposition,
    comb_decompose,
    combinatorial_boundary,
    diameter,
    is_connected,
    is_homotopy_faithful,
    is_tree,
    wedge_power,
    wedge_sum,
)
from .spectral import (
    DEFAULT_TOL,
    Tolerances,
    lambda1,
    sigma2_eigenspace,
    steklov_spectrum,
    stiffness_matrix,
    zero_set_Z,
    zero_set_Z1,
)

PASS, FAIL, NOT_MET = "pass", "fail", "hypothesis-not-met"


@dataclass
class VerdictReport:
    theorem: str
    hypotheses: dict[str, bool] = field(default_factory=dict)
    residuals: dict[str, float] = field(default_factory=dict)
    verdict: str = PASS
    witness: dict | None = None
    details: dict = field(default_factory=dict)
    seed: int | None = None
    sub_reports: list["VerdictReport"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "hypotheses": dict(self.hypotheses),
            "residuals": [{"name": k, "value": v} for k, v in self.residuals.items()],
            "verdict": self.verdict,
            "witness": self.witness,
            "seed": self.seed,
        }
        if self.details:
            out["details"] = self.details
        if self.sub_reports:
            out["sub_reports"] = [r.to_json() for r in self.sub_reports]
        return out


def _not_met(report: VerdictReport, witness: dict) -> VerdictReport:
    report.verdict = NOT_MET
    report.witness = witness
    report.residuals = {}
    return report


def _ids(vs) -> list[str]:
    return sorted(vs)


# -- shared hypothesis checks -------------------------------------------------------


def _comb_hypotheses(ambient: Graph, base: Graph, report: VerdictReport):
    """Connectivity, comb structure, inherited weights, boundary-mass condition.

    The base keeps its own vertex measures: the monotonicity argument only
    needs ``m(B~_x) >= m_x`` for the base measure ``m_x``.
    """
    hyp = report.hypotheses
    problems = {}
    hyp["ambient_connected"] = is_connected(ambient)
    hyp["base_connected"] = is_connected(base)
    decomp = None
    try:
        decomp = comb_decompose(ambient, base)
        hyp["comb"] = True
    except (NotAComb, NotASubgraph) as exc:
        hyp["comb"] = False
        problems["comb"] = str(exc)
    bad_w = [
        [u, v]
        for (u, v), w in zip(base.edges, base.weights)
        if ambient.has_edge(u, v) and not math.isclose(w, ambient.weight(u, v), rel_tol=1e-12)
    ]
    hyp["weights"] = not bad_w
    if bad_w:
        problems["weights"] = bad_w[:5]
    if decomp is not None:
        short = [x for x in base.boundary_list if decomp.tooth_mass(x) < base.measure(x) * (1 - 1e-12)]
        hyp["measure"] = not short
        if short:
            problems["measure"] = short[:5]
    else:
        hyp["measure"] = False
    for k in ("ambient_connected", "base_connected"):
        if not hyp[k]:
            problems[k] = "graph is disconnected"
    return decomp, problems


def _is_combinatorial(g: Graph) -> bool:
    return g.is_unit_weight() and g.boundary == combinatorial_boundary(g)


# -- monotonicity ---------------------------------------------------------------------------


def _monotone_conclusion(report, ambient, base, tol, count=None, planted_bug=False):
    sa, sb = steklov_spectrum(ambient), steklov_spectrum(base)
    count = len(base.boundary) if count is None else count
    worst = None
    for i in range(1, count + 1):
        slack = sb.sigma(i) - sa.sigma(i)
        if planted_bug:
            slack = -slack
        report.residuals[f"sigma_{i}"] = slack
        if slack < -tol.compare and (worst is None or slack < worst[1]):
            worst = (i, slack)
    report.details["sigma_ambient"] = [sa.sigma(i) for i in range(1, count + 1)]
    report.details["sigma_base"] = [sb.sigma(i) for i in range(1, count + 1)]
    if worst is not None:
        i = worst[0]
        report.verdict = FAIL
        report.witness = {"index": i, "sigma_ambient": sa.sigma(i), "sigma_base": sb.sigma(i)}
    return report


def verify_monotonicity(ambient: Graph, base: Graph, tol: Tolerances = DEFAULT_TOL, planted_bug=False) -> VerdictReport:
    """``σ_i(ambient) <= σ_i(base)`` for ``i <= |B(base)|`` when ambient is a comb over base.

    ``planted_bug`` reverses the comparison; the fuzz harness uses it to check
    that it notices violations.
    """
    report = VerdictReport("monotonicity")
    _, problems = _comb_hypotheses(ambient, base, report)
    if problems:
        return _not_met(report, problems)
    return _monotone_conclusion(report, ambient, base, tol, planted_bug=planted_bug)


def verify_monotonicity_homotopy(ambient: Graph, base: Graph, tol: Tolerances = DEFAULT_TOL) -> VerdictReport:
    """Monotonicity for combinatorial graphs whose inclusion keeps every cycle in the base."""
    report = VerdictReport("monotonicity-homotopy")
    hyp = report.hypotheses
    hyp["ambient_combinatorial"] = _is_combinatorial(ambient)
    hyp["base_combinatorial"] = _is_combinatorial(base)
    hyp["base_nontrivial"] = base.n >= 2
    hyp["ambient_connected"] = is_connected(ambient)
    hyp["base_connected"] = is_connected(base)
    try:
        hyp["homotopy_faithful"] = is_homotopy_faithful(ambient, base)
    except (NotAComb, NotASubgraph) as exc:
        hyp["homotopy_faithful"] = False
        report.details["comb_error"] = str(exc)
    failed = [k for k, ok in hyp.items() if not ok]
    if failed:
        return _not_met(report, {"failed": failed})
    return _monotone_conclusion(report, ambient, base, tol)


# -- rigidity -----------------------------------------------------------------------------------


def _equalities(sa, sb, count, tol):
    gaps = [abs(sa.sigma(i) - sb.sigma(i)) for i in range(1, count + 1)]
    return all(g <= tol.compare for g in gaps), gaps


def _tooth_lambda1(decomp: ToothDecomposition, z: str) -> float:
    tooth = decomp.tooth_graph(z)
    return lambda1(tooth, {z}, boundary=decomp.tooth_boundaries[z] - {z})


def _condition_singletons(decomp, base):
    return [x for x in base.boundary_list if decomp.tooth_boundaries[x] != frozenset({x})]


def _condition_empty(decomp, vertices):
    return [y for y in vertices if decomp.tooth_boundaries[y]]


def rayleigh_subspace_min(ambient: Graph, base: Graph, sigma: float) -> float:
    """Smallest eigenvalue of ``K - σ M`` on ``{u : u|_B const, <u, 1>_B~ = 0}``.

    ``K`` is the ambient stiffness matrix and ``M`` the ambient boundary mass,
    with the subspace given by an orthonormal null-space basis. A nonnegative
    value means ``<du, du> >= σ <u, u>_B~`` on the whole subspace.
    """
    idx = ambient.index
    bidx = [idx[x] for x in base.boundary_list]
    rows = []
    for j in bidx[1:]:
        row = np.zeros(ambient.n)
        row[bidx[0]], row[j] = 1.0, -1.0
        rows.append(row)
    mass_row = np.array([ambient.measure(v) if v in ambient.boundary else 0.0 for v in ambient.vertices])
    rows.append(mass_row)
    N = sla.null_space(np.array(rows))
    if N.shape[1] == 0:
        return math.inf
    Q = N.T @ (stiffness_matrix(ambient) - sigma * np.diag(mass_row)) @ N
    return float(np.linalg.eigvalsh(0.5 * (Q + Q.T))[0])


def verify_rigidity_full(ambient: Graph, base: Graph, tol: Tolerances = DEFAULT_TOL) -> VerdictReport:
    """Check that equality at every index holds exactly when conditions (1)-(3) hold.

    (1) every base boundary vertex is alone in its tooth boundary,
    (2) teeth over interior vertices outside Z carry no boundary,
    (3) the ambient Rayleigh quotient on the constant-on-B, mean-zero subspace
        is at least ``σ_{|B|}(base)``.
    """
    report = VerdictReport("rigidity")
    decomp, problems = _comb_hypotheses(ambient, base, report)
    report.hypotheses["boundary_size"] = len(base.boundary) >= 2
    if not report.hypotheses["boundary_size"]:
        problems["boundary_size"] = len(base.boundary)
    if problems:
        return _not_met(report, problems)
    count = len(base.boundary)
    sa, sb = steklov_spectrum(ambient), steklov_spectrum(base)
    lhs, gaps = _equalities(sa, sb, count, tol)
    Z = zero_set_Z(base, tol)
    c1 = _condition_singletons(decomp, base)
    c2 = _condition_empty(decomp, [y for y in base.interior_list if y not in Z])
    top = sb.sigma(count)
    min_eig = rayleigh_subspace_min(ambient, base, top)
    scale = max(1.0, float(np.max(np.abs(stiffness_matrix(ambient)))))
    c3 = min_eig >= -tol.compare * scale
    rhs = not c1 and not c2 and c3
    for i, gap in enumerate(gaps, start=1):
        report.residuals[f"sigma_{i}"] = sb.sigma(i) - sa.sigma(i)
    report.residuals["condition3_min_eigenvalue"] = min_eig
    report.details.update(
        lhs=lhs, rhs=rhs, Z=_ids(Z), condition1=not c1, condition2=not c2, condition3=c3, max_gap=max(gaps)
    )
    agree = lhs == rhs
    if not Z:
        same_boundary = ambient.boundary == base.boundary
        report.details["boundary_unchanged"] = same_boundary
        agree = agree and (lhs == same_boundary)
    if not agree:
        report.verdict = FAIL
        report.witness = {
            "lhs": lhs,
            "rhs": rhs,
            "condition1_violations": c1,
            "condition2_violations": c2,
            "condition3_min_eigenvalue": min_eig,
            "gaps": gaps,
        }
    return report


def verify_rigidity_geometric(ambient: Graph, base: Graph, tol: Tolerances = DEFAULT_TOL) -> VerdictReport:
    """If all equalities hold, every tooth over Z has ``λ_1 >= σ_{|B|}(base)``.

    Necessary condition only; nothing is claimed when the bound holds.
    """
    report = VerdictReport("rigidity-geometric")
    decomp, problems = _comb_hypotheses(ambient, base, report)
    report.hypotheses["boundary_size"] = len(base.boundary) >= 2
    if not report.hypotheses["boundary_size"]:
        problems["boundary_size"] = len(base.boundary)
    if problems:
        return _not_met(report, problems)
    count = len(base.boundary)
    sa, sb = steklov_spectrum(ambient), steklov_spectrum(base)
    equal, gaps = _equalities(sa, sb, count, tol)
    Z = zero_set_Z(base, tol)
    top = sb.sigma(count)
    report.details.update(equalities=equal, Z=_ids(Z), sigma_top=top)
    bad = {}
    for z in sorted(Z):
        lam = _tooth_lambda1(decomp, z)
        report.residuals[f"lambda1[{z}]"] = lam - top
        if equal and lam < top - tol.compare:
            bad[z] = lam
    # bound met on every tooth yet some equality fails: recorded as data only
    report.details["converse_instance"] = bool(Z) and not equal and all(
        report.residuals[f"lambda1[{z}]"] >= -tol.compare for z in Z
    )
    if bad:
        report.verdict = FAIL
        report.witness = {"teeth_below_bound": bad, "sigma_top": top}
    return report


def verify_rigidity_sigma2(ambient: Graph, base: Graph, tol: Tolerances = DEFAULT_TOL) -> VerdictReport:
    """If ``σ_2`` is unchanged then conditions (1)-(3) with Z_1 hold (necessary direction).

    ``details["biconditional"]`` records whether both sides agree; the converse
    is only guaranteed for symmetric constructions.
    """
    report = VerdictReport("rigidity-sigma2")
    decomp, problems = _comb_hypotheses(ambient, base, report)
    report.hypotheses["boundary_size"] = len(base.boundary) >= 2
    if not report.hypotheses["boundary_size"]:
        return _not_met(report, {**problems, "boundary_size": len(base.boundary)})
    sb = steklov_spectrum(base)
    Z1 = zero_set_Z1(base, tol, sb)
    report.hypotheses["Z1_interior"] = not (Z1 & base.boundary)
    if not report.hypotheses["Z1_interior"]:
        problems["Z1_interior"] = _ids(Z1 & base.boundary)
    if problems:
        return _not_met(report, problems)
    sa = steklov_spectrum(ambient)
    s2 = sb.sigma(2)
    lhs = abs(sa.sigma(2) - s2) <= tol.compare
    c1 = _condition_singletons(decomp, base)
    c2 = _condition_empty(decomp, [y for y in base.interior_list if y not in Z1])
    low = {}
    for z in sorted(Z1):
        lam = _tooth_lambda1(decomp, z)
        report.residuals[f"lambda1[{z}]"] = lam - s2
        if lam < s2 - tol.compare:
            low[z] = lam
    rhs = not c1 and not c2 and not low
    report.residuals["sigma_2"] = s2 - sa.sigma(2)
    report.details.update(lhs=lhs, rhs=rhs, biconditional=lhs == rhs, Z1=_ids(Z1), sigma2_base=s2, sigma2_ambient=sa.sigma(2))
    if lhs and not rhs:
        report.verdict = FAIL
        report.witness = {"condition1_violations": c1, "condition2_violations": c2, "teeth_below_bound": low}
    return report


def symmetric_construction(gamma: Graph, z: str, r: int, tooth: Graph, root: str):
    """``G = ∨^r_z Γ`` and ``G~ = G ∨_z tooth`` (tooth vertices prefixed ``tooth.``)."""
    if r < 2:
        raise BadParameter("r must be >= 2")
    base = wedge_power(gamma, z, r, unit_measure=True)
    ambient = wedge_sum(base, z, tooth, root, prefixes=("", "tooth."), unit_measure=True)
    return base, ambient


def verify_symmetric_rigidity(gamma: Graph, z: str, r: int, tooth: Graph, root: str, tol: Tolerances = DEFAULT_TOL) -> VerdictReport:
    """``σ_2(G~) = σ_2(G)`` iff ``λ_1(tooth, B(tooth), {root}) >= σ_2(G)`` for the symmetric wedge.

    Also cross-checks the intermediate identities used by the argument:
    ``λ_1(G, B, {z}) = λ_1(Γ, Σ, {z}) = σ_2(Γ ∨_z Γ) >= σ_2(G)`` and
    ``σ_2(G~) >= min(λ_1(G, B, {z}), λ_1(tooth))``.
    """
    report = VerdictReport("rigidity-sym")
    hyp = report.hypotheses
    hyp["unit_weight"] = gamma.is_unit_weight() and tooth.is_unit_weight()
    hyp["gamma_connected"] = is_connected(gamma)
    hyp["tooth_connected"] = is_connected(tooth)
    hyp["gamma_boundary_nonempty"] = bool(gamma.boundary)
    hyp["r_at_least_2"] = r >= 2
    failed = [k for k, ok in hyp.items() if not ok]
    if failed:
        return _not_met(report, {"failed": failed})
    base, ambient = symmetric_construction(gamma, z, r, tooth, root)
    decomp = comb_decompose(ambient, base)
    hyp["teeth_structure"] = not _condition_singletons(decomp, base) and not _condition_empty(
        decomp, [y for y in base.interior_list if y != z]
    )
    if not hyp["teeth_structure"]:
        return _not_met(report, {"failed": ["teeth_structure"]})

    s2_base = steklov_spectrum(base).sigma(2)
    s2_amb = steklov_spectrum(ambient).sigma(2)
    lam_tooth = lambda1(tooth, {root})
    lhs = abs(s2_amb - s2_base) <= tol.compare
    rhs = lam_tooth >= s2_base - tol.compare

    lam_base = lambda1(base, {z})
    lam_gamma = lambda1(gamma, {z})
    s2_double = steklov_spectrum(wedge_power(gamma, z, 2, unit_measure=True)).sigma(2)
    chain = {
        "lambda1_base_eq_gamma": abs(lam_base - lam_gamma) <= tol.compare * max(1.0, lam_gamma),
        "lambda1_gamma_eq_double": abs(lam_gamma - s2_double) <= tol.compare * max(1.0, lam_gamma),
        "double_ge_base": s2_double >= s2_base - tol.compare,
        "ambient_ge_min": s2_amb >= min(lam_base, lam_tooth) - tol.compare,
    }
    report.residuals.update(
        sigma2_gap=s2_base - s2_amb,
        lambda1_tooth_minus_sigma2=lam_tooth - s2_base,
    )
    report.details.update(
        lhs=lhs,
        rhs=rhs,
        sigma2_base=s2_base,
        sigma2_ambient=s2_amb,
        lambda1_tooth=lam_tooth,
        lambda1_base=lam_base,
        lambda1_gamma=lam_gamma,
        sigma2_double=s2_double,
        chain=chain,
    )
    if lhs != rhs or not all(chain.values()):
        report.verdict = FAIL
        report.witness = {"lhs": lhs, "rhs": rhs, "chain": chain}
    return report


def verify_wedge_identity(g: Graph, z: str, tol: Tolerances = DEFAULT_TOL) -> VerdictReport:
    """``σ_2(G ∨_z G) = λ_1(G, B, {z})`` and σ_2-eigenfunctions vanish at ``z``."""
    report = VerdictReport("wedge")
    hyp = report.hypotheses
    hyp["connected"] = is_connected(g)
    hyp["z_interior"] = z in g.index and z not in g.boundary
    hyp["boundary_nonempty"] = bool(g.boundary)
    failed = [k for k, ok in hyp.items() if not ok]
    if failed:
        return _not_met(report, {"failed": failed, "z": z})
    doubled = wedge_sum(g, z, g, z, prefixes=("", "copy."))
    spec = steklov_spectrum(doubled)
    lam = lambda1(g, {z})
    s2 = spec.sigma(2)
    at_z = float(np.max(np.abs(sigma2_eigenspace(spec, tol)[doubled.index[z]])))
    err = abs(s2 - lam)
    report.residuals["identity"] = tol.compare * max(1.0, lam) - err
    report.residuals["vanishing_at_z"] = tol.compare - at_z
    report.details.update(sigma2_wedge=s2, lambda1=lam, identity_error=err, max_abs_at_z=at_z)
    if err > tol.compare * max(1.0, lam) or at_z > tol.compare:
        report.verdict = FAIL
        report.witness = {"sigma2_wedge": s2, "lambda1": lam, "max_abs_at_z": at_z}
    return report


def verify_isodiametric(g: Graph, tol: Tolerances = DEFAULT_TOL) -> VerdictReport:
    """``σ_2 <= 2 / diam`` for a nontrivial combinatorial tree."""
    report = VerdictReport("isodiametric")
    hyp = report.hypotheses
    hyp["tree"] = is_tree(g)
    hyp["combinatorial"] = _is_combinatorial(g)
    hyp["nontrivial"] = g.n >= 2
    failed = [k for k, ok in hyp.items() if not ok]
    if failed:
        return _not_met(report, {"failed": failed})
    diam = diameter(g)
    s2 = steklov_spectrum(g).sigma(2)
    slack = 2.0 / diam - s2
    report.residuals["bound"] = slack
    report.details.update(diameter=diam, sigma2=s2)
    if slack < -tol.compare:
        report.verdict = FAIL
        report.witness = {"diameter": diam, "sigma2": s2}
    return report


# -- estimates -----------------------------------------------------------------------------------


ESTIMATE_KINDS = ("regular-star", "star", "comb", "tree-ball", "tree-ball-sub", "isodiametric")


def _validate_certificate(small: Graph, large: Graph, cert: Mapping[str, str]) -> None:
    if set(cert) != set(small.vertices):
        missing = sorted(set(small.vertices) - set(cert))
        extra = sorted(set(cert) - set(small.vertices))
        raise BadCertificate(f"certificate keys must be the embedded graph's vertices; missing {missing[:5]}, extra {extra[:5]}")
    images = list(cert.values())
    if len(set(images)) != len(images):
        raise BadCertificate("certificate is not injective")
    outside = [v for v in images if v not in large.index]
    if outside:
        raise BadCertificate(f"certificate images not in target graph: {outside[:5]}")
    broken = [(u, v) for u, v in small.edges if not large.has_edge(cert[u], cert[v])]
    if broken:
        raise BadCertificate(f"edges not preserved: {broken[:5]}")


def _family_graph(kind: str, params: dict) -> Graph:
    name = "tree-ball" if kind == "tree-ball-sub" else kind
    return families.make_family(name, params)[0]


def _bound_ok(slack, bound, tol):
    return slack >= -tol.compare * max(1.0, abs(bound))


def _tight(slack, bound, tol):
    return abs(slack) <= tol.compare * max(1.0, abs(bound))


def verify_estimates(kind: str, params: dict, graph: Graph, certificate: Mapping[str, str] | None = None,
                     tol: Tolerances = DEFAULT_TOL) -> VerdictReport:
    """Evaluate the eigenvalue estimates for trees built around a named family.

    ``graph`` contains the family (``tree-ball-sub``: is contained in
    ``T(r, d)``). ``certificate`` maps the vertices of the smaller graph to
    those of the larger one; by default ids are matched as they are.
    Tight inequalities are handed to the rigidity verifiers and their reports
    attached as sub-reports.
    """
    if kind not in ESTIMATE_KINDS:
        raise BadParameter(f"unknown estimate {kind!r}; choose from {', '.join(ESTIMATE_KINDS)}")
    report = VerdictReport(f"estimate:{kind}")
    report.details["params"] = dict(params)
    if kind == "isodiametric":
        sub = verify_isodiametric(graph, tol)
        sub.theorem = report.theorem
        sub.details["params"] = {}
        return sub

    fam = _family_graph(kind, params)
    hyp = report.hypotheses
    if kind == "tree-ball-sub":
        cert = dict(certificate) if certificate is not None else {v: v for v in graph.vertices}
        _validate_certificate(graph, fam, cert)
        hyp["combinatorial"] = _is_combinatorial(graph)
        hyp["tree"] = is_tree(graph)
        hyp["nontrivial"] = graph.n >= 2
    else:
        cert = dict(certificate) if certificate is not None else {v: v for v in fam.vertices}
        _validate_certificate(fam, graph, cert)
        image = fam.relabel(cert)
        hyp["combinatorial"] = _is_combinatorial(graph)
        hyp["connected"] = is_connected(graph)
        try:
            hyp["comb_with_tree_teeth"] = is_homotopy_faithful(graph, image)
        except (NotAComb, NotASubgraph):
            hyp["comb_with_tree_teeth"] = False
    failed = [k for k, ok in hyp.items() if not ok]
    if failed:
        return _not_met(report, {"failed": failed})

    spec = steklov_spectrum(graph)
    checks = []  # (name, slack, bound)
    if kind == "regular-star":
        r, l = params["r"], params["l"]
        for i in range(2, r + 1):
            checks.append((f"sigma_{i}<=1/l", 1.0 / l - spec.sigma(i), 1.0 / l))
    elif kind == "star":
        arms = families.StarSpec(tuple(params["arms"])).arm_lengths
        r = len(arms)
        sig = [spec.sigma(i) for i in range(2, r + 1)]
        p_l = families.elementary_symmetric(arms)
        p_inv = families.elementary_symmetric([1.0 / s for s in sig])
        p_sig = families.elementary_symmetric(sig)
        checks.append(("sigma_2<=r/sum(l)", r / sum(arms) - spec.sigma(2), r / sum(arms)))
        for k in range(1, r):
            lo = (r - k) / r * p_l[k]
            checks.append((f"p_{k}(1/sigma)>=bound", p_inv[k] - lo, lo))
            hi = (k + 1) * p_l[r - k - 1] / p_l[r - 1]
            checks.append((f"p_{k}(sigma)<=bound", hi - p_sig[k], hi))
    elif kind == "comb":
        r, l = params["r"], params["l"]
        bounds = families.comb_sine_form(r, l)
        for i in range(1, r + 2):
            checks.append((f"sigma_{i}<=comb", bounds[i - 1] - spec.sigma(i), bounds[i - 1]))
    elif kind == "tree-ball":
        r, d = params["r"], params["d"]
        for j in range(2, d * (d - 1) ** (r - 1) + 1):
            bound = float(families.tree_ball_eigenvalue(r, d, families.tree_ball_band(d, j)))
            checks.append((f"sigma_{j}<=ball", bound - spec.sigma(j), bound))
    elif kind == "tree-ball-sub":
        r, d = params["r"], params["d"]
        for j in range(2, len(graph.boundary) + 1):
            k = families.tree_ball_band(d, j)
            if k > r + 1:
                report.details.setdefault("skipped_indices", []).append(j)
                continue
            bound = float(families.tree_ball_eigenvalue(r, d, k))
            checks.append((f"sigma_{j}>=ball", spec.sigma(j) - bound, bound))

    violated = []
    for name, slack, bound in checks:
        report.residuals[name] = slack
        if not _bound_ok(slack, bound, tol):
            violated.append(name)
    tight = [name for name, slack, bound in checks if _tight(slack, bound, tol)]
    report.details["tight"] = tight
    if violated:
        report.verdict = FAIL
        report.witness = {"violated": violated}
        return report

    if kind != "tree-ball-sub":
        image = fam.relabel(cert)
        sigma2_clause = {"regular-star": "sigma_2<=1/l", "star": "sigma_2<=r/sum(l)", "tree-ball": "sigma_2<=ball"}.get(kind)
        if sigma2_clause in tight:
            report.sub_reports.append(verify_rigidity_sigma2(graph, image, tol))
        full = (kind == "comb" and len(tight) == len(checks)) or (
            kind == "star" and any(n.startswith("p_") for n in tight)
        )
        if full:
            report.sub_reports.append(verify_rigidity_full(graph, image, tol))
    if any(s.verdict == FAIL for s in report.sub_reports):
        report.verdict = FAIL
        report.witness = {"failed_sub_reports": [s.theorem for s in report.sub_reports if s.verdict == FAIL]}
    return report


__all__ = [
    "VerdictReport",
    "verify_monotonicity",
    "verify_monotonicity_homotopy",
    "verify_rigidity_full",
    "verify_rigidity_geometric",
    "verify_rigidity_sigma2",
    "verify_symmetric_rigidity",
    "symmetric_construction",
    "verify_wedge_identity",
    "verify_isodiametric",
    "verify_estimates",
    "rayleigh_subspace_min",
    "SteklovError",
]
