"""Hand-built rigidity test pairs.

Each pair is ``Γ`` (a path of length ``l`` rooted at ``o``) wedged ``r`` times
at ``o``, with a path tooth of length ``t`` attached at ``o``. The tooth has
``λ_1 = 1/t`` and the base has ``σ_2 = 1/l``, so ``t <= l`` gives equality and
``t > l`` breaks the λ₁ bound.
"""
from __future__ import annotations

from dataclasses import dataclass

from .families import rooted_path
from .graph import Graph
from .theorems import symmetric_construction

# (r, l, t)
SYMMETRIC_PARAMS = (
    (2, 2, 1), (2, 2, 2), (2, 2, 3), (3, 2, 2), (3, 2, 3), (3, 1, 1),
    (4, 3, 2), (4, 3, 5), (3, 3, 3), (2, 1, 4), (5, 2, 1), (3, 4, 6),
)


@dataclass(frozen=True)
class RigidityPair:
    label: str
    gamma: Graph
    z: str
    r: int
    tooth: Graph
    root: str
    base: Graph
    ambient: Graph
    expect_equal: bool


def symmetric_pair(r: int, l: int, t: int) -> RigidityPair:
    gamma = rooted_path(l, root="o", prefix="a")
    tooth = rooted_path(t)
    base, ambient = symmetric_construction(gamma, "o", r, tooth, "p0")
    return RigidityPair(f"sym(r={r},l={l},t={t})", gamma, "o", r, tooth, "p0", base, ambient, t <= l)


def curated_pairs() -> list[RigidityPair]:
    return [symmetric_pair(*p) for p in SYMMETRIC_PARAMS]
