"""Necessary conditions on singularity profiles and enumeration of admissible ones.

Passing every check means only that no stated necessary condition rules the
profile out; it says nothing about whether a cover with that branch curve
exists.  Besides the conditions that follow from the invariant formulas, the
geometric genus of the (irreducible) branch curve is required to be
nonnegative, which also makes the search space finite.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from . import kernels
from .invariants import (
    chi_structure,
    dual_degree,
    genus_branch,
    ram_self_intersection,
)
from .profile import (
    FAMILY_ORDER,
    Family,
    SingularityClass,
    SingularProfile,
    aggregates,
    delta_invariant,
    validate_profile,
)

CHECK_NAMES = (
    "structural_validity",
    "genus_nonneg",
    "dual_degree_positive",
    "R2_positive",
    "cusp_divisibility",
    "node_divisibility",
    "chi_integral",
    "hodge_inequality",
    "pseudo_node_rule",
)


class BudgetExceeded(RuntimeError):
    """The search would visit more nodes than the configured limit."""


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ConstraintReport:
    checks: tuple[Check, ...]

    @property
    def admissible(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "admissible": self.admissible,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def check_constraints(p: SingularProfile) -> ConstraintReport:
    violations = validate_profile(p)
    a = aggregates(p)
    g = genus_branch(p)
    dd = dual_degree(p)
    r2 = ram_self_intersection(p)
    chi = chi_structure(p)
    if r2 > 0:
        hodge_ok = p.N * r2 <= 4 * p.d**2
        hodge_detail = f"N*R^2 = {p.N * r2} vs 4d^2 = {4 * p.d**2}"
    else:
        hodge_ok = False
        hodge_detail = f"R^2 = {r2} <= 0, bound undefined"
    checks = (
        Check("structural_validity", not violations, ", ".join(violations) or "ok"),
        Check("genus_nonneg", g >= 0, f"g(B) = {g}"),
        Check("dual_degree_positive", dd > 0, f"dual degree = {dd}"),
        Check("R2_positive", r2 > 0, f"R^2 = {r2}"),
        Check("cusp_divisibility", a.C_pseudo % 3 == 0, f"c = {a.C_pseudo}"),
        Check("node_divisibility", a.N_pseudo % 4 == 0, f"n = {a.N_pseudo}"),
        Check("chi_integral", chi.denominator == 1, f"chi = {chi}"),
        Check("hodge_inequality", hodge_ok, hodge_detail),
        Check("pseudo_node_rule", p.N < 6 or a.N_pseudo > 0, f"N = {p.N}, n = {a.N_pseudo}"),
    )
    return ConstraintReport(checks)


@dataclass(frozen=True)
class EnumerationQuery:
    """Search box for :func:`enumerate_profiles`.

    ``N=None`` searches every cover degree the Hodge bound allows.
    ``count_cap=None`` bounds each count only by the delta budget
    ``(2d-1)(d-1)``.
    """

    d: int
    N: int | None = None
    k_max: int = 0
    count_cap: int | None = None
    node_limit: int = 5_000_000

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.N is not None and self.N < 2:
            raise ValueError("N must be at least 2")
        if self.k_max < 0:
            raise ValueError("k_max must be nonnegative")
        if self.count_cap is not None and self.count_cap < 1:
            raise ValueError("count_cap must be positive")
        if self.node_limit < 1:
            raise ValueError("node_limit must be positive")

    @property
    def delta_budget(self) -> int:
        return (2 * self.d - 1) * (self.d - 1)


def _slots(k_max: int) -> list[SingularityClass]:
    return [
        SingularityClass(fam, k)
        for fam in FAMILY_ORDER
        for k in range(fam.min_k, k_max + 1)
    ]


def _slot_caps(q: EnumerationQuery, slots: list[SingularityClass]) -> list[int]:
    min_n = q.N if q.N is not None else 10**9
    caps = []
    for c in slots:
        cap = q.delta_budget // delta_invariant(c)
        if q.count_cap is not None:
            cap = min(cap, q.count_cap)
        if c.family is Family.S2 and min_n < 4:
            cap = 0
        if c.family is not Family.S2 and min_n < 3:
            cap = 0
        caps.append(cap)
    return caps


def _degrees_for(q: EnumerationQuery, slots, vec, cusps, nodes) -> list[int]:
    """Cover degrees worth testing for a count vector.

    Uses only integer arithmetic: the structural minimum on ``N``, the Hodge
    bound and the rule that ``N >= 6`` needs pseudo-nodes.  Every profile
    built from the result is still run through :func:`check_constraints`.
    """
    c = sum(x * w for x, w in zip(vec, cusps))
    n = sum(x * w for x, w in zip(vec, nodes))
    r2 = 2 * q.d**2 - c - n
    if r2 <= 0:
        return []
    lo = 2
    for cls, x in zip(slots, vec):
        if x:
            lo = max(lo, 4 if cls.family is Family.S2 else 3)
    hi = 4 * q.d**2 // r2
    if n == 0:
        hi = min(hi, 5)
    if q.N is not None:
        return [q.N] if lo <= q.N else []
    return list(range(lo, hi + 1))


def _weights(slots) -> tuple[list[int], list[int]]:
    """Pseudo-cusp and pseudo-node contribution of one point of each slot."""
    aggs = [aggregates(SingularProfile.from_counts(1, 4, {c: 1})) for c in slots]
    return [a.C_pseudo for a in aggs], [a.N_pseudo for a in aggs]


def _profile(q: EnumerationQuery, slots, vec, N) -> SingularProfile:
    return SingularProfile.from_counts(q.d, N, {c: x for c, x in zip(slots, vec) if x})


def sort_key(p: SingularProfile) -> tuple:
    return (p.total_delta(), p.count_vector(), p.N)


def _kernel_job(args):
    backend, two_d2, dual0, budget, deltas, cusps, nodes, caps, limit, c_init, n_init = args
    return kernels.get(backend).enumerate_counts(
        two_d2, dual0, budget, deltas, cusps, nodes, caps, limit, c_init, n_init
    )


def _pruned_vectors(q: EnumerationQuery, slots, caps, jobs: int, backend: str | None) -> list[tuple[int, ...]]:
    deltas = [delta_invariant(c) for c in slots]
    cusps, nodes = _weights(slots)
    two_d2 = 2 * q.d**2
    dual0 = 2 * q.d * (2 * q.d - 1)
    name = backend or kernels.backend_name()
    if jobs <= 1 or len(slots) < 2:
        found, _, exceeded = _kernel_job(
            (name, two_d2, dual0, q.delta_budget, deltas, cusps, nodes, caps, q.node_limit, 0, 0)
        )
        if exceeded:
            raise BudgetExceeded(f"search exceeded {q.node_limit} nodes")
        return found
    # split on the first slot; each job searches the remaining slots
    tasks = []
    for x in range(caps[0] + 1):
        tasks.append((
            name, two_d2, dual0, q.delta_budget - x * deltas[0], deltas[1:], cusps[1:], nodes[1:],
            caps[1:], q.node_limit, x * cusps[0], x * nodes[0],
        ))
    out = []
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for x, (found, _, exceeded) in zip(range(caps[0] + 1), ex.map(_kernel_job, tasks)):
            if exceeded:
                raise BudgetExceeded(f"search exceeded {q.node_limit} nodes")
            out.extend((x,) + vec for vec in found)
    return out


def _brute_vectors(q: EnumerationQuery, slots, caps) -> Iterator[tuple[int, ...]]:
    size = math.prod(c + 1 for c in caps)
    if size > q.node_limit:
        raise BudgetExceeded(f"brute-force box has {size} points (limit {q.node_limit})")
    return itertools.product(*(range(c + 1) for c in caps))


def enumerate_profiles(
    q: EnumerationQuery,
    *,
    brute_force: bool = False,
    jobs: int = 1,
    backend: str | None = None,
) -> list[SingularProfile]:
    """All profiles in the search box that pass every check, in deterministic order.

    The default route prunes a depth-first search with the monotone
    conditions (delta budget, positive dual degree, positive ``R^2``).  With
    ``brute_force=True`` every point of the box is tested by
    :func:`check_constraints` instead.
    """
    slots = _slots(q.k_max)
    caps = _slot_caps(q, slots)
    cusps, nodes = _weights(slots)
    vectors = _brute_vectors(q, slots, caps) if brute_force else _pruned_vectors(q, slots, caps, jobs, backend)
    out = []
    for vec in vectors:
        # brute force must not lean on the integer prefilter, so it sees every N
        degrees = (
            ([q.N] if q.N is not None else list(range(2, 4 * q.d**2 + 1)))
            if brute_force
            else _degrees_for(q, slots, vec, cusps, nodes)
        )
        for N in degrees:
            p = _profile(q, slots, vec, N)
            if check_constraints(p).admissible:
                out.append(p)
    out.sort(key=sort_key)
    return out
