"""Closed-form invariants of the covering surface ``X`` and the branch curve ``B``.

Every function takes a :class:`~agcover.profile.SingularProfile` and returns
the raw value, negative or fractional as it comes out.  Judging whether a
profile can occur is left to :mod:`agcover.feasibility`.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .profile import SingularProfile, aggregates, virtual_counts


class NonPositiveDenominator(ArithmeticError):
    """The ramification self-intersection ``2d^2 - c - n`` is not positive."""


def genus_branch(p: SingularProfile) -> int:
    a = aggregates(p)
    return (2 * p.d - 1) * (p.d - 1) - a.C_pseudo - a.N_pseudo - a.S_super


def dual_degree(p: SingularProfile) -> int:
    a = aggregates(p)
    return 2 * p.d * (2 * p.d - 1) - 3 * a.C_pseudo - 2 * a.N_pseudo


def dual_degree_from_virtual(p: SingularProfile) -> int:
    """Generalized Plücker class computed from per-point virtual cusps and nodes."""
    kappa = nu = 0
    for c, cnt in p.items():
        vc, vn = virtual_counts(c)
        kappa += vc * cnt
        nu += vn * cnt
    return 2 * p.d * (2 * p.d - 1) - 2 * nu - 3 * kappa


def ram_self_intersection(p: SingularProfile) -> int:
    a = aggregates(p)
    return 2 * p.d**2 - a.C_pseudo - a.N_pseudo


def canonical_square(p: SingularProfile) -> int:
    a = aggregates(p)
    return 9 * p.N + 2 * (p.d**2 - 6 * p.d) - a.C_pseudo - a.N_pseudo


def euler_X(p: SingularProfile) -> int:
    a = aggregates(p)
    return 3 * p.N + 2 * p.d * (2 * p.d - 3) - 3 * a.C_pseudo - 2 * a.N_pseudo


def euler_branch_parts(p: SingularProfile) -> tuple[int, int, int]:
    """Return ``(e(B), e(B - Sing B), e(Sing B))``.

    Bi-branched points (``S3_EVEN`` and ``S2``) lower ``e(B)`` by one each
    relative to the normalization.
    """
    g = genus_branch(p)
    n0 = p.n.get(0, 0)
    n_pos = sum(v for k, v in p.n.items() if k >= 1)
    m_all = sum(p.m.values())
    t_all = sum(p.t.values())
    e_B = (2 - 2 * g) - (m_all + t_all)
    e_smooth = (2 - 2 * g) - n0 - (n_pos + 2 * m_all + 2 * t_all)
    e_sing = n0 + n_pos + m_all + t_all
    return e_B, e_smooth, e_sing


def euler_X_assembled(p: SingularProfile) -> int:
    """``e(X)`` glued from the strata of ``P^2`` over ``B``, ``B - Sing B`` and ``Sing B``."""
    e_B, e_smooth, e_sing = euler_branch_parts(p)
    N = p.N
    return N * (3 - e_B) + (N - 1) * e_smooth + (N - 2) * e_sing


def chi_structure(p: SingularProfile) -> Fraction:
    a = aggregates(p)
    return (
        p.N
        + Fraction(p.d * (p.d - 3), 2)
        - Fraction(a.C_pseudo, 3)
        - Fraction(a.N_pseudo, 4)
    )


def noether_check(p: SingularProfile) -> bool:
    return canonical_square(p) + euler_X(p) == 12 * chi_structure(p)


@dataclass(frozen=True)
class HodgeBound:
    bound: Fraction
    satisfied: bool
    equality: bool


def hodge_bound(p: SingularProfile) -> HodgeBound:
    """Upper bound on the cover degree from the Hodge index theorem."""
    r2 = ram_self_intersection(p)
    if r2 <= 0:
        raise NonPositiveDenominator(f"2d^2 - c - n = {r2} <= 0")
    lhs = p.N * r2
    rhs = 4 * p.d**2
    return HodgeBound(Fraction(rhs, r2), lhs <= rhs, lhs == rhs)


def pseudo_node_rule(p: SingularProfile) -> bool:
    return p.N < 6 or aggregates(p).N_pseudo > 0


def rational_to_json(q: Fraction) -> dict[str, int]:
    return {"num": q.numerator, "den": q.denominator}


def rational_from_json(doc: dict) -> Fraction:
    return Fraction(doc["num"], doc["den"])


@dataclass(frozen=True)
class InvariantReport:
    genus_B: int
    dual_degree: int
    R_square: int
    K_square: int
    euler_X: int
    chi_OX: Fraction
    chi_integral: bool
    noether_ok: bool
    hodge_bound: Fraction | None
    hodge_ok: bool

    def to_json(self) -> dict:
        doc = asdict(self)
        doc["chi_OX"] = rational_to_json(self.chi_OX)
        doc["hodge_bound"] = None if self.hodge_bound is None else rational_to_json(self.hodge_bound)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> InvariantReport:
        doc = dict(doc)
        doc["chi_OX"] = rational_from_json(doc["chi_OX"])
        if doc["hodge_bound"] is not None:
            doc["hodge_bound"] = rational_from_json(doc["hodge_bound"])
        return cls(**doc)


def invariant_report(p: SingularProfile) -> InvariantReport:
    """All invariants at once.

    When ``R^2 <= 0`` there is no Hodge bound; ``hodge_bound`` is then
    ``None`` and ``hodge_ok`` is false.
    """
    chi = chi_structure(p)
    try:
        hb = hodge_bound(p)
        bound, ok = hb.bound, hb.satisfied
    except NonPositiveDenominator:
        bound, ok = None, False
    return InvariantReport(
        genus_B=genus_branch(p),
        dual_degree=dual_degree(p),
        R_square=ram_self_intersection(p),
        K_square=canonical_square(p),
        euler_X=euler_X(p),
        chi_OX=chi,
        chi_integral=chi.denominator == 1,
        noether_ok=noether_check(p),
        hodge_bound=bound,
        hodge_ok=ok,
    )
