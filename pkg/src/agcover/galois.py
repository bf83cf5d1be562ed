"""Singularities and resolution invariants of the Galois closure.

The Galois closure ``Y -> P^2`` of a degree ``N`` almost generic cover has
degree ``N!``.  Over a singular point of ``B`` with local group ``G`` the
fibre has ``N!/|G|`` points, each a surface germ of type ``A_j`` where ``j``
is read off the chain-length table below.  ``Z`` is the minimal resolution.

Two recipes are evaluated side by side for the exceptional curve count, the
Euler number of the preimage of ``Sing B`` and ``e(Z)``: the closed
expressions as they are usually quoted, and a recomputation from chain
lengths (or from the three-strata decomposition, for ``e(Z)``).  They do not
always agree; disagreements are reported by name rather than resolved.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .invariants import euler_branch_parts, rational_to_json
from .profile import Family, SingularityClass, SingularProfile

# local monodromy group orders
GROUP_ORDER = {Family.S2: 4, Family.S3_ODD: 6, Family.S3_EVEN: 6}

M_T_COEFFICIENT = "M_t_coefficient"
M_S3_COEFFICIENT = "M_s3_coefficient"
ES_T_COEFFICIENT = "eS_t_coefficient"
ES_S3_COEFFICIENT = "eS_s3_coefficient"
EZ_CLOSED_VS_ASSEMBLED = "eZ_closed_vs_assembled"


@functools.lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return math.factorial(n)


def chain_length(c: SingularityClass) -> int:
    """Length of the (-2)-curve chain over one preimage point of a class-``c`` point.

    ``A_{n,2}`` and ``A_{n,3}`` points both give surface germs ``A_{n-1}``.
    """
    return c.monodromy_index - 1


def galois_singular_count(p: SingularProfile) -> Fraction:
    f = factorial(p.N)
    s3 = sum(v for k, v in p.n.items() if k >= 1) + sum(p.m.values())
    s2 = sum(v for k, v in p.t.items() if k >= 2)
    return f * (Fraction(s3, 6) + Fraction(s2, 4))


def galois_singular_count_chain(p: SingularProfile) -> Fraction:
    """Count of singular points of ``Y`` from the chain table (points with chain length > 0)."""
    f = factorial(p.N)
    return sum(
        (Fraction(f * cnt, GROUP_ORDER[c.family]) for c, cnt in p.items() if chain_length(c) > 0),
        Fraction(0),
    )


def _m_printed(p: SingularProfile) -> Fraction:
    f = factorial(p.N)
    s3 = sum(2 * k * v for k, v in p.n.items() if k >= 1) + sum((2 * k - 1) * v for k, v in p.m.items())
    s2 = sum((2 * k - 1) * v for k, v in p.t.items() if k >= 2)
    return Fraction(f * s3, 6) + Fraction(f * s2, 4)


def _m_chain(p: SingularProfile) -> Fraction:
    f = factorial(p.N)
    return sum(
        (Fraction(f * cnt * chain_length(c), GROUP_ORDER[c.family]) for c, cnt in p.items()),
        Fraction(0),
    )


def exceptional_curve_count(p: SingularProfile) -> tuple[Fraction, Fraction]:
    """``(M_printed, M_chain)``: number of (-2)-curves contracted by ``Z -> Y``."""
    return _m_printed(p), _m_chain(p)


def _es_printed(p: SingularProfile) -> Fraction:
    f = factorial(p.N)
    s3 = sum((2 * k + 1) * v for k, v in p.n.items()) + sum(2 * k * v for k, v in p.m.items())
    s2 = p.t.get(1, 0) + sum(2 * k * v for k, v in p.t.items() if k >= 2)
    return Fraction(f * s3, 6) + Fraction(f * s2, 4)


def _es_chain(p: SingularProfile) -> Fraction:
    # a chain of j rational curves has Euler number j + 1; a smooth preimage point counts 1
    f = factorial(p.N)
    return sum(
        (Fraction(f * cnt * (chain_length(c) + 1), GROUP_ORDER[c.family]) for c, cnt in p.items()),
        Fraction(0),
    )


def euler_preimage_sing(p: SingularProfile) -> tuple[Fraction, Fraction]:
    """``(printed, chain)`` Euler number of the preimage of ``Sing B`` in ``Z``."""
    return _es_printed(p), _es_chain(p)


def canonical_square_Z(p: SingularProfile) -> int:
    return (p.d - 3) ** 2 * factorial(p.N)


def _ez_closed(p: SingularProfile) -> Fraction:
    f = factorial(p.N)
    s3 = sum((19 * k + 5) * v for k, v in p.n.items()) + sum(16 * k * v for k, v in p.m.items())
    bracket = (
        3
        + p.d * (2 * p.d - 3)
        - Fraction(s3, 6)
        - Fraction(3 * p.t.get(1, 0), 4)
        - Fraction(sum(k * v for k, v in p.t.items() if k >= 2), 2)
    )
    return f * bracket


def _ez_assembled(p: SingularProfile) -> Fraction:
    f = factorial(p.N)
    e_B, e_smooth, _ = euler_branch_parts(p)
    return f * (3 - e_B) + Fraction(f * e_smooth, 2) + _es_printed(p)


def euler_Z(p: SingularProfile) -> tuple[Fraction, Fraction]:
    """``(closed, assembled)`` topological Euler number of ``Z``."""
    return _ez_closed(p), _ez_assembled(p)


def chi_Z(p: SingularProfile, *, source: str = "assembled") -> tuple[Fraction, bool]:
    """``chi(O_Z)`` by Noether's formula from the chosen ``e(Z)`` value."""
    closed, assembled = euler_Z(p)
    e = {"assembled": assembled, "closed": closed}[source]
    chi = (canonical_square_Z(p) + e) / 12
    return chi, chi.denominator == 1


@dataclass(frozen=True)
class GaloisReport:
    S_sing: Fraction
    M_printed: Fraction
    M_chain: Fraction
    e_presing_printed: Fraction
    e_presing_chain: Fraction
    KZ_square: int
    eZ_closed: Fraction
    eZ_assembled: Fraction
    chiZ_from_assembled: Fraction
    chiZ_from_closed: Fraction
    discrepancy_flags: list[str] = field(default_factory=list)

    @property
    def chiZ_integral(self) -> bool:
        return self.chiZ_from_assembled.denominator == 1

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, Fraction):
                return rational_to_json(x)
            return x

        doc = {name: enc(getattr(self, name)) for name in self.__dataclass_fields__}
        doc["discrepancy_flags"] = list(self.discrepancy_flags)
        return doc


def _discrepancies(p: SingularProfile, m_pr, m_ch, es_pr, es_ch, ez_cl, ez_as) -> list[str]:
    flags = []

    def split(fn, fam_filter):
        sub = SingularProfile.from_counts(
            p.d, p.N, {c: v for c, v in p.items() if fam_filter(c.family)}
        )
        return fn(sub)

    is_s2 = lambda fam: fam is Family.S2  # noqa: E731
    is_s3 = lambda fam: fam is not Family.S2  # noqa: E731
    if m_pr != m_ch:
        if split(_m_printed, is_s2) != split(_m_chain, is_s2):
            flags.append(M_T_COEFFICIENT)
        if split(_m_printed, is_s3) != split(_m_chain, is_s3):
            flags.append(M_S3_COEFFICIENT)
    if es_pr != es_ch:
        if split(_es_printed, is_s2) != split(_es_chain, is_s2):
            flags.append(ES_T_COEFFICIENT)
        if split(_es_printed, is_s3) != split(_es_chain, is_s3):
            flags.append(ES_S3_COEFFICIENT)
    if ez_cl != ez_as:
        flags.append(EZ_CLOSED_VS_ASSEMBLED)
    return flags


def galois_report(p: SingularProfile) -> GaloisReport:
    m_pr, m_ch = exceptional_curve_count(p)
    es_pr, es_ch = euler_preimage_sing(p)
    ez_cl, ez_as = euler_Z(p)
    kz = canonical_square_Z(p)
    return GaloisReport(
        S_sing=galois_singular_count(p),
        M_printed=m_pr,
        M_chain=m_ch,
        e_presing_printed=es_pr,
        e_presing_chain=es_ch,
        KZ_square=kz,
        eZ_closed=ez_cl,
        eZ_assembled=ez_as,
        chiZ_from_assembled=(kz + ez_as) / 12,
        chiZ_from_closed=(kz + ez_cl) / 12,
        discrepancy_flags=_discrepancies(p, m_pr, m_ch, es_pr, es_ch, ez_cl, ez_as),
    )
