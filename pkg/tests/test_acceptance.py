"""Acceptance criteria; each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` (the lines are printed even
without ``-s``).
"""
from __future__ import annotations

import contextlib
import math
import random
import time

import pytest

from agcover import kernels
from agcover.feasibility import EnumerationQuery, check_constraints, enumerate_profiles
from agcover.galois import (
    ES_T_COEFFICIENT,
    EZ_CLOSED_VS_ASSEMBLED,
    M_T_COEFFICIENT,
    euler_preimage_sing,
    galois_report,
)
from agcover.invariants import (
    canonical_square,
    chi_structure,
    dual_degree,
    euler_X,
    euler_X_assembled,
    genus_branch,
    hodge_bound,
)
from agcover.local_models import (
    A,
    branch_parametrization_check,
    classify_plane_Am,
    discriminant_curve,
    residual_curve,
)
from agcover.monodromy import TrackingParams, admissible_set, certify, make_model
from agcover.poly import BivariatePolynomial
from agcover.profile import Family, SingularityClass, SingularProfile, aggregates, delta_invariant

SEED = 20240917


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number: int, title: str, budget_s: float = 10.0):
        start = time.perf_counter()
        status, note = "PASS", ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if elapsed > budget_s:
                status, note = "FAIL", f" (took {elapsed:.2f}s, budget {budget_s:.0f}s)"
                raise AssertionError(f"criterion {number} exceeded its time budget")
        except BaseException:
            status = "FAIL"
            raise
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n[{status}] criterion {number:2d}: {title} [{elapsed:.2f}s]{note}")

    return run


def systematic_profiles(count: int = 1000, seed: int = SEED) -> list[SingularProfile]:
    """Structurally valid profiles with d <= 10, k <= 4 and counts <= 5, from a fixed seed."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = rng.randint(1, 10)
        N = rng.randint(2, 8)
        n = {k: rng.randint(0, 5) for k in range(0, 5) if N >= 3 and rng.random() < 0.4}
        m = {k: rng.randint(0, 5) for k in range(1, 5) if N >= 3 and rng.random() < 0.4}
        t = {k: rng.randint(0, 5) for k in range(1, 5) if N >= 4 and rng.random() < 0.4}
        out.append(SingularProfile(d, N, n, m, t))
    return out


def test_c01_classical_profiles(criterion):
    with criterion(1, "classical profiles: cubic, double sextic, quartic"):
        cases = [
            (SingularProfile(3, 3, n={0: 6}), (3, 9, 1)),
            (SingularProfile(3, 2), (0, 24, 2)),
            (SingularProfile(6, 4, n={0: 24}, t={1: 12}), (0, 24, 2)),
        ]
        for p, expected in cases:
            assert (canonical_square(p), euler_X(p), chi_structure(p)) == expected
            hb = hodge_bound(p)
            assert hb.satisfied and hb.equality
        quartic = cases[2][0]
        assert genus_branch(quartic) == 19
        assert dual_degree(quartic) == 36


def test_c02_noether_identity(criterion):
    with criterion(2, "Noether identity on 1000 systematic profiles"):
        profiles = systematic_profiles()
        assert len(profiles) == 1000
        failures = [p for p in profiles if canonical_square(p) + euler_X(p) != 12 * chi_structure(p)]
        assert failures == []


def test_c03_assembly_equivalence(criterion):
    with criterion(3, "closed-form e(X) equals assembly on 1000 profiles"):
        failures = [p for p in systematic_profiles() if euler_X(p) != euler_X_assembled(p)]
        assert failures == []


def test_c04_local_normal_forms(criterion):
    u, v = BivariatePolynomial.gens("u", "v")
    z, w = BivariatePolynomial.gens("z", "w")
    with criterion(4, "local normal forms for 1 <= n <= 12", budget_s=1.0):
        for n in range(1, 13):
            disc = discriminant_curve(n)
            assert disc.raw == -27 * (v**2 - 4 * u ** (3 * n))
            assert disc.normalized == v**2 - 4 * u ** (3 * n)
            assert classify_plane_Am(disc.normalized) == A(3 * n - 1)
            assert residual_curve(n) == w**2 - 4 * z**n
            assert branch_parametrization_check(n)


def test_c05_delta_dictionary(criterion):
    with criterion(5, "delta invariants match ceil(m/2) of the A_m index for k <= 6"):
        for k in range(0, 7):
            # curve index from the monodromy dictionary: S2(k) is A_{2k-1}; S3 index n gives A_{3n-1}
            expected = {Family.S3_ODD: (6 * k + 2, 3 * k + 1)}
            if k >= 1:
                expected[Family.S2] = (2 * k - 1, k)
                expected[Family.S3_EVEN] = (6 * k - 1, 3 * k)
            for fam, (a_m, claimed) in expected.items():
                c = SingularityClass(fam, k)
                assert c.curve_index == a_m
                assert delta_invariant(c) == math.ceil(a_m / 2) == claimed


def test_c06_monodromy_certification(criterion):
    with criterion(6, "monodromy: S3Cover(1..4), S2Pair(1..4), Smooth2", budget_s=30.0):
        params = TrackingParams()
        assert params.newton_tol == 1e-12
        for n in range(1, 5):
            cert = certify(make_model("s3", n), params)
            assert cert.ok, (n, cert.checks)
            assert cert.descriptor.iso_class == "S3" and cert.descriptor.order == 6
            a, b = cert.descriptor.generators
            assert a.is_transposition() and b.is_transposition()
            assert not a.commutes_with(b) and (a * b).order() == 3
            assert cert.checks["step_halving_invariant"] and cert.max_residual < 1e-12
        for k in range(1, 5):
            cert = certify(make_model("s2pair", k), params)
            assert cert.ok, (k, cert.checks)
            assert cert.descriptor.iso_class == "Z2xZ2" and cert.descriptor.order == 4
            a, b = cert.descriptor.generators
            assert a.commutes_with(b) and not (a.support() & b.support())
            assert cert.checks["step_halving_invariant"] and cert.max_residual < 1e-12
        cert = certify(make_model("smooth2"), params)
        assert cert.ok and cert.descriptor.iso_class == "Z2" and cert.descriptor.order == 2
        assert cert.checks["step_halving_invariant"] and cert.max_residual < 1e-12


def test_c07_presentation_arithmetic(criterion):
    with criterion(7, "admissible_set(100) is m = 2 mod 3"):
        assert admissible_set(100) == {m for m in range(1, 101) if m % 3 == 2}


def test_c08_feasibility_oracle(criterion):
    with criterion(8, f"pruned enumeration equals brute force (backend {kernels.backend_name()})"):
        for N in (2, 3, 4):
            q = EnumerationQuery(3, N, 1, count_cap=8)
            pruned = enumerate_profiles(q)
            brute = enumerate_profiles(q, brute_force=True)
            assert set(pruned) == set(brute)
            assert len(pruned) == len(set(pruned))
            if N == 3:
                assert SingularProfile(3, 3, n={0: 6}) in pruned


def test_c09_divisibility_and_degree_rules(criterion):
    with criterion(9, "divisibility and N >= 6 rules reject violators"):
        targeted = [
            SingularProfile(3, 3, n={0: 1}),
            SingularProfile(2, 4, n={0: 3}, t={1: 1}),
            SingularProfile(10, 6),
            SingularProfile(10, 7, n={0: 6}),
        ]
        seen = {"c": 0, "n": 0, "N": 0}
        for p in targeted + systematic_profiles():
            a = aggregates(p)
            rep = check_constraints(p)
            if a.C_pseudo % 3:
                seen["c"] += 1
                assert not rep["cusp_divisibility"].passed and not rep.admissible
            if a.N_pseudo % 4:
                seen["n"] += 1
                assert not rep["node_divisibility"].passed and not rep.admissible
            if p.N >= 6 and a.N_pseudo == 0:
                seen["N"] += 1
                assert not rep["pseudo_node_rule"].passed and not rep.admissible
        assert all(seen.values()), seen


def test_c10_galois_cross_check(criterion):
    with criterion(10, "Galois report: both evaluations and flagging"):
        rep = galois_report(SingularProfile(3, 3, n={0: 6}))
        assert rep.eZ_assembled == 24 and rep.chiZ_from_assembled == 2 and rep.chiZ_integral
        assert rep.eZ_closed == 42 and rep.chiZ_from_closed.denominator != 1
        assert EZ_CLOSED_VS_ASSEMBLED in rep.discrepancy_flags

        rng = random.Random(SEED + 10)
        for _ in range(200):
            d, N = rng.randint(1, 10), rng.randint(4, 8)
            t = {2: rng.randint(1, 5), **{k: rng.randint(0, 5) for k in (1, 3, 4) if rng.random() < 0.5}}
            n = {k: rng.randint(0, 5) for k in range(5) if rng.random() < 0.4}
            flags = galois_report(SingularProfile(d, N, n=n, t=t)).discrepancy_flags
            assert M_T_COEFFICIENT in flags and ES_T_COEFFICIENT in flags

        for _ in range(200):
            d, N = rng.randint(1, 10), rng.randint(3, 8)
            n0 = rng.randint(0, 8)
            m = {k: rng.randint(0, 5) for k in range(1, 7) if rng.random() < 0.5}
            printed, chain = euler_preimage_sing(SingularProfile(d, N, n={0: n0}, m=m))
            assert printed == chain
