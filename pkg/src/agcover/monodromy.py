"""Local monodromy by numerical continuation of fibre roots.

A :class:`FiberModel` restricts a local cover to a line in the base: a
polynomial ``P(s, w)`` whose roots in ``w`` are the fibre over the point with
line parameter ``s``.  Loops in the ``s``-plane around the branch points are
followed with a predictor-corrector tracker and the endpoint matching gives
a permutation of the fibre.

Permutations compose left to right: ``a * b`` applies ``a`` first.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .poly import BivariatePolynomial, discriminant


class TrackingError(RuntimeError):
    pass


class PathTooClose(TrackingError):
    """Roots came too close together, or a loop passes too near a branch point."""


class NoConvergence(TrackingError):
    """Newton correction failed to reach the residual tolerance."""


# --- permutations -------------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{0, ..., D-1}``; printed 1-based in cycle notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        """Build from 1-based cycles, e.g. ``from_cycles(3, (1, 3))``."""
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + tuple(cyc[:1])):
                img[a - 1] = b - 1
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return Permutation(tuple(other.images[i] for i in self.images))

    def __pow__(self, e: int) -> Permutation:
        if e < 0:
            return self.inverse() ** (-e)
        out = Permutation.identity(self.degree)
        for _ in range(e):
            out = out * self
        return out

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its smallest entry."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(x + 1 for x in cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if self.cycles() else 1

    def support(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self.images) if i != j)

    def is_transposition(self) -> bool:
        return self.cycle_type() == (2,)

    def commutes_with(self, other: Permutation) -> bool:
        return self * other == other * self

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) if cyc else "()"


def generate_group(gens: Sequence[Permutation]) -> set[Permutation]:
    """Closure of ``gens`` under composition (finite, so inverses come for free)."""
    if not gens:
        raise ValueError("need at least one generator")
    ident = Permutation.identity(gens[0].degree)
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                x = g * h
                if x not in group:
                    group.add(x)
                    nxt.append(x)
        frontier = nxt
    return group


@dataclass(frozen=True)
class GroupDescriptor:
    order: int
    iso_class: str  # Z2, Z2xZ2, S3 or Other
    generators: tuple[Permutation, ...]
    generator_cycle_types: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "generators": [str(g) for g in self.generators],
            "generator_cycle_types": [list(t) for t in self.generator_cycle_types],
            "group": self.iso_class,
            "order": self.order,
        }


def describe_group(gens: Sequence[Permutation]) -> GroupDescriptor:
    group = generate_group(gens)
    order = len(group)
    abelian = all(a.commutes_with(b) for a in gens for b in gens)
    if order == 2:
        iso = "Z2"
    elif order == 4 and all((g * g).is_identity() for g in group):
        iso = "Z2xZ2"
    elif order == 6 and not abelian:
        iso = "S3"
    else:
        iso = "Other"
    return GroupDescriptor(order, iso, tuple(gens), tuple(g.cycle_type() for g in gens))


# --- the braid-type relation on two generators ----------------------------------


def presentation_admissible(m: int) -> bool:
    """Does ``(t1 t2)^k t1^(1-e) = (t2 t1)^k t2^(1-e)`` hold for ``t1=(1 3)``, ``t2=(2 3)``?

    ``m = 2k - e`` with ``e`` in ``{0, 1}``; this is the defining relation of
    the local fundamental group of an ``A_m`` curve germ.
    """
    if m < 1:
        raise ValueError("m must be positive")
    e = m % 2
    k = (m + e) // 2
    t1 = Permutation.from_cycles(3, (1, 3))
    t2 = Permutation.from_cycles(3, (2, 3))
    lhs = (t1 * t2) ** k * t1 ** (1 - e)
    rhs = (t2 * t1) ** k * t2 ** (1 - e)
    return lhs == rhs


def admissible_set(m_max: int) -> set[int]:
    if m_max < 1:
        raise ValueError("m_max must be positive")
    return {m for m in range(1, m_max + 1) if presentation_admissible(m)}


# --- loops --------------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    a: complex
    b: complex

    def reverse(self) -> Line:
        return Line(self.b, self.a)

    @property
    def start(self) -> complex:
        return self.a

    @property
    def end(self) -> complex:
        return self.b

    def distance_to(self, p: complex) -> float:
        d = self.b - self.a
        if d == 0:
            return abs(p - self.a)
        t = ((p - self.a) * d.conjugate()).real / abs(d) ** 2
        t = min(1.0, max(0.0, t))
        return abs(p - (self.a + t * d))


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    theta0: float
    theta1: float

    def reverse(self) -> Arc:
        return Arc(self.center, self.radius, self.theta1, self.theta0)

    @property
    def start(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.theta0)

    @property
    def end(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.theta1)

    def distance_to(self, p: complex) -> float:
        lo, hi = sorted((self.theta0, self.theta1))
        if hi - lo >= 2 * math.pi - 1e-12:
            return abs(abs(p - self.center) - self.radius)
        ang = cmath.phase(p - self.center)
        # bring the angle into [lo, lo + 2pi)
        ang = lo + (ang - lo) % (2 * math.pi)
        if ang <= hi:
            return abs(abs(p - self.center) - self.radius)
        return min(abs(p - self.start), abs(p - self.end))


Piece = Line | Arc


@dataclass(frozen=True)
class Loop:
    """Closed path in the ``s``-plane starting and ending at ``base``."""

    base: complex
    pieces: tuple[Piece, ...]

    def reverse(self) -> Loop:
        return Loop(self.base, tuple(p.reverse() for p in reversed(self.pieces)))

    def __add__(self, other: Loop) -> Loop:
        """Concatenation: run ``self`` first, then ``other``."""
        if abs(self.base - other.base) > 1e-12:
            raise ValueError("loops must share a base point")
        return Loop(self.base, self.pieces + other.pieces)

    def distance_to(self, p: complex) -> float:
        return min(piece.distance_to(p) for piece in self.pieces)


def loop_around(base: complex, center: complex, radius: float, theta: float | None = None) -> Loop:
    """Go straight to the circle ``|s - center| = radius``, once round counterclockwise, and back.

    The circle is entered at angle ``theta``; by default the point nearest
    ``base`` (or straight up when ``base`` is the center).
    """
    base, center = complex(base), complex(center)
    if theta is None:
        theta = cmath.phase(base - center) if base != center else math.pi / 2
    entry = center + radius * cmath.exp(1j * theta)
    return Loop(base, (Line(base, entry), Arc(center, radius, theta, theta + 2 * math.pi), Line(entry, base)))


# --- fibre models ---------------------------------------------------------------


@dataclass(frozen=True)
class FiberModel:
    """A cover restricted to a line: fibre polynomial ``P(s, w)`` plus a base point."""

    kind: str
    index: int | None
    poly: BivariatePolynomial  # in (s, w)
    base: complex
    line: str

    @property
    def degree(self) -> int:
        return self.poly.degree(1)

    def coefficient_grid(self) -> np.ndarray:
        """``C[i, j]`` = coefficient of ``s^i w^j``."""
        C = np.zeros((self.poly.degree(0) + 1, self.poly.degree(1) + 1), dtype=np.complex128)
        for (i, j), c in self.poly:
            C[i, j] = c
        return C

    def branch_points(self) -> list[complex]:
        """Zeros of the discriminant in ``w``, found numerically and deduplicated."""
        disc = discriminant(self.poly.coeffs_in(1))
        by_s = disc.coeffs_in(0)
        deg = max(by_s)
        coeffs = [by_s.get(e, BivariatePolynomial()).coeff(0, 0) for e in range(deg, -1, -1)]
        roots = np.roots(np.array(coeffs, dtype=float)) if deg > 0 else []
        out: list[complex] = []
        for r in sorted(roots, key=lambda z: (round(z.real, 9), round(z.imag, 9))):
            if all(abs(r - q) > 1e-8 * (1 + abs(r)) for q in out):
                out.append(complex(r))
        return out

    def fiber(self, s: complex) -> list[complex]:
        coeffs = kernels.get().fiber_coeffs(self.coefficient_grid(), s)
        roots = np.roots(np.array(coeffs[::-1], dtype=np.complex128))
        return [complex(r) for r in roots]

    def validate_base(self, tol: float = 1e-6) -> None:
        """Reject a base point whose fibre has (numerically) repeated roots.

        ``tol`` is relative: a double root splits by about the square root of
        machine precision under ``numpy.roots``.
        """
        roots = self.fiber(self.base)
        gaps = [abs(a - b) for a, b in itertools.combinations(roots, 2)]
        scale = 1 + max((abs(r) for r in roots), default=0.0)
        if len(roots) != self.degree or (gaps and min(gaps) <= tol * scale):
            raise PathTooClose(f"base point {self.base} lies on the branch locus of {self.kind}")


def smooth2(base: complex = 1.0) -> FiberModel:
    """``w^2 = u`` along the ``u``-axis: a smooth branch curve point."""
    s, w = BivariatePolynomial.gens("s", "w")
    return FiberModel("smooth2", None, w**2 - s, complex(base), "v = 0, parameter u")


def s2pair(k: int, v0: int = 2, base: complex | None = None) -> FiberModel:
    """``(w^2 - u)(w^2 - (u - v^k))`` on the line ``v = v0``, parameter ``u``.

    The branches ``u = 0`` and ``u = v^k`` of an ``A_{2k-1}`` point meet this
    line at ``u = 0`` and ``u = v0^k``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    s, w = BivariatePolynomial.gens("s", "w")
    c = v0**k
    poly = (w**2 - s) * (w**2 - s + c)
    return FiberModel("s2pair", k, poly, complex(c / 2 if base is None else base), f"v = {v0}, parameter u")


def s3cover(n: int, u0: int = 1, base: complex = 0.0) -> FiberModel:
    """``w^3 - 3 u0^n w - v`` on the line ``u = u0``, parameter ``v``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    s, w = BivariatePolynomial.gens("s", "w")
    poly = w**3 - s if n == 0 else w**3 - 3 * u0**n * w - s
    return FiberModel("s3", n, poly, complex(base), f"u = {u0}, parameter v")


def make_model(kind: str, index: int | None = None) -> FiberModel:
    if kind == "smooth2":
        return smooth2()
    if index is None:
        raise ValueError(f"model {kind!r} needs an index")
    if kind == "s2pair":
        return s2pair(index)
    if kind == "s3":
        return s3cover(index)
    raise ValueError(f"unknown model {kind!r}")


# --- tracking -----------------------------------------------------------------------


@dataclass(frozen=True)
class TrackingParams:
    max_step: float = 0.05  # largest step as a fraction of one path piece
    gap_frac: float = 0.2  # roots move less than this times the minimal root gap
    newton_tol: float = 1e-12
    newton_maxiter: int = 50
    min_gap: float = 1e-8

    def halved(self) -> TrackingParams:
        return TrackingParams(self.max_step / 2, self.gap_frac, self.newton_tol, self.newton_maxiter, self.min_gap)


@dataclass(frozen=True)
class TrackResult:
    perm: Permutation
    steps: int
    max_residual: float
    min_root_gap: float


def _canonical_roots(roots: Sequence[complex]) -> list[complex]:
    return sorted(roots, key=lambda z: (round(z.real, 8), round(z.imag, 8)))


def _match(start: Sequence[complex], end: Sequence[complex]) -> tuple[tuple[int, ...], float]:
    """Assignment ``i -> j`` of end roots to start roots minimizing total distance."""
    n = len(start)
    best, best_cost = None, math.inf
    for perm in itertools.permutations(range(n)):
        cost = sum(abs(end[i] - start[perm[i]]) for i in range(n))
        if cost < best_cost:
            best, best_cost = perm, cost
    worst = max(abs(end[i] - start[best[i]]) for i in range(n))
    return best, worst


def start_roots(model: FiberModel, params: TrackingParams = TrackingParams(), backend: str | None = None) -> list[complex]:
    k = kernels.get(backend)
    model.validate_base()
    roots, res, ok = k.newton_correct(
        model.coefficient_grid(), model.base, model.fiber(model.base), params.newton_tol, params.newton_maxiter
    )
    if not ok:
        raise NoConvergence(f"could not polish the base fibre (residual {res:.3g})")
    return _canonical_roots(roots)


def track_fiber_detailed(
    model: FiberModel, loop: Loop, params: TrackingParams = TrackingParams(), backend: str | None = None
) -> TrackResult:
    k = kernels.get(backend)
    if abs(loop.base - model.base) > 1e-12:
        raise ValueError("loop must start at the model's base point")
    C = model.coefficient_grid()
    start = start_roots(model, params, backend)
    roots = list(start)
    steps = 0
    worst = 0.0
    gap_seen = math.inf
    for piece in loop.pieces:
        if isinstance(piece, Line):
            args = (k.LINE, piece.a, piece.b, 0j, 0.0, 0.0, 0.0)
        else:
            args = (k.ARC, 0j, 0j, piece.center, piece.radius, piece.theta0, piece.theta1)
        roots, n, res, gap, status = k.track_piece(
            C, *args, roots, params.max_step, params.gap_frac, params.newton_tol, params.newton_maxiter, params.min_gap
        )
        steps += n
        worst = max(worst, res)
        gap_seen = min(gap_seen, gap)
        if status == k.PATH_TOO_CLOSE:
            raise PathTooClose(f"root separation fell to {gap:.3g} along {piece}")
        if status == k.NO_CONVERGENCE:
            raise NoConvergence(f"Newton correction failed along {piece}")
    images, err = _match(start, roots)
    if err > 1e-6 * (1 + max(abs(r) for r in start)):
        raise TrackingError(f"end fibre does not match start fibre (error {err:.3g})")
    return TrackResult(Permutation(tuple(images)), steps, worst, gap_seen)


def track_fiber(
    model: FiberModel, loop: Loop, params: TrackingParams = TrackingParams(), backend: str | None = None
) -> Permutation:
    return track_fiber_detailed(model, loop, params, backend).perm


def check_clearance(loop: Loop, branch_points: Sequence[complex], clearance: float) -> None:
    for b in branch_points:
        dist = loop.distance_to(b)
        if dist < clearance:
            raise PathTooClose(f"loop passes within {dist:.3g} of branch point {b:.6g}")


@dataclass(frozen=True)
class LoopPlan:
    branch_points: tuple[complex, ...]
    loops: tuple[Loop, ...]
    clearance: float


def plan_loops(model: FiberModel) -> LoopPlan:
    """One small counterclockwise loop per branch point on the model's line."""
    bps = model.branch_points()
    if not bps:
        raise ValueError(f"{model.kind} has no branch points on its line")
    base_dist = min(abs(model.base - b) for b in bps)
    if len(bps) > 1:
        spread = min(abs(a - b) for a, b in itertools.combinations(bps, 2))
    else:
        spread = base_dist
    radius = min(0.25 * spread, 0.5 * base_dist)
    clearance = 0.1 * spread
    loops = tuple(loop_around(model.base, b, radius) for b in bps)
    for lp, b in zip(loops, bps):
        check_clearance(lp, [q for q in bps if q != b], clearance)
    return LoopPlan(tuple(bps), loops, clearance)


@dataclass
class MonodromyCertificate:
    model: str
    descriptor: GroupDescriptor
    checks: dict[str, bool] = field(default_factory=dict)
    max_residual: float = 0.0

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        doc = self.descriptor.to_json()
        doc["model"] = self.model
        doc["checks"] = dict(self.checks)
        doc["max_newton_residual"] = self.max_residual
        return doc


def local_monodromy_group(
    model: FiberModel, params: TrackingParams = TrackingParams(), backend: str | None = None
) -> GroupDescriptor:
    plan = plan_loops(model)
    gens = [track_fiber(model, lp, params, backend) for lp in plan.loops]
    return describe_group(gens)


def certify(model: FiberModel, params: TrackingParams = TrackingParams(), backend: str | None = None) -> MonodromyCertificate:
    """Track every branch loop, then test the conjugation-invariant claims for the model kind.

    Only conjugation-invariant facts are checked: cycle types, commutation,
    disjointness, product order and group order.
    """
    plan = plan_loops(model)
    results = [track_fiber_detailed(model, lp, params, backend) for lp in plan.loops]
    halved = [track_fiber(model, lp, params.halved(), backend) for lp in plan.loops]
    gens = [r.perm for r in results]
    desc = describe_group(gens)
    worst = max(r.max_residual for r in results)
    checks = {
        "step_halving_invariant": gens == halved,
        "newton_residual_below_tol": worst < params.newton_tol,
        "generators_are_transpositions": all(g.is_transposition() for g in gens),
    }
    if model.kind == "smooth2":
        checks["one_generator"] = len(gens) == 1
        checks["group_Z2"] = desc.iso_class == "Z2" and desc.order == 2
    elif model.kind == "s2pair":
        checks["two_generators"] = len(gens) == 2
        if len(gens) == 2:
            a, b = gens
            checks["commuting"] = a.commutes_with(b)
            checks["disjoint"] = not (a.support() & b.support())
        checks["group_Z2xZ2"] = desc.iso_class == "Z2xZ2" and desc.order == 4
    elif model.kind == "s3":
        checks["two_generators"] = len(gens) == 2
        if len(gens) == 2:
            a, b = gens
            checks["distinct"] = a != b
            checks["non_commuting"] = not a.commutes_with(b)
            checks["product_order_3"] = (a * b).order() == 3
        checks["group_S3"] = desc.iso_class == "S3" and desc.order == 6
    checks = {name: bool(ok) for name, ok in checks.items()}
    label = model.kind if model.index is None else f"{model.kind}({model.index})"
    return MonodromyCertificate(label, desc, checks, float(worst))
