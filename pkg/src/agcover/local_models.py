"""Symbolic checks of the local three-sheeted covers ``f_n``.

Every germ of a finite three-sheeted cover of smooth surfaces is, in
suitable coordinates, one of

    u = z,   v = w^3 - 3 z^n w      (n >= 1)
    u = z,   v = w^3                (n = 0)

The integer-coefficient form is used throughout; the form with coefficient
``n`` instead of ``3`` differs by rescaling ``z`` by an ``n``-th root.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import BivariatePolynomial, InexactDivision, discriminant

__all__ = [
    "CoverGerm",
    "GermClassification",
    "UnsupportedShape",
    "InexactDivision",
    "jacobian_ramification",
    "discriminant_curve",
    "normalize_in_v",
    "classify_plane_Am",
    "residual_curve",
    "galois_local_type",
    "branch_parametrization_check",
    "verify_local_model",
]


class UnsupportedShape(ValueError):
    """The germ is not of the shape the recognizer handles."""


@dataclass(frozen=True)
class GermClassification:
    kind: str  # "Smooth", "A" or "NotRecognized"
    m: int | None = None

    def __post_init__(self):
        if self.kind not in ("Smooth", "A", "NotRecognized"):
            raise ValueError(f"unknown germ kind {self.kind!r}")
        if (self.kind == "A") != (self.m is not None):
            raise ValueError("an index m is given exactly for kind 'A'")
        if self.kind == "A" and self.m < 1:
            raise ValueError("A(m) needs m >= 1")

    def __str__(self) -> str:
        return f"A({self.m})" if self.kind == "A" else self.kind


SMOOTH = GermClassification("Smooth")
NOT_RECOGNIZED = GermClassification("NotRecognized")


def A(m: int) -> GermClassification:
    return GermClassification("A", m)


@dataclass(frozen=True)
class CoverGerm:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")

    @property
    def components(self) -> tuple[BivariatePolynomial, BivariatePolynomial]:
        """``(u, v)`` as polynomials in ``(z, w)``."""
        z, w = BivariatePolynomial.gens("z", "w")
        if self.n == 0:
            return z, w**3
        return z, w**3 - 3 * z**self.n * w


def jacobian_ramification(g: CoverGerm | int) -> BivariatePolynomial:
    """Equation of the ramification curve: ``dv/dw`` with its factor 3 removed."""
    g = g if isinstance(g, CoverGerm) else CoverGerm(g)
    _, v = g.components
    # du/dz = 1, du/dw = 0, so the Jacobian determinant is dv/dw
    return v.derivative(1).exact_div(3)


def _fiber_polynomial(n: int) -> dict[int, BivariatePolynomial]:
    """``w^3 - 3 u^n w - v`` as ``{power of w: coefficient in Z[u, v]}``."""
    u, v = BivariatePolynomial.gens("u", "v")
    one = BivariatePolynomial.constant(1, ("u", "v"))
    if n == 0:
        return {3: one, 0: -v}
    return {3: one, 1: -3 * u**n, 0: -v}


def normalize_in_v(F: BivariatePolynomial) -> BivariatePolynomial:
    """Primitive part with positive leading coefficient in the second variable."""
    P = F.primitive()
    top = P.coeffs_in(1)[P.degree(1)]
    return -P if top.leading_term()[1] < 0 else P


@dataclass(frozen=True)
class DiscriminantCurve:
    raw: BivariatePolynomial
    normalized: BivariatePolynomial


def discriminant_curve(n: int) -> DiscriminantCurve:
    """Branch curve of ``f_n``: the discriminant in ``w`` of ``w^3 - 3u^n w - v``.

    ``raw`` is computed from a Bareiss determinant of the Sylvester matrix of
    the fibre polynomial and its ``w``-derivative.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    raw = discriminant(_fiber_polynomial(n))
    return DiscriminantCurve(raw, normalize_in_v(raw))


def classify_plane_Am(F: BivariatePolynomial) -> GermClassification:
    """Recognize the germ at the origin of ``F = c(u) v^2 + a(u) v + b(u)``.

    ``c(0)`` must be nonzero.  Completing the square leaves ``v'^2`` minus a
    unit times ``D = a^2 - 4 c b``, so the germ is ``A_{ord D - 1}``.  When
    ``D`` vanishes identically ``F`` is a unit times a square of a smooth
    graph, and the reduced germ is reported as smooth.
    """
    by_v = F.coeffs_in(1)
    if F.degree(1) != 2:
        raise UnsupportedShape(f"expected degree 2 in {F.vars[1]}, got {F.degree(1)}")
    c = by_v[2]
    if c.coeff(0, 0) == 0:
        raise UnsupportedShape(f"coefficient of {F.vars[1]}^2 is not a unit at the origin")
    zero = BivariatePolynomial({}, F.vars)
    a, b = by_v.get(1, zero), by_v.get(0, zero)
    if F.order() < 2:
        return SMOOTH
    D = a * a - 4 * c * b
    if not D:
        return SMOOTH
    k = D.order()
    if k < 2:
        return NOT_RECOGNIZED
    return A(k - 1)


def residual_curve(n: int) -> BivariatePolynomial:
    """Quotient of ``f_n^*(B_n)`` by twice the ramification curve, in ``(z, w)``.

    Raises :class:`InexactDivision` if the division leaves a remainder.
    """
    if n < 1:
        raise ValueError("n must be positive")
    z, w = BivariatePolynomial.gens("z", "w")
    pulled_back = (w**3 - 3 * z**n * w) ** 2 - 4 * z ** (3 * n)
    return pulled_back.exact_div((w**2 - z**n) ** 2)


# --- surface germs in three variables ----------------------------------------

Germ3 = dict[tuple[int, int, int], int]


def _rank(mat: list[list[Fraction]]) -> tuple[int, list[Fraction] | None]:
    """Rank of a 3x3 matrix and, for rank 2, a kernel vector."""
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][col]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if r != cols - 1:
        return r, None
    free = next(c for c in range(cols) if c not in pivots)
    kernel = [Fraction(0)] * cols
    kernel[free] = Fraction(1)
    for i, pc in enumerate(pivots):
        kernel[pc] = -m[i][free]
    return r, kernel


def classify_surface_germ(germ: Germ3) -> GermClassification:
    """Type of the hypersurface germ ``{G = 0}`` in ``C^3`` at the origin.

    Handles the shapes ``Q(x, y) + c z^n`` (with ``Q`` nondegenerate) and
    nondegenerate quadratic cones; anything else is ``NotRecognized``.
    """
    terms = {e: c for e, c in germ.items() if c}
    if terms.get((0, 0, 0)):
        raise ValueError("germ does not pass through the origin")
    if any(sum(e) == 1 for e in terms):
        return SMOOTH
    q = [[Fraction(0)] * 3 for _ in range(3)]
    for e, c in terms.items():
        if sum(e) != 2:
            continue
        idx = [i for i in range(3) for _ in range(e[i])]
        i, j = idx
        if i == j:
            q[i][i] += c
        else:
            q[i][j] += Fraction(c, 2)
            q[j][i] += Fraction(c, 2)
    rank, kernel = _rank(q)
    if rank == 3:
        return A(1)
    if rank != 2:
        return NOT_RECOGNIZED
    axis = [i for i, x in enumerate(kernel) if x != 0]
    if len(axis) != 1:
        return NOT_RECOGNIZED
    ax = axis[0]
    higher = {e: c for e, c in terms.items() if sum(e) > 2}
    if len(higher) != 1:
        return NOT_RECOGNIZED
    (e, _), = higher.items()
    if any(e[i] for i in range(3) if i != ax):
        return NOT_RECOGNIZED
    return A(e[ax] - 1)


def galois_germ(case: str, n: int) -> Germ3:
    """Equation of a Galois-closure germ over an ``A_{n,2}`` or ``A_{n,3}`` point.

    ``S2``: ``w^2 = z^2 - v^n`` in coordinates ``(z, w, v)``.
    ``S3``: ``y^2 = w^2 - 4 z^n`` in coordinates ``(y, w, z)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    germ: Germ3 = {}

    def add(e, c):
        germ[e] = germ.get(e, 0) + c

    if case == "S2":
        add((0, 2, 0), 1)
        add((2, 0, 0), -1)
        add((0, 0, n), 1)
    elif case == "S3":
        add((2, 0, 0), 1)
        add((0, 2, 0), -1)
        add((0, 0, n), 4)
    else:
        raise ValueError(f"case must be 'S2' or 'S3', got {case!r}")
    return germ


def galois_local_type(case: str, n: int) -> GermClassification:
    return classify_surface_germ(galois_germ(case, n))


def _parametrizations(n: int):
    """Branches of ``w^2 = z^n`` as ``(z(t), w(t), expected v(t))``."""
    t = BivariatePolynomial.monomial(1, 0, vars=("t", "_"))
    if n % 2:
        k = n // 2
        return [(t**2, t**n, -2 * t ** (6 * k + 3))]
    k = n // 2
    return [(t, sign * t**k, -2 * sign * t ** (3 * k)) for sign in (1, -1)]


def branch_parametrization_check(n: int) -> bool:
    """Push the parametrized ramification curve forward and test it against ``B_n``.

    For odd ``n = 2k+1``: ``z = t^2``, ``w = t^n`` gives ``v = -2 t^(6k+3)``.
    For even ``n = 2k``: ``z = t``, ``w = +-t^k`` gives ``v = -+2 t^(3k)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    g = CoverGerm(n)
    u_poly, v_poly = g.components
    J = jacobian_ramification(g)
    B = discriminant_curve(n).normalized
    for z_t, w_t, expected_v in _parametrizations(n):
        if J.compose(z_t, w_t):
            return False
        u_t = u_poly.compose(z_t, w_t)
        v_t = v_poly.compose(z_t, w_t)
        if v_t != expected_v or B.compose(u_t, v_t):
            return False
    return True


def _closed_form_discriminant(n: int) -> BivariatePolynomial:
    # discriminant of w^3 + p w + q is -4 p^3 - 27 q^2
    u, v = BivariatePolynomial.gens("u", "v")
    p = -3 * u**n if n else BivariatePolynomial({}, ("u", "v"))
    q = -v
    return -4 * p**3 - 27 * q**2


def verify_local_model(n: int) -> dict[str, bool]:
    """Run every symbolic check for ``f_n``; keys name the checks."""
    z, w = BivariatePolynomial.gens("z", "w")
    u, v = BivariatePolynomial.gens("u", "v")
    checks: dict[str, bool] = {}
    checks["ramification_curve"] = jacobian_ramification(n) == (w**2 - z**n if n else w**2)
    disc = discriminant_curve(n)
    checks["discriminant_closed_form"] = disc.raw == _closed_form_discriminant(n)
    checks["discriminant_normalized"] = disc.normalized == (v**2 - 4 * u ** (3 * n) if n else v**2)
    expected_type = A(3 * n - 1) if n else SMOOTH
    checks["branch_germ_type"] = classify_plane_Am(disc.normalized) == expected_type
    if n >= 1:
        try:
            checks["residual_curve"] = residual_curve(n) == w**2 - 4 * z**n
        except InexactDivision:
            checks["residual_curve"] = False
        checks["branch_parametrization"] = branch_parametrization_check(n)
        checks["galois_germ_type"] = galois_local_type("S3", n) == (A(n - 1) if n >= 2 else SMOOTH)
    return checks
