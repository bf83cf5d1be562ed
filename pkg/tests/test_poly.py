from __future__ import annotations

import pytest
import sympy
from sympy.polys.matrices import DomainMatrix
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings
from hypothesis import strategies as st

from agcover.poly import (
    BivariatePolynomial,
    InexactDivision,
    bareiss_determinant,
    discriminant,
    resultant,
    sylvester_matrix,
    univariate,
)

X, Y = sympy.symbols("x y")


def to_sympy(p: BivariatePolynomial) -> sympy.Expr:
    return sympy.expand(sum(c * X**i * Y**j for (i, j), c in p))


polys = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-20, 20), max_size=6
).map(BivariatePolynomial)


@given(polys, polys)
def test_ring_operations_match_sympy(f, g):
    F, G = to_sympy(f), to_sympy(g)
    assert sympy.expand(to_sympy(f + g) - (F + G)) == 0
    assert sympy.expand(to_sympy(f - g) - (F - G)) == 0
    assert sympy.expand(to_sympy(f * g) - F * G) == 0


@given(polys, st.integers(0, 3))
def test_power_matches_repeated_product(f, e):
    prod = BivariatePolynomial.constant(1)
    for _ in range(e):
        prod = prod * f
    assert f**e == prod


@given(polys, polys)
def test_exact_division_recovers_factor(f, g):
    if not g:
        return
    assert (f * g).exact_div(g) == f


@given(polys, polys)
def test_divmod_reconstructs(f, g):
    if not g:
        return
    q, r = divmod(f, g)
    assert q * g + r == f


def test_inexact_division_raises():
    x, y = BivariatePolynomial.gens()
    with pytest.raises(InexactDivision):
        (x**2 + y).exact_div(x + 1)
    with pytest.raises(ZeroDivisionError):
        divmod(x, BivariatePolynomial())


def test_zero_terms_are_dropped_and_equality_with_ints():
    p = BivariatePolynomial({(1, 0): 0, (0, 0): 3})
    assert p == 3
    assert len(p) == 1
    assert BivariatePolynomial() == 0
    assert not BivariatePolynomial()


def test_degrees_and_order():
    x, y = BivariatePolynomial.gens()
    p = x**3 * y + 2 * y**4 - x**2
    assert p.degree(0) == 3 and p.degree(1) == 4 and p.degree() == 4
    assert p.order() == 2
    assert p.leading_term() == ((3, 1), 1)


def test_content_and_primitive():
    x, y = BivariatePolynomial.gens()
    p = 6 * x**2 - 9 * y
    assert p.content() == 3
    assert p.primitive() == 2 * x**2 - 3 * y


@given(polys)
def test_derivative_matches_sympy(f):
    assert sympy.expand(to_sympy(f.derivative(0)) - sympy.diff(to_sympy(f), X)) == 0
    assert sympy.expand(to_sympy(f.derivative(1)) - sympy.diff(to_sympy(f), Y)) == 0


small_polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-5, 5), max_size=3
).map(BivariatePolynomial)


@given(polys, small_polys, small_polys)
@settings(max_examples=50, deadline=None)
def test_compose_matches_sympy(f, a, b):
    lhs = to_sympy(f.compose(a, b))
    rhs = sympy.expand(to_sympy(f).subs({X: to_sympy(a), Y: to_sympy(b)}, simultaneous=True))
    assert sympy.expand(lhs - rhs) == 0


@given(polys, st.integers(-3, 3), st.integers(-3, 3))
def test_evaluation(f, a, b):
    assert f(a, b) == to_sympy(f).subs({X: a, Y: b})


@given(polys)
def test_json_round_trip(f):
    assert BivariatePolynomial.from_json(f.to_json()) == f


def test_printing():
    u, v = BivariatePolynomial.gens("u", "v")
    assert str(v**2 - 4 * u**2) in ("v^2 - 4*u^2", "-4*u^2 + v^2")
    assert str(BivariatePolynomial()) == "0"


def test_bareiss_matches_sympy_on_integer_matrices():
    import random

    rng = random.Random(7)
    for n in range(1, 6):
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        det = bareiss_determinant([[BivariatePolynomial.constant(c) for c in r] for r in rows])
        assert det == int(sympy.Matrix(rows).det())


def test_bareiss_polynomial_matrix():
    x, y = BivariatePolynomial.gens()
    M = [[x, y, 1], [0, x, y], [y, 0, x]]
    det = bareiss_determinant(M)
    ref = sympy.Matrix([[X, Y, 1], [0, X, Y], [Y, 0, X]]).det()
    assert sympy.expand(to_sympy(det) - ref) == 0


def test_sylvester_shape():
    S = sylvester_matrix([1, 2, 3], [4, 5])
    assert S == [[1, 2, 3], [4, 5, 0], [0, 4, 5]]


@st.composite
def w_polys(draw):
    deg = draw(st.integers(1, 4))
    coeffs = {e: draw(small_polys) for e in range(deg)}
    coeffs[deg] = draw(small_polys.filter(bool))
    return coeffs


def _w_sympy(coeffs):
    W = sympy.Symbol("w")
    return sum(to_sympy(c) * W**e for e, c in coeffs.items()), W


@given(w_polys(), w_polys())
@settings(max_examples=40, deadline=None)
def test_resultant_matches_sympy(f, g):
    F, W = _w_sympy(f)
    G, _ = _w_sympy(g)
    # sympy.resultant is avoided: in sympy 1.14 it has the wrong sign for degrees (1, 3)
    ring = sympy.ZZ[X, Y]
    ref = ring.to_sympy(DomainMatrix.from_Matrix(sylvester(F, G, W)).convert_to(ring).det())
    assert sympy.expand(to_sympy(resultant(f, g)) - ref) == 0


@given(w_polys())
@settings(max_examples=40, deadline=None)
def test_discriminant_matches_sympy(f):
    F, W = _w_sympy(f)
    if sympy.degree(F, W) < 1 or max(f) < 1:
        return
    ref = sympy.discriminant(F, W)
    assert sympy.expand(to_sympy(discriminant(f)) - ref) == 0


@given(w_polys(), w_polys())
@settings(max_examples=30, deadline=None)
def test_resultant_swap_sign(f, g):
    m, n = max(f), max(g)
    assert resultant(g, f) == (-1) ** (m * n) * resultant(f, g)


def test_known_resultant_sign():
    # Res(w + 1, w^3) = (-1)^3
    one = BivariatePolynomial.constant(1)
    zero = BivariatePolynomial()
    assert resultant({1: one, 0: one}, {3: one, 2: zero, 1: zero, 0: zero}) == -1


def test_univariate():
    p = univariate([1, 0, -2], "t")
    assert p.degree(0) == 2 and p.coeff(2, 0) == -2
