from __future__ import annotations

import pytest
import sympy

from agcover.local_models import (
    A,
    NOT_RECOGNIZED,
    SMOOTH,
    CoverGerm,
    GermClassification,
    InexactDivision,
    UnsupportedShape,
    branch_parametrization_check,
    classify_plane_Am,
    classify_surface_germ,
    discriminant_curve,
    galois_local_type,
    jacobian_ramification,
    normalize_in_v,
    residual_curve,
    verify_local_model,
)
from agcover.poly import BivariatePolynomial

z, w = BivariatePolynomial.gens("z", "w")
u, v = BivariatePolynomial.gens("u", "v")


def test_ramification_curves():
    assert jacobian_ramification(1) == w**2 - z
    assert jacobian_ramification(0) == w**2
    assert jacobian_ramification(3) == w**2 - z**3


@pytest.mark.parametrize("n", range(0, 13))
def test_discriminant_against_sympy(n):
    U, V, W = sympy.symbols("u v w")
    fibre = W**3 - 3 * U**n * W - V if n else W**3 - V
    ref = sympy.expand(sympy.discriminant(fibre, W))
    got = sum(c * U**i * V**j for (i, j), c in discriminant_curve(n).raw)
    assert sympy.expand(got - ref) == 0


@pytest.mark.parametrize("n", range(0, 13))
def test_discriminant_closed_form(n):
    disc = discriminant_curve(n)
    if n == 0:
        assert disc.raw == -27 * v**2
        assert disc.normalized == v**2
    else:
        assert disc.raw == -27 * (v**2 - 4 * u ** (3 * n))
        assert disc.normalized == v**2 - 4 * u ** (3 * n)


def test_plane_germ_examples():
    assert classify_plane_Am(v**2 - 4 * u**3) == A(2)
    assert classify_plane_Am(v**2 - u**2) == A(1)
    assert classify_plane_Am(v**2 - 4 * u**6) == A(5)
    assert classify_plane_Am(v**2 - u) == SMOOTH
    assert classify_plane_Am(v**2 + 2 * u * v + u**2) == SMOOTH  # (v + u)^2


def test_plane_germ_with_linear_term_in_v():
    # (v + u^2)^2 - u^7 -> A_6
    assert classify_plane_Am((v + u**2) ** 2 - u**7) == A(6)
    assert classify_plane_Am((1 + u) * v**2 - u**4) == A(3)


def test_plane_germ_rejects_other_shapes():
    with pytest.raises(UnsupportedShape):
        classify_plane_Am(v**3 - u**2)
    with pytest.raises(UnsupportedShape):
        classify_plane_Am(u * v**2 - u**3)


def test_normalize_in_v_sign_and_content():
    assert normalize_in_v(-27 * v**2 + 108 * u**3) == v**2 - 4 * u**3


@pytest.mark.parametrize("n", range(1, 13))
def test_residual_curve(n):
    assert residual_curve(n) == w**2 - 4 * z**n


def test_residual_division_detects_inexactness():
    with pytest.raises(InexactDivision):
        (w**6 + z).exact_div((w**2 - z) ** 2)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12])
def test_branch_parametrization(n):
    assert branch_parametrization_check(n)


@pytest.mark.parametrize(
    "case, n, expected",
    [("S2", 1, SMOOTH), ("S2", 4, A(3)), ("S3", 2, A(1)), ("S3", 1, SMOOTH), ("S3", 5, A(4)), ("S2", 2, A(1))],
)
def test_galois_germ_types(case, n, expected):
    assert galois_local_type(case, n) == expected


def test_surface_germ_classifier():
    assert classify_surface_germ({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1}) == A(1)
    assert classify_surface_germ({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 5): 1}) == A(4)
    assert classify_surface_germ({(1, 0, 0): 1, (0, 0, 3): 1}) == SMOOTH
    assert classify_surface_germ({(2, 0, 0): 1, (0, 0, 3): 1}) == NOT_RECOGNIZED
    # xy + z^3 has a rank-2 quadratic part with kernel along z
    assert classify_surface_germ({(1, 1, 0): 1, (0, 0, 3): 1}) == A(2)
    with pytest.raises(ValueError):
        classify_surface_germ({(0, 0, 0): 1})


@pytest.mark.parametrize("n", range(0, 13))
def test_verify_local_model_all_pass(n):
    checks = verify_local_model(n)
    assert checks and all(checks.values()), checks
    if n >= 1:
        assert {"residual_curve", "branch_parametrization", "galois_germ_type"} <= set(checks)


def test_germ_classification_validation():
    assert str(A(3)) == "A(3)"
    with pytest.raises(ValueError):
        GermClassification("A")
    with pytest.raises(ValueError):
        GermClassification("D", 4)
    with pytest.raises(ValueError):
        CoverGerm(-1)
