from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from xdarboux.algebra import RF, Polynomial
from xdarboux.quadrature import (
    ConvergenceError,
    QuadratureError,
    certified_inner_product,
    gamma_fn,
    gauss_laguerre,
    weighted_inner_product,
)
from xdarboux.quasirational import QuasiRational as QR
from xdarboux.xlaguerre import Variant, XFamily, x_polynomial, x_weight

x = Polynomial.x()


def test_gamma_examples():
    assert gamma_fn(1) == 1.0
    assert gamma_fn(5) == 24.0
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)


@given(st.floats(min_value=0.01, max_value=150.0))
def test_gamma_against_mpmath(v):
    assert gamma_fn(v) == pytest.approx(float(mpmath.gamma(v)), rel=5e-13)


def test_gamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        gamma_fn(0)


def test_small_rules():
    r1 = gauss_laguerre(0, 1)
    assert r1.nodes == pytest.approx((1.0,)) and r1.weights == pytest.approx((1.0,))
    r2 = gauss_laguerre(0, 2)
    assert r2.nodes == pytest.approx((2 - math.sqrt(2), 2 + math.sqrt(2)), rel=1e-14)
    assert gauss_laguerre(0, 4).integrate(lambda t: t) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [3, 10, 40])
def test_matches_numpy_rule_for_alpha_zero(n):
    ref_x, ref_w = np.polynomial.laguerre.laggauss(n)
    rule = gauss_laguerre(0, n)
    assert np.allclose(rule.nodes, ref_x, rtol=1e-12, atol=0)
    assert np.allclose(rule.weights, ref_w, rtol=1e-9, atol=1e-300)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.5, -0.5])
@pytest.mark.parametrize("n", [4, 16, 64])
def test_moments(alpha, n):
    rule = gauss_laguerre(alpha, n)
    for j in range(2 * n):
        exact = math.exp(math.lgamma(j + alpha + 1))
        assert rule.integrate(lambda t: t**j) == pytest.approx(exact, rel=1e-10)


def test_rule_validation():
    with pytest.raises(QuadratureError):
        gauss_laguerre(-1, 4)
    with pytest.raises(QuadratureError):
        gauss_laguerre(0, 0)


def test_inner_product_examples():
    assert weighted_inner_product(Polynomial.constant(1), Polynomial.constant(1), QR(0, -1), 8) == pytest.approx(1.0)
    fam = XFamily(Variant.TYPE_I, 1, 1)
    w = x_weight(fam)
    p1, p2 = x_polynomial(fam, 1), x_polynomial(fam, 2)
    assert weighted_inner_product(p1, p1, w, 64) == pytest.approx(2.0, rel=1e-8)
    assert abs(weighted_inner_product(p1, p2, w, 64)) <= 1e-8 * math.sqrt(2.0 * 3.0)


def test_weight_with_root_on_half_line_rejected():
    with pytest.raises(QuadratureError):
        weighted_inner_product(x, x, QR(0, -1, RF(1, x - 2)), 8)
    with pytest.raises(QuadratureError):
        weighted_inner_product(x, x, QR(0, 1), 8)


def test_certified_inner_product_doubles_until_stable():
    w = x_weight(XFamily(Variant.TYPE_II, 3, 1))
    cv = certified_inner_product(3 * x + 12, 3 * x + 12, w)
    assert cv.certified and cv.value == pytest.approx(72.0, rel=1e-10)
    assert cv.nodes >= 64


def test_certified_inner_product_reports_nonconvergence():
    # a pole just left of the origin makes the rational factor resolve slowly
    w = QR(0, -1, RF(1, (x + Fraction(1, 10**6)) ** 2))
    with pytest.raises(ConvergenceError):
        certified_inner_product(Polynomial.constant(1), Polynomial.constant(1), w, start=4, max_nodes=16)
