from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy

from xdarboux.algebra import Polynomial
from xdarboux.laguerre import (
    SeedFamily,
    SeedSpec,
    classical_norm,
    identity_suite,
    laguerre,
    laguerre_operator,
    seed,
)
from xdarboux.quasirational import QuasiRational as QR

x = Polynomial.x()


def _sympy_laguerre(n: int, k: Fraction) -> Polynomial:
    s = sympy.Symbol("s")
    expr = sympy.assoc_laguerre(n, sympy.Rational(k.numerator, k.denominator), s)
    coeffs = sympy.Poly(sympy.expand(expr), s).all_coeffs()[::-1]
    return Polynomial(Fraction(int(c.p), int(c.q)) for c in coeffs)


def test_low_orders():
    assert laguerre(0, Fraction(7, 3)) == Polynomial.constant(1)
    assert laguerre(-1, 2).is_zero()
    assert laguerre(2, 1) == Polynomial((3, -3, Fraction(1, 2)))


@pytest.mark.parametrize("k", [Fraction(0), Fraction(1, 2), Fraction(-3, 2), Fraction(7, 3), Fraction(-4)])
@pytest.mark.parametrize("n", [1, 3, 6, 10])
def test_matches_independent_closed_form(n, k):
    assert laguerre(n, k) == _sympy_laguerre(n, k)


@pytest.mark.parametrize("k", [Fraction(1, 2), Fraction(1), Fraction(3)])
def test_eigen_relation(k):
    op = laguerre_operator(k)
    for n in range(9):
        ln = laguerre(n, k)
        assert op.apply_polynomial(ln) == ln.scale(-n)


def test_operator_on_constant_and_coefficients():
    assert laguerre_operator(Fraction(5, 2)).apply_polynomial(Polynomial.constant(1)).is_zero()
    assert laguerre_operator(0).coeff(1)(Fraction(0)) == 1


def test_seed_examples():
    assert seed(SeedSpec(SeedFamily.PHI3, 1, 1)) == (QR(0, 1, x + 2), 3)
    phi, lam = seed(SeedSpec(SeedFamily.PHI1, Fraction(9, 4), 0))
    assert phi == QR.coerce(1) and lam == 0
    assert seed(SeedSpec(SeedFamily.PHI2, 3, 1)) == (QR(-3, 0, -x - 2), 2)


@pytest.mark.parametrize("fam", list(SeedFamily))
@pytest.mark.parametrize("k", [Fraction(1, 2), Fraction(7, 3)])
def test_seeds_are_eigenfunctions(fam, k):
    op = laguerre_operator(k)
    for m in range(4):
        phi, lam = seed(SeedSpec(fam, k, m))
        assert op(phi) == phi * lam


def test_seed_spec_rejects_negative_degree():
    with pytest.raises(ValueError):
        SeedSpec(SeedFamily.PHI1, 1, -1)


@pytest.mark.parametrize("k", [Fraction(1), Fraction(-1, 2)])
def test_identity_suite_passes(k):
    rep = identity_suite(k, 10)
    assert rep.ok and rep.checked == 55


def test_identity_suite_detects_fault():
    rep = identity_suite(1, 10, inject_fault=True)
    assert not rep.ok
    assert rep.failures[0][:2] == ("derivative", 1)


def test_classical_norm_examples():
    assert classical_norm(0, 0) == 1.0
    assert classical_norm(1, 1) == 2.0
    assert classical_norm(2, Fraction(1, 2)) == pytest.approx(15 * math.sqrt(math.pi) / 16, rel=1e-14)
    with pytest.raises(ValueError):
        classical_norm(1, -1)
