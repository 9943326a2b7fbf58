from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from xdarboux.algebra import RF, Polynomial
from xdarboux.diffop import DiffOperator, compose, first_order, gauge_conjugate, second_order
from xdarboux.laguerre import laguerre, laguerre_operator, lowering_operator, raising_operator, seed, SeedSpec, SeedFamily
from xdarboux.quasirational import QuasiRational as QR

x = Polynomial.x()
D = DiffOperator.d()


def test_identity_application():
    f = QR(Fraction(1, 3), -1, RF(x + 1, x + 5))
    assert DiffOperator.identity()(f) == f


def test_laguerre_operator_on_l1():
    p = laguerre(1, 1)
    assert p == Polynomial((2, -1))
    assert laguerre_operator(1).apply_polynomial(p) == -p


def test_laguerre_operator_on_phi3():
    phi, lam = seed(SeedSpec(SeedFamily.PHI3, 1, 1))
    assert lam == 3
    assert laguerre_operator(1)(phi) == phi * 3


def test_d_squared():
    assert D @ D == DiffOperator((0, 0, 1))


def test_classical_factorization_pair():
    k = Fraction(7, 3)
    assert raising_operator(k) @ lowering_operator() == laguerre_operator(k)
    assert lowering_operator() @ raising_operator(k) == laguerre_operator(k + 1) - 1


def test_arith_examples():
    t = laguerre_operator(2)
    assert t + DiffOperator(()) == t
    assert (t - t).is_zero()
    assert (D * 2).coeff(1) == RF(2)


def test_first_order_examples():
    assert first_order(1, 0) == D
    a = first_order(x + 2, RF(x + 3, x + 2))
    assert a == DiffOperator((-(x + 3), x + 2))
    assert first_order(1, 1)(QR.exp(1)).is_zero()


def test_gauge_conjugate_examples():
    t = laguerre_operator(Fraction(1, 2))
    assert gauge_conjugate(t, RF(1)) == t
    assert gauge_conjugate(D, RF(x)) == DiffOperator((RF(1, x), 1))
    mu = RF(x + 3, x * x + 1)
    assert gauge_conjugate(t, mu).leading == t.leading


def test_application_respects_composition_on_functions():
    s = second_order(x, RF(1, x + 1), -3)
    t = first_order(x + 2, RF(1, x))
    f = QR(Fraction(1, 2), 1, x + 4)
    assert (s @ t)(f) == s(t(f))
    assert compose(s, t) == s @ t


# -- randomized algebraic laws ------------------------------------------------

coefs = st.lists(st.integers(min_value=-4, max_value=4), min_size=1, max_size=3).map(Polynomial)
rats = st.tuples(coefs, st.integers(min_value=0, max_value=3)).map(lambda t: RF(t[0], x + t[1] + 1))
ops = st.lists(rats, min_size=1, max_size=3).map(DiffOperator)


@settings(max_examples=40, deadline=None)
@given(ops, ops, ops)
def test_composition_associative(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)


@settings(max_examples=40, deadline=None)
@given(ops, ops, ops)
def test_composition_distributes(a, b, c):
    assert a @ (b + c) == a @ b + a @ c
    assert (a + b) @ c == a @ c + b @ c


@settings(max_examples=40, deadline=None)
@given(ops, rats)
def test_conjugation_round_trip(a, mu):
    if mu.is_zero():
        return
    assert gauge_conjugate(gauge_conjugate(a, mu), mu.inverse()) == a
