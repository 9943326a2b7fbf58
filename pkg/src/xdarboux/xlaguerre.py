"""Exceptional X_m Laguerre polynomials of types I and II.

Type I families are built from the seed e^x ξ_{k,m} with ξ_{k,m}(x) =
L_m^{(k)}(-x); type II from x^{-k} η_{k,m} with η_{k,m}(x) = L_m^{(-k)}(x).
Both are codimension-m: the polynomials X_n exist for n >= m only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra import INF, RF, Polynomial, RationalFunction, as_rational, isolate_real_roots, sturm_root_count
from .diffop import DiffOperator, first_order
from .laguerre import laguerre
from .quasirational import QuasiRational


class Variant(enum.Enum):
    TYPE_I = "type1"
    TYPE_II = "type2"


class InvalidFamily(ValueError):
    """Parameters outside the range where the weight is positive and integrable.

    ``certificate`` records which constraint failed and, for the weight
    denominator, its positive-root count, whether it vanishes at 0, and the
    isolating intervals of its roots in [0, ∞).
    """

    def __init__(self, message: str, certificate: dict):
        super().__init__(message)
        self.certificate = certificate


def xi(k, m: int) -> Polynomial:
    """ξ_{k,m}(x) = L_m^{(k)}(-x)."""
    return laguerre(m, k).reflect()


def eta(k, m: int) -> Polynomial:
    """η_{k,m}(x) = L_m^{(-k)}(x)."""
    return laguerre(m, -as_rational(k))


def rho(k, m: int) -> RationalFunction:
    """ξ'_{k,m}/ξ_{k,m}."""
    return RF(xi(k, m).derivative(), xi(k, m))


def sigma(k, m: int) -> RationalFunction:
    """-η'_{k,m}/η_{k,m}."""
    return RF(-eta(k, m).derivative(), eta(k, m))


def weight_denominator(variant: Variant, k, m: int) -> Polynomial:
    k = as_rational(k)
    return xi(k - 1, m) if variant is Variant.TYPE_I else eta(k + 1, m)


def denominator_certificate(d: Polynomial) -> dict:
    roots = [(lo, hi) for lo, hi in isolate_real_roots(d) if hi >= 0] if d.degree > 0 else []
    return {
        "denominator": [[str(c.numerator), str(c.denominator)] for c in d.coeffs],
        "positive_roots": sturm_root_count(d, 0, INF) if d.degree > 0 else 0,
        "vanishes_at_zero": d(0) == 0,
        "nonnegative_root_intervals": [[str(lo), str(hi)] for lo, hi in roots],
    }


@dataclass(frozen=True)
class XFamily:
    variant: Variant
    k: Fraction
    m: int

    def __post_init__(self):
        variant = self.variant if isinstance(self.variant, Variant) else Variant(self.variant)
        object.__setattr__(self, "variant", variant)
        object.__setattr__(self, "k", as_rational(self.k))
        if self.m < 0:
            raise ValueError("codimension m must be nonnegative")
        d = weight_denominator(variant, self.k, self.m)
        cert = denominator_certificate(d)
        if variant is Variant.TYPE_I and not self.k > -1:
            cert["constraint"] = "k > -1"
            raise InvalidFamily(f"type I family requires k > -1 (got k = {self.k})", cert)
        if variant is Variant.TYPE_II and not self.k > self.m:
            cert["constraint"] = "k > m"
            raise InvalidFamily(f"type II family requires k > m (got k = {self.k}, m = {self.m})", cert)
        if cert["positive_roots"] or cert["vanishes_at_zero"]:
            cert["constraint"] = "weight denominator root-free on [0, inf)"
            raise InvalidFamily(
                f"weight denominator {d} has a root in [0, inf) for {variant.value}, k = {self.k}, m = {self.m}",
                cert,
            )

    @property
    def denominator(self) -> Polynomial:
        return weight_denominator(self.variant, self.k, self.m)

    def shifted(self, dk: int) -> XFamily:
        return XFamily(self.variant, self.k + dk, self.m)


# -- first-order intertwiners of the isospectral factorizations -------------


def a_type1(k, m: int) -> DiffOperator:
    """A^I_{k,m}(y) = ξ_{k,m} y' - ξ_{k+1,m} y."""
    k = as_rational(k)
    return DiffOperator((-xi(k + 1, m), xi(k, m)))


def b_type1(k, m: int) -> DiffOperator:
    """B^I_{k,m}(y) = (x y' + (1+k) y)/ξ_{k,m}."""
    k = as_rational(k)
    inv = RF(1, xi(k, m))
    return DiffOperator((inv * (1 + k), inv * Polynomial.x()))


def a_type2(k, m: int) -> DiffOperator:
    """A^II_{k,m}(y) = x η_{k,m} y' + (k-m) η_{k+1,m} y."""
    k = as_rational(k)
    return DiffOperator((eta(k + 1, m).scale(k - m), Polynomial.x() * eta(k, m)))


def b_type2(k, m: int) -> DiffOperator:
    """B^II_{k,m}(y) = (y' - y)/η_{k,m}."""
    inv = RF(1, eta(k, m))
    return DiffOperator((-inv, inv))


# -- polynomials, operators, weights ------------------------------------------


def x_polynomial(fam: XFamily, n: int) -> Polynomial:
    k, m = fam.k, fam.m
    if n < m:
        raise ValueError(f"X_n exists only for n >= m = {m}")
    if fam.variant is Variant.TYPE_I:
        return xi(k, m) * laguerre(n - m, k - 1) + xi(k - 1, m) * laguerre(n - m - 1, k)
    return (
        Polynomial.x() * eta(k + 1, m) * laguerre(n - m - 1, k + 2)
        + (eta(k + 2, m) * laguerre(n - m, k + 1)).scale(m - k - 1)
    )


def x_build_by_darboux(fam: XFamily, n: int) -> Polynomial:
    """-A(L_{n-m}) with the intertwiner built from its seed and gauge."""
    k, m = fam.k, fam.m
    if n < m:
        raise ValueError(f"X_n exists only for n >= m = {m}")
    if fam.variant is Variant.TYPE_I:
        seed = QuasiRational(0, 1, xi(k - 1, m))
        a = first_order(xi(k - 1, m), seed.log_derivative())
        return -a.apply_polynomial(laguerre(n - m, k - 1))
    seed = QuasiRational(-(k + 1), 0, eta(k + 1, m))
    a = first_order(Polynomial.x() * eta(k + 1, m), seed.log_derivative())
    return -a.apply_polynomial(laguerre(n - m, k + 1))


def x_operator(fam: XFamily) -> DiffOperator:
    k, m = fam.k, fam.m
    x = Polynomial.x()
    if fam.variant is Variant.TYPE_I:
        r = rho(k - 1, m)
        return DiffOperator((r * (-2 * k) + m, r * x * (-2) + Polynomial((k + 1, -1)), x))
    s = sigma(k + 1, m)
    return DiffOperator((s * x * (-2) - m, s * x * 2 + Polynomial((k + 1, -1)), x))


def x_eigenvalue(fam: XFamily, n: int) -> Fraction:
    return Fraction(fam.m - n)


def x_weight(fam: XFamily) -> QuasiRational:
    d = fam.denominator
    if sturm_root_count(d, 0, INF) if d.degree > 0 else 0:
        raise InvalidFamily(f"weight denominator {d} has a positive root", denominator_certificate(d))
    return QuasiRational(fam.k, -1, RF(1, d * d))


def x_norm(fam: XFamily, n: int) -> float:
    """Closed-form ∫ X_n² W over (0, ∞)."""
    from .quadrature import gamma_fn

    k, m = fam.k, fam.m
    if n < m:
        raise ValueError(f"X_n exists only for n >= m = {m}")
    if fam.variant is Variant.TYPE_I:
        return float(k + n) * gamma_fn(float(k + n - m)) / math.factorial(n - m)
    return float(1 + k + n - 2 * m) / math.factorial(n - m) * gamma_fn(float(2 + k + n - m))


# -- shape-invariant ladder ---------------------------------------------------


def x_lowering(fam: XFamily) -> DiffOperator:
    """Â_{k,m}: annihilates the ground state X_m and maps X_{n,k} to -X_{n-1,k+1}."""
    k, m = fam.k, fam.m
    if fam.variant is Variant.TYPE_I:
        g = RF(xi(k, m), xi(k - 1, m))
        op = first_order(g, rho(k, m))
        ground = xi(k, m)
    else:
        g = RF(eta(k + 2, m), eta(k + 1, m))
        op = first_order(g, -sigma(k + 2, m))
        ground = eta(k + 2, m)
    if not op.apply(ground).is_zero():
        raise ArithmeticError("lowering operator does not annihilate the ground state")
    return op


def x_raising(fam: XFamily) -> DiffOperator:
    """B̂_{k,m}: maps X_{n,k+1} to (n+1-m) X_{n+1,k}."""
    k, m = fam.k, fam.m
    x = Polynomial.x()
    if fam.variant is Variant.TYPE_I:
        g = RF(xi(k - 1, m), xi(k, m))
        op = DiffOperator((g * (1 + k) - x, g * x))
        kernel = QuasiRational(-1 - k, 1, xi(k - 1, m))
    else:
        g = RF(eta(k + 1, m), eta(k + 2, m))
        extra = RF(eta(k, m - 1), eta(k + 2, m)) * x if m > 0 else RF(0)
        op = DiffOperator((g * Polynomial((1 + k, -1)) + extra, g * x))
        kernel = QuasiRational(-1 - k, 1, eta(k + 1, m))
    if not op.apply(kernel).is_zero():
        raise ArithmeticError("raising operator does not annihilate its partner seed")
    return op


def ground_state_factorization(fam: XFamily):
    """Factorization of the family operator at its ground state X_m (λ0 = 0)."""
    from .darboux import factorize

    k, m = fam.k, fam.m
    if fam.variant is Variant.TYPE_I:
        gauge = RF(xi(k, m), xi(k - 1, m))
    else:
        gauge = RF(eta(k + 2, m), eta(k + 1, m))
    return factorize(x_operator(fam), x_polynomial(fam, m), gauge, 0)


def isospectral_factorization(variant: Variant, k, m: int):
    """Factorization of the classical operator 𝓛_k at the φ3 (type I) or φ2 (type II) seed."""
    from .darboux import factorize
    from .laguerre import laguerre_operator

    k = as_rational(k)
    if variant is Variant.TYPE_I:
        return factorize(laguerre_operator(k), QuasiRational(0, 1, xi(k, m)), xi(k, m), k + 1 + m)
    return factorize(
        laguerre_operator(k),
        QuasiRational(-k, 0, eta(k, m)),
        Polynomial.x() * eta(k, m),
        k - m,
    )


# -- identity-in-k certification -------------------------------------------


def sweep_values(count: int, valid: Callable[[Fraction], bool] = lambda k: True, start=0) -> list[Fraction]:
    """``count`` distinct rationals above ``start`` accepted by ``valid``."""
    start = as_rational(start)
    out: list[Fraction] = []
    j = 0
    while len(out) < count:
        k = start + Fraction(3 * j + 1, 7) + Fraction(1, 13)
        j += 1
        if valid(k):
            out.append(k)
        if j > 100 * count + 1000:
            raise ValueError("could not find enough admissible parameter values")
    return out


def k_identity_sweep(
    check: Callable[[Fraction], bool],
    degree_in_k: int,
    valid: Callable[[Fraction], bool] = lambda k: True,
    start=0,
) -> bool:
    """Run ``check`` at degree_in_k + 1 admissible k values.

    When the checked identity is polynomial in k of degree at most
    ``degree_in_k`` (the caller's claim), passing at that many points proves
    it for all k.
    """
    return all(check(k) for k in sweep_values(degree_in_k + 1, valid, start))


def family_is_valid(variant: Variant, m: int) -> Callable[[Fraction], bool]:
    def ok(k: Fraction) -> bool:
        try:
            XFamily(variant, k, m)
        except InvalidFamily:
            return False
        return True

    return ok
