"""Rational factorizations T - λ0 = B∘A of second-order operators.

Given a quasi-rational seed φ with T(φ) = λ0 φ and a rational gauge b, the
first-order operators are A = b(D - w) and B = b̂(D - ŵ) with w = φ'/φ,
b̂ = p/b and ŵ = -w - q/p + b'/b.  The partner T̂ = A∘B + λ0 is intertwined
with T by A and B.  This module builds those bundles, checks them exactly,
and chains them into Darboux-Crum transformations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra import INF, RF, Polynomial, RationalFunction, as_rational, poly_gcd, sturm_root_count
from .diffop import DiffOperator, compose_all, first_order, gauge_conjugate
from .quasirational import (
    QuasiRational,
    integrate_log_derivative,
    proportionality_constant,
    rf_determinant,
    wronskian_matrix,
    qr_wronskian,
)


class FactorizationError(ValueError):
    pass


class DegenerateSeed(FactorizationError):
    """The seed (or its image along a chain) vanishes identically."""


class AmbiguousClassification(ValueError):
    pass


class Classification(enum.Enum):
    STATE_DELETING = "StateDeleting"
    STATE_ADDING = "StateAdding"
    ISOSPECTRAL = "Isospectral"
    # polynomial seed but no first eigenpolynomial supplied
    POLYNOMIAL_SEED_UNKNOWN = "PolynomialSeedGroundStateUnknown"
    # polynomial seed that is not the first eigenpolynomial (singular partner)
    POLYNOMIAL_SEED_NOT_GROUND = "PolynomialSeedNotGroundState"


def _pqr(t: DiffOperator) -> tuple[RationalFunction, RationalFunction, RationalFunction]:
    if t.order != 2:
        raise FactorizationError(f"expected a second-order operator, got order {t.order}")
    return t.coeff(2), t.coeff(1), t.coeff(0)


@dataclass(frozen=True)
class Factorization:
    T: DiffOperator
    lambda0: Fraction
    phi: QuasiRational
    b: RationalFunction
    w: RationalFunction
    A: DiffOperator
    B: DiffOperator
    bhat: RationalFunction
    what: RationalFunction
    That: DiffOperator
    phihat: QuasiRational

    @property
    def p(self) -> RationalFunction:
        return self.T.coeff(2)


@dataclass(frozen=True)
class SLData:
    """P, W, R of -(P y')' + R y = λ W y, with a positivity verdict."""

    P: QuasiRational
    W: QuasiRational
    R: QuasiRational
    interval: tuple
    positive: bool


def riccati_check(t: DiffOperator, w, lambda0) -> bool:
    """p(w' + w²) + q w + r == λ0, exactly."""
    p, q, r = _pqr(t)
    w = RF.coerce(w)
    return p * (w.derivative() + w * w) + q * w + r == RF(as_rational(lambda0))


def default_gauge(w: RationalFunction) -> RationalFunction:
    return RF(w.den)


def factorize(t: DiffOperator, phi, b=None, lambda0=None) -> Factorization:
    """Build and verify the rational factorization of ``t`` at seed ``phi``.

    ``b`` defaults to the denominator of w = φ'/φ; ``lambda0`` defaults to
    the value read off from T(φ)/φ (which must then be constant).
    """
    phi = QuasiRational.coerce(phi)
    if phi.is_zero():
        raise DegenerateSeed("seed eigenfunction is identically zero")
    p, q, r = _pqr(t)
    w = phi.log_derivative()
    if lambda0 is None:
        ratio = t.apply(phi) / phi
        if not ratio.is_constant():
            raise FactorizationError(f"{phi} is not a formal eigenfunction of {t}")
        lambda0 = ratio.rat.constant_value() if not ratio.is_zero() else Fraction(0)
    lambda0 = as_rational(lambda0)
    if not riccati_check(t, w, lambda0):
        raise FactorizationError(f"Riccati equation fails: {phi} is not an eigenfunction at λ0 = {lambda0}")
    b = default_gauge(w) if b is None else RF.coerce(b)
    if b.is_zero():
        raise FactorizationError("factorization gauge b must be nonzero")

    A = first_order(b, w)
    bhat = p / b
    what = -w - q / p + b.derivative() / b
    B = first_order(bhat, what)
    That = A @ B + lambda0

    P = integrate_log_derivative(q / p)
    phihat = QuasiRational.coerce(1) / (P / b * phi)

    f = Factorization(t, lambda0, phi, b, w, A, B, bhat, what, That, phihat)
    _verify(f)
    return f


def _verify(f: Factorization) -> None:
    p, q, _ = _pqr(f.T)
    problems = []
    if f.B @ f.A + f.lambda0 != f.T:
        problems.append("T - λ0 != B∘A")
    if not f.A.apply(f.phi).is_zero():
        problems.append("A(φ) != 0")
    if not f.B.apply(f.phihat).is_zero():
        problems.append("B(φ̂) != 0")
    if f.bhat * f.b != p:
        problems.append("b̂·b != p")
    if f.That.coeff(1) != q + p.derivative() - p * 2 * f.b.derivative() / f.b:
        problems.append("q̂ != q + p' - 2p b'/b")
    if problems:
        raise FactorizationError("factorization invariants violated: " + "; ".join(problems))


def sl_data(t: DiffOperator, interval=(0, INF)) -> SLData:
    """P = exp(∫q/p), W = P/p, R = -rW, with positivity checked on ``interval``."""
    p, q, r = _pqr(t)
    P = integrate_log_derivative(q / p)
    W = P / p
    R = -(W * r)
    return SLData(P, W, R, tuple(interval), _positive_on(P, interval) and _positive_on(W, interval))


def _positive_on(f: QuasiRational, interval) -> bool:
    lo, hi = interval
    if f.is_zero():
        return False
    for poly in (f.rat.num, f.rat.den):
        if poly.degree > 0 and sturm_root_count(poly, lo, hi) > 0:
            return False
    # sign is constant on the interval now; sample a point inside it
    if hi == INF:
        sample = Fraction(as_rational(lo) + 1) if lo != -INF else Fraction(0)
    elif lo == -INF:
        sample = Fraction(as_rational(hi) - 1)
    else:
        sample = (as_rational(lo) + as_rational(hi)) / 2
    if f.alpha.denominator != 1 and sample <= 0:
        return False
    val = f.rat(sample)
    if f.alpha.denominator == 1 and int(f.alpha) % 2 and sample < 0:
        val = -val
    return val > 0


def partner_weight(f: Factorization, W: QuasiRational) -> QuasiRational:
    """Ŵ = p W / b²."""
    return QuasiRational.coerce(W) * f.p / (f.b * f.b)


def classify(f: Factorization, first_eigenpoly: Polynomial | None = None) -> Classification:
    phi_poly = f.phi.is_polynomial()
    phihat_poly = f.phihat.is_polynomial()
    if phi_poly and phihat_poly:
        raise AmbiguousClassification(f"both φ = {f.phi} and φ̂ = {f.phihat} are polynomial")
    if phihat_poly:
        return Classification.STATE_ADDING
    if not phi_poly:
        return Classification.ISOSPECTRAL
    if first_eigenpoly is None:
        return Classification.POLYNOMIAL_SEED_UNKNOWN
    if proportionality_constant(f.phi, QuasiRational.coerce(first_eigenpoly)) is not None:
        return Classification.STATE_DELETING
    return Classification.POLYNOMIAL_SEED_NOT_GROUND


def intertwine_check(f: Factorization) -> bool:
    """T̂∘A == A∘T and B∘T̂ == T∘B."""
    return f.That @ f.A == f.A @ f.T and f.B @ f.That == f.T @ f.B


def norm_transfer(f: Factorization, normj: float, lambdaj) -> float:
    """Predicted ∫ A(y_j)² Ŵ from ∫ y_j² W and the eigenvalue λ_j."""
    lambdaj = as_rational(lambdaj)
    if f.lambda0 < lambdaj:
        raise ValueError("norm transfer requires λ0 >= λ_j")
    return float(f.lambda0 - lambdaj) * normj


def primitivity_audit(f: Factorization, eigenpolys: Iterable[Polynomial]) -> Polynomial:
    """Monic common factor of A(y_j) over the first six eigenpolynomials.

    Returns 1 when the transformed sequence is primitive.  No rescaling is
    applied; a nontrivial result means the gauge could be reduced.
    """
    g = Polynomial()
    for y in list(eigenpolys)[:6]:
        img = f.A.apply(y)
        if not img.is_polynomial():
            raise FactorizationError(f"A({y}) = {img} is not polynomial for this gauge")
        img_p = img.as_polynomial()
        if img_p.is_zero():
            continue
        g = img_p.monic() if g.is_zero() else poly_gcd(g, img_p)
    return g if not g.is_zero() else Polynomial.constant(1)


# -- Darboux-Crum chains ------------------------------------------------------


@dataclass(frozen=True)
class CrumChain:
    T: DiffOperator
    seeds: tuple[QuasiRational, ...]
    Tn: DiffOperator
    Acal: DiffOperator
    Bcal: DiffOperator
    steps: tuple[Factorization, ...]


def crum_chain(t: DiffOperator, phis: Sequence, lambdas: Sequence, gauges: Sequence | None = None) -> CrumChain:
    """Iterate factorizations: seed j is pushed through A_{j-1}⋯A_1 first."""
    n = len(phis)
    if n == 0 or n > 3:
        raise ValueError("Crum chains are supported for 1 to 3 seeds")
    if len(lambdas) != n or (gauges is not None and len(gauges) != n):
        raise ValueError("phis, lambdas and gauges must have equal length")
    phis = [QuasiRational.coerce(f) for f in phis]
    gauges = list(gauges) if gauges is not None else [None] * n

    cur = t
    acal = DiffOperator.identity()
    bcal = DiffOperator.identity()
    steps = []
    for j in range(n):
        image = acal.apply(phis[j])
        if image.is_zero():
            raise DegenerateSeed(f"seed {j + 1} is annihilated by the preceding intertwiner")
        f = factorize(cur, image, gauges[j], lambdas[j])
        steps.append(f)
        acal = f.A @ acal
        bcal = bcal @ f.B
        cur = f.That

    for j, phi in enumerate(phis):
        if not acal.apply(phi).is_zero():
            raise FactorizationError(f"composed intertwiner does not annihilate seed {j + 1}")
    if acal @ t != cur @ acal:
        raise FactorizationError("composed intertwiner fails 𝒜∘T = T_n∘𝒜")
    if t @ bcal != bcal @ cur:
        raise FactorizationError("composed intertwiner fails T∘ℬ = ℬ∘T_n")
    return CrumChain(t, tuple(phis), cur, acal, bcal, tuple(steps))


def wronskian_operator(phis: Sequence) -> DiffOperator:
    """y ↦ W(φ1, …, φn, y) / W(φ1, …, φn), a monic operator of order n."""
    phis = [QuasiRational.coerce(f) for f in phis]
    n = len(phis)
    base = qr_wronskian(phis)
    if base.is_zero():
        raise DegenerateSeed("seeds are linearly dependent")
    # expand det along the y column; rows are derivative orders 0..n
    m = wronskian_matrix(phis + [QuasiRational(0, 0, 0)])
    alpha = sum(f.alpha for f in phis)
    beta = sum(f.beta for f in phis)
    coeffs = []
    for j in range(n + 1):
        minor = [row[:n] for i, row in enumerate(m) if i != j]
        cof = rf_determinant(minor) * (-1) ** (j + n)
        coeffs.append((QuasiRational(alpha, beta, cof) / base).as_rational_function())
    return DiffOperator(coeffs)


@dataclass(frozen=True)
class PermutabilityReport:
    same_Tn: bool
    intertwiner_ratio: RationalFunction
    intertwiner_sign: int | None
    wronskian_match: bool


def crum_permutability(first: CrumChain, second: CrumChain) -> PermutabilityReport:
    """Compare two chains built from the same seeds in different orders.

    The intertwiners share a kernel, so 𝒜₂ = ν·𝒜₁ with ν the ratio of their
    leading coefficients (the products of the step gauges); the final
    operators must then satisfy T₂ = ν T₁ ν⁻¹.  ``intertwiner_sign`` is ±1
    when ν is ±1, i.e. when the two orders agree up to sign outright.
    Both intertwiners are also compared with b·W(φ1,…,φn,y)/W(φ1,…,φn).
    """
    nu = second.Acal.leading / first.Acal.leading
    same_a = second.Acal == first.Acal * nu
    same_t = same_a and second.Tn == gauge_conjugate(first.Tn, nu.inverse())
    sign = None
    if nu.is_constant() and abs(nu.constant_value()) == 1:
        sign = int(nu.constant_value())
    wop = wronskian_operator(first.seeds)
    match = all(c.Acal == wop * c.Acal.leading for c in (first, second))
    return PermutabilityReport(same_t, nu, sign, match)


# -- shape invariance ------------------------------------------------------


def shape_invariance_check(
    t_of: Callable[[Fraction], DiffOperator],
    h: Callable[[Fraction], Fraction],
    lam_of: Callable[[Fraction], Fraction],
    fact: Callable[[Fraction], Factorization],
    ks: Iterable,
) -> bool:
    """T_{h(k)} == A_k∘B_k + λ_k for every k, with T_k = B_k∘A_k."""
    for k in ks:
        k = as_rational(k)
        f = fact(k)
        if f.lambda0 != 0 or f.T != t_of(k):
            return False
        if f.A @ f.B + as_rational(lam_of(k)) != t_of(h(k)):
            return False
    return True


def gauge_constraint_check(p, qk, qhk, bk) -> bool:
    """p P_k / P_{h(k)} = b_k², compared through logarithmic derivatives."""
    p, qk, qhk, bk = (RF.coerce(v) for v in (p, qk, qhk, bk))
    if bk.is_zero():
        return False
    return p.derivative() / p + (qk - qhk) / p == bk.derivative() / bk * 2


def covariance_constant(ak: DiffOperator, phik, phihk) -> Fraction | None:
    image = ak.apply(phik)
    if image.is_zero():
        raise DegenerateSeed("A_k annihilates φ_k")
    return proportionality_constant(image, QuasiRational.coerce(phihk))


def covariance_check(ak: DiffOperator, phik, phihk) -> bool:
    """A_k(φ_k) is a nonzero constant multiple of φ_{h(k)}."""
    return covariance_constant(ak, phik, phihk) is not None


__all__ = [
    "AmbiguousClassification",
    "Classification",
    "CrumChain",
    "DegenerateSeed",
    "Factorization",
    "FactorizationError",
    "PermutabilityReport",
    "SLData",
    "classify",
    "compose_all",
    "covariance_check",
    "covariance_constant",
    "crum_chain",
    "crum_permutability",
    "factorize",
    "gauge_constraint_check",
    "intertwine_check",
    "norm_transfer",
    "partner_weight",
    "primitivity_audit",
    "riccati_check",
    "shape_invariance_check",
    "sl_data",
    "wronskian_operator",
]
