"""Functions of the form x^alpha * exp(beta*x) * R(x) with R rational.

This class is closed under products, quotients and differentiation, and its
logarithmic derivatives are rational.  Values are kept canonical: the
rational part has nonzero value at x = 0 in both numerator and denominator
(any power of x lives in ``alpha``), so two equal functions have equal
fields.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import RF, X, Polynomial, RationalFunction, as_rational, poly_gcd


class UnsupportedIntegrand(ValueError):
    """exp(integral of g) is not in the quasi-rational class handled here."""


class QuasiRational:
    __slots__ = ("alpha", "beta", "rat")

    def __init__(self, alpha=0, beta=0, rat: RationalFunction | Polynomial | int | Fraction = 1):
        alpha = as_rational(alpha)
        beta = as_rational(beta)
        rat = RF.coerce(rat)
        if rat.is_zero():
            alpha, beta = Fraction(0), Fraction(0)
        else:
            jn = rat.num.trailing_zero_order()
            jd = rat.den.trailing_zero_order()
            if jn or jd:
                alpha += jn - jd
                rat = RF(rat.num.shift_down(jn), rat.den.shift_down(jd), _reduced=True)
        self.alpha: Fraction = alpha
        self.beta: Fraction = beta
        self.rat: RationalFunction = rat

    @classmethod
    def coerce(cls, value) -> QuasiRational:
        if isinstance(value, QuasiRational):
            return value
        return cls(0, 0, value)

    @classmethod
    def power(cls, alpha) -> QuasiRational:
        return cls(alpha, 0, 1)

    @classmethod
    def exp(cls, beta) -> QuasiRational:
        return cls(0, beta, 1)

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return self.rat.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_polynomial(self) -> bool:
        if self.is_zero():
            return True
        return (
            self.beta == 0
            and self.alpha.denominator == 1
            and self.alpha >= 0
            and self.rat.is_polynomial()
        )

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        if self.is_zero():
            return Polynomial()
        return self.rat.num * Polynomial.monomial(int(self.alpha))

    def is_rational(self) -> bool:
        return self.is_zero() or (self.beta == 0 and self.alpha.denominator == 1)

    def as_rational_function(self) -> RationalFunction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational function")
        a = int(self.alpha)
        if a >= 0:
            return self.rat * Polynomial.monomial(a)
        return self.rat / Polynomial.monomial(-a)

    def is_constant(self) -> bool:
        return self.is_zero() or (self.alpha == 0 and self.beta == 0 and self.rat.is_constant())

    # -- arithmetic -----------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
            other = QuasiRational.coerce(other)
        if not isinstance(other, QuasiRational):
            return NotImplemented
        return QuasiRational(self.alpha + other.alpha, self.beta + other.beta, self.rat * other.rat)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
            other = QuasiRational.coerce(other)
        if not isinstance(other, QuasiRational):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero quasi-rational function")
        return QuasiRational(self.alpha - other.alpha, self.beta - other.beta, self.rat / other.rat)

    def __rtruediv__(self, other):
        return QuasiRational.coerce(other) / self

    def __pow__(self, e: int) -> QuasiRational:
        if e < 0:
            return QuasiRational.coerce(1) / self**(-e)
        return QuasiRational(self.alpha * e, self.beta * e, self.rat**e)

    def __neg__(self) -> QuasiRational:
        return QuasiRational(self.alpha, self.beta, -self.rat)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
            other = QuasiRational.coerce(other)
        if not isinstance(other, QuasiRational):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        d = self.alpha - other.alpha
        if self.beta != other.beta or d.denominator != 1:
            raise ValueError("sum leaves the quasi-rational class")
        d = int(d)
        if d >= 0:
            return QuasiRational(other.alpha, self.beta, self.rat * Polynomial.monomial(d) + other.rat)
        return QuasiRational(self.alpha, self.beta, self.rat + other.rat * Polynomial.monomial(-d))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-QuasiRational.coerce(other))

    # -- calculus -------------------------------------------------------
    def exponent_derivative(self) -> RationalFunction:
        """alpha/x + beta."""
        return RF(Polynomial((self.alpha, self.beta)), X, _reduced=self.alpha != 0)

    def rational_derivatives(self, order: int) -> list[RationalFunction]:
        """S_0..S_order with f^(j) = x^alpha e^(beta x) S_j."""
        s = [self.rat]
        e = self.exponent_derivative()
        for _ in range(order):
            s.append(s[-1].derivative() + e * s[-1])
        return s

    def derivative(self) -> QuasiRational:
        return QuasiRational(self.alpha, self.beta, self.rational_derivatives(1)[1])

    def log_derivative(self) -> RationalFunction:
        if self.is_zero():
            raise ZeroDivisionError("log-derivative of zero")
        r = self.rat
        return self.exponent_derivative() + r.num.derivative() / RF(r.num) - r.den.derivative() / RF(r.den)

    def __call__(self, x: float) -> float:
        return self.eval(x)

    def eval(self, x: float) -> float:
        x = float(x)
        if x <= 0 and self.alpha.denominator != 1:
            raise ValueError("non-integer power of x requires x > 0")
        if x == 0 and self.alpha < 0:
            raise ZeroDivisionError("pole at x = 0")
        r = self.rat.eval_float(x)
        if self.alpha == 0:
            xa = 1.0
        elif self.alpha.denominator == 1:
            xa = x ** int(self.alpha)
        else:
            xa = x ** float(self.alpha)
        return xa * math.exp(float(self.beta) * x) * r

    # -- plumbing -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
            other = QuasiRational.coerce(other)
        if not isinstance(other, QuasiRational):
            return NotImplemented
        return self.alpha == other.alpha and self.beta == other.beta and self.rat == other.rat

    def __hash__(self) -> int:
        return hash(("QuasiRational", self.alpha, self.beta, self.rat))

    def __repr__(self) -> str:
        return f"QuasiRational({self.alpha}, {self.beta}, {self.rat!r})"

    def __str__(self) -> str:
        parts = []
        if self.alpha:
            parts.append("x" if self.alpha == 1 else f"x^({self.alpha})")
        if self.beta:
            parts.append("e^x" if self.beta == 1 else ("e^(-x)" if self.beta == -1 else f"e^({self.beta}*x)"))
        if not parts or self.rat != 1:
            parts.append(str(self.rat) if not parts or self.rat.is_constant() else f"({self.rat})")
        return "*".join(parts)


QR = QuasiRational


def proportionality_constant(f: QuasiRational, g: QuasiRational) -> Fraction | None:
    """c with f = c*g, or None when f is not a constant multiple of g."""
    if f.is_zero() or g.is_zero():
        return None
    q = f / g
    if q.alpha == 0 and q.beta == 0 and q.rat.is_constant():
        return q.rat.constant_value()
    return None


def is_proportional(f: QuasiRational, g: QuasiRational) -> bool:
    return proportionality_constant(f, g) is not None


# -- Wronskians -------------------------------------------------------------


def rf_determinant(m: Sequence[Sequence[RationalFunction]]) -> RationalFunction:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = RF(0)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * rf_determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def wronskian_matrix(fs: Sequence[QuasiRational]) -> list[list[RationalFunction]]:
    """Rows are derivative orders, columns functions, common factors removed."""
    n = len(fs)
    cols = [QuasiRational.coerce(f).rational_derivatives(n - 1) for f in fs]
    return [[cols[i][j] for i in range(n)] for j in range(n)]


def qr_wronskian(fs: Sequence[QuasiRational]) -> QuasiRational:
    """W(f1, ..., fn) = det[f_i^(j)] for up to six entries."""
    fs = [QuasiRational.coerce(f) for f in fs]
    if not fs:
        raise ValueError("Wronskian of an empty list")
    if len(fs) > 6:
        raise ValueError("Wronskians are supported for at most six functions")
    det = rf_determinant(wronskian_matrix(fs))
    return QuasiRational(sum(f.alpha for f in fs), sum(f.beta for f in fs), det)


# -- exp(integral) ------------------------------------------------------------


def integrate_log_derivative(g: RationalFunction) -> QuasiRational:
    """Quasi-rational P (up to a constant) with P'/P = g.

    Supported: g = beta + sum_c c * u_c'/u_c with simple poles, rational
    residue at x = 0 and integer residues elsewhere.  Residues are located
    numerically and then verified exactly, so a returned value is always
    correct; anything else raises :class:`UnsupportedIntegrand`.
    """
    g = RF.coerce(g)
    if g.is_zero():
        return QuasiRational(0, 0, 1)
    poly, rem = divmod(g.num, g.den)
    if poly.degree >= 1:
        raise UnsupportedIntegrand(f"polynomial part {poly} of degree >= 1")
    beta = poly[0]
    den = g.den
    if rem.is_zero():
        return QuasiRational(0, beta, 1)
    dden = den.derivative()
    if poly_gcd(den, dden).degree > 0:
        raise UnsupportedIntegrand(f"repeated poles in {g}")

    roots = np.roots([float(c) for c in reversed(den.coeffs)])
    guesses: set[Fraction] = set()
    for r in roots:
        res = _complex_eval(rem, r) / _complex_eval(dden, r)
        if abs(res.imag) > 1e-6 * max(1.0, abs(res.real)):
            raise UnsupportedIntegrand(f"non-real residue {res} in {g}")
        guesses.add(Fraction(res.real).limit_denominator(10**6))

    alpha = Fraction(0)
    rat = RF(1)
    covered = 0
    check = RF(0)
    for c in sorted(guesses):
        u = poly_gcd(den, rem - dden.scale(c))
        if u.degree <= 0:
            raise UnsupportedIntegrand(f"residue guess {c} not exact for {g}")
        covered += u.degree
        check = check + RF(u.derivative(), u) * c
        if u(0) == 0:
            alpha += c
            u = u.shift_down(1)
        if u.degree > 0:
            if c.denominator != 1:
                raise UnsupportedIntegrand(f"non-integer residue {c} away from x = 0")
            rat = rat * RF(u) ** int(c)
    if covered != den.degree or check != RF(rem, den):
        raise UnsupportedIntegrand(f"partial fractions of {g} could not be certified")
    return QuasiRational(alpha, beta, rat)


def _complex_eval(p: Polynomial, z: complex) -> complex:
    acc = 0j
    for v in reversed(p.coeffs):
        acc = acc * z + float(v)
    return acc


__all__ = [
    "QuasiRational",
    "QR",
    "UnsupportedIntegrand",
    "integrate_log_derivative",
    "is_proportional",
    "proportionality_constant",
    "qr_wronskian",
    "rf_determinant",
    "wronskian_matrix",
]
