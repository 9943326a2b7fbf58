"""Classical associated Laguerre polynomials and the Laguerre operator.

Also provides the four quasi-rational seed families phi1..phi4 of the
operator x y'' + (k+1-x) y', with their formal eigenvalues.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import Polynomial, as_rational
from .diffop import DiffOperator, second_order
from .quasirational import QuasiRational


@lru_cache(maxsize=4096)
def _laguerre(n: int, k: Fraction) -> Polynomial:
    if n < 0:
        return Polynomial()
    if n == 0:
        return Polynomial.constant(1)
    prev2 = Polynomial()
    prev = Polynomial.constant(1)
    # n L_n = (2n + k - 1 - x) L_{n-1} - (n + k - 1) L_{n-2}
    for j in range(1, n + 1):
        cur = (Polynomial((2 * j + k - 1, -1)) * prev - prev2.scale(j + k - 1)).scale(Fraction(1, j))
        prev2, prev = prev, cur
    return prev


def laguerre(n: int, k) -> Polynomial:
    """L_n^{(k)}(x); the zero polynomial for n <= -1."""
    return _laguerre(int(n), as_rational(k))


def laguerre_operator(k) -> DiffOperator:
    k = as_rational(k)
    return second_order(Polynomial.x(), Polynomial((k + 1, -1)), 0)


def classical_weight(k) -> QuasiRational:
    return QuasiRational(as_rational(k), -1, 1)


def classical_norm(n: int, k) -> float:
    """Squared norm Γ(n+k+1)/n! of L_n^{(k)} against x^k e^{-x}."""
    from .quadrature import gamma_fn

    k = as_rational(k)
    if k <= -1:
        raise ValueError("classical norms require k > -1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return gamma_fn(float(n + k + 1)) / math.factorial(n)


def lowering_operator() -> DiffOperator:
    """A_k = D, independent of k."""
    return DiffOperator.d()


def raising_operator(k) -> DiffOperator:
    """B_k = x D + (k+1-x)."""
    k = as_rational(k)
    return DiffOperator((Polynomial((k + 1, -1)), Polynomial.x()))


class SeedFamily(enum.Enum):
    PHI1 = 1
    PHI2 = 2
    PHI3 = 3
    PHI4 = 4


@dataclass(frozen=True)
class SeedSpec:
    family: SeedFamily
    k: Fraction
    m: int

    def __post_init__(self):
        object.__setattr__(self, "k", as_rational(self.k))
        if isinstance(self.family, int):
            object.__setattr__(self, "family", SeedFamily(self.family))
        if self.m < 0:
            raise ValueError("seed degree m must be nonnegative")


def seed(spec: SeedSpec) -> tuple[QuasiRational, Fraction]:
    """Quasi-rational eigenfunction of the Laguerre operator and its eigenvalue."""
    k, m = spec.k, spec.m
    fam = spec.family
    if fam is SeedFamily.PHI1:
        poly, alpha, beta, lam = laguerre(m, k), 0, 0, Fraction(-m)
    elif fam is SeedFamily.PHI2:
        poly, alpha, beta, lam = laguerre(m, -k), -k, 0, k - m
    elif fam is SeedFamily.PHI3:
        poly, alpha, beta, lam = laguerre(m, k).reflect(), 0, 1, k + 1 + m
    else:
        poly, alpha, beta, lam = laguerre(m, -k).reflect(), -k, 1, Fraction(m + 1)
    return QuasiRational(alpha, beta, poly), lam


@dataclass
class IdentityReport:
    k: Fraction
    nmax: int
    checked: int = 0
    failures: list[tuple[str, int, Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def identity_suite(k, nmax: int, *, inject_fault: bool = False) -> IdentityReport:
    """Check recurrence, derivative and contiguity identities for n <= nmax.

    ``inject_fault`` flips the sign in the derivative identity; used to show
    the suite actually detects failures.
    """
    k = as_rational(k)
    if nmax > 30:
        raise ValueError("nmax is limited to 30")
    report = IdentityReport(k, nmax)
    sign = 1 if inject_fault else -1
    x = Polynomial.x()
    op = laguerre_operator(k)
    for n in range(0, nmax + 1):
        ln = laguerre(n, k)
        checks = {
            "recurrence": ln.scale(n) + (x + (-2 * n - k + 1)) * laguerre(n - 1, k)
            + laguerre(n - 2, k).scale(n + k - 1),
            "derivative": ln.derivative() - laguerre(n - 1, k + 1).scale(sign),
            "contiguity": ln - (laguerre(n, k + 1) - laguerre(n - 1, k + 1)),
            "eigen": op.apply_polynomial(ln) + ln.scale(n),
            "leading": Polynomial.constant(ln.leading - Fraction((-1) ** n, math.factorial(n))),
        }
        for name, residual in checks.items():
            report.checked += 1
            if not residual.is_zero():
                report.failures.append((name, n, k))
    return report
