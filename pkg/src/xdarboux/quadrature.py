"""Floating-point verification layer: Gamma, Gauss-Laguerre rules, inner products.

Nodes are eigenvalues of the symmetric tridiagonal Jacobi matrix of the
generalized Laguerre recurrence (diagonal 2i+α+1, off-diagonal
sqrt(i(i+α))), found by implicit-shift QL.  The first components of the
normalized eigenvectors give the weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .algebra import INF, Polynomial, sturm_root_count
from .quasirational import QuasiRational


class QuadratureError(ArithmeticError):
    pass


class ConvergenceError(QuadratureError):
    pass


# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x: float) -> float:
    """Γ(x) for x > 0 via the Lanczos approximation."""
    x = float(x)
    if x <= 0:
        raise ValueError("gamma_fn requires x > 0")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    if x == int(x) and x <= 171:
        return float(math.factorial(int(x) - 1))
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    # split the power to delay overflow
    half = t ** ((z + 0.5) / 2)
    return math.sqrt(2 * math.pi) * acc * (half * math.exp(-t)) * half


@dataclass(frozen=True)
class QuadratureRule:
    alpha: float
    nodes: tuple[float, ...]
    weights: tuple[float, ...]

    def integrate(self, f) -> float:
        """∫ f(x) x^α e^{-x} dx over (0, ∞)."""
        return math.fsum(w * f(x) for x, w in zip(self.nodes, self.weights))


def _tridiagonal_eigenvalues(diag: Sequence[float], off: Sequence[float], max_iter: int = 60) -> list[float]:
    """Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL.

    ``off[i]`` couples rows i and i+1.
    """
    n = len(diag)
    d = list(diag)
    e = list(off) + [0.0]
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= 2.2e-16 * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise ConvergenceError(f"QL iteration did not converge for eigenvalue {l}")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return sorted(d)


def _orthonormal_values(x: float, n: int, alpha: float) -> tuple[float, float, list[float]]:
    """Scaled orthonormal Laguerre values p_0..p_{n-1} at x.

    Returns (log scale, p_n/scale, [p_j/scale]) where the recurrence is
    renormalized on the fly to avoid overflow.
    """
    p_prev, p = 0.0, 1.0
    logscale = 0.0
    vals = [1.0]
    b_prev = 0.0
    for j in range(n):
        a = 2 * j + alpha + 1
        b = math.sqrt((j + 1) * (j + 1 + alpha))
        p_next = ((x - a) * p - b_prev * p_prev) / b
        p_prev, p = p, p_next
        b_prev = b
        big = abs(p)
        if big > 1e150:
            p_prev /= big
            p /= big
            vals = [v / big for v in vals]
            logscale += math.log(big)
        if j < n - 1:
            vals.append(p)
    return logscale, p, vals


def _eigen_first_component_sq(x: float, n: int, alpha: float) -> float:
    # (p_0, ..., p_{n-1}) at an eigenvalue is an eigenvector of the Jacobi matrix
    _, _, vals = _orthonormal_values(x, n, alpha)
    norm2 = math.fsum(v * v for v in vals)
    return vals[0] * vals[0] / norm2


@lru_cache(maxsize=64)
def gauss_laguerre(alpha: float, n: int) -> QuadratureRule:
    """N-point Gauss rule for x^α e^{-x} on (0, ∞)."""
    alpha = float(alpha)
    if not alpha > -1:
        raise QuadratureError("Gauss-Laguerre requires alpha > -1")
    if not 1 <= n <= 512:
        raise QuadratureError("rule size must be between 1 and 512")
    diag = [2 * i + alpha + 1 for i in range(n)]
    off = [math.sqrt((i + 1) * (i + 1 + alpha)) for i in range(n - 1)]
    nodes = _tridiagonal_eigenvalues(diag, off)
    mass = gamma_fn(alpha + 1)
    weights = [mass * _eigen_first_component_sq(x, n, alpha) for x in nodes]
    return QuadratureRule(alpha, tuple(nodes), tuple(weights))


# -- weighted inner products ----------------------------------------------


def _split_weight(weight: QuasiRational) -> tuple[float, Polynomial, Polynomial]:
    """(α, numerator, denominator) for weight = x^α e^{-x} num/den."""
    if weight.beta != -1:
        raise QuadratureError("weight must carry the factor e^{-x}")
    if not weight.alpha > -1:
        raise QuadratureError("weight exponent must exceed -1")
    num, den = weight.rat.num, weight.rat.den
    for poly in (num, den):
        if poly.degree > 0 and (poly(0) == 0 or sturm_root_count(poly, 0, INF)):
            raise QuadratureError(f"weight factor {poly} has a root in [0, inf)")
    return float(weight.alpha), num, den


def weighted_inner_product(f: Polynomial, g: Polynomial, weight: QuasiRational, n: int) -> float:
    """∫ f g W dx with W = x^α e^{-x} R(x), R folded into the integrand."""
    alpha, num, den = _split_weight(weight)
    rule = gauss_laguerre(alpha, n)

    def integrand(x: float) -> float:
        return f.eval_float(x) * g.eval_float(x) * num.eval_float(x) / den.eval_float(x)

    return rule.integrate(integrand)


@dataclass(frozen=True)
class CertifiedValue:
    value: float
    coarse: float
    nodes: int
    rel_change: float

    @property
    def certified(self) -> bool:
        return self.rel_change <= 1e-9


def certified_inner_product(
    f: Polynomial,
    g: Polynomial,
    weight: QuasiRational,
    *,
    start: int = 32,
    tol: float = 1e-9,
    scale: float | None = None,
    max_nodes: int = 512,
) -> CertifiedValue:
    """Double N until |I_2N - I_N| <= tol * scale (default scale |I_2N|)."""
    n = start
    coarse = weighted_inner_product(f, g, weight, n)
    while True:
        fine = weighted_inner_product(f, g, weight, 2 * n)
        ref = abs(fine) if scale is None else scale
        change = abs(fine - coarse) / ref if ref else abs(fine - coarse)
        if change <= tol:
            return CertifiedValue(fine, coarse, 2 * n, change)
        if 4 * n > max_nodes:
            raise ConvergenceError(f"inner product not converged at N = {2 * n} (change {change:.3e})")
        n *= 2
        coarse = fine
