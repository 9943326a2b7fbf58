"""Linear differential operators with rational-function coefficients.

An operator sum_j c_j(x) D^j is stored as the tuple (c_0, c_1, ...).  ``S @ T``
is composition S∘T, ``T(f)`` applies T to a quasi-rational function.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .algebra import RF, Polynomial, RationalFunction
from .quasirational import QuasiRational


def _rf(value) -> RationalFunction:
    return RF.coerce(value)


def _derivatives(f: RationalFunction, upto: int) -> list[RationalFunction]:
    out = [f]
    for _ in range(upto):
        out.append(out[-1].derivative())
    return out


class DiffOperator:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_rf(v) for v in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.coeffs: tuple[RationalFunction, ...] = tuple(c)

    @classmethod
    def identity(cls) -> DiffOperator:
        return cls((1,))

    @classmethod
    def d(cls) -> DiffOperator:
        return cls((0, 1))

    @classmethod
    def multiplication(cls, f) -> DiffOperator:
        return cls((f,))

    @property
    def order(self) -> int:
        """Order; -1 for the zero operator."""
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> RationalFunction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else RF(0)

    @property
    def leading(self) -> RationalFunction:
        return self.coeffs[-1] if self.coeffs else RF(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- application ----------------------------------------------------
    def __call__(self, f) -> QuasiRational:
        return self.apply(f)

    def apply(self, f) -> QuasiRational:
        f = QuasiRational.coerce(f)
        if f.is_zero() or not self.coeffs:
            return QuasiRational(0, 0, 0)
        s = f.rational_derivatives(self.order)
        total = RF(0)
        for c, sj in zip(self.coeffs, s):
            if c:
                total = total + c * sj
        return QuasiRational(f.alpha, f.beta, total)

    def apply_polynomial(self, p: Polynomial) -> Polynomial:
        """Apply to a polynomial; raises if the image is not polynomial."""
        return self.apply(p).as_polynomial()

    # -- algebra ----------------------------------------------------------
    @staticmethod
    def _coerce(other) -> DiffOperator | None:
        if isinstance(other, DiffOperator):
            return other
        if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
            return DiffOperator((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return DiffOperator(self.coeff(j) + o.coeff(j) for j in range(n))

    __radd__ = __add__

    def __neg__(self) -> DiffOperator:
        return DiffOperator(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        """Left multiplication by a function (f*T means f(x)·T)."""
        if isinstance(other, DiffOperator):
            raise TypeError("use @ for operator composition")
        f = _rf(other)
        return DiffOperator(f * c for c in self.coeffs)

    __rmul__ = __mul__

    def __matmul__(self, other: DiffOperator) -> DiffOperator:
        return compose(self, other)

    # -- plumbing -------------------------------------------------------
    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash(("DiffOperator", self.coeffs))

    def __repr__(self) -> str:
        return f"DiffOperator({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            d = "" if j == 0 else ("D" if j == 1 else f"D^{j}")
            if not d:
                terms.append(f"({c})")
            elif c == 1:
                terms.append(d)
            else:
                terms.append(f"({c})*{d}")
        return " + ".join(terms)


def compose(s: DiffOperator, t: DiffOperator) -> DiffOperator:
    """S∘T by the Leibniz rule: D^i (t_j D^j) = sum_l C(i,l) t_j^(i-l) D^(l+j)."""
    if s.is_zero() or t.is_zero():
        return DiffOperator()
    tder = [_derivatives(tj, s.order) for tj in t.coeffs]
    out = [RF(0)] * (s.order + t.order + 1)
    for i, si in enumerate(s.coeffs):
        if si.is_zero():
            continue
        for j, tj_ders in enumerate(tder):
            if t.coeffs[j].is_zero():
                continue
            for l in range(i + 1):
                term = tj_ders[i - l]
                if term.is_zero():
                    continue
                out[l + j] = out[l + j] + si * term * comb(i, l)
    return DiffOperator(out)


def compose_all(ops: Sequence[DiffOperator]) -> DiffOperator:
    """ops[0] ∘ ops[1] ∘ ... ∘ ops[-1]."""
    out = DiffOperator.identity()
    for op in ops:
        out = out @ op
    return out


def first_order(b, w) -> DiffOperator:
    """b·(D - w); its kernel is spanned by exp(∫w)."""
    b, w = _rf(b), _rf(w)
    if b.is_zero():
        raise ValueError("first_order requires a nonzero gauge b")
    return DiffOperator((-(b * w), b))


def gauge_conjugate(t: DiffOperator, mu) -> DiffOperator:
    """μ^{-1} ∘ T ∘ μ."""
    mu = _rf(mu)
    if mu.is_zero():
        raise ValueError("gauge factor must be nonzero")
    return DiffOperator.multiplication(mu.inverse()) @ (t @ DiffOperator.multiplication(mu))


def second_order(p, q, r) -> DiffOperator:
    return DiffOperator((r, q, p))
