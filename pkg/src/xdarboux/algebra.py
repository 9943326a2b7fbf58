"""Exact polynomial and rational-function arithmetic over the rationals.

Scalars are :class:`fractions.Fraction` (aliased as ``Rational``).  Both
:class:`Polynomial` and :class:`RationalFunction` are immutable and kept in
canonical form, so ``==`` is exact coefficient-wise equality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

Scalar = Union[int, Fraction]
Extended = Union[int, Fraction, float]  # float only for +/- inf

INF = math.inf


def as_rational(value: Scalar | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating-point values are not accepted as exact scalars")
    return Fraction(value)


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


class Polynomial:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [as_rational(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c: tuple[Fraction, ...] = tuple(c)
        self._hash: int | None = None

    # -- constructors -------------------------------------------------
    @classmethod
    def x(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Scalar) -> Polynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> Polynomial:
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> Polynomial:
        p = cls.constant(1)
        for r in roots:
            p = p * cls((-as_rational(r), 1))
        return p

    # -- basic properties ---------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, j: int) -> Fraction:
        if 0 <= j < len(self._c):
            return self._c[j]
        return Fraction(0)

    # -- arithmetic -----------------------------------------------------
    @staticmethod
    def _coerce(other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self._c), len(o._c))
        return Polynomial(self[j] + o[j] for j in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-v for v in self._c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self._c), len(o._c))
        return Polynomial(self[j] - o[j] for j in range(n))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._c or not o._c:
            return Polynomial()
        out = [Fraction(0)] * (len(self._c) + len(o._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(o._c):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> Polynomial:
        c = as_rational(c)
        return Polynomial(c * v for v in self._c)

    def __pow__(self, e: int) -> Polynomial:
        if e < 0:
            raise ValueError("negative polynomial power")
        out, base = Polynomial.constant(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other) -> tuple[Polynomial, Polynomial]:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self._c)
        dq = len(rem) - len(o._c)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = o._c[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(o._c) - 1] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(o._c):
                    rem[i + j] -= c * b
        return Polynomial(quot), Polynomial(rem[: len(o._c) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: Polynomial) -> Polynomial:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # -- calculus and evaluation ---------------------------------------
    def derivative(self) -> Polynomial:
        return Polynomial(j * v for j, v in enumerate(self._c) if j)

    def __call__(self, x):
        """Exact Horner evaluation (returns Fraction for rational x)."""
        acc = Fraction(0) if not isinstance(x, float) else 0.0
        for v in reversed(self._c):
            acc = acc * x + v
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for v in reversed(self._c):
            acc = acc * x + float(v)
        return acc

    def compose(self, inner: Polynomial) -> Polynomial:
        out = Polynomial()
        for v in reversed(self._c):
            out = out * inner + v
        return out

    def reflect(self) -> Polynomial:
        """p(-x)."""
        return Polynomial(v if j % 2 == 0 else -v for j, v in enumerate(self._c))

    # -- normalizations ------------------------------------------------
    def monic(self) -> Polynomial:
        if not self._c:
            return self
        return self.scale(1 / self._c[-1])

    def content(self) -> Fraction:
        """Positive rational c with self/c integral and primitive."""
        if not self._c:
            return Fraction(0)
        den = math.lcm(*(v.denominator for v in self._c))
        num = math.gcd(*(v.numerator for v in self._c))
        return Fraction(num, den)

    def primitive_part(self) -> Polynomial:
        """Integer-coefficient primitive polynomial, same sign as self."""
        if not self._c:
            return self
        return self.scale(1 / self.content())

    def trailing_zero_order(self) -> int:
        """Largest j with x^j dividing self (0 for the zero polynomial)."""
        for j, v in enumerate(self._c):
            if v:
                return j
        return 0

    def shift_down(self, j: int) -> Polynomial:
        """self / x^j, assuming divisibility."""
        return Polynomial(self._c[j:])

    # -- dunder plumbing ---------------------------------------------------
    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("Polynomial", self._c))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({[str(v) for v in self._c]})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for j in range(len(self._c) - 1, -1, -1):
            v = self._c[j]
            if v == 0:
                continue
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if j == 0:
                body = str(a)
            else:
                mono = "x" if j == 1 else f"x^{j}"
                if a == 1:
                    body = mono
                elif a.denominator == 1:
                    body = f"{a}*{mono}"
                else:
                    body = f"({a})*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


X = Polynomial.x()
ONE = Polynomial.constant(1)
ZERO = Polynomial()


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd; gcd(a, 0) = monic(a)."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    while b:
        a, b = b, (a % b).monic()
    return a.monic()


def squarefree_part(a: Polynomial) -> Polynomial:
    if a.degree <= 0:
        return a
    return a.exact_div(poly_gcd(a, a.derivative()))


# -- Sturm sequences -----------------------------------------------------


def sturm_sequence(a: Polynomial) -> list[Polynomial]:
    """Sturm chain p0 = a, p1 = a', p_{i+1} = -rem(p_{i-1}, p_i).

    Every member is replaced by a positive multiple of its primitive part,
    which leaves sign variations unchanged and keeps coefficients small.
    """
    if a.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [a.primitive_part(), a.derivative().primitive_part()]
    while not seq[-1].is_zero():
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r.primitive_part())
    if seq[-1].is_zero():
        seq.pop()
    return seq


def sign_at(p: Polynomial, x: Extended) -> int:
    if p.is_zero():
        return 0
    if x == INF:
        return _sign(p.leading)
    if x == -INF:
        return _sign(p.leading) * (-1 if p.degree % 2 else 1)
    return _sign(p(as_rational(x)))


def _variations(seq: Sequence[Polynomial], x: Extended) -> int:
    signs = [s for s in (sign_at(p, x) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_root_count(a: Polynomial, lo: Extended = 0, hi: Extended = INF) -> int:
    """Number of distinct real roots of ``a`` in the open interval (lo, hi)."""
    if a.is_zero():
        raise ValueError("root count of the zero polynomial")
    if not lo < hi:
        raise ValueError("require lo < hi")
    p = squarefree_part(a)
    # strip roots sitting exactly on finite endpoints so the interval is open
    for end in (lo, hi):
        if end not in (INF, -INF):
            e = as_rational(end)
            while p.degree > 0 and p(e) == 0:
                p = p.exact_div(Polynomial((-e, 1)))
    if p.degree <= 0:
        return 0
    seq = sturm_sequence(p)
    return _variations(seq, lo) - _variations(seq, hi)


def cauchy_bound(a: Polynomial) -> Fraction:
    """All roots satisfy |r| < bound."""
    lead = abs(a.leading)
    return 1 + max((abs(v) / lead for v in a.coeffs[:-1]), default=Fraction(0))


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with smallest denominator in the closed interval [lo, hi]."""
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = math.floor(lo)
    if fl == lo or math.floor(hi) > fl:
        return Fraction(math.ceil(lo))
    # continued-fraction step on the fractional parts
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


def isolate_real_roots(a: Polynomial, width: Fraction = Fraction(1, 10**10)) -> list[tuple[Fraction, Fraction]]:
    """Closed rational intervals, one per distinct real root, sorted.

    Each interval either is a single exact rational root ``(r, r)`` or has
    endpoints where the square-free part of ``a`` takes opposite signs, and is
    no wider than ``width``.
    """
    if a.is_zero():
        raise ValueError("root isolation of the zero polynomial")
    p = squarefree_part(a)
    if p.degree <= 0:
        return []
    seq = sturm_sequence(p)
    bound = cauchy_bound(p)

    def count(lo: Fraction, hi: Fraction) -> int:
        # roots in the half-open interval (lo, hi]
        return _variations(seq, lo) - _variations(seq, hi)

    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count(lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(_refine(p, lo, hi, width))
            continue
        mid = simplest_between(lo + (hi - lo) / 3, hi - (hi - lo) / 3)
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out


def _refine(p: Polynomial, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    # single root in (lo, hi]
    if p(hi) == 0:
        return hi, hi
    slo = _sign(p(lo))
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = _sign(p(mid))
        if sm == 0:
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    c = simplest_between(lo, hi)
    if p(c) == 0:
        return c, c
    return lo, hi


# -- rational functions --------------------------------------------------


class RationalFunction:
    """Reduced quotient num/den with monic den, gcd(num, den) = 1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Polynomial | Scalar, den: Polynomial | Scalar = 1, *, _reduced: bool = False):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num)
        if not isinstance(den, Polynomial):
            den = Polynomial.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = ONE
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
                lead = den.leading
                if lead != 1:
                    num, den = num.scale(1 / lead), den.scale(1 / lead)
        self.num: Polynomial = num
        self.den: Polynomial = den
        self._hash: int | None = None

    @classmethod
    def coerce(cls, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, (Polynomial, int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot interpret {value!r} as a rational function")

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0]

    # -- arithmetic -----------------------------------------------------
    @staticmethod
    def _try(other) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (Polynomial, int, Fraction)):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        o = self._try(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._try(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._try(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RationalFunction(0)
            return RationalFunction(self.num.scale(other), self.den, _reduced=True)
        o = self._try(other)
        if o is None:
            return NotImplemented
        # cross-cancel before multiplying to keep degrees down
        g1 = poly_gcd(self.num, o.den) if self.num else ONE
        g2 = poly_gcd(o.num, self.den) if o.num else ONE
        num = self.num.exact_div(g1) * o.num.exact_div(g2)
        den = self.den.exact_div(g2) * o.den.exact_div(g1)
        return RationalFunction(num, den)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._try(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._try(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> RationalFunction:
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num**e, self.den**e, _reduced=True)

    def derivative(self) -> RationalFunction:
        if self.den.degree == 0:
            return RationalFunction(self.num.derivative(), self.den, _reduced=True)
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at x = {x}")
        return self.num(x) / d

    def eval_float(self, x: float) -> float:
        d = self.den.eval_float(x)
        if d == 0.0:
            raise ZeroDivisionError(f"pole of {self} at x = {x}")
        return self.num.eval_float(x) / d

    # -- dunder plumbing ---------------------------------------------------
    def __eq__(self, other) -> bool:
        o = self._try(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("RationalFunction", self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        num = str(self.num)
        if len(self.num) > 1 and self.num.trailing_zero_order() < self.num.degree:
            num = f"({num})"
        return f"{num}/({self.den})"


RF = RationalFunction
