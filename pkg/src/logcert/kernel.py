"""Exact arithmetic kernel: signed binomials, integer polynomials, precision helpers.

Everything here is pure and immutable; all other modules build on top of it.
Rationals are plain ``fractions.Fraction`` (always canonical: lowest terms,
positive denominator), integers are Python ints, and high-precision floats are
mpmath ``mpf`` values created under an explicit working precision.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

import mpmath

DEFAULT_PRECISION = 256

Scalar = Union[int, Fraction]


def binomial(m: int, k: int) -> int:
    """Binomial coefficient with signed upper index.

    Defined as the falling factorial product prod_{j=1..k} (m-j+1)/j, so a
    negative upper index is legal: binomial(-n-1, k) == (-1)**k * binomial(n+k, k).
    """
    if k < 0:
        raise ValueError(f"binomial: lower index must be nonnegative, got {k}")
    if m >= 0:
        return math.comb(m, k) if k <= m else 0
    # upper negation identity keeps this O(k) with small factors
    return (-1) ** k * math.comb(-m + k - 1, k)


class IntPolynomial:
    """Dense univariate polynomial with integer coefficients.

    ``coeffs[i]`` is the coefficient of the i-th power; the representation is
    trimmed so the leading coefficient is nonzero (the zero polynomial has an
    empty coefficient tuple and degree -1).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(int(c) for c in cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, n):
        """Exact Horner evaluation; works for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def __add__(self, other) -> "IntPolynomial":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))])

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other) -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "IntPolynomial":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "IntPolynomial":
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = IntPolynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial([other])
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPolynomial":
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def scaled(self, factor: int) -> "IntPolynomial":
        return IntPolynomial([c * factor for c in self.coeffs])

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                head = "" if mag == 1 else str(mag)
                term = f"{head}{var}" if i == 1 else f"{head}{var}^{i}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def _coerce(value) -> IntPolynomial:
    if isinstance(value, IntPolynomial):
        return value
    if isinstance(value, int):
        return IntPolynomial([value])
    raise TypeError(f"cannot coerce {value!r} to IntPolynomial")


#: The polynomial variable, for building coefficients arithmetically.
X = IntPolynomial([0, 1])


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over the rationals (Euclid on Fraction coefficients)."""
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in q.coeffs]

    def trim(cs):
        while cs and cs[-1] == 0:
            cs.pop()
        return cs

    a, b = trim(a), trim(b)
    while b:
        # a mod b
        a = a[:]
        while len(a) >= len(b):
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] -= f * c
            trim(a)
        a, b = b, a
    if not a:
        return IntPolynomial()
    lcm_den = 1
    for c in a:
        lcm_den = lcm_den * c.denominator // math.gcd(lcm_den, c.denominator)
    return IntPolynomial([int(c * lcm_den) for c in a]).primitive()


def to_mpf(value, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Convert an exact value to an mpf rounded at the given precision in bits."""
    if isinstance(value, Fraction):
        num, den = value.numerator, value.denominator
    else:
        num, den = int(value), 1
    raw = mpmath.libmp.from_rational(num, den, precision, "n")
    return mpmath.mp.make_mpf(raw)


def log_of_rational(value, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Natural log of a positive rational, accurate to ~precision bits."""
    value = Fraction(value)
    if value <= 0:
        raise ValueError(f"log of nonpositive value {value}")
    with mpmath.workprec(precision + 32):
        res = mpmath.log(to_mpf(value.numerator, precision + 32)) - mpmath.log(
            to_mpf(value.denominator, precision + 32)
        )
    return res
