"""Univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial


class RatPolynomial:
    """Polynomial in t, coefficients stored in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def binomial(cls, shift, n):
        """The polynomial C(t + shift, n) = (t+shift)(t+shift-1)...(t+shift-n+1)/n!."""
        p = cls((1,))
        for i in range(n):
            p = p * cls((shift - i, 1))
        return p * Fraction(1, factorial(n))

    @classmethod
    def interpolate(cls, values):
        """Unique polynomial of degree < len(values) with p(k) = values[k], k = 0, 1, ...

        Uses Newton forward differences: p(t) = sum_j Delta^j p(0) * C(t, j).
        """
        diffs = [Fraction(v) for v in values]
        result = cls()
        for j in range(len(values)):
            if diffs[0]:
                result = result + cls.binomial(0, j) * diffs[0]
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        return result

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, t):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPolynomial(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RatPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return RatPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatPolynomial((other,))
        if not isinstance(other, RatPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RatPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "t" if i == 1 else f"t^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self):
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data):
        return cls(Fraction(s) for s in data)


def _coerce(x):
    if isinstance(x, RatPolynomial):
        return x
    return RatPolynomial((x,))



def binom(x, y):
    """C(x, y) for integers with C(x, y) = 0 when y < 0 and C(x, 0) = 1.

    Negative upper arguments use the generalized definition
    x(x-1)...(x-y+1)/y!.
    """
    if y < 0:
        return 0
    if x >= 0:
        return comb(x, y)
    num = 1
    for i in range(y):
        num *= x - i
    return num // factorial(y)
