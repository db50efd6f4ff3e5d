"""Ehrhart polynomials and h*-vectors of LPM base polytopes.

Three independent routes to the lattice-point counts of snake polytopes are
provided: the diagonal sweep in :mod:`lpmpoly.polytope`, the transfer-matrix
product :func:`snake_count`, and for two-run snakes the closed form
:func:`closed_form_ab`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import IndexOutOfRange, InterpolationMismatch, InvalidRuns, NonIntegral
from .lpm import Snake
from .polynomial import RatPolynomial, binom
from .polytope import count_lattice_points

OVERDETERMINATION = 3


def ehrhart_polynomial(M, counter=count_lattice_points, extra=OVERDETERMINATION):
    """Interpolate L_{P_M} from counts at k = 0..d, d = dim P_M.

    The result is checked against ``extra`` further counts at k = d+1, ...;
    any disagreement raises InterpolationMismatch.
    """
    d = M.dimension
    values = [counter(M, k) for k in range(d + 1)]
    poly = RatPolynomial.interpolate(values)
    for k in range(d + 1, d + 1 + extra):
        got = counter(M, k)
        if poly(k) != got:
            raise InterpolationMismatch(f"L({k}) = {poly(k)} but the count is {got}")
    return poly


def interpolate_counts(values):
    return RatPolynomial.interpolate(values)


def hstar(L, d):
    """h*-vector of a degree-d Ehrhart polynomial L.

    h*_j = sum_{i=0}^{j} (-1)^i C(d+1, i) L(j - i).
    """
    out = []
    for j in range(d + 1):
        v = sum((-1) ** i * comb(d + 1, i) * L(j - i) for i in range(j + 1))
        v = Fraction(v)
        if v.denominator != 1:
            raise NonIntegral(f"h*_{j} = {v} is not an integer")
        out.append(int(v))
    return tuple(out)


def hstar_to_polynomial(h, d):
    """Rebuild L(t) = sum_j h*_j C(t + d - j, d)."""
    poly = RatPolynomial()
    for j, hj in enumerate(h):
        if hj:
            poly = poly + RatPolynomial.binomial(d - j, d) * hj
    return poly


def is_unimodal(v):
    """True iff v weakly increases and then weakly decreases."""
    v = list(v)
    i = 0
    while i + 1 < len(v) and v[i] <= v[i + 1]:
        i += 1
    while i + 1 < len(v) and v[i] >= v[i + 1]:
        i += 1
    return i >= len(v) - 1


def count_matrix(k, a):
    """A(k, a) with entries C(a - 2 + j - i, j - i), indices i, j in 0..k."""
    if a < 1 or k < 0:
        raise ValueError("need a >= 1 and k >= 0")
    return [[binom(a - 2 + j - i, j - i) for j in range(k + 1)] for i in range(k + 1)]


def ones_upper(k):
    """J: (k+1)x(k+1) with J_ij = 1 for j >= i."""
    return [[1 if j >= i else 0 for j in range(k + 1)] for i in range(k + 1)]


def mat_mul(A, B):
    cols = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in A]


def mat_vec(A, v):
    return [sum(x * y for x, y in zip(row, v)) for row in A]


def snake_count(snake, k):
    """Integer points of kP_S as u^T A(k,a_n) R ... R A(k,a_1) u.

    R reverses a vector; each bend of the strip swaps the role of the
    bend heights, which is what R implements.
    """
    if not isinstance(snake, Snake):
        snake = Snake(tuple(snake))
    if k < 0:
        raise ValueError("k must be nonnegative")
    v = [1] * (k + 1)
    for idx, a in enumerate(snake.runs):
        if idx:
            v.reverse()
        v = mat_vec(count_matrix(k, a), v)
    return sum(v)


@lru_cache(maxsize=None)
def _bernoulli_table(m):
    B = [Fraction(1)]
    for n in range(1, m + 1):
        B.append(-sum(comb(n + 1, i) * B[i] for i in range(n)) / (n + 1))
    return tuple(B)


def bernoulli(m):
    """B_m with B_1 = -1/2, from sum_{i=0}^{m} C(m+1, i) B_i = 0."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return _bernoulli_table(m)[m]


def elementary_symmetric(values, ell):
    """e_ell of a multiset of integers (counted with multiplicity)."""
    values = list(values)
    if not 0 <= ell <= len(values):
        raise IndexOutOfRange(f"ell = {ell} outside 0..{len(values)}")
    e = [1] + [0] * ell
    for x in values:
        for j in range(ell, 0, -1):
            e[j] += x * e[j - 1]
    return e[ell]


def closed_form_ab(a, b):
    """Ehrhart polynomial of P_{S(a,b)} from Bernoulli numbers and sigma_l."""
    if a < 2 or b < 2:
        raise InvalidRuns("the closed form needs a, b >= 2")
    top = a + b - 2
    multiset = list(range(1, a)) + list(range(1, b))
    sigma = [elementary_symmetric(multiset, ell) for ell in range(top + 1)]
    scale = Fraction(1, factorial(a - 1) * factorial(b - 1))
    coeffs = [Fraction(1)]
    for i in range(1, a + b):
        c = Fraction(0)
        for j in range(i - 1, top + 1):
            e = j - i + 1
            c += (-1) ** e * bernoulli(e) * sigma[top - j] / (j + 1) * comb(j + 1, i)
        coeffs.append(scale * c)
    return RatPolynomial(coeffs)
