"""Base polytope P_M of a lattice path matroid.

P_M is cut out by the box 0 <= p_i <= 1 together with the band
``L-height(i) <= p_1 + ... + p_i <= U-height(i)``.  Each point corresponds to a
generalized lattice path with one bend on every anti-diagonal x + y = i.
All arithmetic is exact (ints and Fractions).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate, product

import numpy as np

from .errors import DimensionMismatch, Disconnected, NotInPolytope, ParseError, TooLarge

DEFAULT_ENUM_CAP = 10**8
_TAIL_ROWS = 200_000


def enum_cap():
    """Brute-force cap on candidate vectors; ``LPM_ENUM_CAP`` overrides it."""
    env = os.environ.get("LPM_ENUM_CAP")
    return int(env) if env else DEFAULT_ENUM_CAP


def as_point(coords):
    out = []
    for c in coords:
        if isinstance(c, float):
            raise TypeError("floating point coordinates are not accepted")
        out.append(Fraction(c))
    return tuple(out)


def parse_point(text):
    """Parse ``"3/4,3/4,1/2"`` into a tuple of Fractions."""
    out = []
    pos = 0
    for tok in text.split(","):
        try:
            out.append(Fraction(tok.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {tok.strip()!r}", pos) from exc
        pos += len(tok) + 1
    return tuple(out)


def format_rational(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def format_point(p):
    return ",".join(format_rational(c) for c in p)


def _check_dim(M, p):
    if len(p) != M.n:
        raise DimensionMismatch(f"point has {len(p)} coordinates, M has {M.n} elements")


def contains(M, p):
    p = as_point(p)
    _check_dim(M, p)
    if any(not 0 <= c <= 1 for c in p):
        return False
    s = (0, *accumulate(p))
    hu, hl = M.upper_heights, M.lower_heights
    return all(hl[i] <= s[i] <= hu[i] for i in range(1, M.n + 1))


def is_interior(M, p):
    """Relative interior test for a connected M."""
    p = as_point(p)
    _check_dim(M, p)
    if not M.is_connected:
        raise Disconnected("interiority is only defined here for connected LPMs")
    if not contains(M, p):
        return False
    if any(not 0 < c < 1 for c in p):
        return False
    s = (0, *accumulate(p))
    hu, hl = M.upper_heights, M.lower_heights
    return all(hl[i] < s[i] < hu[i] for i in range(1, M.n) if hl[i] < hu[i])


@dataclass(frozen=True)
class GeneralizedPath:
    """Bend points (x_i, y_i), i = 0..n, with bend i on the line x + y = i."""

    bends: tuple

    def __post_init__(self):
        bends = tuple((Fraction(x), Fraction(y)) for x, y in self.bends)
        object.__setattr__(self, "bends", bends)
        for i, (x, y) in enumerate(bends):
            if x + y != i:
                raise ValueError(f"bend {i} is not on the line x + y = {i}")
        for (x0, y0), (x1, y1) in zip(bends, bends[1:]):
            if x1 < x0 or y1 < y0:
                raise ValueError("generalized path is not monotone")

    def steps(self):
        return tuple(b[1] - a[1] for a, b in zip(self.bends, self.bends[1:]))

    def fits(self, M):
        """True iff the path runs from (0,0) to (m,r) inside the diagram of M."""
        if len(self.bends) != M.n + 1:
            return False
        if self.bends[0] != (0, 0) or self.bends[-1] != (M.width, M.rank):
            return False
        hu, hl = M.upper_heights, M.lower_heights
        return all(hl[i] <= y <= hu[i] for i, (_, y) in enumerate(self.bends))


def path_from_point(M, p):
    p = as_point(p)
    _check_dim(M, p)
    if not contains(M, p):
        raise NotInPolytope(f"{format_point(p)} is not in P_M")
    s = (0, *accumulate(p))
    return GeneralizedPath(tuple((i - s[i], s[i]) for i in range(M.n + 1)))


def point_from_path(path):
    return path.steps()


def count_lattice_points(M, k):
    """|kP_M ∩ Z^n| by a sweep over the anti-diagonals.

    The state on line i is the k-scaled height h of the bend; h moves to any
    h' with h <= h' <= h + k while staying inside [k*L-height, k*U-height].
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1
    hu, hl = M.upper_heights, M.lower_heights
    lo, ways = 0, [1]
    for i in range(1, M.n + 1):
        new_lo, new_hi = k * hl[i], k * hu[i]
        # running prefix sums over the previous layer
        pref = [0, *accumulate(ways)]
        hi = lo + len(ways) - 1
        new = []
        for h in range(new_lo, new_hi + 1):
            a = max(h - k, lo)
            b = min(h, hi)
            new.append(pref[b - lo + 1] - pref[a - lo] if a <= b else 0)
        lo, ways = new_lo, new
    return ways[k * M.rank - lo]


def lattice_points(M, k):
    """Yield the integer points of kP_M (step vectors with entries in 0..k)."""
    hu, hl = M.upper_heights, M.lower_heights
    n = M.n
    point = []

    def rec(h):
        i = len(point)
        if i == n:
            yield tuple(point)
            return
        for s in range(k + 1):
            if k * hl[i + 1] <= h + s <= k * hu[i + 1]:
                point.append(s)
                yield from rec(h + s)
                point.pop()

    yield from rec(0)


def brute_force_count(M, k, cap=None):
    """Oracle count: test every vector of [0, k]^n against the inequalities."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    cap = enum_cap() if cap is None else cap
    n = M.n
    total = (k + 1) ** n
    if total > cap:
        raise TooLarge(f"{total} candidate vectors exceed cap {cap}")
    if n == 0:
        return 1
    lo = np.array([k * h for h in M.lower_heights[1:]], dtype=np.int64)
    hi = np.array([k * h for h in M.upper_heights[1:]], dtype=np.int64)
    if k == 0:
        tail = n
    else:
        tail = min(n, max(1, int(math.log(_TAIL_ROWS) / math.log(k + 1))))
    head = n - tail
    grid = np.indices((k + 1,) * tail, dtype=np.int64).reshape(tail, -1).T
    tail_sums = np.cumsum(grid, axis=1)
    count = 0
    for head_vec in product(range(k + 1), repeat=head):
        s = list(accumulate(head_vec))
        if any(not lo[i] <= s[i] <= hi[i] for i in range(head)):
            continue
        base = s[-1] if s else 0
        sums = tail_sums + base
        ok = np.all((sums >= lo[head:]) & (sums <= hi[head:]), axis=1)
        count += int(ok.sum())
    return count


def random_point(M, rng, max_den=12):
    """A random rational point of P_M built bend by bend.

    Each bend height is drawn from the interval allowed by the previous bend
    and the band; such intervals are never empty for an LPM.
    """
    hu, hl = M.upper_heights, M.lower_heights
    y = Fraction(0)
    steps = []
    for i in range(1, M.n + 1):
        a = max(Fraction(hl[i]), y)
        b = min(Fraction(hu[i]), y + 1)
        den = rng.randint(1, max_den)
        t = Fraction(rng.randint(0, den), den)
        y_new = a + (b - a) * t
        steps.append(y_new - y)
        y = y_new
    return tuple(steps)
