"""Lattice path matroids, snakes and their basic combinatorics.

A lattice path from (0, 0) to (m, r) is stored as its step vector: a tuple of
0/1 entries where 1 is a step up and 0 a step to the right.  An LPM is a pair
of such paths ``upper`` (U) and ``lower`` (L) with U never below L.  Indices
are 0-based internally; the textual formats are position-free strings such
as ``"110"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import accumulate

from .errors import (
    InvalidRuns,
    InvalidStepVector,
    LengthMismatch,
    ParseError,
    PathsCross,
    RankMismatch,
    TooLarge,
)

DEFAULT_MAX_ENUM_N = 24


def heights(steps):
    """Prefix sums ``(0, s_1, s_1+s_2, ...)`` of a step vector (length n+1)."""
    return (0, *accumulate(steps))


def check_step_vector(steps, generalized=False):
    """Validate a step vector and return it as a tuple.

    Integer form requires entries in {0, 1}.  The generalized form accepts
    exact rationals in [0, 1]; floats are rejected in both forms.
    """
    out = []
    for i, v in enumerate(steps):
        if isinstance(v, bool) or isinstance(v, float):
            raise InvalidStepVector(f"entry {i + 1} has unsupported type {type(v).__name__}")
        if generalized:
            if not isinstance(v, (int, Fraction)):
                raise InvalidStepVector(f"entry {i + 1} is not an exact rational")
            if not 0 <= v <= 1:
                raise InvalidStepVector(f"entry {i + 1} = {v} outside [0, 1]")
        elif v not in (0, 1) or not isinstance(v, int):
            raise InvalidStepVector(f"entry {i + 1} = {v!r} is not 0 or 1")
        out.append(v)
    return tuple(out)


def parse_steps(text):
    """Parse ``"110"`` into ``(1, 1, 0)``."""
    text = text.strip()
    for pos, ch in enumerate(text):
        if ch not in "01":
            raise ParseError(f"invalid step character {ch!r}", pos)
    return tuple(int(ch) for ch in text)


def format_steps(steps):
    return "".join(str(int(v)) for v in steps)


@dataclass(frozen=True)
class Lpm:
    """The lattice path matroid M[U, L] on ground set {1, ..., n}."""

    upper: tuple
    lower: tuple

    def __post_init__(self):
        upper = check_step_vector(self.upper)
        lower = check_step_vector(self.lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)
        if len(upper) != len(lower):
            raise LengthMismatch(f"|U| = {len(upper)} but |L| = {len(lower)}")
        if sum(upper) != sum(lower):
            raise RankMismatch(f"sum(U) = {sum(upper)} but sum(L) = {sum(lower)}")
        for i, (hu, hl) in enumerate(zip(heights(upper), heights(lower))):
            if hl > hu:
                raise PathsCross(f"L is above U after step {i}")

    @classmethod
    def from_strings(cls, upper, lower):
        return cls(parse_steps(upper), parse_steps(lower))

    @property
    def n(self):
        return len(self.upper)

    @property
    def rank(self):
        return sum(self.upper)

    @property
    def width(self):
        return self.n - self.rank

    @cached_property
    def upper_heights(self):
        return heights(self.upper)

    @cached_property
    def lower_heights(self):
        return heights(self.lower)

    def gap(self, i):
        """Height difference of U and L after i steps."""
        return self.upper_heights[i] - self.lower_heights[i]

    @cached_property
    def meeting_points(self):
        """Indices 1..n where U and L meet; the last one is always n."""
        return tuple(i for i in range(1, self.n + 1) if self.gap(i) == 0)

    @property
    def num_components(self):
        return len(self.meeting_points)

    @property
    def is_connected(self):
        return self.num_components <= 1

    @property
    def dimension(self):
        """Dimension of the base polytope, n minus the number of components."""
        return self.n - self.num_components

    def __str__(self):
        return f"U={format_steps(self.upper)},L={format_steps(self.lower)}"


def lpm_new(upper, lower):
    return Lpm(tuple(upper), tuple(lower))


def uniform(rank, n):
    """U_{r,n}: every r-subset of [n] is a base."""
    if not 0 <= rank <= n:
        raise ValueError("need 0 <= rank <= n")
    m = n - rank
    return Lpm((1,) * rank + (0,) * m, (0,) * m + (1,) * rank)


EMPTY = Lpm((), ())


_SNAKE_RE = re.compile(r"\s*S\s*\(([^)]*)\)\s*$")


@dataclass(frozen=True)
class Snake:
    """Run-length description S(a_1, ..., a_k) of a border strip.

    Runs alternate right/up starting with a horizontal run; consecutive runs
    share one cell.  ``a_1 >= 1`` and ``a_i >= 2`` for i >= 2.
    """

    runs: tuple

    def __post_init__(self):
        runs = tuple(self.runs)
        object.__setattr__(self, "runs", runs)
        if not runs:
            raise InvalidRuns("a snake needs at least one run")
        for i, a in enumerate(runs):
            if not isinstance(a, int) or isinstance(a, bool):
                raise InvalidRuns(f"run {i + 1} is not an integer")
            if a < (1 if i == 0 else 2):
                raise InvalidRuns(f"run {i + 1} = {a} too small")

    @classmethod
    def parse(cls, text):
        m = _SNAKE_RE.match(text)
        if not m:
            raise ParseError(f"not a snake expression: {text!r}", 0)
        body = m.group(1)
        offset = m.start(1)
        runs = []
        pos = 0
        for tok in body.split(","):
            tok_s = tok.strip()
            if not tok_s.isdigit():
                raise ParseError(f"bad run {tok_s!r}", offset + pos)
            runs.append(int(tok_s))
            pos += len(tok) + 1
        try:
            return cls(tuple(runs))
        except InvalidRuns as exc:
            raise ParseError(str(exc), offset) from exc

    @property
    def num_cells(self):
        return sum(self.runs) - len(self.runs) + 1

    def cells(self):
        """Cells (x, y) of the strip, listed from the origin outwards."""
        cells = [(0, 0)]
        x = y = 0
        for i, a in enumerate(self.runs):
            for _ in range(a - 1):
                if i % 2 == 0:
                    x += 1
                else:
                    y += 1
                cells.append((x, y))
        return cells

    def to_lpm(self):
        return lpm_from_cells(self.cells())

    def __str__(self):
        return "S(" + ",".join(map(str, self.runs)) + ")"


def lpm_from_cells(cells):
    """Build the LPM whose diagram is the given skew shape of unit cells.

    Cell (x, y) is the square [x, x+1] x [y, y+1].  Each column must be a
    contiguous interval, with bottoms and tops weakly increasing left to right
    and the shape starting at the origin.
    """
    cols = {}
    for x, y in cells:
        lo, hi = cols.get(x, (y, y + 1))
        cols[x] = (min(lo, y), max(hi, y + 1))
    width = len(cols)
    if sorted(cols) != list(range(width)):
        raise ValueError("columns of the shape are not contiguous from x = 0")
    upper, lower = [], []
    hu = hl = 0
    for x in range(width):
        bottom, top = cols[x]
        upper += [1] * (top - hu) + [0]
        lower += [1] * (bottom - hl) + [0]
        hu, hl = top, bottom
    rank = hu
    lower += [1] * (rank - hl)
    return Lpm(tuple(upper), tuple(lower))


def snake_to_lpm(snake):
    if not isinstance(snake, Snake):
        snake = Snake(tuple(snake))
    return snake.to_lpm()


def lpm_cells(M):
    """Unit cells of the diagram of M."""

    def right_step_heights(steps):
        out, h = [], 0
        for s in steps:
            if s:
                h += 1
            else:
                out.append(h)
        return out

    tops = right_step_heights(M.upper)
    bottoms = right_step_heights(M.lower)
    return {(x, y) for x, (lo, hi) in enumerate(zip(bottoms, tops)) for y in range(lo, hi)}


def interior_lattice_points(M):
    """Lattice points of the diagram all four of whose surrounding cells lie in it."""
    cells = lpm_cells(M)
    pts = set()
    for x, y in cells:
        for px, py in ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)):
            around = {(px - 1, py - 1), (px, py - 1), (px - 1, py), (px, py)}
            if around <= cells:
                pts.add((px, py))
    return pts


def count_bases(M):
    """Number of lattice paths weakly between L and U."""
    hu, hl = M.upper_heights, M.lower_heights
    ways = {0: 1}
    for i in range(1, M.n + 1):
        ways = {
            h: ways.get(h, 0) + ways.get(h - 1, 0)
            for h in range(hl[i], hu[i] + 1)
        }
    return ways[M.rank]


def enumerate_bases(M, max_n=DEFAULT_MAX_ENUM_N):
    """All bases of M as 0/1 step vectors in ascending lexicographic order."""
    if M.n > max_n:
        raise TooLarge(f"n = {M.n} exceeds enumeration cap {max_n}")
    hu, hl = M.upper_heights, M.lower_heights
    out = []

    def extend(prefix, h):
        i = len(prefix)
        if i == M.n:
            out.append(tuple(prefix))
            return
        for s in (0, 1):
            if hl[i + 1] <= h + s <= hu[i + 1]:
                prefix.append(s)
                extend(prefix, h + s)
                prefix.pop()

    extend([], 0)
    return out


def connected_components(M):
    """Split M at every point where U and L meet."""
    comps = []
    start = 0
    for i in M.meeting_points:
        comps.append(Lpm(M.upper[start:i], M.lower[start:i]))
        start = i
    return comps


def direct_sum(*matroids):
    upper, lower = (), ()
    for M in matroids:
        upper += M.upper
        lower += M.lower
    return Lpm(upper, lower)


def dual(M):
    """Reflect the diagram in x = y: U* = 1 - L and L* = 1 - U."""
    return Lpm(tuple(1 - v for v in M.lower), tuple(1 - v for v in M.upper))


def is_snake(M):
    """Return the Snake describing M, or None if M is not a snake."""
    if M.n < 2 or not M.is_connected:
        return None
    if any(M.gap(i) > 1 for i in range(M.n + 1)):
        return None
    cells = sorted(lpm_cells(M), key=lambda c: (c[0] + c[1], c[0]))
    dirs = ["R" if b[0] > a[0] else "U" for a, b in zip(cells, cells[1:])]
    runs = []
    i = 0
    lead = 0
    while i < len(dirs) and dirs[i] == "R":
        lead += 1
        i += 1
    runs.append(lead + 1)
    while i < len(dirs):
        j = i
        while j < len(dirs) and dirs[j] == dirs[i]:
            j += 1
        runs.append(j - i + 1)
        i = j
    return Snake(tuple(runs))


def all_paths(n, rank):
    """Every 0/1 step vector of length n with the given number of ones."""
    out = []

    def rec(prefix, ones):
        if len(prefix) == n:
            if ones == rank:
                out.append(tuple(prefix))
            return
        left = n - len(prefix)
        if ones + left > rank:
            prefix.append(0)
            rec(prefix, ones)
            prefix.pop()
        if ones < rank:
            prefix.append(1)
            rec(prefix, ones + 1)
            prefix.pop()

    rec([], 0)
    return out


def all_lpms(n, connected=False):
    """Every LPM on n elements (all ranks), optionally only connected ones."""
    out = []
    for rank in range(n + 1):
        paths = all_paths(n, rank)
        hts = {p: heights(p) for p in paths}
        for U in paths:
            for L in paths:
                if all(a >= b for a, b in zip(hts[U], hts[L])):
                    M = Lpm(U, L)
                    if not connected or M.is_connected:
                        out.append(M)
    return out


def all_snakes(max_cells, min_first=1, min_cells=1):
    """Every run list with between min_cells and max_cells cells."""
    out = []

    def rec(runs, cells):
        if runs and min_cells <= cells:
            out.append(Snake(tuple(runs)))
        lo = min_first if not runs else 2
        for a in range(lo, max_cells + 2):
            extra = a if not runs else a - 1
            if cells + extra > max_cells:
                break
            runs.append(a)
            rec(runs, cells + extra)
            runs.pop()

    rec([], 0)
    return out
