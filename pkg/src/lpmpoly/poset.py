"""Finite posets, zig-zag chains and order polytopes.

Elements are labeled 1..n.  The order polytope O(X) uses the convention
x_i >= x_j whenever i <= j in X, so its 0/1 points are indicator vectors of
order ideals (down-sets).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial

from .errors import InvalidPoset, InvalidRuns, NotNaturallyLabeled, ParseError, TooLarge
from .lpm import Snake
from .polynomial import RatPolynomial


class Poset:
    """A strict partial order on {1, ..., n}, stored transitively closed."""

    def __init__(self, n, relations=()):
        self.n = n
        up = {i: set() for i in range(1, n + 1)}
        for a, b in relations:
            if not (1 <= a <= n and 1 <= b <= n):
                raise InvalidPoset(f"relation ({a}, {b}) outside 1..{n}")
            if a == b:
                raise InvalidPoset(f"relation ({a}, {a}) is reflexive")
            up[a].add(b)
        # Floyd-Warshall style closure; n is small throughout.
        for mid in range(1, n + 1):
            for a in range(1, n + 1):
                if mid in up[a]:
                    up[a] |= up[mid]
        for a in up:
            if a in up[a]:
                raise InvalidPoset("relations contain a cycle")
        self._up = {a: frozenset(s) for a, s in up.items()}
        self.relations = frozenset((a, b) for a, s in up.items() for b in s)

    def less(self, a, b):
        return b in self._up[a]

    def above(self, a):
        return self._up[a]

    def below(self, b):
        return frozenset(a for a in range(1, self.n + 1) if b in self._up[a])

    @property
    def is_natural(self):
        return all(a < b for a, b in self.relations)

    def covers(self):
        out = []
        for a, b in sorted(self.relations):
            if not any(c in self._up[a] and b in self._up[c] for c in self._up[a]):
                out.append((a, b))
        return out

    def relabel(self, mapping):
        """Poset with element a renamed mapping[a] (mapping: dict or 1-based sequence)."""
        if not isinstance(mapping, dict):
            mapping = {i + 1: v for i, v in enumerate(mapping)}
        return Poset(self.n, [(mapping[a], mapping[b]) for a, b in self.relations])

    def natural_labeling(self):
        """Relabel by Kahn's algorithm, always taking the smallest available label."""
        indeg = {a: len(self.below(a)) for a in range(1, self.n + 1)}
        avail = sorted(a for a, d in indeg.items() if d == 0)
        order = []
        placed = set()
        while avail:
            a = avail.pop(0)
            order.append(a)
            placed.add(a)
            for b in range(1, self.n + 1):
                if b not in placed and b not in avail and self.below(b) <= placed:
                    avail.append(b)
            avail.sort()
        return self.relabel({a: i + 1 for i, a in enumerate(order)})

    def __eq__(self, other):
        return isinstance(other, Poset) and (self.n, self.relations) == (other.n, other.relations)

    def __hash__(self):
        return hash((self.n, self.relations))

    def __repr__(self):
        return f"Poset({self.n}, covers={self.covers()})"

    def to_json(self):
        return {"n": self.n, "covers": [list(c) for c in self.covers()]}

    @classmethod
    def from_json(cls, data):
        return cls(data["n"], [tuple(c) for c in data["covers"]])


def chain(n):
    return Poset(n, [(i, i + 1) for i in range(1, n)])


def antichain(n):
    return Poset(n)


_ZIGZAG_RE = re.compile(r"\s*Z\s*\(([^)]*)\)\s*$")


def parse_zigzag(text):
    m = _ZIGZAG_RE.match(text)
    if not m:
        raise ParseError(f"not a zig-zag expression: {text!r}", 0)
    try:
        runs = tuple(int(t) for t in m.group(1).split(","))
    except ValueError as exc:
        raise ParseError(f"bad run list in {text!r}", m.start(1)) from exc
    return zigzag(runs)


def zigzag(runs):
    """Z(a_1, ..., a_k): chains glued at bottoms (odd i) and tops (even i)."""
    runs = tuple(runs)
    if not runs or any(a < 2 for a in runs):
        raise InvalidRuns("zig-zag chains need every a_i >= 2")
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for i in range(len(runs) - 1):
        if i % 2 == 0:
            parent[find((i + 1, 0))] = find((i, 0))
        else:
            parent[find((i + 1, runs[i + 1] - 1))] = find((i, runs[i] - 1))
    nodes = sorted({find((c, p)) for c, a in enumerate(runs) for p in range(a)})
    rel = set()
    for c, a in enumerate(runs):
        for p in range(a - 1):
            rel.add((find((c, p)), find((c, p + 1))))
    # deterministic topological order: smallest (chain, position) first
    placed, order = set(), []
    preds = {x: {a for a, b in rel if b == x} for x in nodes}
    while len(order) < len(nodes):
        x = min(y for y in nodes if y not in placed and preds[y] <= placed)
        order.append(x)
        placed.add(x)
    label = {x: i + 1 for i, x in enumerate(order)}
    return Poset(len(nodes), [(label[a], label[b]) for a, b in rel])


def ideal_masks(X):
    """All order ideals of X as bitmasks (bit a-1 set when a is in the ideal)."""
    below = [0] * (X.n + 1)
    for a, b in X.relations:
        below[b] |= 1 << (a - 1)
    out = []

    def rec(i, mask):
        if i > X.n:
            out.append(mask)
            return
        rec(i + 1, mask)
        # include i only if everything below it is included; elements are
        # visited in label order, so for a natural labeling this is complete
        if below[i] & mask == below[i]:
            rec(i + 1, mask | (1 << (i - 1)))

    if X.is_natural:
        rec(1, 0)
        return out
    return [
        m
        for m in range(1 << X.n)
        if all(below[b] & m == below[b] for b in range(1, X.n + 1) if m >> (b - 1) & 1)
    ]


def order_polynomial(X, k, method="ideals"):
    """Omega_X(k): order-preserving maps from X into the chain 1 < ... < k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if method == "brute":
        pairs = list(X.relations)
        return sum(
            1
            for eta in product(range(1, k + 1), repeat=X.n)
            if all(eta[a - 1] <= eta[b - 1] for a, b in pairs)
        )
    if method != "ideals":
        raise ValueError(f"unknown method {method!r}")
    if X.n == 0:
        return 1
    if k == 0:
        return 0
    # Omega(k) counts multichains of ideals I_1 <= ... <= I_{k-1}
    ideals = ideal_masks(X)
    g = {m: 1 for m in ideals}
    for _ in range(k - 2):
        g = {J: sum(w for I, w in g.items() if I & J == I) for J in ideals}
    return sum(g.values()) if k >= 2 else 1


def _check_natural(X):
    if not X.is_natural:
        raise NotNaturallyLabeled("poset labeling is not natural")


def iter_linear_extensions(X):
    """Yield linear extensions as words (w_1, ..., w_n) of element labels."""
    below = {b: X.below(b) for b in range(1, X.n + 1)}
    word = []
    used = set()

    def rec():
        if len(word) == X.n:
            yield tuple(word)
            return
        for b in range(1, X.n + 1):
            if b not in used and below[b] <= used:
                word.append(b)
                used.add(b)
                yield from rec()
                used.discard(b)
                word.pop()

    yield from rec()


def count_linear_extensions(X):
    """e(X) by dynamic programming over order ideals."""
    below = [0] * (X.n + 1)
    for a, b in X.relations:
        below[b] |= 1 << (a - 1)
    full = (1 << X.n) - 1

    @lru_cache(maxsize=None)
    def ways(mask):
        if mask == full:
            return 1
        total = 0
        for b in range(1, X.n + 1):
            bit = 1 << (b - 1)
            if not mask & bit and below[b] & mask == below[b]:
                total += ways(mask | bit)
        return total

    return ways(0)


def descent_vector(X, convention="extension"):
    """omega_s = number of linear extensions with s descents, s = 0..n-1.

    ``extension``: walk the linear extensions and count adjacent pairs
    w_i > w_{i+1}.  ``permutation``: scan all of S_n for permutations sigma
    with sigma^{-1}(a) < sigma^{-1}(b) whenever a < b in X and count the
    positions with sigma(i) > sigma(i+1).  Both must give the same vector.
    """
    _check_natural(X)
    omega = [0] * max(X.n, 1)
    if convention == "extension":
        words = iter_linear_extensions(X)
    elif convention == "permutation":
        pairs = list(X.relations)
        words = (
            sigma
            for sigma in permutations(range(1, X.n + 1))
            if all(sigma.index(a) < sigma.index(b) for a, b in pairs)
        )
    else:
        raise ValueError(f"unknown convention {convention!r}")
    for w in words:
        omega[sum(1 for x, y in zip(w, w[1:]) if x > y)] += 1
    return tuple(omega)


def linear_extensions(X):
    """(e(X), omega) for a naturally labeled poset."""
    omega = descent_vector(X)
    return sum(omega), omega


def omega_polynomial(omega, n):
    """Omega_X(t + 1) as sum_s omega_s C(n + t - s, n), a polynomial in t."""
    poly = RatPolynomial()
    for s, w in enumerate(omega):
        if w:
            poly = poly + RatPolynomial.binomial(n - s, n) * w
    return poly


def order_polytope_count(X, k):
    """|k O(X) ∩ Z^n|: x in {0..k}^n with x_a >= x_b whenever a < b in X."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    order = _topological_order(X)
    preds = {b: [a for a in order if X.less(a, b)] for b in order}
    vals = {}

    def rec(i):
        b = order[i]
        bound = min((vals[a] for a in preds[b]), default=k)
        if i == len(order) - 1:
            return bound + 1
        total = 0
        for v in range(bound + 1):
            vals[b] = v
            total += rec(i + 1)
        del vals[b]
        return total

    return rec(0) if order else 1


def order_polytope_points(X, k):
    """Integer points of k O(X), by scanning all of {0..k}^n."""
    return [
        x
        for x in product(range(k + 1), repeat=X.n)
        if all(x[a - 1] >= x[b - 1] for a, b in X.relations)
    ]


def _topological_order(X):
    return sorted(range(1, X.n + 1), key=lambda b: (len(X.below(b)), b))


def vertex_check(X, max_n=12):
    """0/1 points of O(X) are exactly the ideal indicators, same count."""
    if X.n > max_n:
        raise TooLarge(f"n = {X.n} exceeds {max_n}")
    binary = set(order_polytope_points(X, 1))
    indicators = {tuple((m >> i) & 1 for i in range(X.n)) for m in ideal_masks(X)}
    return binary == indicators and len(binary) == len(ideal_masks(X))


def order_polytope_ehrhart(X, extra=1):
    """Interpolated Ehrhart polynomial of O(X), with ``extra`` check nodes."""
    values = [order_polytope_count(X, k) for k in range(X.n + 1)]
    poly = RatPolynomial.interpolate(values)
    for k in range(X.n + 1, X.n + 1 + extra):
        if poly(k) != order_polytope_count(X, k):
            raise ArithmeticError("order polytope counts are not polynomial of degree n")
    return poly


def volume_check(X, max_n=10):
    """Leading Ehrhart coefficient of O(X) equals e(X)/n!."""
    if X.n > max_n:
        raise TooLarge(f"n = {X.n} exceeds {max_n}")
    lead = order_polytope_ehrhart(X).leading
    return lead == Fraction(count_linear_extensions(X), factorial(X.n))


def verify_orderpoly_equiv(snake, k_max):
    """Q-count of the snake equals the order-polytope count of its zig-zag for k <= k_max."""
    from .distributive import count_Q_points

    if not isinstance(snake, Snake):
        snake = Snake(tuple(snake))
    if snake.runs[0] < 2:
        raise InvalidRuns("the zig-zag correspondence needs a_1 >= 2")
    M = snake.to_lpm()
    Z = zigzag(snake.runs)
    return all(count_Q_points(M, k) == order_polytope_count(Z, k) for k in range(k_max + 1))


def orderpoly_vertex_isomorphism(snake, max_n=6):
    """Coordinate permutation taking the 0/1 points of Q_S onto those of O(Z).

    Returns a tuple perm with perm[i] = zig-zag element (0-based) matched to Q
    coordinate i, or None when no permutation works.
    """
    from .distributive import QPolytope

    if not isinstance(snake, Snake):
        snake = Snake(tuple(snake))
    if snake.runs[0] < 2:
        raise InvalidRuns("the zig-zag correspondence needs a_1 >= 2")
    Q = QPolytope(snake.to_lpm())
    Z = zigzag(snake.runs)
    if Z.n != Q.dim:
        return None
    if Z.n > max_n:
        raise TooLarge(f"n = {Z.n} exceeds {max_n}")
    q_pts = sorted(Q.lattice_points(1))
    o_pts = set(order_polytope_points(Z, 1))
    if len(q_pts) != len(o_pts):
        return None
    for perm in permutations(range(Z.n)):
        mapped = set()
        for q in q_pts:
            x = [0] * Z.n
            for i, j in enumerate(perm):
                x[j] = q[i]
            mapped.add(tuple(x))
        if mapped == o_pts:
            return perm
    return None

