"""The distributive polytope Q_M and the chain-partitioned poset X^k_M.

For a connected LPM the prefix-difference map

    pi(p)_i = sum_{j <= i} (p_j - L_j),   i = 1..n-1

sends P_M bijectively onto the full-dimensional distributive polytope Q_M.
Integer points of kQ_M are in turn the images of order ideals of X^k_M under
the chain-count map phi(I)_i = |I ∩ C_i|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

from .errors import Disconnected, NotInPolytope, NotInQ
from .polytope import as_point, contains, format_point


def _require_connected(M):
    if not M.is_connected:
        raise Disconnected("operation needs a connected LPM")


def _prefix_offsets(M, p):
    return [s - t for s, t in zip(accumulate(p), M.lower_heights[1:])]


def pi_map(M, p):
    _require_connected(M)
    p = as_point(p)
    if not contains(M, p):
        raise NotInPolytope(f"{format_point(p)} is not in P_M")
    return tuple(_prefix_offsets(M, p)[: M.n - 1])


def pi_inverse(M, q):
    """Inverse of pi: p_i = q_i - q_{i-1} + L_i, and p_n closes the sum to r."""
    _require_connected(M)
    q = as_point(q)
    Q = QPolytope(M)
    if len(q) != Q.dim or not Q.contains(q):
        raise NotInQ(f"{format_point(q)} is not in Q_M")
    p = []
    prev = Fraction(0)
    for i, qi in enumerate(q):
        p.append(qi - prev + M.lower[i])
        prev = qi
    if M.n:
        p.append(M.rank - sum(p))
    return tuple(p)


def psi_map(M, p):
    """pi for possibly disconnected M: drop coordinates where U and L meet."""
    p = as_point(p)
    if not contains(M, p):
        raise NotInPolytope(f"{format_point(p)} is not in P_M")
    q = _prefix_offsets(M, p)
    return tuple(qi for i, qi in enumerate(q, start=1) if M.gap(i) > 0)


class QPolytope:
    """Q_M as a difference-constraint system (0-based coordinates internally).

    For i = 0..n-3 with sign = (-1)^{L_{i+2}}: 0 <= sign * (q_{i+1} - q_i) <= 1.
    For i = 0..n-2: 0 <= q_i <= U-height(i+1) - L-height(i+1).
    """

    def __init__(self, M):
        _require_connected(M)
        self.M = M
        self.dim = max(M.n - 1, 0)
        self.upper_bounds = tuple(M.gap(i) for i in range(1, self.dim + 1))
        self.signs = tuple(-1 if M.lower[i + 1] else 1 for i in range(self.dim - 1))

    def difference_pairs(self):
        """Pairs (a, b), 1-based, meaning 0 <= q_a - q_b <= 1."""
        out = []
        for i, s in enumerate(self.signs):
            out.append((i + 2, i + 1) if s == 1 else (i + 1, i + 2))
        return out

    def inequalities(self):
        """The system as a set of (coefficients, lower, upper) triples."""
        out = set()
        for a, b in self.difference_pairs():
            c = [0] * self.dim
            c[a - 1], c[b - 1] = 1, -1
            out.add((tuple(c), 0, 1))
        for i, ub in enumerate(self.upper_bounds):
            c = [0] * self.dim
            c[i] = 1
            out.add((tuple(c), 0, ub))
        return out

    def contains(self, q, k=1):
        """Membership of q in kQ_M."""
        if len(q) != self.dim:
            return False
        if any(not 0 <= x <= k * ub for x, ub in zip(q, self.upper_bounds)):
            return False
        return all(0 <= s * (q[i + 1] - q[i]) <= k for i, s in enumerate(self.signs))

    def _step_range(self, i, x, k):
        s = self.signs[i]
        lo, hi = (x, x + k) if s == 1 else (x - k, x)
        return max(lo, 0), min(hi, k * self.upper_bounds[i + 1])

    def count(self, k):
        """|kQ_M ∩ Z^{n-1}| by a left-to-right sweep carrying q_i."""
        if self.dim == 0:
            return 1
        ways = [1] * (k * self.upper_bounds[0] + 1)
        for i in range(self.dim - 1):
            new = [0] * (k * self.upper_bounds[i + 1] + 1)
            for x, w in enumerate(ways):
                if not w:
                    continue
                lo, hi = self._step_range(i, x, k)
                for y in range(lo, hi + 1):
                    new[y] += w
            ways = new
        return sum(ways)

    def lattice_points(self, k):
        if self.dim == 0:
            yield ()
            return
        point = []

        def rec():
            i = len(point)
            if i == self.dim:
                yield tuple(point)
                return
            if i == 0:
                lo, hi = 0, k * self.upper_bounds[0]
            else:
                lo, hi = self._step_range(i - 1, point[-1], k)
            for y in range(lo, hi + 1):
                point.append(y)
                yield from rec()
                point.pop()

        yield from rec()


def count_Q_points(M, k):
    return QPolytope(M).count(k)


def lattice_leq(M, p, p2):
    """p <= p2 iff every prefix sum of p is at most that of p2."""
    for x in (p, p2):
        if not contains(M, x):
            raise NotInPolytope(f"{format_point(as_point(x))} is not in P_M")
    return all(a <= b for a, b in zip(accumulate(as_point(p)), accumulate(as_point(p2))))


def lattice_join(M, p, p2):
    q = tuple(map(max, pi_map(M, p), pi_map(M, p2)))
    return pi_inverse(M, q)


def lattice_meet(M, p, p2):
    q = tuple(map(min, pi_map(M, p), pi_map(M, p2)))
    return pi_inverse(M, q)


@dataclass(frozen=True)
class ChainPoset:
    """A finite poset with a chain partition.

    ``chains`` lists the chains bottom-up; ``relations`` is any generating
    set of strict relations (x, y) meaning x < y.  Chain order is implied and
    need not be repeated in ``relations``.
    """

    chains: tuple
    relations: tuple = ()

    def __post_init__(self):
        chains = tuple(tuple(c) for c in self.chains)
        object.__setattr__(self, "chains", chains)
        object.__setattr__(self, "relations", tuple(self.relations))
        where = {}
        for ci, chain in enumerate(chains):
            for pos, x in enumerate(chain):
                if x in where:
                    raise ValueError(f"element {x!r} appears in two chains")
                where[x] = (ci, pos)
        object.__setattr__(self, "_where", where)
        for x, y in self.relations:
            if x not in where or y not in where:
                raise ValueError(f"relation ({x!r}, {y!r}) uses an unknown element")
        self.hasse_edges()

    @property
    def elements(self):
        return [x for chain in self.chains for x in chain]

    def position(self, x):
        """(chain index, 0-based position) of element x."""
        return self._where[x]

    def _generating_pairs(self):
        pairs = set(self.relations)
        for chain in self.chains:
            pairs.update(zip(chain, chain[1:]))
        return pairs

    def less_than(self):
        """Strict order as a dict element -> set of strictly larger elements."""
        cached = self.__dict__.get("_less_than")
        if cached is not None:
            return cached
        up = {x: set() for x in self.elements}
        for x, y in self._generating_pairs():
            up[x].add(y)
        order = {}

        def visit(x, stack):
            if x in order:
                return order[x]
            if x in stack:
                raise ValueError("relations contain a cycle")
            stack.add(x)
            acc = set()
            for y in up[x]:
                acc.add(y)
                acc |= visit(y, stack)
            stack.discard(x)
            order[x] = acc
            return acc

        for x in up:
            visit(x, set())
        object.__setattr__(self, "_less_than", order)
        return order

    def hasse_edges(self):
        lt = self.less_than()
        edges = []
        for x, above in lt.items():
            for y in above:
                if not any(y in lt[z] for z in above):
                    edges.append((x, y))
        return sorted(edges, key=lambda e: (self.position(e[0]), self.position(e[1])))

    def _chain_constraints(self):
        """need[(b, a)][q] = least count required on chain a when chain b holds q elements."""
        need = {}
        for x, y in self._generating_pairs():
            a, px = self.position(x)
            b, py = self.position(y)
            if a == b:
                continue
            table = need.setdefault((b, a), [0] * (len(self.chains[b]) + 1))
            table[py + 1] = max(table[py + 1], px + 1)
        for table in need.values():
            for q in range(1, len(table)):
                table[q] = max(table[q], table[q - 1])
        return need

    def _sweep_plan(self):
        need = self._chain_constraints()
        nchains = len(self.chains)
        links = [[] for _ in range(nchains)]
        for b, a in need:
            links[max(a, b)].append((min(a, b), (b, a)))
        last_use = {}
        for t, ls in enumerate(links):
            for s, _ in ls:
                last_use[s] = t
        return need, links, last_use

    def _ok(self, need, vals, t, c, links_t):
        for s, key in links_t:
            b, a = key
            cb = c if b == t else vals[b]
            ca = c if a == t else vals[a]
            if ca < need[key][cb]:
                return False
        return True

    def ideal_count(self):
        """Number of order ideals, by a sweep over the chains."""
        need, links, last_use = self._sweep_plan()
        states = {(): 1}
        frontier = ()
        for t, chain in enumerate(self.chains):
            new_frontier = tuple(s for s in frontier + (t,) if last_use.get(s, -1) > t)
            new_states = {}
            for key, w in states.items():
                vals = dict(zip(frontier, key))
                for c in range(len(chain) + 1):
                    if self._ok(need, vals, t, c, links[t]):
                        vals[t] = c
                        nk = tuple(vals[s] for s in new_frontier)
                        new_states[nk] = new_states.get(nk, 0) + w
                vals.pop(t, None)
            states, frontier = new_states, new_frontier
        return sum(states.values())

    def ideal_vectors(self):
        """All phi(I) = (|I ∩ C_1|, ..., |I ∩ C_n|) over order ideals I."""
        need, links, _ = self._sweep_plan()
        vals = {}
        out = []

        def rec(t):
            if t == len(self.chains):
                out.append(tuple(vals[i] for i in range(t)))
                return
            for c in range(len(self.chains[t]) + 1):
                if self._ok(need, vals, t, c, links[t]):
                    vals[t] = c
                    rec(t + 1)
                    del vals[t]

        rec(0)
        return out

    def is_ideal(self, subset):
        subset = set(subset)
        lt = self.less_than()
        return all(x in subset for x in lt for y in lt[x] if y in subset)

    def ideal_embed(self, ideal):
        """phi(I)_i = |I ∩ C_i|; raises ValueError if I is not an order ideal."""
        ideal = set(ideal)
        if not ideal <= set(self._where):
            raise ValueError("ideal contains unknown elements")
        if not self.is_ideal(ideal):
            raise ValueError("not an order ideal")
        return tuple(sum(1 for x in chain if x in ideal) for chain in self.chains)

    def to_json(self, k=None):
        elems = []
        for ci, chain in enumerate(self.chains):
            for x in chain:
                entry = {"element": list(x) if isinstance(x, tuple) else x, "chain": ci + 1}
                if k is not None and isinstance(x, tuple):
                    entry.update(line=x[0], height_num=x[1], k=k)
                elems.append(entry)
        edges = [
            [list(x) if isinstance(x, tuple) else x, list(y) if isinstance(y, tuple) else y]
            for x, y in self.hasse_edges()
        ]
        return {"elements": elems, "hasse": edges, "num_chains": len(self.chains)}


def build_chain_poset(M, k):
    """X^k_M: points of the (1/k)-refined lines T_1..T_{n-1} above L.

    Element (i, h) is the point of line x + y = i at height h/k, for
    k*L-height(i) < h <= k*U-height(i).  Besides the order along each line,
    (i+1, h) < (i, h) (difference (1, 0)) and (i, h-k) < (i+1, h)
    (difference (0, 1)).
    """
    _require_connected(M)
    if k < 1:
        raise ValueError("k must be at least 1")
    hu, hl = M.upper_heights, M.lower_heights
    chains = []
    for i in range(1, M.n):
        chain = [(i, h) for h in range(k * hl[i] + 1, k * hu[i] + 1)]
        if not chain:
            raise Disconnected(f"line {i} carries no points")
        chains.append(chain)
    present = {x for c in chains for x in c}
    rel = []
    for i, h in present:
        if (i + 1, h) in present:
            rel.append(((i + 1, h), (i, h)))
        if (i + 1, h + k) in present:
            rel.append(((i, h), (i + 1, h + k)))
    return ChainPoset(tuple(chains), tuple(sorted(rel)))


def ideal_count(P):
    return P.ideal_count()


def ideal_embed(P, ideal):
    return P.ideal_embed(ideal)
