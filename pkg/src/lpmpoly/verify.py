"""Cross-check suites behind ``lpm verify``.

Each suite yields instances smallest first and checks one identity per
instance.  A run stops at the first failure so the reported instance is the
smallest failing one in enumeration order.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import factorial

from . import distributive as dist
from .ehrhart import (
    closed_form_ab,
    ehrhart_polynomial,
    hstar,
    hstar_to_polynomial,
    is_unimodal,
    snake_count,
)
from .errors import UnknownSuite
from .lpm import Snake, all_lpms, all_snakes, direct_sum, dual
from .polytope import brute_force_count, count_lattice_points, random_point
from .poset import linear_extensions, order_polynomial, order_polytope_count, zigzag


@dataclass
class Settings:
    max_cells: int = 6
    max_k: int = 3
    max_n: int = 6
    seed: int = 0
    samples: int = 50


@dataclass
class Outcome:
    instance: str
    ok: bool
    detail: str = ""


def _count(s, cfg):
    M = s.to_lpm()
    for k in range(cfg.max_k + 1):
        a, b, c = snake_count(s, k), count_lattice_points(M, k), brute_force_count(M, k)
        if not a == b == c:
            return False, f"k={k}: matrix={a} dp={b} brute={c}"
    return True, ""


def _ehrhart(M, cfg):
    L = ehrhart_polynomial(M)
    d = M.dimension
    h = hstar(L, d)
    if hstar_to_polynomial(h, d) != L:
        return False, "h* reconstruction differs"
    if sum(h) != L.leading * factorial(d):
        return False, f"sum h* = {sum(h)} but d! * lead = {L.leading * factorial(d)}"
    return True, ""


def _closed_form(s, cfg):
    a, b = s.runs
    if closed_form_ab(a, b) != ehrhart_polynomial(s.to_lpm()):
        return False, "closed form differs from interpolation"
    return True, ""


def _dpoly(item, cfg):
    idx, M = item
    for k in range(cfg.max_k + 1):
        a, b = count_lattice_points(M, k), dist.count_Q_points(M, k)
        if a != b:
            return False, f"k={k}: P count {a} != Q count {b}"
    rng = random.Random(cfg.seed * 1_000_003 + idx)
    for _ in range(cfg.samples):
        p = random_point(M, rng)
        if dist.pi_inverse(M, dist.pi_map(M, p)) != p:
            return False, f"pi round trip fails at {p}"
    return True, ""


def _poset(M, cfg):
    Q = dist.QPolytope(M)
    for k in range(1, cfg.max_k + 1):
        P = dist.build_chain_poset(M, k)
        if P.ideal_count() != Q.count(k):
            return False, f"k={k}: ideal count {P.ideal_count()} != Q count {Q.count(k)}"
        if set(P.ideal_vectors()) != set(Q.lattice_points(k)):
            return False, f"k={k}: phi image differs from kQ points"
    return True, ""


def _orderpoly(s, cfg):
    M = s.to_lpm()
    Z = zigzag(s.runs)
    for k in range(cfg.max_k + 1):
        a = order_polytope_count(Z, k)
        b = order_polynomial(Z, k + 1)
        c = dist.count_Q_points(M, k)
        if not a == b == c:
            return False, f"k={k}: O(Z)={a} Omega={b} Q={c}"
    _, omega = linear_extensions(Z)
    h = hstar(ehrhart_polynomial(M), M.dimension)
    if tuple(omega) + (0,) != h:
        return False, f"omega {omega} != h* {h}"
    return True, ""


def _duality(M, cfg):
    D = dual(M)
    for k in range(cfg.max_k + 1):
        if count_lattice_points(M, k) != count_lattice_points(D, k):
            return False, f"k={k}: counts differ"
    if ehrhart_polynomial(M) != ehrhart_polynomial(D):
        return False, "polynomials differ"
    return True, ""


def _direct_sum(pair, cfg):
    A, B = pair
    S = direct_sum(A, B)
    for k in range(cfg.max_k + 1):
        if count_lattice_points(S, k) != count_lattice_points(A, k) * count_lattice_points(B, k):
            return False, f"k={k}: not multiplicative"
    if ehrhart_polynomial(S) != ehrhart_polynomial(A) * ehrhart_polynomial(B):
        return False, "polynomial is not the product"
    return True, ""


def _unimodal(s, cfg):
    M = s.to_lpm()
    h = hstar(ehrhart_polynomial(M), M.dimension)
    return is_unimodal(h), f"h* = {h}"


def _equal_run_snakes(max_cells):
    out = []
    for a in range(2, max_cells + 2):
        runs = [a]
        while sum(runs) - len(runs) + 1 <= max_cells:
            out.append(Snake(tuple(runs)))
            runs.append(a)
    return out


def _instances(name, cfg):
    if name == "count":
        return [(str(s), s) for s in all_snakes(cfg.max_cells)], _count
    if name == "ehrhart":
        items = [(str(M), M) for n in range(cfg.max_n + 1) for M in all_lpms(n)]
        return items, _ehrhart
    if name == "closed-form":
        items = [(str(Snake((a, b))), Snake((a, b))) for a in range(2, 5) for b in range(2, 5)]
        return items, _closed_form
    if name == "dpoly":
        lpms = [M for n in range(1, cfg.max_n + 1) for M in all_lpms(n, connected=True)]
        return [(str(M), (i, M)) for i, M in enumerate(lpms)], _dpoly
    if name == "poset":
        lpms = [M for n in range(1, cfg.max_n + 1) for M in all_lpms(n, connected=True)]
        return [(str(M), M) for M in lpms], _poset
    if name == "orderpoly":
        return [(str(s), s) for s in all_snakes(cfg.max_cells, min_first=2)], _orderpoly
    if name == "duality":
        return [(str(M), M) for n in range(cfg.max_n + 1) for M in all_lpms(n)], _duality
    if name == "direct-sum":
        half = max(cfg.max_n // 2, 1)
        small = [M for n in range(half + 1) for M in all_lpms(n)]
        return [(f"{A} + {B}", (A, B)) for A in small for B in small], _direct_sum
    if name == "unimodal":
        snakes = _equal_run_snakes(cfg.max_cells)
        snakes += [Snake((a, b)) for a in range(2, 6) for b in range(2, 6)]
        return [(str(s), s) for s in snakes], _unimodal
    raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


SUITES = (
    "count",
    "ehrhart",
    "closed-form",
    "dpoly",
    "poset",
    "orderpoly",
    "duality",
    "direct-sum",
    "unimodal",
)


def run_suite(name, cfg=None, jobs=1):
    """Run a suite; returns (outcomes checked, first failure or None)."""
    cfg = cfg or Settings()
    items, check = _instances(name, cfg)

    def one(item):
        label, payload = item
        ok, detail = check(payload, cfg)
        return Outcome(label, ok, detail)

    outcomes = []
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one, items))
    else:
        results = map(one, items)
    for out in results:
        outcomes.append(out)
        if not out.ok:
            return outcomes, out
    return outcomes, None
