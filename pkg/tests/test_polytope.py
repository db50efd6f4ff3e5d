import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from lpmpoly.errors import DimensionMismatch, Disconnected, NotInPolytope, TooLarge
from lpmpoly.lpm import EMPTY, Snake, all_lpms, direct_sum, dual, enumerate_bases, uniform
from lpmpoly.polytope import (
    GeneralizedPath,
    brute_force_count,
    contains,
    count_lattice_points,
    format_point,
    is_interior,
    lattice_points,
    parse_point,
    path_from_point,
    point_from_path,
    random_point,
)

from conftest import brute_count, lpms

A = (F(3, 4), F(3, 4), F(1, 2))
B = (1, 0, 1)
C = (F(1, 4), 1, F(3, 4))


def test_membership_examples(s12):
    assert contains(s12, A)
    assert contains(s12, B)
    assert contains(s12, C)
    assert not contains(s12, (1, 1, 1))


def test_dimension_mismatch(s12):
    with pytest.raises(DimensionMismatch):
        contains(s12, (1, 1))


def test_floats_rejected(s12):
    with pytest.raises(TypeError):
        contains(s12, (0.75, 0.75, 0.5))


def test_interior(s12, s22):
    assert is_interior(s12, A)
    assert not is_interior(s12, B)
    # the octahedron centre lies on the facet p_1 + p_2 <= 1 of the pyramid
    assert contains(s22, (F(1, 2),) * 4)
    assert not is_interior(s22, (F(1, 2),) * 4)
    assert is_interior(s22, (F(1, 3), F(1, 2), F(2, 3), F(1, 2)))


def test_interior_needs_connected():
    M = direct_sum(Snake((1,)).to_lpm(), Snake((1,)).to_lpm())
    with pytest.raises(Disconnected):
        is_interior(M, (F(1, 2),) * 4)


def test_bases_are_boundary():
    for n in range(2, 7):
        for M in all_lpms(n, connected=True):
            for b in enumerate_bases(M):
                assert contains(M, b)
                assert not is_interior(M, b)


def test_rejects_faulty_convex_combination():
    # a point of P_{U_{2,4}} with no 0/1 coordinate; (a - a_1 X)/(1 - a_1) for the
    # base X = (1,0,1,0) leaves the unit box because a_2 = 1 - a_1/2
    M = uniform(2, 4)
    a = (F(2, 5), F(4, 5), F(2, 5), F(2, 5))
    assert contains(M, a)
    X = (1, 0, 1, 0)
    b = tuple((ai - a[0] * xi) / (1 - a[0]) for ai, xi in zip(a, X))
    assert b == (0, F(4, 3), 0, F(2, 3))
    assert not contains(M, b)


def test_path_from_point(s12):
    assert path_from_point(s12, B).bends == ((0, 0), (0, 1), (1, 1), (1, 2))
    assert path_from_point(s12, C).bends == (
        (0, 0),
        (F(3, 4), F(1, 4)),
        (F(3, 4), F(5, 4)),
        (1, 2),
    )
    L = path_from_point(s12, s12.lower)
    assert L.steps() == s12.lower
    with pytest.raises(NotInPolytope):
        path_from_point(s12, (1, 1, 1))


def test_generalized_path_validation():
    with pytest.raises(ValueError):
        GeneralizedPath(((0, 0), (1, 1)))
    with pytest.raises(ValueError):
        GeneralizedPath(((0, 0), (0, 1), (F(3, 2), F(1, 2))))


@pytest.mark.parametrize("M", [Snake((1, 2)).to_lpm(), uniform(2, 4), EMPTY])
def test_k_zero(M):
    assert count_lattice_points(M, 0) == 1
    assert brute_force_count(M, 0) == 1


def test_counts_s22():
    M = Snake((2, 2)).to_lpm()
    # frozen from the pure-Python oracle in conftest
    assert [count_lattice_points(M, k) for k in range(5)] == [1, 5, 14, 30, 55]
    assert brute_count(M.upper, M.lower, 2) == 14
    # sum_{j<=k} C(1+j,1)^2 = 1 + 4 + 9
    assert sum((j + 1) ** 2 for j in range(3)) == 14


def test_brute_examples(s12, s22):
    assert brute_force_count(s12, 1) == 3
    assert brute_force_count(s22, 1) == 5


def test_brute_cap(s22):
    with pytest.raises(TooLarge):
        brute_force_count(s22, 3, cap=100)


def test_env_cap(monkeypatch, s22):
    monkeypatch.setenv("LPM_ENUM_CAP", "10")
    with pytest.raises(TooLarge):
        brute_force_count(s22, 1)


def test_k1_counts_bases():
    for n in range(0, 7):
        for M in all_lpms(n):
            assert count_lattice_points(M, 1) == len(enumerate_bases(M))


def test_dp_vs_brute_exhaustive():
    for n in range(0, 7):
        for M in all_lpms(n):
            for k in range(0, 4):
                assert count_lattice_points(M, k) == brute_force_count(M, k), (M, k)


def test_numpy_brute_vs_pure_python():
    rng = random.Random(5)
    for M in rng.sample(all_lpms(6), 25):
        for k in range(3):
            assert brute_force_count(M, k) == brute_count(M.upper, M.lower, k)


def test_lattice_points_listing(s22):
    pts = list(lattice_points(s22, 2))
    assert len(pts) == 14 == len(set(pts))
    assert all(contains(s22, tuple(F(x, 2) for x in p)) for p in pts)


@settings(max_examples=80, deadline=None)
@given(lpms(max_n=8), st.integers(0, 4))
def test_dp_matches_oracle(M, k):
    if (k + 1) ** M.n <= 400_000:
        assert count_lattice_points(M, k) == brute_force_count(M, k)
    assert count_lattice_points(dual(M), k) == count_lattice_points(M, k)


@settings(max_examples=80, deadline=None)
@given(lpms(max_n=6), lpms(max_n=5), st.integers(0, 4))
def test_direct_sum_multiplicative(A, B, k):
    S = direct_sum(A, B)
    assert count_lattice_points(S, k) == count_lattice_points(A, k) * count_lattice_points(B, k)


@settings(max_examples=100, deadline=None)
@given(lpms(max_n=9, min_n=1), st.integers(0, 2**32))
def test_random_points_roundtrip_and_convexity(M, seed):
    rng = random.Random(seed)
    p = random_point(M, rng)
    q = random_point(M, rng)
    assert contains(M, p)
    path = path_from_point(M, p)
    assert path.fits(M)
    assert point_from_path(path) == p
    mid = tuple((x + y) / 2 for x, y in zip(p, q))
    assert contains(M, mid)


def test_point_serialization():
    assert format_point(A) == "3/4,3/4,1/2"
    assert parse_point("3/4, 3/4,1/2") == A
    assert parse_point("1,0,1") == (1, 0, 1)
