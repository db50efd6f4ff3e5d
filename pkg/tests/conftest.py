from itertools import accumulate, combinations, product

import pytest
from hypothesis import strategies as st

from lpmpoly.lpm import Lpm, Snake


def brute_count(U, L, k):
    """Pure-Python oracle: scan [0, k]^n against the band inequalities."""
    hu, hl = list(accumulate(U)), list(accumulate(L))
    total = 0
    for p in product(range(k + 1), repeat=len(U)):
        s = list(accumulate(p))
        if all(k * a <= b <= k * c for a, b, c in zip(hl, s, hu)):
            total += 1
    return total


def bases_by_subsets(M):
    """All r-subsets of [n] whose indicator stays between L and U."""
    out = []
    for B in combinations(range(M.n), M.rank):
        v = tuple(1 if i in B else 0 for i in range(M.n))
        h = (0, *accumulate(v))
        if all(M.lower_heights[i] <= h[i] <= M.upper_heights[i] for i in range(M.n + 1)):
            out.append(v)
    return out


@st.composite
def lpms(draw, max_n=8, min_n=0):
    n = draw(st.integers(min_n, max_n))
    r = draw(st.integers(0, n))
    ones = st.sets(st.integers(0, n - 1), min_size=r, max_size=r) if n else st.just(set())
    a, b = draw(ones), draw(ones)
    ha = list(accumulate(1 if i in a else 0 for i in range(n)))
    hb = list(accumulate(1 if i in b else 0 for i in range(n)))
    hi = [max(x, y) for x, y in zip(ha, hb)]
    lo = [min(x, y) for x, y in zip(ha, hb)]
    U = tuple(h - g for h, g in zip(hi, [0] + hi[:-1]))
    L = tuple(h - g for h, g in zip(lo, [0] + lo[:-1]))
    return Lpm(U, L)


@pytest.fixture
def s12():
    return Snake((1, 2)).to_lpm()


@pytest.fixture
def s22():
    return Snake((2, 2)).to_lpm()


# one summary line per acceptance criterion, printed after the run
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when == "teardown":
        return
    num, title = mark.args
    ok = _CRITERIA.get(num, (title, True))[1] and not rep.failed
    if rep.when == "call" or rep.failed:
        _CRITERIA[num] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, ok = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")
