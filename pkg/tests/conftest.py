import random
from itertools import combinations, product

import pytest

from neighborly import Code, parse_code

TABLE2_TEXT = """\
# neighborly code in standard form
0*1**0
010**0
0001**
0000*0
1***00
1***1*
***001
"""

EX1 = ["00*", "*11"]
TRIPLE = ["00*", "1*0", "*11"]


@pytest.fixture
def table2() -> Code:
    return parse_code(TABLE2_TEXT)


@pytest.fixture
def ex1() -> Code:
    return Code.from_words(EX1)


@pytest.fixture
def triple() -> Code:
    return Code.from_words(TRIPLE)


def _masks(w: str) -> tuple[int, int]:
    return (
        sum(1 << k for k, c in enumerate(w) if c == "0"),
        sum(1 << k for k, c in enumerate(w) if c == "1"),
    )


def _dich(a, b) -> int:
    return (a[0] & b[1]) | (a[1] & b[0])


def random_code(rng: random.Random, n: int, size: int, neighborly: bool = False, d: int | None = None) -> Code:
    """Greedy random code with words of mixed support unless ``d`` is given."""
    kept: list[str] = []
    masks = []
    for _ in range(40 * size):
        if len(kept) >= size:
            break
        if d is None:
            w = "".join(rng.choice("01*") for _ in range(n))
        else:
            cols = set(rng.sample(range(n), d))
            w = "".join(rng.choice("01") if k in cols else "*" for k in range(n))
        if w in kept:
            continue
        m = _masks(w)
        ok = True
        for other in masks:
            dich = _dich(m, other)
            if not dich or (neighborly and dich & (dich - 1)):
                ok = False
                break
        if ok:
            kept.append(w)
            masks.append(m)
    if not kept:
        kept = ["*" * n]
    return Code.from_words(kept, n=n)


def all_neighborly_codes(n: int, max_size: int):
    """Every neighborly code in A^n with at most ``max_size`` words (nonempty)."""
    words = ["".join(p) for p in product("01*", repeat=n)]
    masks = [_masks(w) for w in words]
    adj = []
    for i in range(len(words)):
        adj.append({j for j in range(len(words)) if j != i and _single(_dich(masks[i], masks[j]))})

    def grow(chosen, cand):
        if chosen:
            yield Code.from_words([words[i] for i in chosen], n=n)
        if len(chosen) == max_size:
            return
        for i in sorted(cand):
            yield from grow(chosen + [i], {j for j in cand & adj[i] if j > i})

    yield from grow([], set(range(len(words))))


def _single(x: int) -> bool:
    return x != 0 and x & (x - 1) == 0


ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    number, title = marker.args
    status = "PASS" if rep.passed else "FAIL"
    prev = ACCEPTANCE.get(number)
    if prev is None or prev[1] == "PASS":
        ACCEPTANCE[number] = (title, status)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, status = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
