"""Maximum neighborly d-codes without twin pairs at fixed word length.

The search grows codes one word at a time, level by level, and keeps a single
canonical representative per isomorphism class at every level.  Every code
of size k+1 contains a code of size k, and an isomorphism carrying that
subcode to its representative carries the whole code to an extension of the
representative, so no class is lost.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import combinations, product

from .codes import Code
from .errors import BadParameters
from .transforms import _canonical_search
from .words import Letter, Word

log = logging.getLogger(__name__)

DEFAULT_NODE_LIMIT = 10**8


@dataclass
class SearchResult:
    d: int
    n: int
    max_size: int
    witnesses: list[Code]
    nodes_explored: int
    exhaustive: bool
    level_sizes: list[int] = field(default_factory=list)

    def header(self) -> str:
        return f"d={self.d} n={self.n} max={self.max_size} exhaustive={str(self.exhaustive).lower()}"


def d_words(d: int, n: int) -> list[tuple[int, ...]]:
    """All words with exactly ``d`` proper letters, ascending with 0 < 1 < *."""
    out = []
    for cols in combinations(range(n), d):
        for bits in product((0, 1), repeat=d):
            row = [2] * n
            for c, b in zip(cols, bits):
                row[c] = b
            out.append(tuple(row))
    out.sort()
    return out


def _masks(row: tuple[int, ...]) -> tuple[int, int]:
    zero = one = 0
    for k, a in enumerate(row):
        if a == 0:
            zero |= 1 << k
        elif a == 1:
            one |= 1 << k
    return zero, one


def _compatible(a: tuple[int, int], b: tuple[int, int]) -> bool:
    # Exactly one 0/1 disagreement, and the two words differ somewhere else.
    dich = (a[0] & b[1]) | (a[1] & b[0])
    if not dich or dich & (dich - 1):
        return False
    return not ((a[0] | a[1]) == (b[0] | b[1]) and (a[0] ^ b[0]) == dich)


def _to_code(n: int, rows) -> Code:
    return Code(n, tuple(Word(tuple(Letter(x) for x in r)) for r in rows))


def search_max(
    d: int,
    n: int,
    max_size_hint: int | None = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
    collect_witnesses: bool = True,
) -> SearchResult:
    """Largest neighborly twin-free ``d``-code in ``A^n``, up to isomorphism.

    ``max_size_hint`` caps the growth (default ``2^d``, the volume bound); if
    a smaller cap is reached the result is marked non-exhaustive.  Each
    expanded code counts as one node; hitting ``node_limit`` returns the
    best level completed so far with ``exhaustive=False``.
    """
    if not 1 <= d <= n:
        raise BadParameters(f"need 1 <= d <= n, got d={d}, n={n}")
    if node_limit < 1:
        raise BadParameters("node_limit must be positive")
    volume_cap = 1 << d
    cap = volume_cap if max_size_hint is None else min(max_size_hint, volume_cap)
    if cap < 1:
        raise BadParameters("max_size_hint must be positive")

    words = d_words(d, n)
    masks = {w: _masks(w) for w in words}
    # All d-words are isomorphic, so one first word suffices.
    level: dict[tuple, list[tuple[int, ...]]] = {(words[0],): [words[0]]}
    levels = [1]
    nodes = 0
    exhaustive = True
    while len(next(iter(level))) < cap:
        nxt: dict[tuple, list[tuple[int, ...]]] = {}
        for key in level:
            nodes += 1
            if nodes > node_limit:
                exhaustive = False
                break
            members = [masks[r] for r in key]
            present = set(key)
            for w in words:
                if w in present:
                    continue
                mw = masks[w]
                if all(_compatible(mw, m) for m in members):
                    rows = list(key) + [w]
                    canon = tuple(_canonical_search(rows, n)[0])
                    if canon not in nxt:
                        nxt[canon] = rows
        if not exhaustive or not nxt:
            break
        level = nxt
        levels.append(len(level))
        log.info("d=%d n=%d size=%d classes=%d nodes=%d", d, n, len(levels), len(level), nodes)
    else:
        if cap < volume_cap:
            exhaustive = False

    size = len(next(iter(level)))
    keys = sorted(level)
    chosen = keys if collect_witnesses else keys[:1]
    witnesses = [_to_code(n, k) for k in chosen]
    return SearchResult(d, n, size, witnesses, nodes, exhaustive, levels)


def search_max_naive(d: int, n: int) -> int:
    """Pruning-free maximum: plain depth-first clique search over all d-words."""
    if not 1 <= d <= n:
        raise BadParameters(f"need 1 <= d <= n, got d={d}, n={n}")
    words = [_masks(w) for w in d_words(d, n)]
    adj = [
        {j for j in range(len(words)) if j != i and _compatible(words[i], words[j])}
        for i in range(len(words))
    ]
    best = 0

    def grow(size: int, candidates: set[int]) -> None:
        nonlocal best
        best = max(best, size)
        for i in sorted(candidates):
            grow(size + 1, {j for j in candidates & adj[i] if j > i})

    grow(0, set(range(len(words))))
    return best


def oracle_check(V: Code, d: int) -> bool:
    """Direct pairwise test: neighborly ``d``-code with no twin pairs.

    Deliberately independent of :mod:`neighborly.words` helpers; it works on
    the letter strings only.
    """
    rows = [str(w) for w in V.words]
    if len(set(rows)) != len(rows):
        return False
    for r in rows:
        if len(r) != V.n or sum(ch != "*" for ch in r) != d:
            return False
    for u, v in combinations(rows, 2):
        diff = [i for i in range(V.n) if {u[i], v[i]} == {"0", "1"}]
        if len(diff) != 1:
            return False
        if all(u[i] == v[i] for i in range(V.n) if i != diff[0]):
            return False
    return True


def random_code(
    d: int,
    n: int,
    seed: int,
    target: int,
    twin_free: bool = True,
    attempts: int = 2000,
) -> Code:
    """Greedy random neighborly d-code, deterministic for a given seed."""
    if not 1 <= d <= n:
        raise BadParameters(f"need 1 <= d <= n, got d={d}, n={n}")
    rng = random.Random(seed)
    kept: list[tuple[int, ...]] = []
    kept_masks: list[tuple[int, int]] = []
    for _ in range(attempts):
        if len(kept) >= target:
            break
        cols = rng.sample(range(n), d)
        row = [2] * n
        for c in cols:
            row[c] = rng.randint(0, 1)
        w = tuple(row)
        if w in kept:
            continue
        mw = _masks(w)
        ok = True
        for m in kept_masks:
            dich = (mw[0] & m[1]) | (mw[1] & m[0])
            if not dich or dich & (dich - 1):
                ok = False
                break
            if twin_free and not _compatible(mw, m):
                ok = False
                break
        if ok:
            kept.append(w)
            kept_masks.append(mw)
    return _to_code(n, kept)
