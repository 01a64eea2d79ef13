"""Column permutations with letter flips, canonical forms and standard form."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .codes import Code, partition_at, require_neighborly, slice_code
from .errors import (
    BadPermutation,
    LemmaViolation,
    LengthMismatch,
    SizeMismatch,
    SliceTooSmall,
    TooLarge,
)
from .words import ONE, STAR, ZERO, Letter, Word

CANONICAL_MAX_N = 24


@dataclass(frozen=True)
class Transform:
    """Maps ``v`` to ``w`` with ``w_i = h_i(v_{sigma(i)})``.

    ``sigma`` is a 1-based permutation given as the tuple
    ``(sigma(1), ..., sigma(n))``; ``flips`` lists the *output* columns whose
    letters pass through the flip 0 <-> 1.
    """

    sigma: tuple[int, ...]
    flips: frozenset[int] = frozenset()

    def __post_init__(self):
        sigma = tuple(self.sigma)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "flips", frozenset(self.flips))
        n = len(sigma)
        if sorted(sigma) != list(range(1, n + 1)):
            raise BadPermutation(f"{sigma} is not a permutation of 1..{n}")
        if any(not 1 <= f <= n for f in self.flips):
            raise BadPermutation(f"flip columns {sorted(self.flips)} outside 1..{n}")

    @classmethod
    def identity(cls, n: int) -> "Transform":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.sigma)

    def apply_word(self, v: Word) -> Word:
        if len(v) != self.n:
            raise LengthMismatch(f"word of length {len(v)} for a transform on {self.n} columns")
        out = []
        for i, src in enumerate(self.sigma, 1):
            a = v.letters[src - 1]
            out.append(a.flip() if i in self.flips else a)
        return Word(tuple(out))

    def then(self, other: "Transform") -> "Transform":
        """The transform applying ``self`` first and ``other`` second."""
        sigma = tuple(self.sigma[other.sigma[i] - 1] for i in range(self.n))
        flips = {i for i in range(1, self.n + 1) if (i in other.flips) != (other.sigma[i - 1] in self.flips)}
        return Transform(sigma, frozenset(flips))

    def inverse(self) -> "Transform":
        inv = [0] * self.n
        for i, src in enumerate(self.sigma, 1):
            inv[src - 1] = i
        return Transform(tuple(inv), frozenset(j for j in range(1, self.n + 1) if inv[j - 1] in self.flips))

    def __str__(self) -> str:
        return format_transform(self)


def format_transform(t: Transform) -> str:
    return f"sigma: {','.join(map(str, t.sigma))}; flips: {','.join(map(str, sorted(t.flips)))}"


_TRANSFORM_RE = re.compile(r"^\s*sigma:\s*([\d,\s]+?)\s*;\s*flips:\s*([\d,\s]*)$")


def parse_transform(text: str) -> Transform:
    m = _TRANSFORM_RE.match(text.strip())
    if not m:
        raise BadPermutation(f"cannot parse transform {text!r}")
    sigma = tuple(int(x) for x in m.group(1).split(",") if x.strip())
    flips = frozenset(int(x) for x in m.group(2).split(",") if x.strip())
    return Transform(sigma, flips)


def apply_transform(V: Code, t: Transform) -> Code:
    if t.n != V.n:
        raise BadPermutation(f"transform on {t.n} columns applied to a code with n={V.n}")
    return Code(V.n, tuple(t.apply_word(w) for w in V.words))


def _canonical_search(rows: list[tuple[int, ...]], n: int):
    """Lexicographically least sorted row matrix over all transforms.

    Rows are picked one at a time.  The set of transforms still compatible
    with the rows fixed so far is an ordered partition of the input columns
    into blocks; a block is either flip-fixed (every column has a known flip)
    or flip-free (all fixed rows are * there).  The least image of a candidate
    row under that set is obtained blockwise by sorting, so only ties need
    branching.  Identical branch states are visited once.
    """
    best: list[tuple[int, ...]] | None = None
    best_order: list[int] = []
    best_flips: list[int] = []
    seen: set = set()

    def image(row, blocks, flips):
        key: list[int] = []
        for cols, fixed in blocks:
            if fixed:
                key.extend(sorted(2 if row[c] == 2 else row[c] ^ flips[c] for c in cols))
            else:
                k = sum(1 for c in cols if row[c] != 2)
                key.extend([0] * k + [2] * (len(cols) - k))
        return tuple(key)

    def refine(row, blocks, flips):
        new_blocks = []
        flips = list(flips)
        for cols, fixed in blocks:
            if fixed:
                parts: list[list[int]] = [[], [], []]
                for c in cols:
                    a = row[c]
                    parts[2 if a == 2 else a ^ flips[c]].append(c)
                new_blocks.extend((p, True) for p in parts if p)
            else:
                proper = [c for c in cols if row[c] != 2]
                free = [c for c in cols if row[c] == 2]
                for c in proper:
                    flips[c] = row[c]
                if proper:
                    new_blocks.append((proper, True))
                if free:
                    new_blocks.append((free, False))
        return new_blocks, flips

    def rec(blocks, flips, remaining, prefix):
        nonlocal best, best_order, best_flips
        if not remaining:
            if best is None or prefix < best:
                best = list(prefix)
                best_order = [c for cols, _ in blocks for c in cols]
                best_flips = list(flips)
            return
        state = (
            frozenset(remaining),
            tuple((frozenset(cols), fixed) for cols, fixed in blocks),
            tuple(flips),
        )
        if state in seen:
            return
        seen.add(state)
        images = {r: image(rows[r], blocks, flips) for r in remaining}
        low = min(images.values())
        depth = len(prefix)
        prefix.append(low)
        for r in sorted(remaining):
            if images[r] != low:
                continue
            if best is not None and prefix > best[: depth + 1]:
                break
            nb, nf = refine(rows[r], blocks, flips)
            rec(nb, nf, remaining - {r}, prefix)
        prefix.pop()

    rec([(list(range(n)), False)], [0] * n, frozenset(range(len(rows))), [])
    assert best is not None
    return best, best_order, best_flips


def canonical_form(V: Code, max_n: int = CANONICAL_MAX_N) -> tuple[Code, Transform]:
    """Orbit-minimal representative of ``V`` and a transform reaching it.

    The representative is the least matrix, row-major with 0 < 1 < *, among
    the sorted row matrices of all isomorphic copies of ``V``.  The returned
    code has its rows sorted.
    """
    if V.n > max_n:
        raise TooLarge(f"canonical_form limited to n <= {max_n}, got {V.n}")
    if not V.words:
        return V, Transform.identity(V.n)
    rows = [tuple(int(x) for x in w.letters) for w in V.words]
    best, order, flips = _canonical_search(rows, V.n)
    sigma = tuple(c + 1 for c in order)
    t = Transform(sigma, frozenset(i for i, c in enumerate(order, 1) if flips[c]))
    code = Code(V.n, tuple(Word(tuple(Letter(x) for x in row)) for row in best))
    return code, t


def canonical_key(V: Code) -> tuple[tuple[int, ...], ...]:
    """Hashable canonical matrix, cheaper than building the canonical Code."""
    if not V.words:
        return ()
    rows = [tuple(int(x) for x in w.letters) for w in V.words]
    best, _, _ = _canonical_search(rows, V.n)
    return tuple(best)


def are_isomorphic(U: Code, W: Code) -> Transform | None:
    """A transform ``t`` with ``t(U) == W`` as word sets, or ``None``."""
    if U.n != W.n:
        raise LengthMismatch(f"codes of word length {U.n} and {W.n}")
    if len(U) != len(W):
        raise SizeMismatch(f"codes of size {len(U)} and {len(W)}")
    cu, tu = canonical_form(U)
    cw, tw = canonical_form(W)
    if cu != cw:
        return None
    return tu.then(tw.inverse())


@dataclass(frozen=True)
class StandardFormInfo:
    transform: Transform
    s: int
    r: int
    sizes: tuple[int, int, int]


def _argmax_slice(V: Code) -> tuple[int, Letter]:
    """Column and side of the largest 0/1 slice.

    Among tied maxima the first, by column then 0 before 1, whose opposite
    slice has at least two words wins; if none qualifies, the first tie.
    """
    sizes = {
        (j, eps): sum(1 for w in V.words if w.letters[j - 1] == eps)
        for j in range(1, V.n + 1)
        for eps in (ZERO, ONE)
    }
    top = max(sizes.values())
    tied = [key for key in sorted(sizes) if sizes[key] == top]
    for j, eps in tied:
        if sizes[(j, eps.flip())] >= 2:
            return j, eps
    return tied[0]


def check_standard(V: Code) -> tuple[int, int]:
    """Verify that ``V`` is in standard form and return ``(s, r)``.

    Raises :class:`LemmaViolation` naming the first property that fails.
    """
    require_neighborly(V)
    largest = max(
        (sum(1 for w in V.words if w.letters[j] == eps) for j in range(V.n) for eps in (ZERO, ONE)),
        default=0,
    )
    s0, s1 = slice_code(V, 1, ZERO), slice_code(V, 1, ONE)
    if len(s0) != largest:
        raise LemmaViolation("column 1 does not carry the largest 0/1 slice as its 0-slice")
    if len(s0) < 2 or len(s1) < 2:
        raise SliceTooSmall(f"slice sizes {len(s0)}, {len(s1)} at column 1; both must be >= 2")
    part = partition_at(V, 1)
    s = 1 + len(part.c0)
    r = s + len(part.c1)
    if part.c0 != frozenset(range(2, s + 1)):
        raise LemmaViolation(f"C0={sorted(part.c0)} is not {{2..{s}}}")
    if part.c1 != frozenset(range(s + 1, r + 1)):
        raise LemmaViolation(f"C1={sorted(part.c1)} is not {{{s + 1}..{r}}}")
    for k in range(r + 1, V.n + 1):
        for w in s0.words + s1.words:
            if w.letters[k - 1] == ONE:
                raise LemmaViolation(f"D column {k} carries a 1 in word {w}")
    return s, r


def standardize(V: Code) -> tuple[Code, StandardFormInfo]:
    """Move ``V`` to standard form by an isomorphism.

    The pivot is chosen by :func:`_argmax_slice`.  Column order inside each
    block is kept.
    """
    require_neighborly(V)
    j, eps = _argmax_slice(V)
    pre = Transform.identity(V.n)
    if eps == ONE:
        pre = Transform(pre.sigma, frozenset({j}))
    W = apply_transform(V, pre)
    s0, s1 = len(slice_code(W, j, ZERO)), len(slice_code(W, j, ONE))
    if s0 < 2 or s1 < 2:
        raise SliceTooSmall(f"slices at column {j} have sizes {s0}, {s1}; both must be >= 2")
    part = partition_at(W, j)
    order = [j] + sorted(part.c0) + sorted(part.c1) + sorted(part.d)
    move = Transform(tuple(order))
    W = apply_transform(W, move)
    r = 1 + len(part.c0) + len(part.c1)
    proper_rows = [w for w in W.words if w.letters[0] != STAR]
    d_flips = frozenset(
        k for k in range(r + 1, W.n + 1) if any(w.letters[k - 1] == ONE for w in proper_rows)
    )
    fix = Transform.identity(W.n) if not d_flips else Transform(tuple(range(1, W.n + 1)), d_flips)
    total = pre.then(move).then(fix)
    out = apply_transform(V, total)
    s, r2 = check_standard(out)
    sizes = tuple(len(slice_code(out, 1, a)) for a in (ZERO, ONE, STAR))
    return out, StandardFormInfo(total, s, r2, sizes)
