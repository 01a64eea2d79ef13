"""Codes V in A^n: validity, volume, slices and the structural lemmas."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    BadPosition,
    DuplicateWord,
    EmptyInput,
    IllegalCharacter,
    LemmaViolation,
    LengthMismatch,
    NotACode,
    NotADCode,
    NotNeighborly,
    WordNotInCode,
)
from .words import ONE, STAR, ZERO, Letter, Word, classify_pair, parse_word, weight

MAX_REPORTED_TWINS = 100


@dataclass(frozen=True)
class Code:
    """Ordered collection of distinct words of common length ``n``."""

    n: int
    words: tuple[Word, ...] = ()

    def __post_init__(self):
        words = tuple(Word.of(w) for w in self.words)
        object.__setattr__(self, "words", words)
        if self.n < 1:
            raise LengthMismatch(f"word length must be positive, got {self.n}")
        seen: dict[Word, int] = {}
        for k, w in enumerate(words, 1):
            if len(w) != self.n:
                raise LengthMismatch(f"word {k} has length {len(w)}, expected {self.n}", line=k)
            if w in seen:
                raise DuplicateWord(str(w), (seen[w], k))
            seen[w] = k

    @classmethod
    def from_words(cls, words: Iterable["Word | str"], n: int | None = None) -> "Code":
        words = [Word.of(w) for w in words]
        if n is None:
            if not words:
                raise EmptyInput("cannot infer the word length of an empty code")
            n = len(words[0])
        return cls(n, tuple(words))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, w) -> bool:
        return Word.of(w) in self.word_set

    def __str__(self) -> str:
        return format_code(self)

    @property
    def word_set(self) -> frozenset[Word]:
        return frozenset(self.words)

    def same_words(self, other: "Code | Iterable[Word | str]") -> bool:
        """Set equality, ignoring row order."""
        other_words = other.words if isinstance(other, Code) else [Word.of(w) for w in other]
        return self.word_set == frozenset(other_words)

    def index(self, w: "Word | str") -> int:
        """1-based row of ``w``."""
        w = Word.of(w)
        try:
            return self.words.index(w) + 1
        except ValueError:
            raise WordNotInCode(str(w)) from None

    def check_position(self, j: int) -> None:
        if not 1 <= j <= self.n:
            raise BadPosition(f"position {j} outside 1..{self.n}")


def parse_code(text: str, n: int | None = None) -> Code:
    """Parse the line-oriented code file format.

    ``#`` starts a comment, blank lines are skipped.
    """
    words: list[Word] = []
    lines: dict[Word, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            w = parse_word(body)
        except IllegalCharacter as exc:
            raise IllegalCharacter(exc.position, exc.char, line=lineno) from None
        if n is None:
            n = len(w)
        elif len(w) != n:
            raise LengthMismatch(f"line {lineno}: word length {len(w)}, expected {n}", line=lineno)
        if w in lines:
            raise DuplicateWord(str(w), (lines[w], lineno))
        lines[w] = lineno
        words.append(w)
    if n is None:
        raise EmptyInput("no words found")
    return Code(n, tuple(words))


def format_code(V: Code) -> str:
    return "".join(f"{w}\n" for w in V.words)


@dataclass
class ValidationReport:
    is_code: bool
    d: int | None
    is_neighborly: bool
    twin_pairs: list[tuple[int, int]]
    twin_pair_count: int
    # property name -> first violating pair of 1-based rows
    witness: dict[str, tuple[int, int]] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def is_twin_free(self) -> bool:
        return self.twin_pair_count == 0


def validate(
    V: Code,
    d: int | None = None,
    neighborly: bool = False,
    twin_free: bool = False,
) -> ValidationReport:
    """Classify every pair of words and check the requested properties.

    The report always describes all properties; ``failures`` only lists the
    requested ones (being a code is always required).
    """
    witness: dict[str, tuple[int, int]] = {}
    twins: list[tuple[int, int]] = []
    twin_count = 0
    for (a, u), (b, v) in combinations(enumerate(V.words, 1), 2):
        cls = classify_pair(u, v)
        if not cls.is_dichotomous:
            witness.setdefault("code", (a, b))
        if not cls.is_neighborly:
            witness.setdefault("neighborly", (a, b))
        if cls.is_twin_pair:
            twin_count += 1
            witness.setdefault("twin_free", (a, b))
            if len(twins) < MAX_REPORTED_TWINS:
                twins.append((a, b))
    sizes = {len(w.prop) for w in V.words}
    common_d = sizes.pop() if len(sizes) == 1 else None
    if d is not None and common_d != d:
        for k, w in enumerate(V.words, 1):
            if len(w.prop) != d:
                witness.setdefault("d", (k, k))
                break

    report = ValidationReport(
        is_code="code" not in witness,
        d=common_d,
        is_neighborly="neighborly" not in witness,
        twin_pairs=twins,
        twin_pair_count=twin_count,
        witness=witness,
    )
    if not report.is_code:
        report.failures.append("code")
    if d is not None and common_d != d:
        report.failures.append("d")
    if neighborly and not report.is_neighborly:
        report.failures.append("neighborly")
    if twin_free and twin_count:
        report.failures.append("twin_free")
    return report


def require_code(V: Code) -> None:
    for (a, u), (b, v) in combinations(enumerate(V.words, 1), 2):
        if not (u.zero_mask & v.one_mask or u.one_mask & v.zero_mask):
            raise NotACode((a, b))


def require_neighborly(V: Code) -> None:
    for (a, u), (b, v) in combinations(enumerate(V.words, 1), 2):
        if not classify_pair(u, v).is_neighborly:
            raise NotNeighborly((a, b))


def volume(V: Code) -> int:
    """Sum of word weights, in unit cells of the grid on [0, 2]^n."""
    require_code(V)
    return sum(weight(w) for w in V.words)


def raw_volume(V: Code | Iterable[Word]) -> int:
    # Unchecked variant for callers that already know V is a code.
    return sum(weight(w) for w in V)


def slice_code(V: Code, j: int, a: Letter) -> Code:
    """Subcode ``V^{j,a}`` of words carrying letter ``a`` at position ``j``."""
    V.check_position(j)
    a = Letter(a)
    return Code(V.n, tuple(w for w in V.words if w.letters[j - 1] == a))


@dataclass(frozen=True)
class Partition:
    pivot: int
    c0: frozenset[int]
    c1: frozenset[int]
    d: frozenset[int]

    def as_tuple(self) -> tuple[set[int], set[int], set[int]]:
        return set(self.c0), set(self.c1), set(self.d)


def _disagreeing_columns(words: Sequence[Word], skip: int) -> set[int]:
    cols: set[int] = set()
    for u, v in combinations(words, 2):
        mask = (u.zero_mask & v.one_mask) | (u.one_mask & v.zero_mask)
        cols.update(k + 1 for k in range(u.__len__()) if mask >> k & 1)
    cols.discard(skip)
    return cols


def partition_at(V: Code, j: int) -> Partition:
    """Split the columns other than ``j`` by where 0/1 disagreements occur.

    ``C0`` collects columns with a disagreeing pair inside ``V^{j,0}``,
    ``C1`` likewise inside ``V^{j,1}``; ``D`` is the rest.  The star
    conditions that go with this split on a neighborly code are verified.
    """
    V.check_position(j)
    require_neighborly(V)
    s0 = slice_code(V, j, ZERO).words
    s1 = slice_code(V, j, ONE).words
    c0 = _disagreeing_columns(s0, j)
    c1 = _disagreeing_columns(s1, j)
    if c0 & c1:
        raise LemmaViolation(f"columns {sorted(c0 & c1)} lie in both C0 and C1")
    if len(s0) >= 2 and not c0:
        raise LemmaViolation("C0 is empty although the 0-slice has two words")
    if len(s1) >= 2 and not c1:
        raise LemmaViolation("C1 is empty although the 1-slice has two words")
    for words, cols, name in ((s1, c0, "C0"), (s0, c1, "C1")):
        for w in words:
            for k in cols:
                if w.letters[k - 1] != STAR:
                    raise LemmaViolation(f"word {w} has a proper letter in {name} column {k}")
    rest = set(range(1, V.n + 1)) - c0 - c1 - {j}
    return Partition(j, frozenset(c0), frozenset(c1), frozenset(rest))


@dataclass(frozen=True)
class OpposingUnion:
    """Result of :func:`opposing_union` for one member word ``v``.

    ``position``/``count`` give the column maximizing ``|V^{i, v_i'}|``
    (``None``/0 when ``V`` has a single word).  ``disjoint`` is ``None``
    unless ``V`` is neighborly.
    """

    cover_holds: bool
    disjoint: bool | None
    position: int | None
    count: int
    bound: Fraction
    slice_sizes: dict[int, int]

    @property
    def bound_holds(self) -> bool:
        return self.count >= self.bound


def opposing_union(V: Code, v: "Word | str") -> OpposingUnion:
    """Check that the other words are covered by the opposing slices of ``v``.

    For every proper position ``j`` of ``v`` the opposing slice is
    ``V^{j, flip(v_j)}``; their union must be ``V`` minus ``v``.
    """
    require_code(V)
    v = Word.of(v)
    V.index(v)
    slices = {j: slice_code(V, j, v.letter(j).flip()) for j in sorted(v.prop)}
    union = set().union(*(s.word_set for s in slices.values())) if slices else set()
    cover = union == V.word_set - {v}
    disjoint = None
    try:
        require_neighborly(V)
    except NotNeighborly:
        pass
    else:
        disjoint = sum(len(s) for s in slices.values()) == len(union)
    sizes = {j: len(s) for j, s in slices.items()}
    position, count = None, 0
    for j, size in sizes.items():
        if size > count:
            position, count = j, size
    bound = Fraction(len(V) - 1, len(v.prop)) if v.prop else Fraction(0)
    return OpposingUnion(cover, disjoint, position, count, bound, sizes)


def mirror_slice(V: Code, j: int, eps: Letter, combined: bool = False) -> Code:
    """Copy ``V^{j,eps}`` with position ``j`` switched to the opposite letter.

    With ``combined=True`` return the mirror joined with ``V^{j,eps}`` and
    ``V^{j,*}``, after checking that the union is a code.
    """
    V.check_position(j)
    eps = Letter(eps)
    if eps == STAR:
        raise ValueError("mirror_slice needs eps in {0, 1}")
    same = slice_code(V, j, eps)
    mirror = Code(V.n, tuple(w.replace(j, eps.flip()) for w in same.words))
    if not combined:
        return mirror
    union = Code(V.n, same.words + mirror.words + slice_code(V, j, STAR).words)
    require_code(union)
    return union


@dataclass(frozen=True)
class SliceBoundRow:
    position: int
    eps: int
    size_eps: int
    size_opposite: int
    mirror_total: int
    ok: bool


@dataclass
class SliceBoundReport:
    d: int
    slack: int
    rows: list[SliceBoundRow]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def violations(self) -> list[SliceBoundRow]:
        return [r for r in self.rows if not r.ok]


def slice_bound_check(V: Code, d: int) -> SliceBoundReport:
    """Check ``|V^{j,eps'}| >= |V^{j,eps}| - M`` for every column and side.

    ``M = 2^d - |V|``.  Each row is certified by building the mirrored code
    and applying ``|W| <= 2^d`` to it.
    """
    try:
        require_code(V)
    except NotACode as exc:
        raise NotADCode(f"not a code: {exc}") from None
    bad = [k for k, w in enumerate(V.words, 1) if len(w.prop) != d]
    if bad:
        raise NotADCode(f"word {bad[0]} does not have {d} proper letters")
    cap = 1 << d
    slack = cap - len(V)
    rows = []
    for j in range(1, V.n + 1):
        for eps in (ZERO, ONE):
            w = mirror_slice(V, j, eps, combined=True)
            size_eps = len(slice_code(V, j, eps))
            size_opp = len(slice_code(V, j, eps.flip()))
            ok = len(w) <= cap and size_opp >= size_eps - slack
            rows.append(SliceBoundRow(j, int(eps), size_eps, size_opp, len(w), ok))
    return SliceBoundReport(d, slack, rows)
