"""Words over the alphabet {0, 1, *} and pairwise relations between them.

Positions are 1-based wherever they cross the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Iterable

from .errors import EmptyInput, EqualWords, IllegalCharacter, LengthMismatch


class Letter(IntEnum):
    # Integer values give the fixed comparison order 0 < 1 < *.
    ZERO = 0
    ONE = 1
    STAR = 2

    def flip(self) -> "Letter":
        if self is Letter.STAR:
            return self
        return Letter(1 - self)

    def __str__(self) -> str:
        return "01*"[self]


ZERO, ONE, STAR = Letter.ZERO, Letter.ONE, Letter.STAR

_CHARS = {"0": ZERO, "1": ONE, "*": STAR}


@dataclass(frozen=True, order=True)
class Word:
    """An immutable word ``v_1 ... v_n``.

    Ordering is lexicographic with 0 < 1 < *.
    """

    letters: tuple[Letter, ...]

    def __post_init__(self):
        if not self.letters:
            raise EmptyInput("a word needs at least one letter")
        object.__setattr__(self, "letters", tuple(Letter(x) for x in self.letters))

    @classmethod
    def of(cls, text: "str | Word") -> "Word":
        return text if isinstance(text, Word) else parse_word(text)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return "".join("01*"[x] for x in self.letters)

    def __repr__(self) -> str:
        return f"Word('{self}')"

    def letter(self, i: int) -> Letter:
        """Letter at 1-based position ``i``."""
        return self.letters[i - 1]

    def replace(self, i: int, a: Letter) -> "Word":
        letters = list(self.letters)
        letters[i - 1] = Letter(a)
        return Word(tuple(letters))

    @cached_property
    def prop(self) -> frozenset[int]:
        """Positions holding a proper (non-star) letter."""
        return frozenset(i for i, x in enumerate(self.letters, 1) if x != STAR)

    @cached_property
    def zero_mask(self) -> int:
        return sum(1 << k for k, x in enumerate(self.letters) if x == ZERO)

    @cached_property
    def one_mask(self) -> int:
        return sum(1 << k for k, x in enumerate(self.letters) if x == ONE)

    @property
    def weight(self) -> int:
        return weight(self)


def parse_word(text: str) -> Word:
    if not text:
        raise EmptyInput("empty word")
    letters = []
    for pos, ch in enumerate(text, 1):
        try:
            letters.append(_CHARS[ch])
        except KeyError:
            raise IllegalCharacter(pos, ch) from None
    return Word(tuple(letters))


def _check_lengths(u: Word, v: Word) -> None:
    if len(u) != len(v):
        raise LengthMismatch(f"words of length {len(u)} and {len(v)}")


def dichotomy_positions(u: Word, v: Word) -> frozenset[int]:
    """Positions i where one word has 0 and the other has 1."""
    _check_lengths(u, v)
    mask = (u.zero_mask & v.one_mask) | (u.one_mask & v.zero_mask)
    return frozenset(k + 1 for k in range(len(u)) if mask >> k & 1)


@dataclass(frozen=True)
class PairClass:
    """Outcome of :func:`classify_pair`.

    ``kind`` is one of ``"not_dichotomous"``, ``"multi_dichotomous"``,
    ``"neighborly"`` or ``"twin_pair"``.
    """

    kind: str
    positions: frozenset[int]

    @property
    def position(self) -> int | None:
        if len(self.positions) == 1:
            return next(iter(self.positions))
        return None

    @property
    def is_dichotomous(self) -> bool:
        return bool(self.positions)

    @property
    def is_neighborly(self) -> bool:
        return len(self.positions) == 1

    @property
    def is_twin_pair(self) -> bool:
        return self.kind == "twin_pair"

    def __str__(self) -> str:
        names = {
            "not_dichotomous": "NotDichotomous",
            "multi_dichotomous": "MultiDichotomous",
            "neighborly": "Neighborly",
            "twin_pair": "TwinPair",
        }
        inside = ",".join(map(str, sorted(self.positions)))
        return f"{names[self.kind]}({inside})"


def classify_pair(u: Word, v: Word) -> PairClass:
    _check_lengths(u, v)
    if u == v:
        raise EqualWords(f"cannot classify {u} against itself")
    positions = dichotomy_positions(u, v)
    if not positions:
        return PairClass("not_dichotomous", positions)
    if len(positions) > 1:
        return PairClass("multi_dichotomous", positions)
    (i,) = positions
    twin = all(a == b for k, (a, b) in enumerate(zip(u, v), 1) if k != i)
    return PairClass("twin_pair" if twin else "neighborly", positions)


def weight(v: Word) -> int:
    """``2 ** (n - |prop(v)|)``: the volume of the box of ``v`` in unit cells."""
    return 1 << (len(v) - len(v.prop))


def flip_columns(v: Word, columns: Iterable[int]) -> Word:
    cols = set(columns)
    return Word(tuple(x.flip() if i in cols else x for i, x in enumerate(v.letters, 1)))
