"""Inflation of codes: starring out one position and dropping the lighter side."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .codes import Code, raw_volume, require_code, slice_code, validate
from .errors import CodeError, InvalidChoice, LengthMismatch, TooLarge
from .transforms import check_standard
from .words import ONE, STAR, ZERO, Letter, Word

INFLATE_ALL_LIMIT = 8

ZERO_ADVANTAGE = "ZeroAdvantage"
ONE_ADVANTAGE = "OneAdvantage"
BALANCED = "Balanced"


@dataclass(frozen=True)
class SliceState:
    position: int
    vol0: int
    vol1: int

    @property
    def state(self) -> str:
        if self.vol0 > self.vol1:
            return ZERO_ADVANTAGE
        if self.vol0 < self.vol1:
            return ONE_ADVANTAGE
        return BALANCED

    def allows(self, choice: int) -> bool:
        return (self.vol1 <= self.vol0) if choice == 0 else (self.vol0 <= self.vol1)


def slice_state(V: Code, i: int) -> SliceState:
    V.check_position(i)
    return SliceState(
        i,
        raw_volume(slice_code(V, i, ZERO)),
        raw_volume(slice_code(V, i, ONE)),
    )


def inflate_at(V: Code, i: int, choice: int) -> Code:
    """``V^{i,choice,*}`` joined with ``V^{i,*}``.

    Words on the chosen side get a star at ``i``; the other side is dropped.
    Raises :class:`InvalidChoice` when the chosen side is the lighter one.
    Surviving words keep their relative order.
    """
    st = slice_state(V, i)
    if choice not in (0, 1):
        raise ValueError(f"choice must be 0 or 1, got {choice}")
    if not st.allows(choice):
        raise InvalidChoice(i, choice, st.vol0, st.vol1)
    keep = Letter(choice)
    out = []
    for w in V.words:
        a = w.letters[i - 1]
        if a == STAR:
            out.append(w)
        elif a == keep:
            out.append(w.replace(i, STAR))
    return Code(V.n, tuple(out))


@dataclass(frozen=True)
class WordFate:
    """What happened to one input word.

    ``history`` lists ``(step, word)`` for every modification, in order;
    a word that was modified and later dropped has a non-empty history and
    ``removed_at`` set.
    """

    original: Word
    final: Word | None
    removed_at: int | None
    history: tuple[tuple[int, Word], ...] = ()

    @property
    def status(self) -> str:
        if self.removed_at is not None:
            return "removed"
        return "modified" if self.final != self.original else "unmodified"

    def __str__(self) -> str:
        if self.removed_at is not None:
            tail = "".join(f" -> {w}@{s}" for s, w in self.history)
            return f"Removed({self.removed_at}){tail}"
        if self.status == "modified":
            return f"Modified({self.final})"
        return "Unmodified"


@dataclass
class InflationTrace:
    order: tuple[int, ...]
    delta: tuple[int, ...]
    states: list[SliceState]
    fates: list[WordFate] = field(default_factory=list)

    def fate_of(self, w: "Word | str") -> WordFate:
        w = Word.of(w)
        for f in self.fates:
            if f.original == w:
                return f
        raise KeyError(str(w))


def inflate(
    V: Code,
    order: Sequence[int],
    delta: Sequence[int] | None = None,
    tie_break: int = 0,
) -> tuple[Code, InflationTrace]:
    """Inflate ``V`` along ``order``, one position at a time.

    Without ``delta`` each step takes the heavier side, or ``tie_break`` when
    the two sides weigh the same.
    """
    order = tuple(order)
    if len(set(order)) != len(order):
        raise ValueError(f"positions in {order} are not distinct")
    if delta is not None and len(delta) != len(order):
        raise LengthMismatch(f"order has {len(order)} positions but delta has {len(delta)}")
    for i in order:
        V.check_position(i)

    # current[k] is the running image of input word k, or None once dropped.
    current: list[Word | None] = list(V.words)
    removed: list[int | None] = [None] * len(V)
    history: list[list[tuple[int, Word]]] = [[] for _ in V.words]
    chosen: list[int] = []
    states: list[SliceState] = []
    code = V
    for step, i in enumerate(order, 1):
        st = slice_state(code, i)
        states.append(st)
        if delta is None:
            pick = 0 if st.vol0 > st.vol1 else 1 if st.vol1 > st.vol0 else tie_break
        else:
            pick = int(delta[step - 1])
        if not st.allows(pick):
            raise InvalidChoice(i, pick, st.vol0, st.vol1, step=step)
        chosen.append(pick)
        for k, w in enumerate(current):
            if w is None:
                continue
            a = w.letters[i - 1]
            if a == STAR:
                continue
            if a == pick:
                current[k] = w.replace(i, STAR)
                history[k].append((step, current[k]))
            else:
                current[k] = None
                removed[k] = step
        code = Code(V.n, tuple(w for w in current if w is not None))

    fates = [
        WordFate(orig, current[k], removed[k], tuple(history[k]))
        for k, orig in enumerate(V.words)
    ]
    return code, InflationTrace(order, tuple(chosen), states, fates)


def replay_trace(V: Code, trace: InflationTrace) -> Code:
    """Rebuild the inflated code from a trace alone (surviving finals, input order)."""
    out = []
    for fate in trace.fates:
        if fate.removed_at is not None:
            continue
        w = fate.original
        for i in trace.order:
            if w.letters[i - 1] != STAR:
                w = w.replace(i, STAR)
        out.append(w)
    return Code(V.n, tuple(out))


def inflate_all(V: Code, positions, limit: int = INFLATE_ALL_LIMIT) -> list[Code]:
    """Every distinct code reachable by some order of ``positions`` and valid choices.

    Branches that reach the same intermediate word set with the same
    positions left are explored once.  Outcomes come back sorted.
    """
    J = frozenset(positions)
    if len(J) > limit:
        raise TooLarge(f"{len(J)} positions exceed the enumeration limit {limit}")
    for i in J:
        V.check_position(i)
    outcomes: set[frozenset[Word]] = set()
    seen: set[tuple[frozenset[Word], frozenset[int]]] = set()
    stack = [(V.word_set, J)]
    while stack:
        words, left = stack.pop()
        if (words, left) in seen:
            continue
        seen.add((words, left))
        if not left:
            outcomes.add(words)
            continue
        code = Code(V.n, tuple(sorted(words)))
        for i in left:
            st = slice_state(code, i)
            for pick in (0, 1):
                if st.allows(pick):
                    stack.append((inflate_at(code, i, pick).word_set, left - {i}))
    return [Code(V.n, tuple(sorted(ws))) for ws in sorted(outcomes, key=sorted)]


@dataclass
class CorollaryReport:
    """Outcome of :func:`verify_structure_corollary`.

    When ``unsatisfied`` is non-empty the hypotheses failed and nothing was
    enumerated.  Otherwise ``holds`` is the verdict and ``counterexample``
    names an offending inflation outcome, if any.
    """

    unsatisfied: list[str]
    holds: bool | None = None
    outcomes: int = 0
    counterexample: Code | None = None
    details: dict[str, bool] = field(default_factory=dict)

    @property
    def hypotheses_met(self) -> bool:
        return not self.unsatisfied


def corollary_hypotheses(V: Code) -> list[str]:
    """Names of the failed hypotheses, in a fixed order; empty if all hold."""
    failed: list[str] = []
    report = validate(V)
    if not report.is_code:
        return ["code"]
    if not report.is_neighborly:
        failed.append("neighborly")
    if report.d is None:
        failed.append("d-code")
    if report.twin_pair_count:
        failed.append("twin-free")
    if report.is_neighborly:
        try:
            check_standard(V)
        except CodeError:
            failed.append("standard-form")
    else:
        failed.append("standard-form")
    if report.d is not None:
        slack = (1 << report.d) - len(V)
        if slack < 2:
            failed.append("M>=2")
        if len(slice_code(V, 1, ZERO)) <= 9 * slack:
            failed.append("|V^{1,0}|>9M")
    else:
        failed.append("|V^{1,0}|>9M")
    return failed


def check_corollary_conclusion(V: Code, limit: int = INFLATE_ALL_LIMIT) -> CorollaryReport:
    """Enumerate all inflations on ``C^1_0 = {2..s}`` and test the predicted shape.

    ``V`` must be a neighborly d-code in standard form; the numeric
    hypotheses are not required here, so small inputs exercise the verdict.
    """
    require_code(V)
    report = validate(V)
    if report.d is None:
        raise ValueError("input is not a d-code")
    d = report.d
    s, _ = check_standard(V)
    J = range(2, s + 1)
    outs = inflate_all(V, J, limit=limit)
    head = Word((ZERO,) + (STAR,) * (V.n - 1))
    expected = frozenset({head}) | slice_code(V, 1, ONE).word_set
    vol = raw_volume(V)
    slack = (1 << d) - len(V)
    rep = CorollaryReport([], outcomes=len(outs))
    shape_ok = True
    for U in outs:
        if U.word_set != expected:
            shape_ok = False
            rep.counterexample = U
            break
    rep.details["shape"] = shape_ok
    if slice_code(V, 1, STAR).words:
        grew = all(raw_volume(U) > vol for U in outs)
        rep.details["volume-grows"] = grew
        sizes = [len(slice_code(V, 1, a)) for a in (ZERO, ONE, STAR)]
        half = (1 << (d - 1)) - slack
        rep.details["slice-sizes"] = sizes[2] < slack and sizes[0] > half and sizes[1] > half
        if not grew and rep.counterexample is None:
            rep.counterexample = next(U for U in outs if raw_volume(U) <= vol)
    rep.holds = all(rep.details.values())
    return rep


def verify_structure_corollary(V: Code, limit: int = INFLATE_ALL_LIMIT) -> CorollaryReport:
    failed = corollary_hypotheses(V)
    if failed:
        return CorollaryReport(failed)
    return check_corollary_conclusion(V, limit=limit)
