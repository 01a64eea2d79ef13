import random
from fractions import Fraction
from itertools import combinations

import pytest

from neighborly import ONE, STAR, ZERO, Code, parse_code
from neighborly.codes import (
    format_code,
    mirror_slice,
    opposing_union,
    partition_at,
    raw_volume,
    slice_bound_check,
    slice_code,
    validate,
    volume,
)
from neighborly.errors import (
    BadPosition,
    DuplicateWord,
    IllegalCharacter,
    LengthMismatch,
    NotACode,
    NotADCode,
    NotNeighborly,
    WordNotInCode,
)

from .conftest import TABLE2_TEXT, random_code


def words(V):
    return [str(w) for w in V.words]


class TestParse:
    def test_example(self, ex1):
        assert ex1.n == 3 and len(ex1) == 2

    def test_table2(self, table2):
        assert table2.n == 6 and len(table2) == 7
        assert words(table2)[0] == "0*1**0"

    def test_length_mismatch_line(self):
        with pytest.raises(LengthMismatch) as exc:
            parse_code("0*\n0*1\n")
        assert exc.value.line == 2

    def test_duplicate(self):
        with pytest.raises(DuplicateWord) as exc:
            parse_code("01\n# c\n01\n")
        assert exc.value.lines == (1, 3)

    def test_illegal(self):
        with pytest.raises(IllegalCharacter) as exc:
            parse_code("01\n0x\n")
        assert exc.value.line == 2 and exc.value.position == 2

    def test_comments_and_blank_lines(self):
        V = parse_code("\n# header\n00* # trailing\n\n*11\n")
        assert words(V) == ["00*", "*11"]

    def test_round_trip(self, table2):
        assert format_code(parse_code(format_code(table2))) == format_code(table2)
        stripped = "".join(l + "\n" for l in TABLE2_TEXT.splitlines() if l and not l.startswith("#"))
        assert format_code(table2) == stripped


class TestValidate:
    def test_table2(self, table2):
        rep = validate(table2, neighborly=True, twin_free=True)
        assert rep.is_code and rep.is_neighborly and rep.twin_pairs == [] and rep.ok
        assert rep.d is None

    def test_twin(self):
        rep = validate(Code.from_words(["00*", "01*"]), neighborly=True, twin_free=True)
        assert rep.is_neighborly and rep.twin_pairs == [(1, 2)]
        assert rep.failures == ["twin_free"] and rep.witness["twin_free"] == (1, 2)

    def test_triple(self, triple):
        rep = validate(triple, d=2, neighborly=True, twin_free=True)
        assert rep.ok and rep.d == 2

    def test_not_code_witness(self):
        rep = validate(Code.from_words(["0*", "*1", "1*"]))
        assert not rep.is_code and rep.witness["code"] == (1, 2)

    def test_twin_list_capped(self):
        # every pair among the 2^8 full words at distance one is a twin pair
        full = [format(k, "08b") for k in range(256)]
        rep = validate(Code.from_words(full))
        assert rep.twin_pair_count == 256 * 8 // 2
        assert len(rep.twin_pairs) == 100


class TestVolume:
    def test_values(self, ex1, table2):
        assert volume(ex1) == 4
        # 8 + 4 + 4 + 2 + 8 + 16 + 8
        assert volume(table2) == 50
        assert volume(Code.from_words(["***"])) == 8

    def test_rejects_non_code(self):
        with pytest.raises(NotACode):
            volume(Code.from_words(["0*", "*0"]))


class TestSlice:
    def test_table2(self, table2):
        assert words(slice_code(table2, 1, ONE)) == ["1***00", "1***1*"]
        assert words(slice_code(table2, 1, STAR)) == ["***001"]

    def test_partition_of_rows(self, table2):
        for j in range(1, 7):
            parts = [slice_code(table2, j, a).word_set for a in (ZERO, ONE, STAR)]
            assert sum(map(len, parts)) == 7
            assert frozenset().union(*parts) == table2.word_set

    def test_bad_position(self, table2):
        with pytest.raises(BadPosition):
            slice_code(table2, 7, ZERO)


def brute_partition(V, j):
    """Columns re-derived straight from the definition of C0 and C1."""
    def cols(a):
        ws = [str(w) for w in V.words if str(w)[j - 1] == a]
        return {
            k
            for k in range(1, V.n + 1)
            if k != j and any({u[k - 1], v[k - 1]} == {"0", "1"} for u, v in combinations(ws, 2))
        }
    c0, c1 = cols("0"), cols("1")
    return c0, c1, set(range(1, V.n + 1)) - c0 - c1 - {j}


class TestPartition:
    def test_table2(self, table2):
        assert partition_at(table2, 1).as_tuple() == ({2, 3, 4}, {5}, {6})

    def test_singleton_slices(self, ex1, triple):
        assert partition_at(ex1, 2).as_tuple() == (set(), set(), {1, 3})
        assert partition_at(triple, 1).as_tuple() == (set(), set(), {2, 3})

    def test_not_neighborly(self):
        with pytest.raises(NotNeighborly):
            partition_at(Code.from_words(["00", "11"]), 1)

    def test_random_against_brute_force(self):
        rng = random.Random(7)
        for _ in range(300):
            V = random_code(rng, rng.randint(2, 6), rng.randint(2, 8), neighborly=True)
            for j in range(1, V.n + 1):
                assert partition_at(V, j).as_tuple() == brute_partition(V, j)


class TestOpposingUnion:
    def test_two_words(self, ex1):
        res = opposing_union(ex1, "00*")
        assert res.cover_holds and res.position == 2 and res.count == 1
        assert res.bound == Fraction(1, 2) and res.bound_holds

    def test_table2(self, table2):
        res = opposing_union(table2, "***001")
        assert res.cover_holds and res.disjoint
        assert res.slice_sizes == {4: 1, 5: 1, 6: 4}
        assert (res.position, res.count) == (6, 4)

    def test_singleton(self):
        res = opposing_union(Code.from_words(["0*1"]), "0*1")
        assert res.cover_holds and res.position is None and res.count == 0

    def test_errors(self, ex1):
        with pytest.raises(WordNotInCode):
            opposing_union(ex1, "111")
        with pytest.raises(NotACode):
            opposing_union(Code.from_words(["0*", "*0"]), "0*")


class TestMirror:
    def test_table2(self, table2):
        assert words(mirror_slice(table2, 1, ZERO)) == ["1*1**0", "110**0", "1001**", "1000*0"]

    def test_small(self, ex1):
        assert words(mirror_slice(ex1, 1, ZERO)) == ["10*"]
        empty = mirror_slice(ex1, 1, ONE)
        assert len(empty) == 0 and empty.n == 3

    def test_combined_is_code(self, table2):
        W = mirror_slice(table2, 1, ZERO, combined=True)
        assert validate(W).is_code and len(W) == 4 + 4 + 1

    def test_random_combined_is_code(self):
        rng = random.Random(11)
        for _ in range(300):
            V = random_code(rng, rng.randint(1, 6), rng.randint(1, 8))
            for j in range(1, V.n + 1):
                for eps in (ZERO, ONE):
                    assert validate(mirror_slice(V, j, eps, combined=True)).is_code


class TestSliceBound:
    def test_triple(self, triple):
        rep = slice_bound_check(triple, 2)
        assert rep.slack == 1 and rep.ok and len(rep.rows) == 6

    def test_full_code_balanced(self):
        V = Code.from_words(["00", "01", "10", "11"])
        rep = slice_bound_check(V, 2)
        assert rep.slack == 0 and rep.ok
        assert all(r.size_eps == r.size_opposite for r in rep.rows)

    def test_table2_rejected(self, table2):
        with pytest.raises(NotADCode):
            slice_bound_check(table2, 3)


def test_volume_additive_over_slices(table2):
    total = volume(table2)
    for j in range(1, 7):
        assert total == sum(raw_volume(slice_code(table2, j, a)) for a in (ZERO, ONE, STAR))
