import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discmethod.braids import FreeWord, invert
from discmethod.fiber import (
    ChainClass,
    FiberError,
    SheetMonodromy,
    as_chain,
    boundary1,
    boundary2,
    chain_boundary,
    cycle_rank,
    is_cycle,
    lift,
    sheet_monodromy,
    word_permutation,
)

from reference_data import SHEETS_FMINUS, SHEETS_FPLUS

FPLUS = sheet_monodromy(4, SHEETS_FPLUS)
FMINUS = sheet_monodromy(4, SHEETS_FMINUS)
SINGLE = sheet_monodromy(3, [(1, 3)])


def fw(k, *letters):
    return FreeWord(k, tuple(letters))


def e(k, *pairs):
    v = [0] * k
    for i, c in pairs:
        v[i - 1] = c
    return ChainClass(tuple(v))


class TestChainClass:
    def test_arithmetic(self):
        a = ChainClass.basis(3, 1)
        b = ChainClass.basis(3, 3)
        assert (b - a).coeffs == (-1, 0, 1)
        assert (2 * a + b).coeffs == (2, 0, 1)
        assert (-(a + b)).coeffs == (-1, 0, -1)
        assert ChainClass.zero(3).is_zero()

    def test_str(self):
        assert str(e(3, (1, -1), (3, 1))) == "-e1 + e3"
        assert str(e(3, (2, 2))) == "2e2"
        assert str(ChainClass.zero(2)) == "0"


class TestSheetMonodromy:
    def test_canonical_order(self):
        m = sheet_monodromy(3, [(3, 1)])
        assert m.transpositions == ((1, 3),)

    def test_rejects_fixed_pair(self):
        with pytest.raises(FiberError):
            sheet_monodromy(3, [(2, 2)])

    def test_rejects_out_of_range(self):
        with pytest.raises(FiberError):
            sheet_monodromy(3, [(1, 4)])

    def test_rejects_non_pair(self):
        with pytest.raises(FiberError):
            sheet_monodromy(3, [(1, 2, 3)])

    def test_json_round_trip(self):
        assert SheetMonodromy.from_json(FPLUS.to_json()) == FPLUS

    def test_transitivity(self):
        assert FPLUS.is_transitive()
        m = sheet_monodromy(4, [(1, 2), (3, 4)])
        assert not m.is_transitive()
        assert m.components() == [{1, 2}, {3, 4}]


class TestWordPermutation:
    def test_generator(self):
        assert word_permutation(FPLUS, fw(9, (1, 1))).as_transposition() == (1, 3)

    def test_empty(self):
        assert word_permutation(FPLUS, fw(9)).is_identity()

    def test_involution(self):
        assert word_permutation(FPLUS, fw(9, (1, 1), (1, 1))).is_identity()

    def test_exponent_blind(self):
        assert word_permutation(FPLUS, fw(9, (4, -1))) == word_permutation(FPLUS, fw(9, (4, 1)))

    def test_mismatch(self):
        with pytest.raises(FiberError):
            word_permutation(FPLUS, fw(3, (1, 1)))


class TestLift:
    def test_first_vanishing_cycle(self):
        r = lift(FPLUS, fw(9, (3, 1), (1, 1)), 1)
        assert r.chain == e(9, (3, 1), (1, -1))
        assert r.end_sheet == 1

    def test_untouched_sheet(self):
        r = lift(SINGLE, fw(1, (1, 1)), 2)
        assert r.chain.is_zero() and r.end_sheet == 2

    def test_both_sides(self):
        r = lift(SINGLE, fw(1, (1, 1), (1, 1)), 1)
        assert r.chain.is_zero() and r.end_sheet == 1

    def test_third_vanishing_cycle(self):
        r = lift(FPLUS, fw(9, (9, 1), (7, 1), (2, 1), (7, -1)), 1)
        assert r.chain == e(9, (9, 1), (2, 1), (7, -1))
        assert r.end_sheet == 1

    def test_sheet_out_of_range(self):
        with pytest.raises(FiberError):
            lift(FPLUS, fw(9), 5)
        with pytest.raises(FiberError):
            lift(FPLUS, fw(9), 0)


class TestIsCycle:
    def test_examples(self):
        assert is_cycle(FPLUS, fw(9, (3, 1), (1, 1)), 1)
        assert not is_cycle(SINGLE, fw(1, (1, 1)), 1)
        assert is_cycle(FPLUS, fw(9), 4)


class TestBoundary:
    def test_boundary1(self):
        assert boundary1(SINGLE, 1, 1) == (-1, 0, 1)
        assert boundary1(SINGLE, 1, 2) == (0, 0, 0)
        assert boundary1(SINGLE, 1, 3) == (1, 0, -1)

    def test_boundary2_generates_relations(self):
        # the relations (phi)_a + (phi)_b = 0 and (phi)_l = 0 off the pair
        assert as_chain(SINGLE, boundary2(SINGLE, 1, 1)).is_zero()
        assert as_chain(SINGLE, boundary2(SINGLE, 1, 2)).is_zero()

    def test_boundary_of_boundary(self):
        for l in (1, 2, 3):
            total = [0, 0, 0]
            for (i, sheet), c in boundary2(SINGLE, 1, l).items():
                for s, v in enumerate(boundary1(SINGLE, i, sheet)):
                    total[s] += c * v
            assert total == [0, 0, 0]


class TestCycleRank:
    def test_examples(self):
        assert cycle_rank(FPLUS) == 6
        assert cycle_rank(FMINUS) == 6
        assert cycle_rank(sheet_monodromy(2, [(1, 2)])) == 0


# properties

@st.composite
def monodromy_and_word(draw, max_len=40):
    N = draw(st.integers(2, 6))
    k = draw(st.integers(1, 9))
    pairs = draw(st.lists(
        st.tuples(st.integers(1, N), st.integers(1, N)).filter(lambda p: p[0] != p[1]),
        min_size=k, max_size=k,
    ))
    m = sheet_monodromy(N, pairs)
    letters = draw(st.lists(st.tuples(st.integers(1, k), st.sampled_from([1, -1])), max_size=max_len))
    sheet = draw(st.integers(1, N))
    return m, FreeWord(k, tuple(letters)), sheet


@settings(max_examples=300, deadline=None)
@given(monodromy_and_word())
def test_inverse_lift(args):
    m, w, l = args
    r = lift(m, w, l)
    back = lift(m, invert(w), r.end_sheet)
    assert back.chain == -r.chain
    assert back.end_sheet == l


@settings(max_examples=300, deadline=None)
@given(monodromy_and_word(max_len=20), st.data())
def test_lift_additive(args, data):
    m, w1, l = args
    letters = data.draw(st.lists(st.tuples(st.integers(1, m.k), st.sampled_from([1, -1])), max_size=20))
    w2 = FreeWord(m.k, tuple(letters))
    r1 = lift(m, w1, l)
    r2 = lift(m, w2, r1.end_sheet)
    whole = lift(m, FreeWord(m.k, w1.letters + w2.letters), l)
    assert whole.chain == r1.chain + r2.chain
    assert whole.end_sheet == r2.end_sheet


@settings(max_examples=300, deadline=None)
@given(monodromy_and_word())
def test_end_sheet_follows_permutation(args):
    m, w, l = args
    assert lift(m, w, l).end_sheet == word_permutation(m, w)(l)


@settings(max_examples=300, deadline=None)
@given(monodromy_and_word())
def test_cycles_have_zero_boundary(args):
    m, w, l = args
    r = lift(m, w, l)
    if r.end_sheet == l:
        assert chain_boundary(m, r.chain) == (0,) * m.sheets
