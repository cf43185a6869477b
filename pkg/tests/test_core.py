import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from votegames.core import (
    Election,
    beats,
    canonical_ballot,
    election,
    equivalent,
    score_k,
    scores,
    swap_vote,
    top_k,
    winner,
)


def test_top_k_table1(table1):
    b, c = 1, 2
    assert top_k(table1.profile[0], 2) == {b, c}


def test_top_k_full_ballot(table1):
    assert top_k(table1.profile[0], 3) == {0, 1, 2}


def test_top_k_table2_voter4(table2):
    d = 3
    assert top_k(table2.profile[3], 1) == {d}


def test_top_k_rejects_bad_k(table1):
    with pytest.raises(ValueError):
        top_k(table1.profile[0], 0)
    with pytest.raises(ValueError):
        top_k(table1.profile[0], 4)


def test_scores_table1(table1):
    assert scores(table1) == [1, 3, 4]
    assert score_k(2, table1) == 4


def test_scores_table5(table5):
    assert scores(table5) == [2, 2, 2, 2, 1, 1, 1, 1, 1, 1]


def test_score_single_voter():
    e = election(("a", "b"), 1, (0, 1), [(1, 0)])
    assert score_k(1, e) == 1 and score_k(0, e) == 0


def test_beats_table1(table1):
    c, b = 2, 1
    assert beats(c, b, table1)
    assert not beats(b, c, table1)


def test_beats_tie_uses_order(table4):
    a, b = 0, 1
    assert scores(table4)[a] == scores(table4)[b] == 2
    assert beats(a, b, table4)


def test_beats_rejects_equal_args(table1):
    with pytest.raises(ValueError):
        beats(1, 1, table1)


def test_winner_golden(table1, table3, table5):
    assert table1.candidates[winner(table1)] == "c"
    assert table3.candidates[winner(table3)] == "w"
    assert table5.candidates[winner(table5)] == "a"


def test_winner_unanimous():
    e = election(("a", "b", "c"), 1, (2, 1, 0), [(1, 0, 2)] * 4)
    assert winner(e) == 1


def test_swap_vote_single(table4):
    c, b, a = 2, 1, 0
    assert swap_vote(table4.profile[5], (c,), (b,)) == (b, c, a)


def test_swap_vote_empty(table1):
    assert swap_vote(table1.profile[0], (), ()) == table1.profile[0]


def test_swap_vote_table5(table5):
    b, c, u5, u6 = 1, 2, 8, 9
    swapped = swap_vote(table5.profile[0], (u5, u6), (b, c))
    assert top_k(swapped, 2) == {b, c}


def test_swap_vote_rejects_overlap(table1):
    with pytest.raises(ValueError):
        swap_vote(table1.profile[0], (0,), (0,))
    with pytest.raises(ValueError):
        swap_vote(table1.profile[0], (0, 1), (2,))


def test_equivalent_examples():
    a, b, c = range(3)
    assert equivalent((c, b, a), (b, c, a), 2)
    assert equivalent((a, b, c), (a, b, c), 2)
    assert not equivalent((a, b, c), (b, a, c), 1)


def test_canonical_ballot_rules():
    a, b, c = range(3)
    ref = (b, c, a)
    assert canonical_ballot({b, c}, ref) == ref
    assert canonical_ballot({a, c}, ref) == (c, a, b)
    assert canonical_ballot({a, b, c}, ref) == ref


def test_election_validation():
    with pytest.raises(ValueError):
        election(("a", "b"), 2, (0, 1), [(0, 1)])  # k = m
    with pytest.raises(ValueError):
        election(("a", "a"), 1, (0, 1), [(0, 1)])  # duplicate names
    with pytest.raises(ValueError):
        election(("a", "b"), 1, (0, 0), [(0, 1)])  # bad tiebreak
    with pytest.raises(ValueError):
        election(("a", "b"), 1, (0, 1), [(0, 0)])  # bad ballot
    with pytest.raises(ValueError):
        election(("a", "b"), 1, (0, 1), [])  # no voters


# -- properties --------------------------------------------------------

small_elections = st.integers(2, 5).flatmap(
    lambda m: st.tuples(
        st.just(m),
        st.integers(1, m - 1),
        st.permutations(range(m)),
        st.lists(st.permutations(range(m)), min_size=1, max_size=6),
    )
)


def _make(data) -> Election:
    m, k, tb, profile = data
    return election(tuple(chr(97 + i) for i in range(m)), k, tuple(tb), profile)


@settings(max_examples=150)
@given(small_elections)
def test_score_total_is_k_times_n(data):
    e = _make(data)
    assert sum(scores(e)) == e.k * e.num_voters


@settings(max_examples=150)
@given(small_elections)
def test_beats_is_a_strict_total_order(data):
    e = _make(data)
    m = e.num_candidates
    for x, y in itertools.combinations(range(m), 2):
        assert beats(x, y, e) != beats(y, x, e)
    for x, y, z in itertools.permutations(range(m), 3):
        if beats(x, y, e) and beats(y, z, e):
            assert beats(x, z, e)
    w = winner(e)
    assert all(beats(w, c, e) for c in range(m) if c != w)


@settings(max_examples=100)
@given(small_elections)
def test_equivalence_classes_count(data):
    e = _make(data)
    m, k = e.num_candidates, e.k
    ballots = list(itertools.permutations(range(m)))
    classes = {top_k(b, k) for b in ballots}
    import math
    assert len(classes) == math.comb(m, k)
    for b1 in ballots[:12]:
        for b2 in ballots[:12]:
            if equivalent(b1, b2, k):
                assert canonical_ballot(top_k(b1, k), ballots[0]) == canonical_ballot(
                    top_k(b2, k), ballots[0]
                )


@settings(max_examples=100)
@given(small_elections, st.data())
def test_winner_invariant_under_equivalent_ballot(data, draw):
    e = _make(data)
    i = draw.draw(st.integers(0, e.num_voters - 1))
    replacement = canonical_ballot(top_k(e.profile[i], e.k), e.profile[i])
    profile = list(e.profile)
    profile[i] = replacement
    e2 = Election(e.candidates, e.k, e.tiebreak, tuple(profile))
    assert winner(e2) == winner(e)


@settings(max_examples=100)
@given(small_elections, st.data())
def test_swap_vote_is_an_involution(data, draw):
    e = _make(data)
    ballot = e.profile[0]
    m = e.num_candidates
    size = draw.draw(st.integers(0, m // 2))
    picked = draw.draw(st.permutations(range(m)))
    xs, ys = tuple(picked[:size]), tuple(picked[size: 2 * size])
    assert swap_vote(swap_vote(ballot, xs, ys), xs, ys) == ballot
