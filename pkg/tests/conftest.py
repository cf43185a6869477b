"""Shared fixtures: the worked examples used throughout the suite and
small reference implementations kept independent of the library code."""

import itertools
import random
from pathlib import Path

import pytest

from votegames.core import Election, election, winner_from_scores

DATA = Path(__file__).parent / "data"


# -- worked examples ---------------------------------------------------

def _fill(m, *head):
    return tuple(list(head) + [x for x in range(m) if x not in head])


@pytest.fixture
def table1():
    """Four voters over {a,b,c}, 2-approval, ties a>b>c."""
    A, B, C = range(3)
    return election(("a", "b", "c"), 2, (A, B, C),
                    [(B, C, A), (B, C, A), (A, C, B), (C, B, A)])


@pytest.fixture
def table2():
    """Plurality with three manipulators besides the focal voter."""
    A, B, C, D = range(4)
    return election(("a", "b", "c", "d"), 1, (A, B, C, D),
                    [(A, B, C, D), (B, D, A, C), (C, B, A, D), (D, C, A, B)])


@pytest.fixture
def table3():
    """Plurality where the focal voter has two incomparable improvements."""
    a, b, c, d, w = range(5)
    return election(("a", "b", "c", "d", "w"), 1, (w, d, c, b, a),
                    [(a, b, d, w, c), (b, c, d, w, a), (c, d, b, w, a),
                     (d, w, c, a, b), (w, a, b, c, d)])


@pytest.fixture
def table4():
    """Plurality counter-manipulation example."""
    a, b, c = range(3)
    return election(("a", "b", "c"), 1, (a, b, c),
                    [(c, a, b), (a, b, c), (a, b, c), (b, a, c), (b, a, c), (c, b, a)])


@pytest.fixture
def table5():
    """2-approval, ten candidates, four-way tie at the top."""
    m = 10
    a, b, c, d, u1, u2, u3, u4, u5, u6 = range(m)
    profile = [
        _fill(m, u5, u6, b, c, d),
        _fill(m, a, d),
        _fill(m, a, d),
        _fill(m, b, u1, c),
        _fill(m, b, u2, d),
        _fill(m, c, u3, a),
        _fill(m, c, u4, a),
    ]
    return election(tuple("abcd") + tuple(f"u{i}" for i in range(1, 7)), 2,
                    tuple(range(m)), profile)


# -- reference implementations -----------------------------------------

def brute_feasible(e: Election, i: int):
    """Feasible set by enumerating every top-k class of voter i."""
    from votegames.manipulation import scores_without

    base = scores_without(e, i)
    winners = set()
    for combo in itertools.combinations(range(e.num_candidates), e.k):
        boosted = list(base)
        for c in combo:
            boosted[c] += 1
        winners.add(winner_from_scores(boosted, e))
    return frozenset(winners)


def brute_flow_feasible(net):
    """Exhaustive feasibility search with conservation pruning; intended
    for networks with at most a dozen arcs and tiny bounds."""
    arcs = list(net.arcs)
    for _, _, lower, upper in arcs:
        if upper < lower or upper < 0:
            return False
    n = net.node_count
    out_remaining = [0] * n
    in_remaining = [0] * n
    for tail, head, lower, upper in arcs:
        out_remaining[tail] += upper
        in_remaining[head] += upper

    balance = [0] * n  # inflow - outflow so far

    def feasible_balance(idx):
        # every internal node must still be able to reach balance 0
        for v in range(n):
            if v in (net.source, net.sink):
                continue
            if balance[v] > 0 and balance[v] > out_remaining[v]:
                return False
            if balance[v] < 0 and -balance[v] > in_remaining[v]:
                return False
        return True

    def search(idx):
        if idx == len(arcs):
            return all(balance[v] == 0 for v in range(n)
                       if v not in (net.source, net.sink))
        tail, head, lower, upper = arcs[idx]
        out_remaining[tail] -= upper
        in_remaining[head] -= upper
        ok = False
        for f in range(max(lower, 0), upper + 1):
            balance[tail] -= f
            balance[head] += f
            if feasible_balance(idx) and search(idx + 1):
                ok = True
            balance[tail] += f
            balance[head] -= f
            if ok:
                break
        out_remaining[tail] += upper
        in_remaining[head] += upper
        return ok

    return search(0)


def random_election(rng: random.Random, m: int, n: int, k: int) -> Election:
    cands = tuple(chr(97 + i) for i in range(m))
    tb = list(range(m))
    rng.shuffle(tb)
    profile = [tuple(rng.sample(range(m), m)) for _ in range(n)]
    return election(cands, k, tuple(tb), profile)
