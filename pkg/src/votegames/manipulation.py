"""Level-1 analysis: who can manipulate, toward whom, and how cheaply.

A voter is a manipulator when some unilateral ballot change produces a
winner he strictly prefers to the truthful one.  Feasible sets are
computed without enumerating ballots: with the voter's own ballot
removed, candidate p can be made the winner exactly when p (boosted by
the voter's point) beats every remaining candidate at its current
score, and at least k-1 other candidates stay beaten even if boosted
too, so that the voter can fill his remaining approval slots
harmlessly.  This closed form is cross-checked against brute-force
enumeration in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .core import (
    BallotClass,
    CandidateId,
    Election,
    top_k,
    scores,
    winner,
    winner_from_scores,
)

__all__ = [
    "ManipulationKind",
    "Competitors",
    "Level1Report",
    "scores_without",
    "feasible_set",
    "best_feasible",
    "manipulators",
    "competitors",
    "strongest_competitor",
    "classify",
    "level1_strategies",
]


class ManipulationKind(Enum):
    """The two ways a single voter can change a k-approval outcome."""

    PROMOTER = "promoter"  # raises the new winner's score
    DEMOTER = "demoter"  # lowers the old winner's score


@dataclass(frozen=True)
class Competitors:
    """Candidates one point away from winning.

    ``tied`` members match the winner's score but lose the tie-break;
    ``behind`` members trail by one point but win the tie-break.  Only
    these candidates can be made the winner by a single voter's change.
    """

    tied: frozenset
    behind: frozenset
    winner_score: int

    @property
    def all(self) -> frozenset:
        return self.tied | self.behind


@dataclass(frozen=True)
class Level1Report:
    """A voter's manipulation options, summarised as ballot classes."""

    voter: int
    feasible: frozenset
    best_feasible: CandidateId
    strategies: frozenset  # classes achieving the best feasible winner
    minimal_strategies: frozenset  # the subset with the fewest approval swaps


def scores_without(e: Election, i: int) -> list:
    """k-approval scores of the profile with voter i's ballot removed."""
    out = scores(e)
    for c in e.profile[i][: e.k]:
        out[c] -= 1
    return out


def feasible_set(e: Election, i: int) -> frozenset:
    """All candidates voter i can make the winner by recasting his ballot."""
    if not 0 <= i < e.num_voters:
        raise ValueError(f"invalid voter index {i}")
    base = np.array(scores_without(e, i), dtype=np.int64)
    rank = np.array(e._tb_rank, dtype=np.int64)
    ahead = rank[:, None] < rank[None, :]
    # p (with +1) beats q at q's current score, and at q's boosted score.
    beats_now = (base[:, None] + 1 > base[None, :]) | (
        (base[:, None] + 1 == base[None, :]) & ahead
    )
    beats_boosted = (base[:, None] > base[None, :]) | ((base[:, None] == base[None, :]) & ahead)
    np.fill_diagonal(beats_now, True)
    ok = beats_now.all(axis=1) & (beats_boosted.sum(axis=1) >= e.k - 1)
    return frozenset(np.flatnonzero(ok).tolist())


def best_feasible(e: Election, i: int) -> CandidateId:
    """Voter i's most preferred member of his feasible set."""
    feas = feasible_set(e, i)
    for c in e.profile[i]:
        if c in feas:
            return c
    raise AssertionError("feasible set always contains the truthful winner")


def manipulators(e: Election) -> frozenset:
    """Voters with some ballot yielding a winner they strictly prefer."""
    w = winner(e)
    return frozenset(i for i in range(e.num_voters) if best_feasible(e, i) != w)


def competitors(e: Election) -> Competitors:
    """The candidates a single-point change could make the winner."""
    s = scores(e)
    w = winner(e)
    t = s[w]
    tied = frozenset(
        c for c in range(e.num_candidates) if c != w and s[c] == t and e.precedes(w, c)
    )
    behind = frozenset(
        c for c in range(e.num_candidates) if c != w and s[c] == t - 1 and e.precedes(c, w)
    )
    return Competitors(tied=tied, behind=behind, winner_score=t)


def strongest_competitor(e: Election) -> Optional[CandidateId]:
    """Tie-break-maximal competitor, preferring tied over behind; None if none."""
    comp = competitors(e)
    pool = comp.tied or comp.behind
    if not pool:
        return None
    return min(pool, key=lambda c: e._tb_rank[c])


def _winner_with(e: Election, base: list, approved) -> CandidateId:
    boosted = list(base)
    for c in approved:
        boosted[c] += 1
    return winner_from_scores(boosted, e)


def classify(e: Election, i: int, alt) -> ManipulationKind:
    """Which of the two manipulation types voter i's ballot ``alt`` is.

    ``alt`` must actually be manipulative: its outcome must be strictly
    preferred by voter i to the truthful winner.
    """
    w = winner(e)
    base = scores_without(e, i)
    new_winner = _winner_with(e, base, top_k(alt, e.k))
    prefers = {c: pos for pos, c in enumerate(e.profile[i])}
    if new_winner == w or prefers[new_winner] > prefers[w]:
        raise ValueError("ballot is not a manipulative vote for this voter")
    sincere_top = top_k(e.profile[i], e.k)
    if new_winner in sincere_top:
        return ManipulationKind.DEMOTER
    return ManipulationKind.PROMOTER


def level1_strategies(e: Election, i: int) -> Level1Report:
    """Voter i's level-1 options: ballot classes whose winner is his best
    feasible candidate, plus the subset needing the fewest approval swaps.

    Non-manipulators get their sincere class back for both sets.
    """
    feas = feasible_set(e, i)
    w = winner(e)
    sincere = top_k(e.profile[i], e.k)
    position = {c: pos for pos, c in enumerate(e.profile[i])}
    best = min(feas, key=position.__getitem__)
    if best == w:
        cls = frozenset([sincere])
        return Level1Report(i, feas, best, cls, cls)

    base = scores_without(e, i)
    winning = []
    fewest = e.k + 1
    for combo in itertools.combinations(range(e.num_candidates), e.k):
        approved = frozenset(combo)
        outcome = _winner_with(e, base, approved)
        if outcome == w or position[outcome] > position[w]:
            continue  # not manipulative
        swaps = len(sincere - approved)
        fewest = min(fewest, swaps)
        if outcome == best:
            winning.append((approved, swaps))
    strategies = frozenset(cls for cls, _ in winning)
    minimal = frozenset(cls for cls, swaps in winning if swaps == fewest)
    return Level1Report(i, feas, best, strategies, minimal)
