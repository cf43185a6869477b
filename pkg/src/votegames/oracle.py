"""Exact brute-force reference engine for any k.

Dominance, level-2 and improving questions are answered literally, by
enumerating every counter-profile (and, for enumeration questions,
every focal ballot class).  Budgets guard the exponential blow-up; the
iteration order is lexicographic in player index then strategy index,
so witnesses are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional

import numpy as np

from .core import top_k
from .errors import BudgetError
from .game import ManipulationGame, counterprofile_count

__all__ = [
    "OracleBudget",
    "DEFAULT_BUDGET",
    "weakly_dominates",
    "strictly_better_witness",
    "is_level2",
    "is_improving",
    "enumerate_level2",
    "enumerate_improving",
]


@dataclass(frozen=True)
class OracleBudget:
    max_counterprofiles: int = 10**6
    max_ballot_classes: int = 10**6

    def __post_init__(self):
        if self.max_counterprofiles <= 0 or self.max_ballot_classes <= 0:
            raise ValueError("budgets must be positive")


DEFAULT_BUDGET = OracleBudget()


class _Evaluator:
    """Shared per-game state for fast outcome computation.

    Scores are held as a single integer key per candidate combining the
    score (major) and tie-break priority (minor), so the winner of any
    adjusted profile is one argmax away.
    """

    def __init__(self, game: ManipulationGame, budget: OracleBudget):
        self.game = game
        e = game.election
        self.m = e.num_candidates
        total = counterprofile_count(game)
        if total > budget.max_counterprofiles:
            raise BudgetError(
                f"{total} counter-profiles exceed the oracle budget "
                f"of {budget.max_counterprofiles}",
                total,
            )
        self.total = total

        base = np.zeros(self.m, dtype=np.int64)
        for i, ballot in enumerate(e.profile):
            if i == game.focal or i in game.strategy_sets:
                continue
            for c in ballot[: e.k]:
                base[c] += 1
        # tie-break priority folded into the score key
        rank = np.array(e._tb_rank, dtype=np.int64)
        self.base_key = base * (self.m + 1) + (self.m - rank)

        self.voters = sorted(game.strategy_sets)
        self.deltas: List[List[np.ndarray]] = []
        for i in self.voters:
            per_voter = []
            for ballot in game.strategy_sets[i]:
                vec = np.zeros(self.m, dtype=np.int64)
                for c in ballot[: e.k]:
                    vec[c] += self.m + 1
                per_voter.append(vec)
            self.deltas.append(per_voter)

    def counterprofile_keys(self):
        """Score keys of the non-focal profile, one per counter-profile."""
        ranges = [range(len(d)) for d in self.deltas]
        for combo in itertools.product(*ranges):
            key = self.base_key.copy()
            for per_voter, j in zip(self.deltas, combo):
                key += per_voter[j]
            yield combo, key

    def outcomes(self, classes) -> Dict[frozenset, np.ndarray]:
        """Winner per counter-profile for each focal top-k class."""
        classes = list(classes)
        indicators = {}
        for cls in classes:
            vec = np.zeros(self.m, dtype=np.int64)
            vec[list(cls)] = self.m + 1
            indicators[cls] = vec
        out = {cls: np.empty(self.total, dtype=np.int64) for cls in classes}
        for idx, (_, key) in enumerate(self.counterprofile_keys()):
            for cls in classes:
                out[cls][idx] = int(np.argmax(key + indicators[cls]))
        return out

    def combo_at(self, index: int) -> dict:
        sizes = [len(d) for d in self.deltas]
        combo = []
        for size in reversed(sizes):
            combo.append(index % size)
            index //= size
        return dict(zip(self.voters, reversed(combo)))


def _positions(game: ManipulationGame) -> np.ndarray:
    pos = np.empty(game.election.num_candidates, dtype=np.int64)
    for p, c in enumerate(game.election.profile[game.focal]):
        pos[c] = p
    return pos


def weakly_dominates(game, u, v, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Literal check: u never worse than v, strictly better at least once."""
    k = game.election.k
    cu, cv = top_k(u, k), top_k(v, k)
    if cu == cv:
        return False
    ev = _Evaluator(game, budget)
    res = ev.outcomes([cu, cv])
    pos = _positions(game)
    pu, pv = pos[res[cu]], pos[res[cv]]
    return bool(np.all(pu <= pv) and np.any(pu < pv))


def strictly_better_witness(game, u, v, budget: OracleBudget = DEFAULT_BUDGET) -> Optional[dict]:
    """First counter-profile where u's outcome strictly beats v's, if any."""
    k = game.election.k
    cu, cv = top_k(u, k), top_k(v, k)
    ev = _Evaluator(game, budget)
    res = ev.outcomes([cu, cv])
    pos = _positions(game)
    strict = np.flatnonzero(pos[res[cu]] < pos[res[cv]])
    if strict.size == 0:
        return None
    return ev.combo_at(int(strict[0]))


def _all_classes(game, budget: OracleBudget):
    e = game.election
    total = comb(e.num_candidates, e.k)
    if total > budget.max_ballot_classes:
        raise BudgetError(
            f"{total} ballot classes exceed the oracle budget of {budget.max_ballot_classes}",
            total,
        )
    return [frozenset(c) for c in itertools.combinations(range(e.num_candidates), e.k)]


def _dominance_scan(game, budget, targets=None):
    """For each target class, whether some other class weakly dominates it."""
    classes = _all_classes(game, budget)
    ev = _Evaluator(game, budget)
    res = ev.outcomes(classes)
    pos = _positions(game)
    ranked = {cls: pos[res[cls]] for cls in classes}
    wanted = classes if targets is None else targets
    dominated = {}
    for cls in wanted:
        dominated[cls] = any(
            np.all(ranked[rival] <= ranked[cls]) and np.any(ranked[rival] < ranked[cls])
            for rival in classes
            if rival != cls
        )
    return dominated


def is_level2(game, v, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """True if no ballot class weakly dominates v in this game."""
    cls = top_k(v, game.election.k)
    return not _dominance_scan(game, budget, targets=[cls])[cls]


def is_improving(game, v, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """True if v weakly dominates the focal voter's sincere ballot."""
    return weakly_dominates(game, v, game.sincere_focal(), budget)


def enumerate_level2(game, budget: OracleBudget = DEFAULT_BUDGET) -> frozenset:
    """All undominated focal ballot classes; never empty."""
    dominated = _dominance_scan(game, budget)
    return frozenset(cls for cls, dom in dominated.items() if not dom)


def enumerate_improving(game, budget: OracleBudget = DEFAULT_BUDGET) -> frozenset:
    """All focal ballot classes weakly dominating the sincere ballot."""
    classes = _all_classes(game, budget)
    ev = _Evaluator(game, budget)
    res = ev.outcomes(classes)
    pos = _positions(game)
    sincere = top_k(game.sincere_focal(), game.election.k)
    base = pos[res[sincere]]
    out = set()
    for cls in classes:
        ranked = pos[res[cls]]
        if np.all(ranked <= base) and np.any(ranked < base):
            out.add(cls)
    return frozenset(out)
