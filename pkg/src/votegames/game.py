"""Strategic games between a focal voter and the election's manipulators.

The focal voter picks an arbitrary ballot; every other manipulator is
restricted to his truthful ballot plus (a subset of) his level-1
strategies.  Everyone else votes sincerely.  A counter-profile is one
joint choice of strategies for the non-focal players.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

from .core import (
    Ballot,
    CandidateId,
    Election,
    canonical_ballot,
    top_k,
    winner,
    winner_from_scores,
)
from .errors import BudgetError, StrategyValidationError
from .manipulation import best_feasible, level1_strategies, manipulators, scores_without

__all__ = [
    "ManipulationGame",
    "build_game",
    "outcome",
    "counterprofiles",
    "counterprofile_count",
    "DEFAULT_PROFILE_LIMIT",
]

DEFAULT_PROFILE_LIMIT = 10**6


@dataclass(frozen=True)
class ManipulationGame:
    """An election plus per-manipulator strategy sets.

    ``strategy_sets`` maps each non-focal player to his available
    ballots, truthful first.  The focal voter is a player too but can
    submit any ballot, so he never appears in the map.
    """

    election: Election
    focal: int
    strategy_sets: Mapping[int, tuple]  # voter -> tuple[Ballot, ...]

    @property
    def players(self) -> frozenset:
        return frozenset(self.strategy_sets) | {self.focal}

    def sincere_focal(self) -> Ballot:
        return self.election.profile[self.focal]


def _dedup_by_class(e: Election, ballots) -> tuple:
    seen = set()
    out = []
    for b in ballots:
        cls = top_k(b, e.k)
        if cls not in seen:
            seen.add(cls)
            out.append(tuple(b))
    return tuple(out)


def build_game(
    e: Election,
    focal: int,
    policy: str = "level1",
    explicit: Optional[Mapping[int, Sequence[Ballot]]] = None,
) -> ManipulationGame:
    """Assemble the game for a focal voter under a strategy-set policy.

    Policies: ``"truthful"`` gives every manipulator only his sincere
    ballot; ``"minimal"`` adds his fewest-swap level-1 classes;
    ``"level1"`` adds all level-1 classes; ``"explicit"`` takes the
    supplied ballots, which must each be truthful or a level-1 strategy
    of their voter.
    """
    if not 0 <= focal < e.num_voters:
        raise ValueError(f"invalid focal voter index {focal}")
    if policy not in ("truthful", "minimal", "level1", "explicit"):
        raise ValueError(f"unknown policy {policy!r}")
    if policy == "explicit" and explicit is None:
        raise ValueError("explicit policy requires strategy sets")
    if policy != "explicit" and explicit is not None:
        raise ValueError("explicit strategy sets only allowed with the explicit policy")

    manips = manipulators(e)
    sets = {}
    for i in sorted(manips - {focal}):
        truthful = e.profile[i]
        if policy == "truthful":
            sets[i] = (truthful,)
        elif policy in ("minimal", "level1"):
            report = level1_strategies(e, i)
            classes = report.minimal_strategies if policy == "minimal" else report.strategies
            extras = [
                canonical_ballot(cls, truthful)
                for cls in sorted(classes, key=sorted)
            ]
            sets[i] = _dedup_by_class(e, [truthful] + extras)
        else:
            sets[i] = (truthful,)

    if policy == "explicit":
        for i, ballots in explicit.items():
            if i == focal:
                raise StrategyValidationError("the focal voter's strategy set is implicit")
            if i not in manips:
                for b in ballots:
                    if top_k(b, e.k) != top_k(e.profile[i], e.k):
                        raise StrategyValidationError(
                            f"voter {i} is not a manipulator; only truthful ballots allowed"
                        )
                continue
            # A non-truthful ballot is a level-1 strategy exactly when it
            # elects the voter's best feasible candidate.
            best = best_feasible(e, i)
            base = scores_without(e, i)
            sincere_cls = top_k(e.profile[i], e.k)
            for b in ballots:
                cls = top_k(b, e.k)
                if cls == sincere_cls:
                    continue
                boosted = list(base)
                for cand in cls:
                    boosted[cand] += 1
                if winner_from_scores(boosted, e) != best:
                    raise StrategyValidationError(
                        f"ballot {b} is neither truthful nor a level-1 strategy of voter {i}"
                    )
            sets[i] = _dedup_by_class(e, [e.profile[i]] + [tuple(b) for b in ballots])

    return ManipulationGame(e, focal, sets)


def outcome(game: ManipulationGame, focal_ballot: Ballot, cp: Mapping[int, int]) -> CandidateId:
    """Winner when players vote per ``cp``, the focal voter casts
    ``focal_ballot``, and everyone else is sincere."""
    e = game.election
    profile = list(e.profile)
    profile[game.focal] = tuple(focal_ballot)
    for i, sets in game.strategy_sets.items():
        profile[i] = sets[cp.get(i, 0)]
    return winner(Election(e.candidates, e.k, e.tiebreak, tuple(profile)))


def counterprofile_count(game: ManipulationGame) -> int:
    count = 1
    for sets in game.strategy_sets.values():
        count *= len(sets)
    return count


def counterprofiles(game: ManipulationGame, limit: int = DEFAULT_PROFILE_LIMIT) -> Iterator[dict]:
    """All joint strategy choices of the non-focal players, in
    lexicographic order by voter index then strategy index."""
    total = counterprofile_count(game)
    if total > limit:
        raise BudgetError(f"{total} counter-profiles exceed the limit of {limit}", total)
    voters = sorted(game.strategy_sets)
    ranges = [range(len(game.strategy_sets[i])) for i in voters]
    for combo in itertools.product(*ranges):
        yield dict(zip(voters, combo))
