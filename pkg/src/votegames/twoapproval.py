"""Polynomial weak-dominance decisions for 2-approval under minimality.

The flow encoding is only sound when every player's non-truthful
strategies are fewest-swap level-1 manipulations: a demoter then always
keeps his top candidate approved (one forced arc), and a promoter moves
exactly one candidate into his top two, so each voter's options form a
pattern a flow network can express.  Strategy sets are validated up
front and anything richer is rejected explicitly rather than answered
incorrectly.
"""

from __future__ import annotations

from typing import Optional

from .core import top_k
from .dominance import DominanceAnalysis, Engine, ScoreQuery, score_network
from .errors import RuleMismatchError, StrategyValidationError
from .flow import feasible_flow
from .game import ManipulationGame
from .manipulation import level1_strategies

__all__ = [
    "ScoreQuery",
    "validate_minimal",
    "feasible_scores",
    "exists_strictly_better",
    "strictly_better_witness",
    "weakly_dominates",
    "is_level2",
    "is_improving",
    "enumerate_level2",
    "enumerate_improving",
]


def _check_rule(game: ManipulationGame):
    if game.election.k != 2:
        raise RuleMismatchError(
            f"2-approval engine requires k=2, game has k={game.election.k}"
        )


def validate_minimal(game: ManipulationGame):
    """Raise unless every player's non-truthful classes are fewest-swap
    level-1 strategies of that player."""
    _check_rule(game)
    e = game.election
    for i, ballots in game.strategy_sets.items():
        sincere = top_k(e.profile[i], 2)
        extras = {top_k(b, 2) for b in ballots} - {sincere}
        if not extras:
            continue
        allowed = level1_strategies(e, i).minimal_strategies
        illegal = extras - allowed
        if illegal:
            raise StrategyValidationError(
                f"voter {i} has non-minimal manipulative classes: "
                + ", ".join(str(sorted(cls)) for cls in sorted(illegal, key=sorted))
            )


def _engine(game) -> Engine:
    validate_minimal(game)
    return Engine(game)


def feasible_scores(game: ManipulationGame, query: ScoreQuery) -> bool:
    """Can some counter-profile realise the queried non-focal scores?"""
    validate_minimal(game)
    return feasible_flow(score_network(game, query)) is not None


def exists_strictly_better(game: ManipulationGame, u, v) -> bool:
    return strictly_better_witness(game, u, v) is not None


def strictly_better_witness(game: ManipulationGame, u, v) -> Optional[dict]:
    engine = _engine(game)
    return engine.strictly_better_witness(top_k(u, 2), top_k(v, 2))


def weakly_dominates(game: ManipulationGame, u, v) -> bool:
    """u never worse than v, and strictly better somewhere."""
    cu, cv = top_k(u, 2), top_k(v, 2)
    if cu == cv:
        return False
    engine = _engine(game)
    return engine.strictly_better(cu, cv) and not engine.strictly_better(cv, cu)


def is_level2(game: ManipulationGame, v) -> bool:
    analysis = DominanceAnalysis(_engine(game))
    return analysis.is_level2(top_k(v, 2))


def is_improving(game: ManipulationGame, v) -> bool:
    analysis = DominanceAnalysis(_engine(game))
    return analysis.dominates(top_k(v, 2), top_k(game.sincere_focal(), 2))


def enumerate_level2(game: ManipulationGame) -> frozenset:
    analysis = DominanceAnalysis(_engine(game))
    return analysis.enumerate_level2()


def enumerate_improving(game: ManipulationGame) -> frozenset:
    analysis = DominanceAnalysis(_engine(game))
    return analysis.enumerate_improving()
