"""Polynomial weak-dominance decisions for Plurality games (k = 1).

Under Plurality every strategy is identified by its top candidate, so
there are only m pairwise non-equivalent focal ballots; dominance
between two of them reduces to a sweep of score-feasibility questions,
each settled by one feasible-flow computation.
"""

from __future__ import annotations

from typing import Optional

from .core import top_k
from .dominance import DominanceAnalysis, Engine, ScoreQuery, score_network
from .errors import RuleMismatchError
from .flow import feasible_flow
from .game import ManipulationGame

__all__ = [
    "ScoreQuery",
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
    if game.election.k != 1:
        raise RuleMismatchError(
            f"plurality engine requires k=1, game has k={game.election.k}"
        )


def feasible_scores(game: ManipulationGame, query: ScoreQuery) -> bool:
    """Can some counter-profile realise the queried non-focal scores?"""
    _check_rule(game)
    return feasible_flow(score_network(game, query)) is not None


def _engine(game) -> Engine:
    _check_rule(game)
    return Engine(game)


def exists_strictly_better(game: ManipulationGame, u, v) -> bool:
    """Is there a counter-profile whose winner under u the focal voter
    strictly prefers to the winner under v?"""
    return strictly_better_witness(game, u, v) is not None


def strictly_better_witness(game: ManipulationGame, u, v) -> Optional[dict]:
    engine = _engine(game)
    return engine.strictly_better_witness(top_k(u, 1), top_k(v, 1))


def weakly_dominates(game: ManipulationGame, u, v) -> bool:
    """u never worse than v, and strictly better somewhere."""
    cu, cv = top_k(u, 1), top_k(v, 1)
    if cu == cv:
        return False
    engine = _engine(game)
    return engine.strictly_better(cu, cv) and not engine.strictly_better(cv, cu)


def is_level2(game: ManipulationGame, v) -> bool:
    """True if no rival ballot class weakly dominates v."""
    analysis = DominanceAnalysis(_engine(game))
    return analysis.is_level2(top_k(v, 1))


def is_improving(game: ManipulationGame, v) -> bool:
    """True if v weakly dominates the focal voter's sincere ballot."""
    analysis = DominanceAnalysis(_engine(game))
    return analysis.dominates(top_k(v, 1), top_k(game.sincere_focal(), 1))


def enumerate_level2(game: ManipulationGame) -> frozenset:
    analysis = DominanceAnalysis(_engine(game))
    return analysis.enumerate_level2()


def enumerate_improving(game: ManipulationGame) -> frozenset:
    analysis = DominanceAnalysis(_engine(game))
    return analysis.enumerate_improving()
