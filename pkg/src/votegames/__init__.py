"""Strategic-voting analysis under k-approval.

The package models k-approval elections with lexicographic
tie-breaking, detects which voters can profitably misreport, builds the
game a sophisticated voter faces against those potential manipulators,
and decides weak dominance, level-2 and improving questions about his
ballots: in polynomial time via feasible-flow reductions for Plurality
and (under a minimality assumption) 2-approval, and by an exact
brute-force oracle for every k.  It also compiles exact-cover instances
into games whose dominance relations encode the instance's answer.
"""

from .core import (
    Ballot,
    BallotClass,
    CandidateId,
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
from .errors import BudgetError, RuleMismatchError, StrategyValidationError
from .game import ManipulationGame, build_game, counterprofiles, outcome
from .manipulation import (
    Competitors,
    Level1Report,
    ManipulationKind,
    best_feasible,
    classify,
    competitors,
    feasible_set,
    level1_strategies,
    manipulators,
    strongest_competitor,
)
from .oracle import OracleBudget

__version__ = "0.1.0"

__all__ = [
    "Ballot",
    "BallotClass",
    "BudgetError",
    "CandidateId",
    "Competitors",
    "Election",
    "Level1Report",
    "ManipulationGame",
    "ManipulationKind",
    "OracleBudget",
    "RuleMismatchError",
    "StrategyValidationError",
    "beats",
    "best_feasible",
    "build_game",
    "canonical_ballot",
    "classify",
    "competitors",
    "counterprofiles",
    "election",
    "equivalent",
    "feasible_set",
    "level1_strategies",
    "manipulators",
    "outcome",
    "score_k",
    "scores",
    "swap_vote",
    "top_k",
    "winner",
]
