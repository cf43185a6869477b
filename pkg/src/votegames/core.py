"""Elections, ballots, k-approval scoring and tie-breaking.

Candidates are small integer ids indexing a name table kept on the
election.  A ballot is a permutation of all candidate ids, most
preferred first.  Two ballots are interchangeable under k-approval
exactly when they approve the same top-k set, so sets of strategies are
usually reported as :class:`frozenset` "ballot classes".

All values here are immutable; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

CandidateId = int
Ballot = tuple  # tuple[CandidateId, ...], a full ranking
BallotClass = frozenset  # frozenset[CandidateId], a top-k set


@dataclass(frozen=True)
class Election:
    """A k-approval election: name table, rule parameter, tie-break, profile.

    ``tiebreak`` lists candidate ids highest priority first; among
    candidates with the same score the earliest one wins.
    """

    candidates: tuple  # tuple[str, ...]
    k: int
    tiebreak: tuple  # tuple[CandidateId, ...]
    profile: tuple  # tuple[Ballot, ...]
    _tb_rank: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = len(self.candidates)
        if len(set(self.candidates)) != m:
            raise ValueError("duplicate candidate names")
        if not 1 <= self.k <= m - 1:
            raise ValueError(f"k={self.k} out of range for {m} candidates")
        if len(self.profile) < 1:
            raise ValueError("profile must contain at least one ballot")
        full = frozenset(range(m))
        if frozenset(self.tiebreak) != full or len(self.tiebreak) != m:
            raise ValueError("tiebreak must be a permutation of all candidates")
        for ballot in self.profile:
            if frozenset(ballot) != full or len(ballot) != m:
                raise ValueError("every ballot must rank all candidates exactly once")
        rank = [0] * m
        for pos, c in enumerate(self.tiebreak):
            rank[c] = pos
        object.__setattr__(self, "_tb_rank", tuple(rank))

    @property
    def num_candidates(self) -> int:
        return len(self.candidates)

    @property
    def num_voters(self) -> int:
        return len(self.profile)

    def precedes(self, x: CandidateId, y: CandidateId) -> bool:
        """True if x has higher tie-break priority than y."""
        return self._tb_rank[x] < self._tb_rank[y]

    def name(self, c: CandidateId) -> str:
        return self.candidates[c]


def election(candidates: Sequence[str], k: int, tiebreak: Sequence[CandidateId],
             profile: Iterable[Sequence[CandidateId]]) -> Election:
    """Convenience constructor normalising sequences to tuples."""
    return Election(tuple(candidates), k, tuple(tiebreak),
                    tuple(tuple(b) for b in profile))


def top_k(ballot: Ballot, k: int) -> BallotClass:
    """The set of the ballot's k most preferred candidates."""
    if not 1 <= k <= len(ballot):
        raise ValueError(f"k={k} out of range for ballot of length {len(ballot)}")
    return frozenset(ballot[:k])


def scores(e: Election) -> list:
    """All k-approval scores, indexed by candidate id."""
    out = [0] * e.num_candidates
    k = e.k
    for ballot in e.profile:
        for c in ballot[:k]:
            out[c] += 1
    return out


def score_k(c: CandidateId, e: Election) -> int:
    """Number of ballots approving (ranking in top k) candidate c."""
    if not 0 <= c < e.num_candidates:
        raise ValueError(f"invalid candidate id {c}")
    k = e.k
    return sum(1 for ballot in e.profile if c in ballot[:k])


def beats(x: CandidateId, y: CandidateId, e: Election) -> bool:
    """True if x outscores y, or ties and has tie-break priority over y."""
    if x == y:
        raise ValueError("beats() requires two distinct candidates")
    s = scores(e)
    return s[x] > s[y] or (s[x] == s[y] and e.precedes(x, y))


def winner_from_scores(s: Sequence[int], e: Election) -> CandidateId:
    """Highest-scoring candidate, ties resolved by the election's tie-break."""
    best = e.tiebreak[0]
    for c in e.tiebreak[1:]:
        if s[c] > s[best]:
            best = c
    return best


def winner(e: Election) -> CandidateId:
    """The election winner: max score, earliest in the tie-break order."""
    return winner_from_scores(scores(e), e)


def swap_vote(ballot: Ballot, xs: Sequence[CandidateId], ys: Sequence[CandidateId]) -> Ballot:
    """Transpose xs[j] with ys[j] for each j, leaving other positions fixed."""
    if len(xs) != len(ys):
        raise ValueError("swap lists must have equal length")
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        raise ValueError("swap lists must not contain duplicates")
    if set(xs) & set(ys):
        raise ValueError("swap lists must be disjoint")
    pos = {c: i for i, c in enumerate(ballot)}
    out = list(ballot)
    for x, y in zip(xs, ys):
        if x not in pos or y not in pos:
            raise ValueError("swap candidates must appear in the ballot")
        out[pos[x]], out[pos[y]] = y, x
    return tuple(out)


def equivalent(b1: Ballot, b2: Ballot, k: int) -> bool:
    """True if both ballots approve the same top-k set."""
    return top_k(b1, k) == top_k(b2, k)


def canonical_ballot(approved: Iterable[CandidateId], reference: Ballot) -> Ballot:
    """Deterministic representative ballot for a top-k class.

    Approved candidates come first, ordered as in ``reference``; the
    remaining candidates follow, also in reference order.
    """
    approved = frozenset(approved)
    head = [c for c in reference if c in approved]
    if len(head) != len(approved):
        raise ValueError("approved set contains candidates missing from the reference ballot")
    tail = [c for c in reference if c not in approved]
    return tuple(head + tail)
