"""Hard-instance generator: from exact-cover instances to voting games.

An exact-cover-by-3-sets instance (ground set of size 3*nu, collection
of 3-element triples) is first padded with a gadget that preserves the
answer while guaranteeing the first ground element is covered by
exactly one triple.  The padded instance is then compiled into a
k-approval game (k >= 4) with one manipulator per triple and three
distinguished ballots for the focal voter; whether one of them weakly
dominates the other two encodes whether the instance has an exact
cover.  An exhaustive cover search is included as the independent
reference for tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from .core import Election, canonical_ballot, scores, swap_vote, winner
from .errors import BudgetError
from .game import ManipulationGame, build_game
from .manipulation import competitors

__all__ = [
    "CoverInstance",
    "HardGame",
    "parse_instance",
    "format_instance",
    "pad_instance",
    "find_exact_cover",
    "has_exact_cover",
    "game_from_instance",
]

DEFAULT_GROUND_LIMIT = 120


@dataclass(frozen=True)
class CoverInstance:
    """Ground elements 0..ground_size-1 and a collection of 3-element
    subsets; the question is whether some subcollection partitions the
    ground set."""

    ground_size: int
    triples: tuple  # tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.ground_size <= 0 or self.ground_size % 3:
            raise ValueError("ground size must be a positive multiple of 3")
        for triple in self.triples:
            if len(triple) != 3:
                raise ValueError(f"triple {sorted(triple)} must have exactly 3 elements")
            if not all(0 <= g < self.ground_size for g in triple):
                raise ValueError(f"triple {sorted(triple)} has out-of-range elements")


def parse_instance(text: str) -> CoverInstance:
    """Read the line format: ``elements <3*nu>``, then one triple per
    line as three whitespace-separated 1-based element indices."""
    lines = [
        (no, line.split("#", 1)[0].strip())
        for no, line in enumerate(text.splitlines(), start=1)
    ]
    lines = [(no, line) for no, line in lines if line]
    if not lines:
        raise ValueError("empty exact-cover file")
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "elements":
        raise ValueError(f"line {no}: expected 'elements <count>'")
    try:
        ground = int(parts[1])
    except ValueError:
        raise ValueError(f"line {no}: element count must be an integer") from None
    triples = []
    for no, line in lines[1:]:
        fields = line.split()
        if len(fields) != 3:
            raise ValueError(f"line {no}: a triple needs exactly three elements")
        try:
            members = [int(f) - 1 for f in fields]
        except ValueError:
            raise ValueError(f"line {no}: element indices must be integers") from None
        if any(not 0 <= g < ground for g in members):
            raise ValueError(f"line {no}: element index out of range 1..{ground}")
        triples.append(frozenset(members))
    return CoverInstance(ground, tuple(triples))


def format_instance(inst: CoverInstance) -> str:
    lines = [f"elements {inst.ground_size}"]
    for triple in inst.triples:
        lines.append(" ".join(str(g + 1) for g in sorted(triple)))
    return "\n".join(lines) + "\n"


def pad_instance(raw: CoverInstance) -> CoverInstance:
    """Answer-preserving padding.

    Three fresh elements become the new elements 0, 1, 2, covered only
    by their own triple; the original elements shift up by 3; and a
    cycle of fresh triples over nu'+2 fresh element triples is chained
    on so the gadget itself admits exactly two covers.  The padded
    instance has an exact cover iff the raw one does.
    """
    shift = 3
    old = raw.ground_size
    chain = old // 3 + 2
    triples: List[frozenset] = [frozenset({t + shift for t in tr}) for tr in raw.triples]
    triples.append(frozenset({0, 1, 2}))
    first_fresh = shift + old

    def fresh(i: int):  # x_i, y_i, z_i for i in 0..chain-1
        base = first_fresh + 3 * i
        return base, base + 1, base + 2

    for i in range(chain):
        x, y, z = fresh(i)
        triples.append(frozenset({x, y, z}))
    for i in range(chain):
        x_next = fresh((i + 1) % chain)[0]
        y, z = fresh(i)[1:]
        triples.append(frozenset({y, z, x_next}))
    return CoverInstance(first_fresh + 3 * chain, tuple(triples))


def find_exact_cover(
    inst: CoverInstance, limit: int = DEFAULT_GROUND_LIMIT
) -> Optional[tuple]:
    """Indices of triples forming an exact cover, or None; exhaustive
    backtracking over the least-covered element first."""
    if inst.ground_size > limit:
        raise BudgetError(
            f"ground size {inst.ground_size} exceeds the limit of {limit}",
            inst.ground_size,
        )
    containing = {g: [] for g in range(inst.ground_size)}
    for idx, triple in enumerate(inst.triples):
        for g in triple:
            containing[g].append(idx)

    uncovered = set(range(inst.ground_size))
    chosen: List[int] = []

    def search() -> bool:
        if not uncovered:
            return True
        pivot = min(uncovered, key=lambda g: len(containing[g]))
        for idx in containing[pivot]:
            triple = inst.triples[idx]
            if not triple <= uncovered:
                continue
            uncovered.difference_update(triple)
            chosen.append(idx)
            if search():
                return True
            chosen.pop()
            uncovered.update(triple)
        return False

    return tuple(chosen) if search() else None


def has_exact_cover(inst: CoverInstance, limit: int = DEFAULT_GROUND_LIMIT) -> bool:
    return find_exact_cover(inst, limit) is not None


@dataclass(frozen=True)
class HardGame:
    """A generated game plus the focal voter's distinguished ballots.

    ``promote_both`` swaps two of the focal voter's dummy approvals for
    the target and the collector; ``promote_target`` swaps a single
    dummy for the target.  Which of the three ballots dominates which
    encodes the exact-cover answer of the source instance.
    """

    game: ManipulationGame
    instance: CoverInstance
    voter_names: tuple  # tuple[str, ...], stable labels per voter
    sincere: tuple
    promote_both: tuple
    promote_target: tuple
    winner: int  # truthful winner
    target: int  # the focal voter's best feasible candidate
    collector: int  # gains one point per manipulating triple
    element_candidates: tuple


def game_from_instance(inst: CoverInstance, k: int = 4) -> HardGame:
    """Compile a (padded) exact-cover instance into a k-approval game.

    One manipulator per triple may swap his four personal dummies for
    his triple's three element candidates plus the collector; the focal
    voter's dummy block, the support voters, and the dummy families are
    sized so that at the truthful profile the winner, the target, and
    every element candidate are tied one point above the collector.
    """
    if k < 4:
        raise ValueError(f"the construction requires k >= 4, got {k}")
    nu = inst.ground_size // 3
    mu = len(inst.triples)
    if mu == 0:
        raise ValueError("instance must contain at least one triple")
    n_voters = 2 + mu + (3 * nu + 1) * (nu + 1)

    names: List[str] = []

    def add(name: str) -> int:
        names.append(name)
        return len(names) - 1

    element_cands = tuple(add(f"c{i + 1}") for i in range(3 * nu))
    w = add("w")
    p = add("p")
    c = add("c")
    dummy_block = {0: tuple(add(f"d0_{j + 1}") for j in range(4))}
    for i in range(1, mu + 1):
        dummy_block[i] = tuple(add(f"d{i}_{j + 1}") for j in range(4))
    collector_dummies = tuple(add(f"dc_{j + 1}") for j in range(3))
    support_dummies = tuple(
        tuple(add(f"e{j + 1}_{l + 1}") for l in range(2)) for j in range(nu + 1)
    )
    element_dummies = {
        (i, j): tuple(add(f"f{i + 1}_{j + 1}_{l + 1}") for l in range(3))
        for i in range(3 * nu)
        for j in range(nu + 1)
    }
    personal = None
    if k > 4:
        personal = tuple(
            tuple(add(f"h{v}_{l + 1}") for l in range(k - 4)) for v in range(n_voters)
        )

    m = len(names)
    all_cands = range(m)
    tiebreak = (w, c, p) + element_cands + tuple(
        x for x in all_cands if x not in {w, c, p} and x not in element_cands
    )

    def complete(head: Sequence[int]) -> tuple:
        seen = set(head)
        return tuple(head) + tuple(x for x in all_cands if x not in seen)

    votes: List[tuple] = []
    roles: List[str] = []

    focal_head = list(dummy_block[0]) + [p, element_cands[0], c] + [
        e for e in element_cands[1:]
    ]
    votes.append(complete(focal_head))
    roles.append("focal")

    triple_cands = []
    for i, triple in enumerate(inst.triples, start=1):
        members = tuple(element_cands[g] for g in sorted(triple))
        triple_cands.append(members)
        votes.append(complete(list(dummy_block[i]) + list(members) + [c]))
        roles.append(f"triple{i}")

    votes.append(complete([c] + list(collector_dummies) + [w]))
    roles.append("collector-fan")
    for j in range(nu + 1):
        votes.append(complete([w, p] + list(support_dummies[j])))
        roles.append(f"support{j + 1}")
    for i in range(3 * nu):
        for j in range(nu + 1):
            votes.append(complete([element_cands[i]] + list(element_dummies[i, j]) + [w]))
            roles.append(f"fan{i + 1}_{j + 1}")

    assert len(votes) == n_voters
    if k > 4:
        # move each voter's personal dummies out of the completion tail
        # into positions 5..k, keeping everything else in order
        adjusted = []
        for v, vote in enumerate(votes):
            own = set(personal[v])
            rest = [x for x in vote if x not in own]
            adjusted.append(tuple(rest[:4]) + personal[v] + tuple(rest[4:]))
        votes = adjusted

    e = Election(tuple(names), k, tiebreak, tuple(votes))

    sc = scores(e)
    expected = nu + 1
    if sc[w] != expected or sc[p] != expected or sc[c] != 1:
        raise AssertionError("construction produced wrong special-candidate scores")
    if any(sc[x] != expected for x in element_cands):
        raise AssertionError("construction produced wrong element-candidate scores")
    if any(sc[x] > 1 for x in all_cands
           if x not in element_cands and x not in (w, p, c)):
        raise AssertionError("a dummy candidate scored more than one point")
    if winner(e) != w:
        raise AssertionError("truthful winner is not the intended candidate")
    if competitors(e).all != set(element_cands) | {p}:
        raise AssertionError("competitive set does not match the construction")

    explicit = {}
    for i in range(1, mu + 1):
        z = votes[i]
        explicit[i] = [swap_vote(z, dummy_block[i], triple_cands[i - 1] + (c,))]
    the_game = build_game(e, 0, "explicit", explicit)

    z0 = votes[0]
    d1, d2 = dummy_block[0][0], dummy_block[0][1]
    promote_both = swap_vote(z0, (d1, d2), (p, c))
    promote_target = swap_vote(z0, (d1,), (p,))

    return HardGame(
        game=the_game,
        instance=inst,
        voter_names=tuple(roles),
        sincere=z0,
        promote_both=promote_both,
        promote_target=promote_target,
        winner=w,
        target=p,
        collector=c,
        element_candidates=element_cands,
    )
