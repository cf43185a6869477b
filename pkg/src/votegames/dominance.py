"""Shared machinery for the polynomial dominance engines (k = 1 and 2).

Both engines answer the same question: given two focal ballots u and v,
is there a counter-profile under which the winner with u is strictly
preferred by the focal voter to the winner with v?  The question is
swept over all candidate pairs (w, w') and all score levels t: "can w
win with t points when the focal voter casts u, while w' wins when he
casts v?".  Each such configuration pins the scores of w and w' in the
non-focal part of the profile exactly and caps every other candidate's
score relative to them; the offsets fall out of who receives the focal
voter's point under u versus v and of tie-break orientation.  Each
configuration is then a feasible-flow question: voters are supply
nodes, candidates are capacitated sinks, and a voter's arcs encode
which top-k sets his strategy set allows.

The per-query network is built in two flavours: a literal one with one
node per voter (the public single-query surface) and an aggregated one
where interchangeable voters are merged into groups with integer
capacities (used by the batch sweeps; identical feasibility, much
smaller).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from .core import BallotClass, Election, top_k
from .errors import StrategyValidationError
from .flow import FlowNetwork, feasible_flow
from .game import ManipulationGame

__all__ = ["ScoreQuery", "score_network", "Engine"]

_LEVELS = (1, 0, -1, -2)


@dataclass(frozen=True)
class ScoreQuery:
    """Ask whether some counter-profile gives candidate ``x`` exactly
    ``score_x`` points and ``y`` exactly ``score_y`` points in the
    non-focal part of the profile, while every other candidate c stays
    at or below ``score_x + slack[c]``."""

    x: int
    score_x: int
    y: int
    score_y: int
    slack: Mapping[int, int]

    def __post_init__(self):
        if self.x == self.y:
            raise ValueError("score query needs two distinct candidates")
        for level in self.slack.values():
            if level not in _LEVELS:
                raise ValueError(f"slack levels must be in {_LEVELS}")


def allowed_classes(game: ManipulationGame) -> Dict[int, List[BallotClass]]:
    """Top-k sets each non-focal voter may cast: his strategy classes if
    he is a player, otherwise just his sincere class."""
    e = game.election
    out = {}
    for i in range(e.num_voters):
        if i == game.focal:
            continue
        if i in game.strategy_sets:
            classes = []
            for ballot in game.strategy_sets[i]:
                cls = top_k(ballot, e.k)
                if cls not in classes:
                    classes.append(cls)
            out[i] = classes
        else:
            out[i] = [top_k(e.profile[i], e.k)]
    return out


def _check_slack_partition(e: Election, query: ScoreQuery):
    rest = set(range(e.num_candidates)) - {query.x, query.y}
    if set(query.slack) != rest:
        raise ValueError("slack must cover exactly the candidates other than x and y")


def score_network(game: ManipulationGame, query: ScoreQuery) -> FlowNetwork:
    """The literal per-voter network whose feasible flows are exactly the
    counter-profiles matching the query."""
    e = game.election
    _check_slack_partition(e, query)
    classes = allowed_classes(game)
    voters = sorted(classes)
    voter_node = {i: 1 + pos for pos, i in enumerate(voters)}
    cand_node = {c: 1 + len(voters) + c for c in range(e.num_candidates)}
    sink = 1 + len(voters) + e.num_candidates
    arcs = []
    for i in voters:
        arcs.append((0, voter_node[i], e.k, e.k))
        union = frozenset().union(*classes[i])
        common = frozenset.intersection(*classes[i])
        for c in sorted(union):
            lower = 1 if c in common else 0
            arcs.append((voter_node[i], cand_node[c], lower, 1))
    for c in range(e.num_candidates):
        if c == query.x:
            bounds = (query.score_x, query.score_x)
        elif c == query.y:
            bounds = (query.score_y, query.score_y)
        else:
            bounds = (0, query.score_x + query.slack[c])
        arcs.append((cand_node[c], sink, bounds[0], bounds[1]))
    return FlowNetwork(sink + 1, 0, sink, tuple(arcs))


class _Group:
    """Interchangeable voters sharing the same variable approval options.

    After factoring out the candidates a voter approves in every one of
    his classes, what remains is either a plain choice (each remaining
    unit goes to one of several single candidates) or the three-option
    pair pattern of a two-sided promoter (two units spread over three
    candidates).  Anything else means the strategy sets were not
    validated for this engine.
    """

    __slots__ = ("options", "units", "members", "reduced")

    def __init__(self, reduced: frozenset):
        shapes = {len(cls) for cls in reduced}
        options = sorted(frozenset().union(*reduced))
        if shapes == {1}:
            units = 1
        elif shapes == {2} and len(reduced) == 3 and len(options) == 3:
            units = 2  # all three pairs over three candidates
        else:
            raise StrategyValidationError(
                "strategy sets do not fit the flow encoding; "
                "validate minimality before using this engine"
            )
        self.reduced = reduced
        self.options = options
        self.units = units
        self.members: List[Tuple[int, frozenset]] = []  # (voter, forced part)


class Engine:
    """Batch dominance engine for one game, k in {1, 2}.

    Precomputes fixed score contributions, aggregates interchangeable
    voters, and answers strictly-better queries by sweeping winner
    pairs and score levels, delegating surviving configurations to the
    feasible-flow solver.
    """

    def __init__(self, game: ManipulationGame):
        self.game = game
        e = game.election
        self.e = e
        m = e.num_candidates
        self.m = m
        self.base = np.zeros(m, dtype=np.int64)
        groups: Dict[frozenset, _Group] = {}
        for i, classes in sorted(allowed_classes(game).items()):
            forced = frozenset.intersection(*classes)
            for c in forced:
                self.base[c] += 1
            reduced = frozenset(cls - forced for cls in classes) - {frozenset()}
            if not reduced:
                continue
            group = groups.get(reduced)
            if group is None:
                group = groups[reduced] = _Group(reduced)
            group.members.append((i, forced))
        self.groups = [
            groups[key]
            for key in sorted(groups, key=lambda rc: sorted(tuple(sorted(c)) for c in rc))
        ]

        self.varmax = np.zeros(m, dtype=np.int64)
        self.total_units = 0
        for g in self.groups:
            for c in g.options:
                self.varmax[c] += len(g.members)
            self.total_units += g.units * len(g.members)

        rank = np.array(e._tb_rank, dtype=np.int64)
        # precedes[c, w]: candidate c has tie-break priority over w
        self.precedes = (rank[:, None] < rank[None, :]).astype(np.int64)
        self.focal_pos = np.empty(m, dtype=np.int64)
        for pos, c in enumerate(e.profile[game.focal]):
            self.focal_pos[c] = pos

    # -- feasibility -------------------------------------------------

    def _network(self, x: int, need_x: int, y: int, need_y: int,
                 caps: np.ndarray) -> FlowNetwork:
        """Aggregated network: group nodes instead of voter nodes; caps
        are residual per-candidate intakes after fixed contributions."""
        n_groups = len(self.groups)
        cand_node = {c: 1 + n_groups + idx for idx, c in enumerate(range(self.m))}
        sink = 1 + n_groups + self.m
        arcs = []
        for idx, g in enumerate(self.groups):
            node = 1 + idx
            supply = g.units * len(g.members)
            arcs.append((0, node, supply, supply))
            for c in g.options:
                arcs.append((node, cand_node[c], 0, len(g.members)))
        for c in range(self.m):
            if c == x:
                bounds = (need_x, need_x)
            elif c == y:
                bounds = (need_y, need_y)
            else:
                bounds = (0, int(caps[c]))
            arcs.append((cand_node[c], sink, bounds[0], bounds[1]))
        return FlowNetwork(sink + 1, 0, sink, tuple(arcs))

    def feasible(self, query: ScoreQuery, want_witness: bool = False):
        """Whether some counter-profile realises the query; optionally the
        lexicographically first matching counter-profile."""
        _check_slack_partition(self.e, query)
        caps = np.empty(self.m, dtype=np.int64)
        for c, level in query.slack.items():
            caps[c] = query.score_x + level
        return self._feasible_raw(query.x, query.score_x, query.y, query.score_y,
                                  caps, want_witness)

    def _feasible_raw(self, x, score_x, y, score_y, caps, want_witness=False):
        need_x = score_x - int(self.base[x])
        need_y = score_y - int(self.base[y])
        if not (0 <= need_x <= self.varmax[x] and 0 <= need_y <= self.varmax[y]):
            return (False, None) if want_witness else False
        resid = caps - self.base
        others = np.ones(self.m, dtype=bool)
        others[x] = others[y] = False
        if np.any(resid[others] < 0):
            return (False, None) if want_witness else False
        intake = np.minimum(resid, self.varmax)
        room = need_x + need_y + int(intake[others].sum())
        if room < self.total_units:
            return (False, None) if want_witness else False

        assignment = feasible_flow(self._network(x, need_x, y, need_y, resid))
        if assignment is None:
            return (False, None) if want_witness else False
        if not want_witness:
            return True
        return True, self._witness(assignment)

    def _witness(self, assignment) -> dict:
        """Translate an aggregated flow back into a counter-profile."""
        flows = assignment.flow
        cp = {i: 0 for i in self.game.strategy_sets}
        pos = 0
        for g in self.groups:
            pos += 1  # skip the source arc
            per_option = {}
            for c in g.options:
                per_option[c] = flows[pos]
                pos += 1
            n = len(g.members)
            if g.units == 1:
                picks = []
                for c in g.options:
                    picks.extend([frozenset([c])] * per_option[c])
            else:
                a, b, c = g.options
                pairs = [frozenset([a, b])] * (n - per_option[c])
                pairs += [frozenset([a, c])] * (n - per_option[b])
                pairs += [frozenset([b, c])] * (n - per_option[a])
                picks = pairs
            for (voter, forced), reduced in zip(g.members, picks):
                cls = forced | reduced
                for idx, ballot in enumerate(self.game.strategy_sets[voter]):
                    if top_k(ballot, self.e.k) == cls:
                        cp[voter] = idx
                        break
        return cp

    # -- the strictly-better sweep ------------------------------------

    def strictly_better_witness(self, class_u: BallotClass,
                                class_v: BallotClass) -> Optional[dict]:
        """First counter-profile making the winner under u strictly
        preferred by the focal voter to the winner under v, or None."""
        if class_u == class_v:
            raise ValueError("ballots are equivalent; no strict preference possible")
        in_u = np.zeros(self.m, dtype=np.int64)
        in_u[list(class_u)] = 1
        in_v = np.zeros(self.m, dtype=np.int64)
        in_v[list(class_v)] = 1

        for w in range(self.m):
            t_lo = int(self.base[w]) + int(in_u[w])
            t_hi = t_lo + int(self.varmax[w])
            col_w = self.precedes[:, w]
            for w2 in range(self.m):
                if w2 == w or self.focal_pos[w] >= self.focal_pos[w2]:
                    continue
                col_w2 = self.precedes[:, w2]
                shift_lo = -int(in_u[w]) + int(in_v[w]) + int(self.precedes[w, w2])
                shift_hi = int(in_v[w2]) - int(in_u[w2]) - int(self.precedes[w2, w])
                if shift_lo > shift_hi:
                    continue
                base_w2 = int(self.base[w2])
                varmax_w2 = int(self.varmax[w2])
                for t in range(t_lo, t_hi + 1):
                    r = t - int(in_u[w])
                    for s in range(t + shift_lo, t + shift_hi + 1):
                        r2 = s - int(in_v[w2])
                        if not base_w2 <= r2 <= base_w2 + varmax_w2:
                            continue
                        caps = np.minimum(t - in_u - col_w, s - in_v - col_w2)
                        ok, witness = self._feasible_raw(w, r, w2, r2, caps,
                                                         want_witness=True)
                        if ok:
                            return witness
        return None

    def strictly_better(self, class_u, class_v) -> bool:
        return self.strictly_better_witness(class_u, class_v) is not None


class DominanceAnalysis:
    """Cached pairwise strictly-better answers over focal ballot classes."""

    def __init__(self, engine: Engine):
        self.engine = engine
        self._memo: Dict[tuple, bool] = {}

    def strictly_better(self, cu, cv) -> bool:
        key = (cu, cv)
        if key not in self._memo:
            self._memo[key] = self.engine.strictly_better(cu, cv)
        return self._memo[key]

    def dominates(self, cu, cv) -> bool:
        if cu == cv:
            return False
        return self.strictly_better(cu, cv) and not self.strictly_better(cv, cu)

    def all_classes(self):
        m, k = self.engine.m, self.engine.e.k
        return [frozenset(c) for c in itertools.combinations(range(m), k)]

    def is_level2(self, cls) -> bool:
        return not any(self.dominates(rival, cls)
                       for rival in self.all_classes() if rival != cls)

    def enumerate_level2(self) -> frozenset:
        return frozenset(cls for cls in self.all_classes() if self.is_level2(cls))

    def enumerate_improving(self) -> frozenset:
        sincere = top_k(self.engine.game.sincere_focal(), self.engine.e.k)
        return frozenset(cls for cls in self.all_classes()
                         if self.dominates(cls, sincere))
