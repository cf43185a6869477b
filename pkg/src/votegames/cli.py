"""Command-line front end.

Subcommands analyse election files, decide dominance and level-2 /
improving questions (picking the polynomial flow engine when the rule
allows it, the brute-force oracle otherwise), and compile exact-cover
instances into hard games.  Output is deterministic: identical inputs
and flags produce byte-identical text.

Exit codes: 0 success, 1 usage or validation failure, 2 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import exact_cover, oracle, plurality, twoapproval
from .core import canonical_ballot, scores, top_k, winner
from .errors import BudgetError, RuleMismatchError, StrategyValidationError
from .fileio import ElectionDocument, ParseError, parse_election_file, serialize_election
from .game import ManipulationGame, build_game
from .manipulation import (
    best_feasible,
    competitors,
    level1_strategies,
    manipulators,
    strongest_competitor,
)
from .oracle import OracleBudget

BUDGET_ENV = "VOTEGAMES_BUDGET"


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; reserve 2 for budgets
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(self._exit_1(message))

    def _exit_1(self, message):
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return 1


class _CliError(Exception):
    def __init__(self, message, code=1):
        super().__init__(message)
        self.code = code


def _load(path: str) -> ElectionDocument:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _CliError(str(exc))
    try:
        return parse_election_file(text)
    except ParseError as exc:
        raise _CliError(f"{path}: {exc}")


def _game_from_document(doc: ElectionDocument) -> ManipulationGame:
    e = doc.election
    focal = doc.voter_index(doc.focal) if doc.focal is not None else 0
    if not doc.has_game_section:
        return build_game(e, focal, "level1")
    manips = manipulators(e)
    explicit = {}
    for name, spec in doc.strategies.items():
        i = doc.voter_index(name)
        if isinstance(spec, str):
            if i == focal or i not in manips:
                continue
            report = level1_strategies(e, i)
            classes = report.minimal_strategies if spec == "minimal" else report.strategies
            explicit[i] = [
                canonical_ballot(cls, e.profile[i])
                for cls in sorted(classes, key=sorted)
            ]
        else:
            explicit[i] = list(spec)
    try:
        return build_game(e, focal, "explicit", explicit)
    except StrategyValidationError as exc:
        raise _CliError(str(exc))


def _parse_vote(doc: ElectionDocument, game: ManipulationGame, token: str):
    e = doc.election
    if token.startswith("top:"):
        literal = token[len("top:"):].strip()
        if not (literal.startswith("{") and literal.endswith("}")):
            raise _CliError(f"malformed class literal {token!r}; expected top:{{a,b}}")
        names = [t.strip() for t in literal[1:-1].split(",") if t.strip()]
        try:
            members = frozenset(e.candidates.index(n) for n in names)
        except ValueError:
            raise _CliError(f"unknown candidate name in class literal {token!r}")
        if len(members) != e.k:
            raise _CliError(f"class literal {token!r} must have exactly k={e.k} candidates")
        return canonical_ballot(members, game.sincere_focal())
    names = token.split()
    try:
        ids = tuple(e.candidates.index(n) for n in names)
    except ValueError:
        raise _CliError(f"unknown candidate name in ranking {token!r}")
    if len(set(ids)) != len(ids) or len(ids) != e.num_candidates:
        raise _CliError(f"ranking {token!r} must list every candidate exactly once")
    return ids


def _class_literal(e, cls) -> str:
    return "top:{" + ",".join(sorted(e.candidates[c] for c in cls)) + "}"


def _budget(args) -> OracleBudget:
    value = args.budget
    if value is None:
        value = int(os.environ.get(BUDGET_ENV, 10**6))
    if value <= 0:
        raise _CliError("budget must be positive")
    return OracleBudget(max_counterprofiles=value, max_ballot_classes=value)


def _select_engine(game: ManipulationGame, requested: str) -> str:
    k = game.election.k
    if requested == "oracle":
        return "oracle"
    if requested == "flow":
        if k == 1:
            return "plurality"
        if k == 2:
            twoapproval.validate_minimal(game)  # may raise
            return "twoapproval"
        raise RuleMismatchError(f"no flow engine for k={k}")
    if k == 1:
        return "plurality"
    if k == 2:
        try:
            twoapproval.validate_minimal(game)
            return "twoapproval"
        except StrategyValidationError:
            return "oracle"
    return "oracle"


def _emit(args, payload: dict, text_lines):
    if args.json:
        print(json.dumps(payload))
    else:
        for line in text_lines:
            print(line)


def _render_witness(doc: ElectionDocument, game: ManipulationGame, cp) -> dict:
    e = doc.election
    out = {}
    for i in sorted(cp):
        ballot = game.strategy_sets[i][cp[i]]
        out[doc.voter_names[i]] = [e.candidates[c] for c in ballot]
    return out


# -- subcommand implementations ---------------------------------------


def _cmd_analyze(args) -> int:
    doc = _load(args.file)
    e = doc.election
    w = winner(e)
    sc = scores(e)
    manips = sorted(manipulators(e))
    comp = competitors(e)
    strongest = strongest_competitor(e)
    best = {name: e.candidates[best_feasible(e, i)] for i, name in enumerate(doc.voter_names)}

    def names(ids):
        return [e.candidates[c] for c in sorted(ids, key=e._tb_rank.__getitem__)]

    payload = {
        "winner": e.candidates[w],
        "scores": {e.candidates[c]: sc[c] for c in range(e.num_candidates)},
        "manipulators": [doc.voter_names[i] for i in manips],
        "competitors": {
            "tied": names(comp.tied),
            "behind": names(comp.behind),
            "winner_score": comp.winner_score,
            "strongest": None if strongest is None else e.candidates[strongest],
        },
        "best_feasible": best,
    }
    lines = [
        f"winner: {payload['winner']}",
        "scores: " + " ".join(f"{e.candidates[c]}={sc[c]}" for c in range(e.num_candidates)),
        "manipulators: " + (" ".join(payload["manipulators"]) or "-"),
        "tied-competitors: " + (" ".join(payload["competitors"]["tied"]) or "-"),
        "behind-competitors: " + (" ".join(payload["competitors"]["behind"]) or "-"),
        "strongest-competitor: " + (payload["competitors"]["strongest"] or "-"),
        "best-feasible: " + " ".join(f"{n}={best[n]}" for n in doc.voter_names),
    ]
    _emit(args, payload, lines)
    return 0


def _cmd_level1(args) -> int:
    doc = _load(args.file)
    e = doc.election
    try:
        i = doc.voter_index(args.voter)
    except KeyError as exc:
        raise _CliError(str(exc))
    report = level1_strategies(e, i)
    feas = sorted(e.candidates[c] for c in report.feasible)
    strategies = sorted(_class_literal(e, cls) for cls in report.strategies)
    minimal = sorted(_class_literal(e, cls) for cls in report.minimal_strategies)
    payload = {
        "voter": args.voter,
        "feasible": feas,
        "best_feasible": e.candidates[report.best_feasible],
        "strategies": strategies,
        "minimal_strategies": minimal,
    }
    lines = [
        "feasible: " + " ".join(feas),
        f"best-feasible: {payload['best_feasible']}",
        "strategies: " + " ".join(strategies),
        "minimal-strategies: " + " ".join(minimal),
    ]
    _emit(args, payload, lines)
    return 0


def _dominates_impl(args, force_oracle: bool) -> int:
    doc = _load(args.file)
    game = _game_from_document(doc)
    u = _parse_vote(doc, game, args.u)
    v = _parse_vote(doc, game, args.v)
    engine = "oracle" if force_oracle else _select_engine(game, args.engine)
    budget = _budget(args)
    if engine == "oracle":
        verdict = oracle.weakly_dominates(game, u, v, budget)
        witness = (
            oracle.strictly_better_witness(game, u, v, budget)
            if verdict and args.witness
            else None
        )
    else:
        module = plurality if engine == "plurality" else twoapproval
        verdict = module.weakly_dominates(game, u, v)
        witness = (
            module.strictly_better_witness(game, u, v)
            if verdict and args.witness
            else None
        )
    payload = {"verdict": verdict}
    lines = ["true" if verdict else "false"]
    if witness is not None:
        rendered = _render_witness(doc, game, witness)
        payload["witness"] = rendered
        for name in sorted(rendered, key=doc.voter_names.index):
            lines.append(f"witness {name} = " + " ".join(rendered[name]))
    _emit(args, payload, lines)
    return 0


def _predicate_impl(args, kind: str, force_oracle: bool) -> int:
    doc = _load(args.file)
    e = doc.election
    game = _game_from_document(doc)
    engine = "oracle" if force_oracle else _select_engine(game, args.engine)
    budget = _budget(args)

    if args.vote is not None:
        vote = _parse_vote(doc, game, args.vote)
        if engine == "oracle":
            fn = oracle.is_level2 if kind == "level2" else oracle.is_improving
            verdict = fn(game, vote, budget)
        else:
            module = plurality if engine == "plurality" else twoapproval
            fn = module.is_level2 if kind == "level2" else module.is_improving
            verdict = fn(game, vote)
        _emit(args, {"verdict": verdict}, ["true" if verdict else "false"])
        return 0

    if engine == "oracle":
        fn = oracle.enumerate_level2 if kind == "level2" else oracle.enumerate_improving
        classes = fn(game, budget)
    else:
        module = plurality if engine == "plurality" else twoapproval
        fn = module.enumerate_level2 if kind == "level2" else module.enumerate_improving
        classes = fn(game)
    literals = sorted(_class_literal(e, cls) for cls in classes)
    _emit(args, {kind: literals}, literals)
    return 0


def _cmd_gen_x3c(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _CliError(str(exc))
    try:
        raw = exact_cover.parse_instance(text)
        padded = exact_cover.pad_instance(raw)
        hard = exact_cover.game_from_instance(padded, args.k)
    except ValueError as exc:
        raise _CliError(str(exc))

    e = hard.game.election
    explicit = {
        hard.voter_names[i]: [ballot for ballot in sets[1:]]
        for i, sets in hard.game.strategy_sets.items()
    }
    doc = ElectionDocument(e, hard.voter_names, focal=hard.voter_names[0],
                           strategies=explicit)
    lines = [serialize_election(doc).rstrip("\n")]
    lines.append(f"# sincere = {_class_literal(e, top_k(hard.sincere, e.k))}")
    lines.append(f"# promote-both = {_class_literal(e, top_k(hard.promote_both, e.k))}")
    lines.append(f"# promote-target = {_class_literal(e, top_k(hard.promote_target, e.k))}")
    output = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(output)
    else:
        sys.stdout.write(output)
    return 0


def _add_common(parser, with_engine=True, with_witness=False):
    parser.add_argument("--json", action="store_true", help="emit a JSON object")
    parser.add_argument("--budget", type=int, default=None,
                        help=f"oracle budget (default {BUDGET_ENV} or 10^6)")
    if with_engine:
        parser.add_argument("--engine", choices=["auto", "flow", "oracle"],
                            default="auto", help="decision engine (default: auto)")
    if with_witness:
        parser.add_argument("--witness", action="store_true",
                            help="print a realising counter-profile for true verdicts")


def _build_parser() -> _Parser:
    parser = _Parser(prog="votegames",
                     description="Strategic-voting analysis under k-approval.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="winner, scores, manipulators, competitors")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("level1", help="a voter's feasible set and level-1 strategies")
    p.add_argument("file")
    p.add_argument("voter")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_level1)

    p = sub.add_parser("dominates", help="does ballot U weakly dominate ballot V?")
    p.add_argument("file")
    p.add_argument("u", metavar="U")
    p.add_argument("v", metavar="V")
    _add_common(p, with_witness=True)
    p.set_defaults(func=lambda a: _dominates_impl(a, force_oracle=False))

    p = sub.add_parser("level2", help="test a ballot or list all level-2 classes")
    p.add_argument("file")
    p.add_argument("vote", nargs="?", default=None)
    _add_common(p)
    p.set_defaults(func=lambda a: _predicate_impl(a, "level2", force_oracle=False))

    p = sub.add_parser("improving", help="test a ballot or list all improving classes")
    p.add_argument("file")
    p.add_argument("vote", nargs="?", default=None)
    _add_common(p)
    p.set_defaults(func=lambda a: _predicate_impl(a, "improving", force_oracle=False))

    p = sub.add_parser("oracle", help="force the brute-force engine")
    osub = p.add_subparsers(dest="oracle_command", required=True)

    q = osub.add_parser("dominates")
    q.add_argument("file")
    q.add_argument("u", metavar="U")
    q.add_argument("v", metavar="V")
    _add_common(q, with_engine=False, with_witness=True)
    q.set_defaults(func=lambda a: _dominates_impl(a, force_oracle=True))

    q = osub.add_parser("level2")
    q.add_argument("file")
    q.add_argument("vote", nargs="?", default=None)
    _add_common(q, with_engine=False)
    q.set_defaults(func=lambda a: _predicate_impl(a, "level2", force_oracle=True))

    q = osub.add_parser("improving")
    q.add_argument("file")
    q.add_argument("vote", nargs="?", default=None)
    _add_common(q, with_engine=False)
    q.set_defaults(func=lambda a: _predicate_impl(a, "improving", force_oracle=True))

    p = sub.add_parser("gen-x3c", help="compile an exact-cover instance into a game file")
    p.add_argument("file")
    p.add_argument("-k", type=int, default=4, help="approval count, k >= 4 (default 4)")
    p.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_gen_x3c)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"votegames: error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetError as exc:
        print(f"votegames: budget exceeded: {exc}", file=sys.stderr)
        return 2
    except (RuleMismatchError, StrategyValidationError, ValueError, KeyError) as exc:
        print(f"votegames: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
