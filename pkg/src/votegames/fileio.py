"""Election file parsing and serialisation.

The format is line-oriented UTF-8 text; ``#`` starts a comment.

    candidates = a b c
    tiebreak   = a b c
    k = 2
    voter v1 = b c a
    voter v2 = b c a
    # optional game section:
    focal = v1
    strategies v2 = b a c      # explicit ballot, repeatable per voter
    strategies v3 = minimal    # or: level1

Candidate and voter names are whitespace-free tokens; rankings list all
candidates, most preferred first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from .core import Election

__all__ = ["ParseError", "ElectionDocument", "parse_election_file", "serialize_election"]


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class ElectionDocument:
    """Semantic content of an election file."""

    election: Election
    voter_names: tuple  # tuple[str, ...]
    focal: Optional[str] = None
    # voter name -> list of explicit ballots, or the keyword "minimal"/"level1"
    strategies: Dict[str, Union[str, List[tuple]]] = field(default_factory=dict)

    @property
    def has_game_section(self) -> bool:
        return self.focal is not None or bool(self.strategies)

    def voter_index(self, name: str) -> int:
        try:
            return self.voter_names.index(name)
        except ValueError:
            raise KeyError(f"unknown voter name {name!r}") from None


def parse_election_file(text: str) -> ElectionDocument:
    candidates: Optional[List[str]] = None
    tiebreak_names: Optional[List[str]] = None
    k: Optional[int] = None
    voters: List[str] = []
    ballots: List[tuple] = []
    focal: Optional[str] = None
    strategies: Dict[str, Union[str, List[tuple]]] = {}
    lineno_of = {}

    def cand_index(name: str, lineno: int) -> int:
        if candidates is None:
            raise ParseError(lineno, "candidates must be declared first")
        try:
            return candidates.index(name)
        except ValueError:
            raise ParseError(lineno, f"unknown candidate name {name!r}") from None

    def parse_ranking(tokens: List[str], lineno: int) -> tuple:
        ids = tuple(cand_index(t, lineno) for t in tokens)
        if len(set(ids)) != len(ids) or len(ids) != len(candidates):
            raise ParseError(lineno, "ranking must list every candidate exactly once")
        return ids

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(lineno, "expected '<key> = <value>'")
        key, _, value = line.partition("=")
        key_parts = key.split()
        values = value.split()
        if not key_parts:
            raise ParseError(lineno, "missing key before '='")

        if key_parts == ["candidates"]:
            if candidates is not None:
                raise ParseError(lineno, "duplicate candidates line")
            if len(set(values)) != len(values) or not values:
                raise ParseError(lineno, "candidate names must be unique and non-empty")
            candidates = values
        elif key_parts == ["tiebreak"]:
            if tiebreak_names is not None:
                raise ParseError(lineno, "duplicate tiebreak line")
            tiebreak_names = values
            lineno_of["tiebreak"] = lineno
        elif key_parts == ["k"]:
            if len(values) != 1:
                raise ParseError(lineno, "k takes a single integer")
            try:
                k = int(values[0])
            except ValueError:
                raise ParseError(lineno, "k must be an integer") from None
        elif key_parts[0] == "voter":
            if len(key_parts) != 2:
                raise ParseError(lineno, "expected 'voter <name> = <ranking>'")
            name = key_parts[1]
            if name in voters:
                raise ParseError(lineno, f"duplicate voter name {name!r}")
            voters.append(name)
            ballots.append(parse_ranking(values, lineno))
        elif key_parts == ["focal"]:
            if len(values) != 1:
                raise ParseError(lineno, "focal takes a single voter name")
            focal = values[0]
            lineno_of["focal"] = lineno
        elif key_parts[0] == "strategies":
            if len(key_parts) != 2:
                raise ParseError(lineno, "expected 'strategies <name> = <ranking>|minimal|level1'")
            name = key_parts[1]
            if values in (["minimal"], ["level1"]):
                if name in strategies:
                    raise ParseError(lineno, f"conflicting strategies for voter {name!r}")
                strategies[name] = values[0]
            else:
                current = strategies.setdefault(name, [])
                if isinstance(current, str):
                    raise ParseError(lineno, f"conflicting strategies for voter {name!r}")
                current.append(parse_ranking(values, lineno))
            lineno_of.setdefault(("strategies", name), lineno)
        else:
            raise ParseError(lineno, f"unknown directive {key_parts[0]!r}")

    if candidates is None:
        raise ParseError(1, "missing candidates line")
    if k is None:
        raise ParseError(1, "missing k line")
    if not voters:
        raise ParseError(1, "no voters declared")
    if tiebreak_names is None:
        tiebreak = tuple(range(len(candidates)))
    else:
        lineno = lineno_of["tiebreak"]
        tiebreak = tuple(cand_index(t, lineno) for t in tiebreak_names)
        if len(set(tiebreak)) != len(candidates) or len(tiebreak) != len(candidates):
            raise ParseError(lineno, "tiebreak must list every candidate exactly once")

    try:
        e = Election(tuple(candidates), k, tiebreak, tuple(ballots))
    except ValueError as exc:
        raise ParseError(1, str(exc)) from None

    if focal is not None and focal not in voters:
        raise ParseError(lineno_of["focal"], f"unknown voter name {focal!r}")
    for name in strategies:
        if name not in voters:
            raise ParseError(lineno_of[("strategies", name)], f"unknown voter name {name!r}")

    return ElectionDocument(e, tuple(voters), focal, strategies)


def serialize_election(doc: ElectionDocument) -> str:
    """Render a document back to the file format; parsing the result
    yields an equal document."""
    e = doc.election
    lines = [
        "candidates = " + " ".join(e.candidates),
        "tiebreak = " + " ".join(e.candidates[c] for c in e.tiebreak),
        f"k = {e.k}",
    ]
    for name, ballot in zip(doc.voter_names, e.profile):
        lines.append(f"voter {name} = " + " ".join(e.candidates[c] for c in ballot))
    if doc.focal is not None:
        lines.append(f"focal = {doc.focal}")
    for name in sorted(doc.strategies, key=doc.voter_names.index):
        spec = doc.strategies[name]
        if isinstance(spec, str):
            lines.append(f"strategies {name} = {spec}")
        else:
            for ballot in spec:
                lines.append(
                    f"strategies {name} = " + " ".join(e.candidates[c] for c in ballot)
                )
    return "\n".join(lines) + "\n"
