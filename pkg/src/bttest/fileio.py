"""Text file formats and machine-readable reports.

Tournament files are a human-diffable edge list::

    bt-tournament v1
    n=3
    labels=alice,bob,carol      (optional)
    0 1 0.9
    1 2 0.9
    2 0 0.9

One body record per unordered pair, ``x y p`` meaning x beats y with
probability p (the record direction is the stored edge orientation).
Probabilities are written with Python's shortest round-tripping decimal
representation, so ``parse(serialize(t))`` reproduces ``t`` bit-exactly.
Vertices in the body may be integer ids or, when a ``labels=`` line is
present, the label strings themselves.

Tree files are the same with the ``bt-tree v1`` tag and n-1 records.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import IO

from ._version import __version__
from .errors import ParseError
from .repair import TreeWeights
from .tester import RNG_ALGORITHM
from .tournament import ETA, StochasticTournament, new_tournament

TOURNAMENT_TAG = "bt-tournament v1"
TREE_TAG = "bt-tree v1"


@dataclass(frozen=True)
class TournamentDocument:
    """A parsed tournament plus its optional vertex labels."""

    tournament: StochasticTournament
    labels: tuple[str, ...] | None


def _read_lines(source: str | IO[str]) -> list[str]:
    text = source if isinstance(source, str) else source.read()
    return text.splitlines()


def _parse_header(lines: list[str], tag: str):
    """Returns (n, labels, body records) after validating the header."""
    n = None
    labels = None
    body = []
    saw_tag = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not saw_tag:
            if line != tag:
                raise ParseError(lineno, f"expected header {tag!r}, got {line!r}")
            saw_tag = True
            continue
        if line.startswith("n="):
            if n is not None:
                raise ParseError(lineno, "duplicate n= line")
            try:
                n = int(line[2:])
            except ValueError:
                raise ParseError(lineno, f"bad vertex count {line[2:]!r}") from None
            continue
        if line.startswith("labels="):
            if labels is not None:
                raise ParseError(lineno, "duplicate labels= line")
            labels = tuple(s.strip() for s in line[len("labels="):].split(","))
            if any(not s or " " in s or "\t" in s for s in labels):
                raise ParseError(lineno, "labels must be nonempty, no whitespace")
            if len(set(labels)) != len(labels):
                raise ParseError(lineno, "labels are not unique")
            continue
        if n is None:
            raise ParseError(lineno, "body record before n= line")
        body.append((lineno, line.split()))
    if n is None:
        raise ParseError(len(lines) or 1, "missing n= line")
    if labels is not None and len(labels) != n:
        raise ParseError(1, f"{len(labels)} labels for n={n} vertices")
    return n, labels, body


def _vertex(token: str, labels, lineno: int) -> int:
    # integer ids always work; labels resolve anything non-numeric
    try:
        return int(token)
    except ValueError:
        pass
    if labels is not None and token in labels:
        return labels.index(token)
    raise ParseError(lineno, f"unknown vertex {token!r}")


def parse_document(source: str | IO[str], eta: float = ETA) -> TournamentDocument:
    """Parse a tournament file from a string or text stream.

    Malformed input raises :class:`ParseError` with the offending line
    number; structural problems (duplicate or missing pairs, out-of-range
    probabilities) surface as their dedicated error types.
    """
    n, labels, body = _parse_header(_read_lines(source), TOURNAMENT_TAG)
    entries = []
    for lineno, tokens in body:
        if len(tokens) != 3:
            raise ParseError(lineno, f"expected 'x y p', got {' '.join(tokens)!r}")
        x = _vertex(tokens[0], labels, lineno)
        y = _vertex(tokens[1], labels, lineno)
        try:
            p = float(tokens[2])
        except ValueError:
            raise ParseError(lineno, f"bad probability {tokens[2]!r}") from None
        entries.append((x, y, p))
    return TournamentDocument(new_tournament(n, entries, eta), labels)


def parse_tournament(source: str | IO[str], eta: float = ETA) -> StochasticTournament:
    """Like :func:`parse_document` but drops the labels."""
    return parse_document(source, eta).tournament


def serialize_tournament(
    t: StochasticTournament, labels: tuple[str, ...] | None = None
) -> str:
    """Render a tournament file; inverse of :func:`parse_tournament`."""
    lines = [TOURNAMENT_TAG, f"n={t.n}"]
    if labels is not None:
        if len(labels) != t.n:
            raise ValueError(f"{len(labels)} labels for n={t.n} vertices")
        if any(not s or "," in s or " " in s or "\t" in s for s in labels):
            raise ValueError("labels must be nonempty, without commas or whitespace")
        lines.append("labels=" + ",".join(labels))
    for x, y, w in t.edges():
        lines.append(f"{x} {y} {w!r}")
    return "\n".join(lines) + "\n"


def parse_tree(source: str | IO[str]) -> TreeWeights:
    """Parse a spanning-tree file (``bt-tree v1``)."""
    n, labels, body = _parse_header(_read_lines(source), TREE_TAG)
    edges = []
    for lineno, tokens in body:
        if len(tokens) != 3:
            raise ParseError(lineno, f"expected 'x y w', got {' '.join(tokens)!r}")
        u = _vertex(tokens[0], labels, lineno)
        v = _vertex(tokens[1], labels, lineno)
        try:
            w = float(tokens[2])
        except ValueError:
            raise ParseError(lineno, f"bad weight {tokens[2]!r}") from None
        edges.append((u, v, w))
    return TreeWeights(n, tuple(edges))


def serialize_tree(tw: TreeWeights) -> str:
    lines = [TREE_TAG, f"n={tw.n}"]
    for u, v, w in tw.edges:
        lines.append(f"{u} {v} {w!r}")
    return "\n".join(lines) + "\n"


def load_tournament(path: str, eta: float = ETA) -> TournamentDocument:
    with open(path, "r", encoding="utf-8") as f:
        return parse_document(f, eta)


def load_tree(path: str) -> TreeWeights:
    with open(path, "r", encoding="utf-8") as f:
        return parse_tree(f)


def make_report(command: str, config: dict, result: dict, seed=None) -> dict:
    """Assemble the standard report envelope.

    Reruns with identical inputs, flags and seed produce identical reports
    except for the ``timestamp`` field; key order is fixed.
    """
    report = {
        "tool": "bttest",
        "version": __version__,
        "command": command,
        "seed": seed,
        "rng": RNG_ALGORITHM if seed is not None else None,
        "config": config,
        "result": result,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2)
