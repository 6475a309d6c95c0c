"""Diagram token graphs and the DGF v1 text format.

    dgf 1
    lang BALLSTICK3D
    name hydrogen
    token 1 sphere:H x=0 y=0 z=0
    token 2 sphere:H x=74 y=0 z=0
    token 3 stick:1
    connect 1 3
    connect 2 3
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from ..chemgraph import DEFAULT_TABLE, ValenceTable
from ..errors import ParseError, StructureError
from .language import LANGUAGE_IDS, builtin_language

Point = tuple[float, ...]


@dataclass(frozen=True)
class Token:
    id: int
    symbol: str
    position: Point | None = None
    label: str | None = None


@dataclass(frozen=True)
class Diagram:
    language: str
    tokens: Mapping[int, Token] = field(default_factory=dict)
    connections: frozenset[tuple[int, int]] = frozenset()
    name: str | None = None

    def __post_init__(self) -> None:
        tokens = dict(sorted(self.tokens.items()))
        for tid, tok in tokens.items():
            if tok.id != tid:
                raise StructureError(f"token key {tid} does not match token id {tok.id}")
        conns = set()
        for a, b in self.connections:
            if a == b:
                raise StructureError(f"token {a} connected to itself")
            for end in (a, b):
                if end not in tokens:
                    raise StructureError(f"connection {a}-{b} references missing token {end}")
            conns.add((min(a, b), max(a, b)))
        object.__setattr__(self, "tokens", tokens)
        object.__setattr__(self, "connections", frozenset(conns))
        object.__setattr__(self, "name", self.name or None)

    def neighbors(self, token: int) -> list[int]:
        out = [b if a == token else a for a, b in self.connections if token in (a, b)]
        return sorted(out)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {t: [] for t in self.tokens}
        for a, b in sorted(self.connections):
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def replace(self, **changes) -> "Diagram":
        data = dict(language=self.language, tokens=self.tokens, connections=self.connections, name=self.name)
        data.update(changes)
        return Diagram(**data)

    def relabel(self, mapping: Mapping[int, int]) -> "Diagram":
        tokens = {mapping[t]: Token(mapping[t], tok.symbol, tok.position, tok.label) for t, tok in self.tokens.items()}
        conns = frozenset((mapping[a], mapping[b]) for a, b in self.connections)
        return self.replace(tokens=tokens, connections=conns)

    def __len__(self) -> int:
        return len(self.tokens)


_ID = re.compile(r"[1-9][0-9]*\Z")
_KEYS = ("x", "y", "z")


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def _parse_id(tok: str, lineno: int) -> int:
    if not _ID.match(tok):
        raise ParseError(f"invalid token id {tok!r}", lineno)
    return int(tok)


def _parse_token(fields: list[str], lineno: int) -> Token:
    if len(fields) < 2:
        raise ParseError("expected 'token <id> <symbol> [x=.. y=.. [z=..]]'", lineno)
    tid = _parse_id(fields[0], lineno)
    coords: dict[str, float] = {}
    label = None
    for item in fields[2:]:
        key, eq, value = item.partition("=")
        if not eq or not value:
            raise ParseError(f"malformed attribute {item!r}", lineno)
        if key in _KEYS:
            if key in coords:
                raise ParseError(f"duplicate coordinate {key}", lineno)
            try:
                coords[key] = float(value)
            except ValueError:
                raise ParseError(f"bad number {value!r} for {key}", lineno) from None
            if coords[key] != coords[key] or coords[key] in (float("inf"), float("-inf")):
                raise ParseError(f"non-finite coordinate {key}", lineno)
        elif key == "label":
            label = value
        else:
            raise ParseError(f"unknown attribute {key!r}", lineno)
    position = None
    if coords:
        dims = [k for k in _KEYS if k in coords]
        if dims not in (["x", "y"], ["x", "y", "z"]):
            raise ParseError("coordinates must be x,y or x,y,z", lineno)
        position = tuple(coords[k] for k in dims)
    return Token(tid, fields[1], position, label)


def parse_dgf(text: str, table: ValenceTable = DEFAULT_TABLE) -> Diagram:
    lang_id = None
    vocabulary = None
    name = None
    tokens: dict[int, Token] = {}
    connections: list[tuple[int, int, int]] = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if not seen_header:
            if line.split() != ["dgf", "1"]:
                raise ParseError(f"expected header 'dgf 1', got {line!r}", lineno)
            seen_header = True
        elif keyword == "lang":
            if lang_id is not None:
                raise ParseError("duplicate lang line", lineno)
            if rest not in LANGUAGE_IDS:
                raise ParseError(f"unknown language {rest!r}", lineno)
            lang_id = rest
            vocabulary = builtin_language(lang_id, table).vocabulary
        elif keyword == "name":
            if name is not None:
                raise ParseError("duplicate name line", lineno)
            if not rest:
                raise ParseError("empty name", lineno)
            name = rest
        elif keyword == "token":
            if vocabulary is None:
                raise ParseError("token before lang line", lineno)
            tok = _parse_token(rest.split(), lineno)
            if tok.symbol not in vocabulary:
                raise ParseError(f"unknown symbol {tok.symbol!r} for language {lang_id}", lineno)
            if tok.id in tokens:
                raise StructureError(f"duplicate token id {tok.id}", lineno)
            tokens[tok.id] = tok
        elif keyword == "connect":
            fields = rest.split()
            if len(fields) != 2:
                raise ParseError("expected 'connect <id> <id>'", lineno)
            connections.append((lineno, _parse_id(fields[0], lineno), _parse_id(fields[1], lineno)))
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno)
    if not seen_header:
        raise ParseError("missing 'dgf 1' header", 1)
    if lang_id is None:
        raise ParseError("missing lang line", None)
    pairs: set[tuple[int, int]] = set()
    for lineno, a, b in connections:
        if a == b:
            raise StructureError(f"token {a} connected to itself", lineno)
        for end in (a, b):
            if end not in tokens:
                raise StructureError(f"connection to missing token {end}", lineno)
        key = (min(a, b), max(a, b))
        if key in pairs:
            raise StructureError(f"duplicate connection {key[0]}-{key[1]}", lineno)
        pairs.add(key)
    return Diagram(lang_id, tokens, frozenset(pairs), name)


def fmt_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def write_dgf(d: Diagram) -> str:
    lines = ["dgf 1", f"lang {d.language}"]
    if d.name:
        lines.append(f"name {d.name}")
    for tok in d.tokens.values():
        parts = [f"token {tok.id} {tok.symbol}"]
        if tok.position is not None:
            parts.extend(f"{k}={fmt_number(v)}" for k, v in zip(_KEYS, tok.position))
        if tok.label:
            parts.append(f"label={tok.label}")
        lines.append(" ".join(parts))
    lines.extend(f"connect {a} {b}" for a, b in sorted(d.connections))
    return "\n".join(lines) + "\n"
