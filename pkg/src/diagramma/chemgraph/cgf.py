"""CGF v1: a line-based text format for chemical graphs.

    cgf 1
    name water
    atom 1 O
    atom 2 H
    atom 3 H
    bond 1 2 1
    bond 1 3 1

``intent <text>`` is an optional free-text annotation (e.g. "planned"). It is
carried through round trips but never read by any classifier.
"""

from __future__ import annotations

import re

from ..errors import ParseError, StructureError
from .elements import DEFAULT_TABLE, ValenceTable
from .graph import MolecularGraph

_ID = re.compile(r"[1-9][0-9]*\Z")


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def _parse_id(tok: str, lineno: int) -> int:
    if not _ID.match(tok):
        raise ParseError(f"invalid id {tok!r} (ids are positive integers)", lineno)
    return int(tok)


def parse_cgf(text: str, table: ValenceTable = DEFAULT_TABLE) -> MolecularGraph:
    atoms: dict[int, str] = {}
    bonds: dict[tuple[int, int], tuple[int, int, int]] = {}
    bond_lines: list[tuple[int, int, int, int]] = []
    name = intent = None
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if not seen_header:
            if line.split() != ["cgf", "1"]:
                raise ParseError(f"expected header 'cgf 1', got {line!r}", lineno)
            seen_header = True
            continue
        if keyword == "name":
            if name is not None:
                raise ParseError("duplicate name line", lineno)
            if not rest:
                raise ParseError("empty name", lineno)
            name = rest
        elif keyword == "intent":
            if intent is not None:
                raise ParseError("duplicate intent line", lineno)
            intent = rest
        elif keyword == "atom":
            fields = rest.split()
            if len(fields) != 2:
                raise ParseError("expected 'atom <id> <element>'", lineno)
            atom_id = _parse_id(fields[0], lineno)
            if atom_id in atoms:
                raise StructureError(f"duplicate atom id {atom_id}", lineno)
            if fields[1] not in table:
                raise ParseError(f"unknown element {fields[1]!r}", lineno)
            atoms[atom_id] = fields[1]
        elif keyword == "bond":
            fields = rest.split()
            if len(fields) != 3:
                raise ParseError("expected 'bond <id> <id> <1|2|3>'", lineno)
            a, b = _parse_id(fields[0], lineno), _parse_id(fields[1], lineno)
            if fields[2] not in ("1", "2", "3"):
                raise ParseError(f"invalid bond order {fields[2]!r}", lineno)
            bond_lines.append((lineno, a, b, int(fields[2])))
        elif keyword == "cgf":
            raise ParseError("unexpected second header", lineno)
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno)
    if not seen_header:
        raise ParseError("missing 'cgf 1' header", 1)
    # bonds may precede the atoms they reference, so check after the scan
    for lineno, a, b, order in bond_lines:
        if a == b:
            raise StructureError(f"self-bond on atom {a}", lineno, grade="Impossible")
        for end in (a, b):
            if end not in atoms:
                raise StructureError(f"bond references missing atom {end}", lineno)
        key = (min(a, b), max(a, b))
        if key in bonds:
            raise StructureError(f"duplicate bond {key[0]}-{key[1]}", lineno)
        bonds[key] = (a, b, order)
    return MolecularGraph(atoms, bonds.values(), name=name, intent=intent)


def write_cgf(g: MolecularGraph) -> str:
    lines = ["cgf 1"]
    if g.name:
        lines.append(f"name {g.name}")
    if g.intent:
        lines.append(f"intent {g.intent}")
    lines.extend(f"atom {a} {el}" for a, el in g.atoms.items())
    lines.extend(f"bond {a} {b} {o}" for (a, b), o in g.bond_orders.items())
    return "\n".join(lines) + "\n"


def split_cgf_blocks(text: str) -> list[tuple[int, str]]:
    """Split concatenated CGF documents at each header line.

    Returns ``(first_line_number, block_text)`` pairs.
    """
    blocks: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if _strip(raw).split() == ["cgf", "1"]:
            blocks.append((lineno, [raw]))
            continue
        if not blocks:
            if _strip(raw):
                raise ParseError("content before first 'cgf 1' header", lineno)
            continue
        blocks[-1][1].append(raw)
    return [(start, "\n".join(lines)) for start, lines in blocks]
