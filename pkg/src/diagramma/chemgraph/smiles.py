"""Ingestion of a small SMILES subset.

Supported: organic-subset atoms ``C N O S P F Cl Br I H`` written without
brackets, branches, ring-closure digits (``1``-``9`` and ``%nn``) and the bond
symbols ``-``, ``=``, ``#``. No aromatic lowercase atoms, charges, isotopes,
stereo marks or dot-disconnected components.
"""

from __future__ import annotations

from ..errors import ParseError
from .elements import DEFAULT_TABLE, ValenceTable
from .graph import MolecularGraph

SUBSET_ELEMENTS = ("C", "N", "O", "S", "P", "F", "Cl", "Br", "I", "H")
BOND_SYMBOLS = {"-": 1, "=": 2, "#": 3}


class SmilesError(ParseError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


def _read_atom(s: str, i: int) -> tuple[str, int]:
    two = s[i : i + 2]
    if two in ("Cl", "Br"):
        return two, i + 2
    if s[i] in SUBSET_ELEMENTS:
        return s[i], i + 1
    if s[i].isalpha():
        raise SmilesError(f"unknown element {s[i]!r}", i)
    raise SmilesError(f"unexpected character {s[i]!r}", i)


def parse_smiles_subset(s: str, table: ValenceTable = DEFAULT_TABLE) -> MolecularGraph:
    s = s.strip()
    if not s:
        raise SmilesError("empty SMILES string", 0)
    for el in SUBSET_ELEMENTS:
        if el not in table:
            raise SmilesError(f"valence table lacks subset element {el}", 0)

    elements: list[str] = []
    bonds: dict[tuple[int, int], int] = {}
    open_rings: dict[str, tuple[int, int | None, int]] = {}
    branch_stack: list[int] = []
    prev: int | None = None
    pending: int | None = None  # explicit bond symbol waiting for its atom
    pending_pos = 0
    i = 0

    def add_bond(a: int, b: int, order: int, pos: int) -> None:
        if a == b:
            raise SmilesError("ring closure bonds an atom to itself", pos)
        key = (min(a, b), max(a, b))
        if key in bonds:
            raise SmilesError(f"duplicate bond between atoms {a + 1} and {b + 1}", pos)
        bonds[key] = order

    while i < len(s):
        c = s[i]
        if c in BOND_SYMBOLS:
            if pending is not None:
                raise SmilesError("two consecutive bond symbols", i)
            if prev is None:
                raise SmilesError("bond symbol without a preceding atom", i)
            pending, pending_pos = BOND_SYMBOLS[c], i
            i += 1
        elif c == "(":
            if prev is None:
                raise SmilesError("branch without a preceding atom", i)
            if pending is not None:
                raise SmilesError("bond symbol before '('", i)
            branch_stack.append(prev)
            i += 1
        elif c == ")":
            if not branch_stack:
                raise SmilesError("unbalanced parenthesis: unexpected ')'", i)
            if pending is not None:
                raise SmilesError("dangling bond symbol before ')'", pending_pos)
            if s[i - 1] == "(":
                raise SmilesError("empty branch", i)
            prev = branch_stack.pop()
            i += 1
        elif c.isdigit() or c == "%":
            if prev is None:
                raise SmilesError("ring-closure digit without a preceding atom", i)
            if c == "%":
                label = s[i + 1 : i + 3]
                if len(label) != 2 or not label.isdigit():
                    raise SmilesError("'%' must be followed by two digits", i)
                width = 3
            else:
                label, width = c, 1
            if label in open_rings:
                other, order, _ = open_rings.pop(label)
                if order is not None and pending is not None and order != pending:
                    raise SmilesError(f"conflicting bond symbols on ring closure {label}", i)
                add_bond(other, prev, pending or order or 1, i)
            else:
                open_rings[label] = (prev, pending, i)
            pending = None
            i += width
        elif c == "[":
            raise SmilesError("bracket atoms are not part of the supported subset", i)
        elif c == ".":
            raise SmilesError("disconnected components are not supported", i)
        else:
            el, j = _read_atom(s, i)
            idx = len(elements)
            elements.append(el)
            if prev is not None:
                add_bond(prev, idx, pending or 1, i)
            pending = None
            prev = idx
            i = j
    if pending is not None:
        raise SmilesError("dangling bond symbol at end of input", pending_pos)
    if branch_stack:
        raise SmilesError("unbalanced parenthesis: missing ')'", len(s))
    if open_rings:
        label, (_, _, pos) = next(iter(open_rings.items()))
        raise SmilesError(f"unmatched ring-closure digit {label}", pos)

    explicit = [0] * len(elements)
    for (a, b), order in bonds.items():
        explicit[a] += order
        explicit[b] += order

    atoms = {k + 1: el for k, el in enumerate(elements)}
    bond_list = [(a + 1, b + 1, o) for (a, b), o in bonds.items()]
    next_id = len(elements) + 1
    for k, el in enumerate(elements):
        info = table[el]
        if explicit[k] > info.max_valence:
            raise SmilesError(
                f"atom {k + 1} ({el}) has explicit valence {explicit[k]} > max {info.max_valence}", 0
            )
        if el == "H":
            continue
        target = info.smallest_allowed_at_least(explicit[k])
        if target is None:  # custom tables may leave no reachable valence
            target = explicit[k]
        for _ in range(target - explicit[k]):
            atoms[next_id] = "H"
            bond_list.append((k + 1, next_id, 1))
            next_id += 1
    return MolecularGraph(atoms, bond_list)
