"""Interpreted diagrammatic languages: vocabulary, grammar, types and the
symbol-to-type map.

Types are names with a fixed reading against a molecular graph:

``atom:<El>``        an atom of element El (independent continuant)
``bond:<k>``         a bond of order k (dependent continuant)
``heavy-bond:<k>``   a bond of order k between two non-hydrogen atoms
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Union

from ..chemgraph import DEFAULT_TABLE, MolecularGraph, ValenceTable

WIRE2D = "WIRE2D"
WIRE2D_HDEP = "WIRE2D_HDEP"
BALLSTICK3D = "BALLSTICK3D"
SPACEFILL3D = "SPACEFILL3D"
LANGUAGE_IDS = (WIRE2D, WIRE2D_HDEP, BALLSTICK3D, SPACEFILL3D)

Part = Union[int, tuple[int, int]]


class Kind(enum.Enum):
    IT = "IT"
    DT = "DT"


@dataclass(frozen=True)
class SymbolDef:
    name: str
    kind: Kind
    mapped_type: str
    geometry_arity: int = 0

    @property
    def element(self) -> str | None:
        prefix, _, rest = self.mapped_type.partition(":")
        return rest if prefix == "atom" else None

    @property
    def bond_order(self) -> int | None:
        prefix, _, rest = self.mapped_type.partition(":")
        return int(rest) if prefix in ("bond", "heavy-bond") else None


@dataclass(frozen=True)
class LanguageParams:
    overlap_factor: float = 1.1
    # reserved for a geometric stick/sphere incidence validator
    incidence_tolerance: float = 10.0


@dataclass(frozen=True)
class InterpretedLanguage:
    id: str
    vocabulary: Mapping[str, SymbolDef]
    grammar: tuple[str, ...]
    it_types: frozenset[str]
    dt_types: frozenset[str]
    params: LanguageParams = field(default_factory=LanguageParams)
    geometric: bool = False  # IT connection read from overlap instead of explicit links
    table: ValenceTable = DEFAULT_TABLE

    def __post_init__(self) -> None:
        if self.it_types & self.dt_types:
            raise ValueError("IT and DT types must be disjoint")
        image = {s.mapped_type for s in self.vocabulary.values()}
        if image != self.types:
            raise ValueError("type set must be exactly the image of the symbol map")
        for s in self.vocabulary.values():
            expected = self.it_types if s.kind is Kind.IT else self.dt_types
            if s.mapped_type not in expected:
                raise ValueError(f"{s.name} maps to {s.mapped_type}, not a {s.kind.value} type")

    @property
    def types(self) -> frozenset[str]:
        return self.it_types | self.dt_types

    def phi(self, symbol: str) -> str:
        return self.vocabulary[symbol].mapped_type

    def kind(self, symbol: str) -> Kind:
        return self.vocabulary[symbol].kind

    def kept_elements(self) -> set[str]:
        return {t.split(":", 1)[1] for t in self.it_types}

    def bond_type(self, x: MolecularGraph, key: tuple[int, int]) -> str | None:
        """The DT type in this language that bond ``key`` of ``x`` instantiates."""
        for t in sorted(self.dt_types):
            if instance_of(x, key, t):
                return t
        return None

    def atom_type(self, x: MolecularGraph, atom: int) -> str | None:
        t = f"atom:{x.element(atom)}"
        return t if t in self.it_types else None

    def __repr__(self) -> str:
        return f"<InterpretedLanguage {self.id} |V|={len(self.vocabulary)} |T|={len(self.types)}>"


def instance_of(x: MolecularGraph, part: Part, type_name: str) -> bool:
    prefix, _, arg = type_name.partition(":")
    if prefix == "atom":
        return isinstance(part, int) and part in x and x.element(part) == arg
    if not isinstance(part, tuple):
        return False
    order = x.bond_order(*part)
    if order is None or str(order) != arg:
        return False
    if prefix == "bond":
        return True
    if prefix == "heavy-bond":
        return x.element(part[0]) != "H" and x.element(part[1]) != "H"
    raise ValueError(f"unknown type {type_name!r}")


def bearers(x: MolecularGraph, part: Part) -> frozenset[int]:
    """The independent parts a dependent part inheres in (a bond's two atoms)."""
    if isinstance(part, tuple):
        return frozenset(part)
    return frozenset()


def parts_of(x: MolecularGraph) -> list[Part]:
    return [*x.atoms, *x.bond_orders]


def _build(lang_id: str, table: ValenceTable) -> InterpretedLanguage:
    elements = list(table)
    vocab: dict[str, SymbolDef] = {}
    it_prefix, dt_prefix, arity, bond_prefix = {
        WIRE2D: ("vertex", "line", 2, "bond"),
        WIRE2D_HDEP: ("vertex", "line", 2, "heavy-bond"),
        BALLSTICK3D: ("sphere", "stick", 3, "bond"),
        SPACEFILL3D: ("ball", None, 3, None),
    }[lang_id]
    if lang_id == WIRE2D_HDEP:
        elements = [e for e in elements if e != "H"]
    for el in elements:
        vocab[f"{it_prefix}:{el}"] = SymbolDef(f"{it_prefix}:{el}", Kind.IT, f"atom:{el}", arity)
    if dt_prefix:
        for k in (1, 2, 3):
            vocab[f"{dt_prefix}:{k}"] = SymbolDef(f"{dt_prefix}:{k}", Kind.DT, f"{bond_prefix}:{k}", 0)
    grammar = {
        WIRE2D: ("r1", "r2", "r3", "r4", "r5"),
        WIRE2D_HDEP: ("r1", "r2", "r3", "r4", "r5", "r7"),
        BALLSTICK3D: ("r1", "r2", "r3", "r4", "r5"),
        SPACEFILL3D: ("r4", "r5", "r6"),
    }[lang_id]
    it_types = frozenset(s.mapped_type for s in vocab.values() if s.kind is Kind.IT)
    dt_types = frozenset(s.mapped_type for s in vocab.values() if s.kind is Kind.DT)
    return InterpretedLanguage(
        lang_id, vocab, grammar, it_types, dt_types, geometric=lang_id == SPACEFILL3D, table=table
    )


def builtin_language(lang_id: str, table: ValenceTable = DEFAULT_TABLE) -> InterpretedLanguage:
    if lang_id not in LANGUAGE_IDS:
        raise ValueError(f"unknown language id {lang_id!r}; expected one of {', '.join(LANGUAGE_IDS)}")
    return _build(lang_id, table)
