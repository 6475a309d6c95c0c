"""Registry of known molecules and the four-way feasibility taxonomy."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ParseError
from .canon import CanonicalCode, canonical_form
from .cgf import parse_cgf, split_cgf_blocks, write_cgf
from .elements import DEFAULT_TABLE, ValenceTable
from .graph import MolecularGraph, valence


class Feasibility(enum.Enum):
    KNOWN = "Known"
    HYPOTHETICAL = "Hypothetical"
    INFEASIBLE = "Infeasible"
    IMPOSSIBLE = "Impossible"


@dataclass(frozen=True)
class FeasibilityClass:
    label: Feasibility
    detail: str

    def __str__(self) -> str:
        return f"{self.label.value}: {self.detail}"


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    graph: MolecularGraph
    code: CanonicalCode


@dataclass
class Registry:
    """Molecules known to exist, keyed by canonical code.

    Classification as Known is always relative to a registry passed in by the
    caller; nothing about existence is stored on a graph or diagram.
    """

    entries: list[RegistryEntry] = field(default_factory=list)

    def __post_init__(self) -> None:
        entries, self.entries = self.entries, []
        self._by_code: dict[CanonicalCode, RegistryEntry] = {}
        self._by_name: dict[str, RegistryEntry] = {}
        for e in entries:
            self.add(e.name, e.graph)

    def add(self, name: str, graph: MolecularGraph) -> RegistryEntry:
        if name in self._by_name:
            raise ValueError(f"duplicate registry name {name!r}")
        code = canonical_form(graph)
        if code in self._by_code:
            raise ValueError(f"{name!r} is isomorphic to registered {self._by_code[code].name!r}")
        entry = RegistryEntry(name, graph.with_name(name), code)
        self.entries.append(entry)
        self._by_code[code] = entry
        self._by_name[name] = entry
        return entry

    def lookup_code(self, code: CanonicalCode) -> RegistryEntry | None:
        return self._by_code.get(code)

    def __getitem__(self, name: str) -> RegistryEntry:
        return self._by_name[name]

    def __contains__(self, name: object) -> bool:
        return name in self._by_name

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @classmethod
    def parse(cls, text: str, table: ValenceTable = DEFAULT_TABLE) -> "Registry":
        reg = cls()
        for start, block in split_cgf_blocks(text):
            try:
                g = parse_cgf(block, table)
            except ParseError as exc:
                line = None if exc.lineno is None else exc.lineno + start - 1
                raise ParseError(exc.message, line) from None
            if not g.name:
                raise ParseError("registry entries need a 'name' line", start)
            try:
                reg.add(g.name, g)
            except ValueError as exc:
                raise ParseError(str(exc), start) from None
        return reg

    @classmethod
    def load(cls, path: str | Path, table: ValenceTable = DEFAULT_TABLE) -> "Registry":
        return cls.parse(Path(path).read_text(encoding="utf-8"), table)

    def dump(self) -> str:
        return "\n".join(write_cgf(e.graph) for e in self.entries)


def registry_lookup(g: MolecularGraph, registry: Registry) -> str | None:
    entry = registry.lookup_code(canonical_form(g))
    return entry.name if entry else None


def classify_feasibility(
    g: MolecularGraph, registry: Registry | None = None, table: ValenceTable = DEFAULT_TABLE
) -> FeasibilityClass:
    """Place a graph in the Known / Hypothetical / Infeasible / Impossible taxonomy.

    Impossible: some valence exceeds the element maximum, or the graph is
    empty or disconnected. Infeasible: some valence is not an allowed one.
    Known: isomorphic to a registry entry. Otherwise Hypothetical.
    """
    if not len(g):
        return FeasibilityClass(Feasibility.IMPOSSIBLE, "graph has no atoms")
    g.check_elements(table)
    valences = {a: valence(g, a) for a in g.atoms}
    for a, v in valences.items():
        el = table[g.element(a)]
        if v > el.max_valence:
            return FeasibilityClass(
                Feasibility.IMPOSSIBLE, f"valence {v} > max {el.max_valence} for {el.symbol} (atom {a})"
            )
    n_comp = len(g.components())
    if n_comp > 1:
        return FeasibilityClass(Feasibility.IMPOSSIBLE, f"graph is disconnected ({n_comp} components)")
    for a, v in valences.items():
        el = table[g.element(a)]
        if v not in el.allowed_valences:
            allowed = ",".join(str(x) for x in sorted(el.allowed_valences))
            return FeasibilityClass(
                Feasibility.INFEASIBLE,
                f"valence {v} not in allowed {{{allowed}}} for {el.symbol} (atom {a})",
            )
    if registry is not None:
        name = registry_lookup(g, registry)
        if name is not None:
            return FeasibilityClass(Feasibility.KNOWN, f"registry match: {name}")
    return FeasibilityClass(Feasibility.HYPOTHETICAL, "valences allowed, no registry match")
