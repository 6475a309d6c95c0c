from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from ..errors import StructureError
from .elements import DEFAULT_TABLE, ValenceTable

BondKey = tuple[int, int]


def bond_key(a: int, b: int) -> BondKey:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True, order=True)
class Bond:
    a: int
    b: int
    order: int

    @property
    def key(self) -> BondKey:
        return bond_key(self.a, self.b)


class MolecularGraph:
    """An instance-level chemical graph: typed atoms joined by typed bonds.

    Atoms map integer ids to element symbols; bonds map the sorted id pair to
    a bond order in {1, 2, 3}. Instances are treated as immutable.
    """

    __slots__ = ("_atoms", "_bonds", "_adj", "name", "intent")

    def __init__(
        self,
        atoms: Mapping[int, str],
        bonds: Iterable[Bond | tuple[int, int, int]] = (),
        name: str | None = None,
        intent: str | None = None,
    ):
        self._atoms = dict(sorted(atoms.items()))
        self._bonds: dict[BondKey, int] = {}
        self._adj: dict[int, dict[int, int]] = {a: {} for a in self._atoms}
        for bond in bonds:
            a, b, order = (bond.a, bond.b, bond.order) if isinstance(bond, Bond) else bond
            if a == b:
                raise StructureError(f"self-bond on atom {a}", grade="Impossible")
            if a not in self._atoms or b not in self._atoms:
                missing = a if a not in self._atoms else b
                raise StructureError(f"bond {a}-{b} references missing atom {missing}")
            if order not in (1, 2, 3):
                raise StructureError(f"bond {a}-{b} has invalid order {order}")
            key = bond_key(a, b)
            if key in self._bonds:
                raise StructureError(f"duplicate bond {key[0]}-{key[1]}")
            self._bonds[key] = order
            self._adj[a][b] = order
            self._adj[b][a] = order
        self._bonds = dict(sorted(self._bonds.items()))
        self.name = name or None
        self.intent = intent or None

    @property
    def atoms(self) -> Mapping[int, str]:
        return self._atoms

    @property
    def bond_orders(self) -> Mapping[BondKey, int]:
        return self._bonds

    @property
    def bonds(self) -> list[Bond]:
        return [Bond(a, b, o) for (a, b), o in self._bonds.items()]

    def neighbors(self, atom: int) -> Mapping[int, int]:
        """Neighbor id -> bond order."""
        return self._adj[atom]

    def element(self, atom: int) -> str:
        return self._atoms[atom]

    def bond_order(self, a: int, b: int) -> int | None:
        return self._bonds.get(bond_key(a, b))

    def __len__(self) -> int:
        return len(self._atoms)

    def __contains__(self, atom: object) -> bool:
        return atom in self._atoms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MolecularGraph):
            return NotImplemented
        return (
            self._atoms == other._atoms
            and self._bonds == other._bonds
            and self.name == other.name
            and self.intent == other.intent
        )

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<MolecularGraph{label} {self.formula()} atoms={len(self._atoms)} bonds={len(self._bonds)}>"

    def formula(self) -> str:
        """Hill-order formula string, e.g. ``C8H10N4O2``."""
        counts: dict[str, int] = {}
        for el in self._atoms.values():
            counts[el] = counts.get(el, 0) + 1
        order = sorted(counts)
        if "C" in counts:
            order = ["C"] + (["H"] if "H" in counts else []) + [e for e in order if e not in ("C", "H")]
        return "".join(e + (str(counts[e]) if counts[e] > 1 else "") for e in order)

    def components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps = []
        for start in self._atoms:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                a = stack.pop()
                for b in self._adj[a]:
                    if b not in comp:
                        comp.add(b)
                        stack.append(b)
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def relabel(self, mapping: Mapping[int, int]) -> "MolecularGraph":
        """Return a copy with atom ids renamed through ``mapping``."""
        return MolecularGraph(
            {mapping[a]: el for a, el in self._atoms.items()},
            [(mapping[a], mapping[b], o) for (a, b), o in self._bonds.items()],
            name=self.name,
            intent=self.intent,
        )

    def with_name(self, name: str | None) -> "MolecularGraph":
        return MolecularGraph(self._atoms, self.bonds, name=name, intent=self.intent)

    def check_elements(self, table: ValenceTable = DEFAULT_TABLE) -> None:
        for a, el in self._atoms.items():
            if el not in table:
                raise StructureError(f"atom {a}: unknown element {el!r}")


def valence(g: MolecularGraph, atom: int) -> int:
    """Sum of the orders of the bonds incident to ``atom``."""
    if atom not in g:
        raise KeyError(f"unknown atom id {atom}")
    return sum(g.neighbors(atom).values())


def restrict(g: MolecularGraph, kept_elements, kept_bond_kinds=lambda bond: True) -> MolecularGraph:
    """Sub-graph on atoms whose element is kept and bonds passing the predicate.

    ``kept_elements`` may hold symbols or :class:`Element` objects. Bonds are
    kept only when both endpoints survive. Ids are preserved.
    """
    keep = {e if isinstance(e, str) else e.symbol for e in kept_elements}
    atoms = {a: el for a, el in g.atoms.items() if el in keep}
    bonds = [b for b in g.bonds if b.a in atoms and b.b in atoms and kept_bond_kinds(b)]
    return MolecularGraph(atoms, bonds, name=g.name, intent=g.intent)
