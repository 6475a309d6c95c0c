"""Element valence table.

The table is the artifact's proxy for "normal conditions": an atom whose
valence is outside ``allowed_valences`` but not above ``max_valence`` is
chemically infeasible, above ``max_valence`` it is impossible.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping


@dataclass(frozen=True)
class Element:
    symbol: str
    allowed_valences: frozenset[int]
    max_valence: int
    covalent_radius: float  # picometres

    def __post_init__(self) -> None:
        if not self.symbol or not self.symbol[0].isupper():
            raise ValueError(f"bad element symbol {self.symbol!r}")
        if not self.allowed_valences:
            raise ValueError(f"{self.symbol}: allowed valences must be nonempty")
        if any(v < 0 or v > self.max_valence for v in self.allowed_valences):
            raise ValueError(f"{self.symbol}: allowed valence above max {self.max_valence}")
        if self.covalent_radius <= 0:
            raise ValueError(f"{self.symbol}: covalent radius must be positive")

    def smallest_allowed_at_least(self, n: int) -> int | None:
        fits = [v for v in self.allowed_valences if v >= n]
        return min(fits) if fits else None


class ValenceTable(Mapping[str, Element]):
    """Immutable symbol -> Element lookup."""

    def __init__(self, elements: Iterable[Element]):
        self._elements: dict[str, Element] = {}
        for el in elements:
            if el.symbol in self._elements:
                raise ValueError(f"duplicate element {el.symbol}")
            self._elements[el.symbol] = el

    def __getitem__(self, symbol: str) -> Element:
        return self._elements[symbol]

    def __iter__(self) -> Iterator[str]:
        return iter(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __repr__(self) -> str:
        return f"ValenceTable({', '.join(self._elements)})"

    @classmethod
    def parse(cls, text: str) -> "ValenceTable":
        """Parse lines of ``<symbol> <allowed,comma-sep> <max> <radius-pm>``."""
        elements = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: expected 4 fields, got {len(parts)}")
            symbol, allowed, max_v, radius = parts
            try:
                el = Element(
                    symbol,
                    frozenset(int(v) for v in allowed.split(",")),
                    int(max_v),
                    float(radius),
                )
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
            elements.append(el)
        return cls(elements)

    @classmethod
    def load(cls, path: str | Path) -> "ValenceTable":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def dump(self) -> str:
        lines = []
        for el in self._elements.values():
            allowed = ",".join(str(v) for v in sorted(el.allowed_valences))
            radius = el.covalent_radius
            r = str(int(radius)) if radius == int(radius) else repr(radius)
            lines.append(f"{el.symbol} {allowed} {el.max_valence} {r}")
        return "\n".join(lines) + "\n"


DEFAULT_TABLE = ValenceTable.parse(
    """
    C 4 4 77
    N 3 3 75
    O 2 2 73
    H 1 1 37
    S 2,4,6 6 103
    P 3,5 5 110
    F 1 1 71
    Cl 1 1 99
    Br 1 1 114
    I 1 1 133
    He 0 0 32
    """
)
