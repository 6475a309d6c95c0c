"""Access to the bundled molecules, registry and diagrams."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .chemgraph import DEFAULT_TABLE, MolecularGraph, Registry, ValenceTable, parse_cgf
from .diaglang import Diagram, parse_dgf


def data_dir() -> Path:
    return Path(str(resources.files("diagramma") / "data"))


def molecule(name: str, table: ValenceTable = DEFAULT_TABLE) -> MolecularGraph:
    return parse_cgf((data_dir() / "molecules" / f"{name}.cgf").read_text(encoding="utf-8"), table)


def molecule_names() -> list[str]:
    return sorted(p.stem for p in (data_dir() / "molecules").glob("*.cgf"))


def registry(table: ValenceTable = DEFAULT_TABLE) -> Registry:
    return Registry.load(data_dir() / "registry.cgf", table)


def diagram(name: str, table: ValenceTable = DEFAULT_TABLE) -> Diagram:
    return parse_dgf((data_dir() / "diagrams" / f"{name}.dgf").read_text(encoding="utf-8"), table)


def diagram_paths() -> list[Path]:
    return sorted((data_dir() / "diagrams").glob("*.dgf"))


def diagrams(table: ValenceTable = DEFAULT_TABLE) -> dict[str, Diagram]:
    return {p.stem: parse_dgf(p.read_text(encoding="utf-8"), table) for p in diagram_paths()}
