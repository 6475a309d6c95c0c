"""Manchester-syntax emission of the structural-diagram ontology fragment.

Information content entities carry a universal ``isAbout only Entity``
restriction, so a diagram with no depicted entity is still a consistent
individual; structural diagrams are classified by the language they conform
to. ``legacy=True`` swaps in the existential ``isAbout some Entity`` axiom and
marks every diagram individual that has nothing to be about.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .aboutness import about_registry
from .chemgraph import DEFAULT_TABLE, Registry, ValenceTable
from .diaglang import (
    BALLSTICK3D,
    LANGUAGE_IDS,
    SPACEFILL3D,
    WIRE2D,
    WIRE2D_HDEP,
    Diagram,
    builtin_language,
    require_well_formed,
)
from .errors import ParseError

PREFIX = "http://example.org/diagramma/iao-sd"
IS_ABOUT = "isAbout"
CONFORMS_TO = "conformsTo"
PROPERTIES = (CONFORMS_TO, IS_ABOUT)

ICE = "InformationContentEntity"
LANGUAGE_CLASS = {
    WIRE2D: "Wire2DDiagram",
    WIRE2D_HDEP: "Wire2DHydrogenSuppressedDiagram",
    BALLSTICK3D: "BallStick3DDiagram",
    SPACEFILL3D: "SpaceFill3DDiagram",
}
# broader information-entity classes, declared only to anchor the hierarchy
CONTEXT_CLASSES = ("DataItem", "Document", "Figure", "NarrativeObject")


@dataclass(frozen=True, order=True)
class Restriction:
    prop: str
    quantifier: str  # "some" | "only"
    filler: str
    nominal: bool = False  # filler is a single named individual, written {Name}

    def __str__(self) -> str:
        filler = f"{{{self.filler}}}" if self.nominal else self.filler
        return f"{self.prop} {self.quantifier} {filler}"


@dataclass(frozen=True, order=True)
class ClassAxiom:
    name: str
    superclass: str | None = None
    restrictions: tuple[Restriction, ...] = ()


@dataclass(frozen=True, order=True)
class IndividualAxiom:
    name: str
    cls: str
    facts: tuple[tuple[str, str], ...] = ()

    def values(self, prop: str) -> list[str]:
        return [v for p, v in self.facts if p == prop]


@dataclass(frozen=True)
class AxiomSet:
    classes: tuple[ClassAxiom, ...] = ()
    individuals: tuple[IndividualAxiom, ...] = ()
    properties: tuple[str, ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", tuple(sorted(self.classes, key=lambda c: c.name)))
        inds = tuple(
            IndividualAxiom(i.name, i.cls, tuple(sorted(i.facts)))
            for i in sorted(self.individuals, key=lambda i: i.name)
        )
        object.__setattr__(self, "individuals", inds)
        object.__setattr__(self, "properties", tuple(sorted(set(self.properties))))

    @property
    def is_empty(self) -> bool:
        return not (self.classes or self.individuals or self.properties)

    def class_named(self, name: str) -> ClassAxiom | None:
        return next((c for c in self.classes if c.name == name), None)

    def individual_named(self, name: str) -> IndividualAxiom | None:
        return next((i for i in self.individuals if i.name == name), None)

    def ancestors(self, name: str) -> list[str]:
        chain, seen = [], set()
        while name is not None and name not in seen:
            seen.add(name)
            chain.append(name)
            c = self.class_named(name)
            name = c.superclass if c else None
        return chain

    def inherited_restrictions(self, name: str) -> list[Restriction]:
        out = []
        for anc in self.ancestors(name):
            c = self.class_named(anc)
            if c:
                out.extend(c.restrictions)
        return out


def tbox_axioms(legacy: bool = False) -> AxiomSet:
    about_ice = Restriction(IS_ABOUT, "some" if legacy else "only", "Entity")
    classes = [
        ClassAxiom("Entity"),
        ClassAxiom(ICE, "Entity", (about_ice,)),
        ClassAxiom("StructuredEntity", "Entity"),
        ClassAxiom("MolecularEntity", "StructuredEntity"),
        ClassAxiom("DiagrammaticLanguage", "Entity"),
        ClassAxiom(
            "StructuralDiagram",
            ICE,
            (
                Restriction(IS_ABOUT, "only", "StructuredEntity"),
                Restriction(CONFORMS_TO, "some", "DiagrammaticLanguage"),
            ),
        ),
        ClassAxiom("ChemicalDiagram", "StructuralDiagram", (Restriction(IS_ABOUT, "only", "MolecularEntity"),)),
    ]
    classes += [ClassAxiom(c, ICE) for c in CONTEXT_CLASSES]
    classes += [
        ClassAxiom(LANGUAGE_CLASS[lid], "ChemicalDiagram", (Restriction(CONFORMS_TO, "some", lid, nominal=True),))
        for lid in LANGUAGE_IDS
    ]
    individuals = [IndividualAxiom(lid, "DiagrammaticLanguage") for lid in LANGUAGE_IDS]
    return AxiomSet(tuple(classes), tuple(individuals), PROPERTIES)


def _ident(raw: str) -> str:
    out = re.sub(r"[^A-Za-z0-9_]", "_", raw.strip())
    if not out or not (out[0].isalpha() or out[0] == "_"):
        out = "d_" + out
    return out


def molecule_individual(name: str) -> str:
    return _ident(name) + "_molecule"


def abox_axioms(
    diagrams: Sequence[Diagram], registry: Registry | None = None, table: ValenceTable = DEFAULT_TABLE
) -> AxiomSet:
    """One individual per diagram, with isAbout facts only where a registry
    molecule is actually depicted."""
    if not diagrams:
        return AxiomSet()
    registry = registry if registry is not None else Registry()
    individuals: list[IndividualAxiom] = []
    used: set[str] = set()
    classes: set[str] = {"DiagrammaticLanguage"}
    langs: set[str] = set()
    molecules: set[str] = set()
    for k, d in enumerate(diagrams):
        lang = builtin_language(d.language, table)
        require_well_formed(d, lang)
        base = _ident(d.name) if d.name else f"diagram_{k + 1}"
        name, n = base, 1
        while name in used or name in LANGUAGE_IDS:
            n += 1
            name = f"{base}_{n}"
        used.add(name)
        facts = [(CONFORMS_TO, d.language)]
        for mol in about_registry(d, lang, registry):
            facts.append((IS_ABOUT, molecule_individual(mol)))
            molecules.add(molecule_individual(mol))
        classes.add(LANGUAGE_CLASS[d.language])
        langs.add(d.language)
        individuals.append(IndividualAxiom(name, LANGUAGE_CLASS[d.language], tuple(facts)))
    if molecules:
        classes.add("MolecularEntity")
    individuals += [IndividualAxiom(m, "MolecularEntity") for m in molecules]
    individuals += [IndividualAxiom(lid, "DiagrammaticLanguage") for lid in langs]
    return AxiomSet(tuple(ClassAxiom(c) for c in classes), tuple(individuals), PROPERTIES)


def merge(*sets: AxiomSet) -> AxiomSet:
    """Union of axiom sets; a detailed class frame wins over a bare one."""
    classes: dict[str, ClassAxiom] = {}
    individuals: dict[str, IndividualAxiom] = {}
    props: set[str] = set()
    for s in sets:
        props.update(s.properties)
        for c in s.classes:
            old = classes.get(c.name)
            if old is None or (old.superclass is None and not old.restrictions):
                classes[c.name] = c
            elif (c.superclass or c.restrictions) and c != old:
                raise ValueError(f"conflicting definitions of class {c.name}")
        for i in s.individuals:
            old = individuals.get(i.name)
            if old is None:
                individuals[i.name] = i
            elif old.cls != i.cls:
                raise ValueError(f"individual {i.name} typed both {old.cls} and {i.cls}")
            else:
                individuals[i.name] = IndividualAxiom(i.name, i.cls, tuple(sorted(set(old.facts) | set(i.facts))))
    return AxiomSet(tuple(classes.values()), tuple(individuals.values()), tuple(props))


def write_manchester(axioms: AxiomSet, flag_unabout: bool = False) -> str:
    """Serialize deterministically: properties, classes, then individuals, each alphabetical.

    With ``flag_unabout`` every individual that conforms to a language but has
    no isAbout fact gets a warning comment.
    """
    out = [f"Prefix: : <{PREFIX}#>", f"Ontology: <{PREFIX}>", ""]
    for p in axioms.properties:
        out += [f"ObjectProperty: {p}", ""]
    for c in axioms.classes:
        out.append(f"Class: {c.name}")
        if c.superclass:
            out.append(f"    SubClassOf: {c.superclass}")
        out.extend(f"    SubClassOf: {r}" for r in c.restrictions)
        out.append("")
    for i in axioms.individuals:
        if flag_unabout and i.values(CONFORMS_TO) and not i.values(IS_ABOUT):
            out.append(
                f"# WARNING: {i.name} has no isAbout fact; under 'isAbout some Entity' "
                "it is forced to depict an entity that may not exist"
            )
        out.append(f"Individual: {i.name}")
        out.append(f"    Types: {i.cls}")
        if i.facts:
            out.append("    Facts: " + ", ".join(f"{p} {v}" for p, v in i.facts))
        out.append("")
    while out and out[-1] == "":
        out.pop()
    return "\n".join(out) + "\n"


def emit_tbox(legacy: bool = False) -> str:
    return write_manchester(tbox_axioms(legacy))


def emit_abox(
    diagrams: Sequence[Diagram],
    registry: Registry | None = None,
    legacy: bool = False,
    table: ValenceTable = DEFAULT_TABLE,
) -> str:
    return write_manchester(abox_axioms(diagrams, registry, table), flag_unabout=legacy)


def emit_document(
    diagrams: Sequence[Diagram],
    registry: Registry | None = None,
    legacy: bool = False,
    table: ValenceTable = DEFAULT_TABLE,
) -> str:
    """Class hierarchy and diagram individuals in one document."""
    return write_manchester(merge(tbox_axioms(legacy), abox_axioms(diagrams, registry, table)), flag_unabout=legacy)


_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_RESTRICTION = re.compile(rf"({_NAME}) (\S+) (\{{{_NAME}\}}|{_NAME})\Z")
_NAME_RE = re.compile(_NAME + r"\Z")
_FRAMES = ("Prefix:", "Ontology:", "ObjectProperty:", "Class:", "Individual:")


def parse_manchester_subset(text: str) -> AxiomSet:
    """Parse the Manchester subset written by :func:`write_manchester`."""
    classes: list[ClassAxiom] = []
    individuals: list[IndividualAxiom] = []
    props: list[str] = []
    frame: dict | None = None

    def close() -> None:
        nonlocal frame
        if frame is None:
            return
        if frame["kind"] == "Class":
            classes.append(ClassAxiom(frame["name"], frame["super"], tuple(frame["restrictions"])))
        elif frame["kind"] == "Individual":
            if frame["type"] is None:
                raise ParseError(f"individual {frame['name']} has no Types line", frame["line"])
            individuals.append(IndividualAxiom(frame["name"], frame["type"], tuple(frame["facts"])))
        frame = None

    def name(tok: str, lineno: int) -> str:
        if not _NAME_RE.match(tok):
            raise ParseError(f"invalid name {tok!r}", lineno)
        return tok

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if not raw[:1].isspace():
            if keyword not in _FRAMES:
                raise ParseError(f"unknown keyword {keyword!r}", lineno)
            close()
            if keyword in ("Prefix:", "Ontology:"):
                continue
            if keyword == "ObjectProperty:":
                props.append(name(rest, lineno))
            elif keyword == "Class:":
                frame = {"kind": "Class", "name": name(rest, lineno), "super": None, "restrictions": [], "line": lineno}
            else:
                frame = {"kind": "Individual", "name": name(rest, lineno), "type": None, "facts": [], "line": lineno}
            continue
        if frame is None:
            raise ParseError("indented line outside a frame", lineno)
        if frame["kind"] == "Class" and keyword == "SubClassOf:":
            if " " not in rest:
                if frame["super"] is not None:
                    raise ParseError("only one named superclass is supported", lineno)
                frame["super"] = name(rest, lineno)
                continue
            m = _RESTRICTION.match(rest)
            if not m:
                raise ParseError(f"malformed restriction {rest!r}", lineno)
            prop, quant, filler = m.groups()
            if quant not in ("some", "only"):
                raise ParseError(f"unknown quantifier {quant!r} (expected 'some' or 'only')", lineno)
            nominal = filler.startswith("{")
            frame["restrictions"].append(Restriction(prop, quant, filler.strip("{}"), nominal))
        elif frame["kind"] == "Individual" and keyword == "Types:":
            if frame["type"] is not None:
                raise ParseError("duplicate Types line", lineno)
            frame["type"] = name(rest, lineno)
        elif frame["kind"] == "Individual" and keyword == "Facts:":
            for item in rest.split(","):
                parts = item.split()
                if len(parts) != 2:
                    raise ParseError(f"malformed fact {item.strip()!r}", lineno)
                frame["facts"].append((name(parts[0], lineno), name(parts[1], lineno)))
        else:
            raise ParseError(f"unknown keyword {keyword!r} in {frame['kind']} frame", lineno)
    close()

    declared_props = set(props)
    declared_classes = {c.name for c in classes}
    for c in classes:
        for r in c.restrictions:
            if r.prop not in declared_props:
                raise ParseError(f"class {c.name}: undeclared property {r.prop!r}")
        if c.superclass and c.superclass not in declared_classes:
            raise ParseError(f"class {c.name}: undeclared superclass {c.superclass!r}")
    for i in individuals:
        if i.cls not in declared_classes:
            raise ParseError(f"individual {i.name}: undeclared class {i.cls!r}")
        for p, _ in i.facts:
            if p not in declared_props:
                raise ParseError(f"individual {i.name}: undeclared property {p!r}")
    return AxiomSet(tuple(classes), tuple(individuals), tuple(props))


def existential_gaps(axioms: AxiomSet) -> list[tuple[str, Restriction]]:
    """``some`` restrictions an individual inherits but has no fact for.

    Under the universal aboutness axiom a diagram of a molecule that does not
    exist leaves no gap; under the existential one it does.
    """
    gaps = []
    for ind in axioms.individuals:
        for r in axioms.inherited_restrictions(ind.cls):
            if r.quantifier != "some":
                continue
            witnesses = ind.values(r.prop)
            if r.nominal:
                ok = r.filler in witnesses
            else:
                ok = any(_has_type(axioms, w, r.filler) for w in witnesses)
            if not ok:
                gaps.append((ind.name, r))
    return gaps


def only_violations(axioms: AxiomSet) -> list[tuple[str, Restriction, str]]:
    """Facts whose value is not typed as an ``only`` restriction demands."""
    bad = []
    for ind in axioms.individuals:
        for r in axioms.inherited_restrictions(ind.cls):
            if r.quantifier != "only":
                continue
            for v in ind.values(r.prop):
                ok = v == r.filler if r.nominal else _has_type(axioms, v, r.filler)
                if not ok:
                    bad.append((ind.name, r, v))
    return bad


def _has_type(axioms: AxiomSet, individual: str, cls: str) -> bool:
    ind = axioms.individual_named(individual)
    return ind is not None and cls in axioms.ancestors(ind.cls)
