from pathlib import Path

import pytest

from diagramma import corpus
from diagramma.chemgraph import Registry
from diagramma.errors import ParseError
from diagramma.ontology import (
    CONFORMS_TO,
    IS_ABOUT,
    LANGUAGE_CLASS,
    Restriction,
    abox_axioms,
    emit_abox,
    emit_document,
    emit_tbox,
    existential_gaps,
    merge,
    only_violations,
    parse_manchester_subset,
    tbox_axioms,
)

GOLDEN = Path(__file__).parent / "golden"


def lines(text):
    return [line.strip() for line in text.splitlines()]


def test_repaired_axiom():
    text = emit_tbox(False)
    assert "SubClassOf: isAbout only Entity" in lines(text)
    assert "isAbout some Entity" not in text


def test_legacy_axiom():
    text = emit_tbox(True)
    assert "SubClassOf: isAbout some Entity" in lines(text)
    assert "isAbout only Entity" not in text


@pytest.mark.parametrize("legacy", [False, True])
def test_structural_diagram_axioms(legacy):
    text = emit_tbox(legacy)
    assert "SubClassOf: conformsTo some DiagrammaticLanguage" in lines(text)
    ax = parse_manchester_subset(text)
    sd = ax.class_named("StructuralDiagram")
    assert sd.superclass == "InformationContentEntity"
    assert Restriction(IS_ABOUT, "only", "StructuredEntity") in sd.restrictions
    cd = ax.class_named("ChemicalDiagram")
    assert cd.superclass == "StructuralDiagram"
    assert Restriction(IS_ABOUT, "only", "MolecularEntity") in cd.restrictions
    for lang_id, cls in LANGUAGE_CLASS.items():
        c = ax.class_named(cls)
        assert c.superclass == "ChemicalDiagram"
        assert Restriction(CONFORMS_TO, "some", lang_id, nominal=True) in c.restrictions
        assert ax.individual_named(lang_id).cls == "DiagrammaticLanguage"


@pytest.mark.parametrize("legacy", [False, True])
def test_tbox_round_trip(legacy):
    ax = tbox_axioms(legacy)
    parsed = parse_manchester_subset(emit_tbox(legacy))
    assert parsed == ax
    assert len(parsed.classes) == 15


def test_caffeine_wire_gets_about_fact(registry):
    text = emit_abox([corpus.diagram("caffeine-wire")], registry)
    assert "Facts: conformsTo WIRE2D, isAbout caffeine_molecule" in lines(text)


def test_pentavalent_carbon_gets_no_about_fact(registry):
    ax = parse_manchester_subset(emit_abox([corpus.diagram("pentavalent-carbon-wire")], registry))
    ind = ax.individual_named("pentavalent_carbon_wire")
    assert ind.values(CONFORMS_TO) == ["WIRE2D"]
    assert ind.values(IS_ABOUT) == []


def test_empty_list_is_header_only(registry):
    text = emit_abox([], registry)
    assert all(line.startswith(("Prefix:", "Ontology:")) for line in text.splitlines() if line)
    assert parse_manchester_subset(text).is_empty


def test_one_individual_recovered(registry):
    ax = parse_manchester_subset(emit_abox([corpus.diagram("water-bs")], registry))
    diagrams = [i for i in ax.individuals if i.cls in LANGUAGE_CLASS.values()]
    assert [i.name for i in diagrams] == ["water_bs"]


def test_no_registry_means_no_about_facts():
    ax = abox_axioms([corpus.diagram("water-bs")], None)
    assert ax.individual_named("water_bs").values(IS_ABOUT) == []


@pytest.mark.parametrize(
    "text, message",
    [
        ("Class: A\n    SubClassOf: isAbout onlyy Entity\nClass: Entity\nObjectProperty: isAbout", "quantifier"),
        ("Klass: A", "unknown keyword"),
        ("Individual: a\n    Types: Nope", "undeclared class"),
        ("Class: A\n    SubClassOf: hasPart some A", "undeclared property"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_manchester_subset(text)


def test_parse_error_has_line_number():
    with pytest.raises(ParseError) as info:
        parse_manchester_subset("ObjectProperty: isAbout\n\nClass: Entity\nClass: A\n    SubClassOf: isAbout onlyy Entity\n")
    assert info.value.lineno == 5


@pytest.mark.parametrize("legacy", [False, True])
def test_full_corpus_round_trip(bundled_diagrams, registry, legacy):
    ds = list(bundled_diagrams.values())
    text = emit_document(ds, registry, legacy)
    parsed = parse_manchester_subset(text)
    assert parsed == merge(tbox_axioms(legacy), abox_axioms(ds, registry))
    assert emit_document(list(reversed(ds)), registry, legacy) == text


def test_exactly_one_conforms_to(bundled_diagrams, registry):
    ax = parse_manchester_subset(emit_document(list(bundled_diagrams.values()), registry))
    diagram_inds = [i for i in ax.individuals if i.cls in LANGUAGE_CLASS.values()]
    assert len(diagram_inds) == len(bundled_diagrams)
    for ind in diagram_inds:
        assert len(ind.values(CONFORMS_TO)) == 1


def test_non_referring_safety(bundled_diagrams, registry):
    ds = list(bundled_diagrams.values())
    repaired = parse_manchester_subset(emit_document(ds, registry, legacy=False))
    assert existential_gaps(repaired) == []
    assert only_violations(repaired) == []
    legacy_text = emit_document(ds, registry, legacy=True)
    legacy = parse_manchester_subset(legacy_text)
    gap_names = sorted({name for name, r in existential_gaps(legacy) if r.prop == IS_ABOUT})
    unabout = sorted(i.name for i in legacy.individuals if i.cls in LANGUAGE_CLASS.values() and not i.values(IS_ABOUT))
    assert gap_names == unabout
    assert "pentavalent_carbon_wire" in unabout
    for name in unabout:
        assert f"# WARNING: {name} has no isAbout fact" in legacy_text
    assert "# WARNING" not in emit_document(ds, registry, legacy=False)


def test_only_violation_detected():
    text = emit_tbox(False) + "\nIndividual: d\n    Types: ChemicalDiagram\n    Facts: isAbout BALLSTICK3D, conformsTo WIRE2D\n"
    bad = only_violations(parse_manchester_subset(text))
    assert any(v == "BALLSTICK3D" for _, _, v in bad)


def test_empty_registry_still_consistent():
    ax = parse_manchester_subset(emit_document([corpus.diagram("caffeine-bs")], Registry()))
    assert existential_gaps(ax) == [] and only_violations(ax) == []


@pytest.mark.parametrize("legacy, golden", [(False, "document.omn"), (True, "document-legacy.omn")])
def test_golden_documents(registry, legacy, golden):
    ds = [corpus.diagram("pentavalent-carbon-wire"), corpus.diagram("caffeine-wire")]
    assert emit_document(ds, registry, legacy) == (GOLDEN / golden).read_text()
