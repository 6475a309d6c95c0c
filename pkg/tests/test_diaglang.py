import dataclasses
import random

import numpy as np
import pytest

from diagramma import corpus
from diagramma.chemgraph import Feasibility, MolecularGraph, classify_feasibility, isomorphic, random_molecule
from diagramma.diaglang import (
    BALLSTICK3D,
    LANGUAGE_IDS,
    SPACEFILL3D,
    WIRE2D,
    WIRE2D_HDEP,
    Diagram,
    InterpretedLanguage,
    Kind,
    LanguageParams,
    SymbolDef,
    Token,
    abstract_diagram,
    builtin_language,
    derived_connections,
    is_well_formed,
    parse_dgf,
    well_formed,
    write_dgf,
)
from diagramma.errors import IllFormedDiagram, ParseError, StructureError
from diagramma.generators import render_diagram

H2_BS = """dgf 1
lang BALLSTICK3D
name h2
token 1 sphere:H x=0 y=0 z=0
token 2 sphere:H x=74 y=0 z=0
token 3 stick:1
connect 1 3
connect 2 3
"""


def rules(d, lang):
    return {v.rule for v in well_formed(d, lang)}


def diagram(lang_id, tokens, connections=()):
    toks = {}
    for tid, sym, *pos in tokens:
        toks[tid] = Token(tid, sym, tuple(pos) if pos else None)
    return Diagram(lang_id, toks, frozenset(connections))


# languages

def test_ballstick_vocabulary():
    bs = builtin_language(BALLSTICK3D)
    assert bs.vocabulary["sphere:C"].kind is Kind.IT
    assert bs.vocabulary["sphere:C"].geometry_arity == 3
    for k in (1, 2, 3):
        s = bs.vocabulary[f"stick:{k}"]
        assert s.kind is Kind.DT and s.geometry_arity == 0
        assert s.mapped_type == f"bond:{k}"


def test_spacefill_has_no_dt_types():
    sf = builtin_language(SPACEFILL3D)
    assert all(name.startswith("ball:") for name in sf.vocabulary)
    assert sf.dt_types == frozenset()


def test_hdep_omits_hydrogen():
    h = builtin_language(WIRE2D_HDEP)
    assert "vertex:H" not in h.vocabulary
    assert "atom:H" not in h.types
    assert all(not t.startswith("bond:") for t in h.types)


def test_types_are_image_of_phi(lang):
    assert {lang.phi(s) for s in lang.vocabulary} == lang.types
    assert not lang.it_types & lang.dt_types


def test_unknown_language():
    with pytest.raises(ValueError, match="unknown language"):
        builtin_language("SKELETAL")


def test_type_set_must_match_phi():
    v = {"a:C": SymbolDef("a:C", Kind.IT, "atom:C", 2)}
    with pytest.raises(ValueError, match="image"):
        InterpretedLanguage("X", v, (), frozenset({"atom:C", "atom:O"}), frozenset())
    with pytest.raises(ValueError, match="disjoint"):
        InterpretedLanguage("X", v, (), frozenset({"atom:C"}), frozenset({"atom:C"}))


# DGF

def test_parse_h2():
    d = parse_dgf(H2_BS)
    assert len(d.tokens) == 3
    assert len(d.connections) == 2
    assert d.tokens[2].position == (74, 0, 0)


def test_dgf_round_trip_h2():
    d = parse_dgf(H2_BS)
    assert parse_dgf(write_dgf(d)) == d
    assert write_dgf(d) == H2_BS


@pytest.mark.parametrize("path", corpus.diagram_paths(), ids=lambda p: p.stem)
def test_dgf_round_trip_bundled(path):
    text = path.read_text()
    d = parse_dgf(text)
    assert write_dgf(d) == text
    assert parse_dgf(write_dgf(d)) == d


def test_labels_and_fractional_positions_round_trip():
    text = "dgf 1\nlang WIRE2D\ntoken 1 vertex:C x=0.5 y=-1.25 label=C1\n"
    d = parse_dgf(text)
    assert d.tokens[1].label == "C1"
    assert write_dgf(d) == text


@pytest.mark.parametrize(
    "text, message, lineno",
    [
        ("dgf 1\nlang WIRE2D\ntoken 1 vertex:C x=0 y=0\nconnect 5 6", "missing token 5", 4),
        ("dgf 1\nlang WIRE2D\ntoken 1 sphere:C x=0 y=0", "unknown symbol", 3),
        ("dgf 1\nlang WIRE2D_HDEP\ntoken 1 vertex:H x=0 y=0", "unknown symbol", 3),
        ("dgf 2\nlang WIRE2D", "header", 1),
        ("dgf 1\nlang PAINT", "unknown language", 2),
        ("dgf 1\ntoken 1 vertex:C", "before lang", 2),
        ("dgf 1\nlang WIRE2D\ntoken 1 vertex:C\ntoken 1 vertex:O", "duplicate token", 4),
        ("dgf 1\nlang WIRE2D\ntoken 1 vertex:C\ntoken 2 line:1\nconnect 1 2\nconnect 2 1", "duplicate connection", 6),
        ("dgf 1\nlang WIRE2D\ntoken 1 vertex:C x=a y=0", "number", 3),
        ("dgf 1\nlang WIRE2D\nwibble", "unknown keyword", 3),
    ],
)
def test_dgf_errors(text, message, lineno):
    with pytest.raises(ParseError, match=message) as info:
        parse_dgf(text)
    assert info.value.lineno == lineno


def test_missing_lang():
    with pytest.raises(ParseError, match="lang"):
        parse_dgf("dgf 1\n")


def test_diagram_construction_checks():
    with pytest.raises(StructureError):
        Diagram(WIRE2D, {1: Token(1, "vertex:C", (0, 0))}, frozenset({(1, 1)}))
    with pytest.raises(StructureError):
        Diagram(WIRE2D, {1: Token(1, "vertex:C", (0, 0))}, frozenset({(1, 2)}))


# grammar

def test_pentavalent_carbon_is_well_formed_but_impossible():
    d = corpus.diagram("pentavalent-carbon-wire")
    lang = builtin_language(d.language)
    assert is_well_formed(d, lang)
    g = abstract_diagram(d, lang)
    assert classify_feasibility(g).label is Feasibility.IMPOSSIBLE


def test_r1_dangling_stick():
    d = diagram(BALLSTICK3D, [(1, "sphere:H", 0, 0, 0), (2, "stick:1")], [(1, 2)])
    assert rules(d, builtin_language(BALLSTICK3D)) == {"r1"}


def test_r1_stick_to_stick():
    d = diagram(
        BALLSTICK3D,
        [(1, "sphere:H", 0, 0, 0), (2, "stick:1"), (3, "stick:1"), (4, "sphere:H", 1, 0, 0)],
        [(1, 2), (2, 3), (3, 4)],
    )
    assert "r1" in rules(d, builtin_language(BALLSTICK3D))


def test_r2_direct_it_link():
    d = diagram(WIRE2D, [(1, "vertex:O", 0, 0), (2, "vertex:O", 1, 0)], [(1, 2)])
    assert rules(d, builtin_language(WIRE2D)) == {"r2"}


def test_r3_duplicate_sticks():
    d = diagram(
        BALLSTICK3D,
        [(1, "sphere:H", 0, 0, 0), (2, "sphere:H", 74, 0, 0), (3, "stick:1"), (4, "stick:1")],
        [(1, 3), (2, 3), (1, 4), (2, 4)],
    )
    assert rules(d, builtin_language(BALLSTICK3D)) == {"r3"}


def test_r4_missing_or_wrong_dimension():
    lang = builtin_language(BALLSTICK3D)
    assert rules(diagram(BALLSTICK3D, [(1, "sphere:H")]), lang) == {"r4"}
    assert rules(diagram(BALLSTICK3D, [(1, "sphere:H", 0, 0)]), lang) == {"r4"}
    wire = builtin_language(WIRE2D)
    assert rules(diagram(WIRE2D, [(1, "vertex:H", 0, 0, 0)]), wire) == {"r4"}
    assert rules(diagram(WIRE2D, [(1, "vertex:H", 0, 0), (2, "line:1", 3, 4)]), wire) >= {"r4"}


def test_r5_shared_position():
    d = diagram(WIRE2D, [(1, "vertex:C", 0, 0), (2, "vertex:O", 0, 0)])
    assert rules(d, builtin_language(WIRE2D)) == {"r5"}


def test_r6_spacefill_connections():
    d = diagram(SPACEFILL3D, [(1, "ball:O", 0, 0, 0), (2, "ball:O", 100, 0, 0)], [(1, 2)])
    assert rules(d, builtin_language(SPACEFILL3D)) == {"r6"}


def test_r7_hydrogen_in_hdep():
    d = Diagram(WIRE2D_HDEP, {1: Token(1, "vertex:H", (0, 0))})
    assert rules(d, builtin_language(WIRE2D_HDEP)) >= {"r7"}


def test_wrong_language():
    with pytest.raises(ValueError):
        well_formed(parse_dgf(H2_BS), builtin_language(WIRE2D))


def test_bundled_diagrams_are_well_formed(bundled_diagrams):
    for d in bundled_diagrams.values():
        assert is_well_formed(d, builtin_language(d.language)), d.name


def test_well_formedness_ignores_names_and_ordering():
    d = corpus.diagram("ethanol-bs")
    lang = builtin_language(BALLSTICK3D)
    rng = random.Random(1)
    for _ in range(10):
        ids = list(d.tokens)
        new = rng.sample(range(1, 100), len(ids))
        e = d.relabel(dict(zip(ids, new))).replace(name="x")
        assert is_well_formed(e, lang)
        broken = e.replace(connections=frozenset(list(e.connections)[1:]))
        assert not is_well_formed(broken, lang)


# derived connections

def oxygen_pair(dist, factor):
    lang = dataclasses.replace(builtin_language(SPACEFILL3D), params=LanguageParams(overlap_factor=factor))
    d = diagram(SPACEFILL3D, [(1, "ball:O", 0, 0, 0), (2, "ball:O", dist, 0, 0)])
    return derived_connections(d, lang)


def test_overlapping_balls_connect():
    assert oxygen_pair(0.9 * 146, 1.0) == {(1, 2)}


def test_distant_balls_do_not_connect():
    assert oxygen_pair(2.0 * 146, 1.0) == frozenset()
    assert oxygen_pair(2.0 * 146, 1.1) == frozenset()


def test_threshold_is_strict():
    assert oxygen_pair(146.0, 1.0) == frozenset()


def test_single_ball():
    d = diagram(SPACEFILL3D, [(1, "ball:C", 0, 0, 0)])
    assert derived_connections(d, builtin_language(SPACEFILL3D)) == frozenset()


def test_non_geometric_language_uses_explicit_connections():
    d = parse_dgf(H2_BS)
    assert derived_connections(d, builtin_language(BALLSTICK3D)) == d.connections


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    return q * np.sign(np.diag(r))


def test_derived_connections_invariant_under_rigid_motions():
    lang = builtin_language(SPACEFILL3D)
    rng = np.random.default_rng(0)
    checked = 0
    for seed in range(50):
        g = random_molecule(seed, 5)
        d = render_diagram(g, SPACEFILL3D, seed=seed)
        base = derived_connections(d, lang)
        ids = list(d.tokens)
        pts = np.array([d.tokens[t].position for t in ids])
        for _ in range(10):
            rot, shift = random_rotation(rng), rng.uniform(-500, 500, 3)
            moved = pts @ rot.T + shift
            toks = {t: Token(t, d.tokens[t].symbol, tuple(float(c) for c in p)) for t, p in zip(ids, moved)}
            assert derived_connections(d.replace(tokens=toks), lang) == base
            checked += 1
    assert checked == 500


# abstraction

def test_abstract_ballstick_water():
    d = corpus.diagram("water-bs")
    g = abstract_diagram(d, builtin_language(BALLSTICK3D))
    assert isomorphic(g, corpus.molecule("water")) is not None
    assert set(g.atoms) == {1, 2, 3}


def test_abstract_spacefill_water():
    d = corpus.diagram("water-sf")
    g = abstract_diagram(d, builtin_language(SPACEFILL3D))
    assert isomorphic(g, corpus.molecule("water")) is not None
    assert all(b.order == 1 for b in g.bonds)


def test_abstract_empty():
    g = abstract_diagram(Diagram(WIRE2D), builtin_language(WIRE2D))
    assert g == MolecularGraph({})


def test_abstract_ill_formed_raises():
    d = diagram(WIRE2D, [(1, "vertex:O", 0, 0), (2, "vertex:O", 1, 0)], [(1, 2)])
    with pytest.raises(IllFormedDiagram):
        abstract_diagram(d, builtin_language(WIRE2D))


@pytest.mark.parametrize("lang_id", [WIRE2D, BALLSTICK3D])
def test_abstraction_yields_valid_graphs(lang_id):
    lang = builtin_language(lang_id)
    for seed in range(30):
        g = random_molecule(seed, 6)
        d = render_diagram(g, lang_id, seed=seed)
        assert is_well_formed(d, lang)
        a = abstract_diagram(d, lang)
        assert isomorphic(a, g) is not None


def test_abstract_caffeine_matches_molecule(caffeine):
    for stem, lang_id in (("wire", WIRE2D), ("bs", BALLSTICK3D)):
        g = abstract_diagram(corpus.diagram(f"caffeine-{stem}"), builtin_language(lang_id))
        assert isomorphic(g.with_name(None), caffeine.with_name(None)) is not None
    sf = abstract_diagram(corpus.diagram("caffeine-sf"), builtin_language(SPACEFILL3D))
    skeleton = MolecularGraph(caffeine.atoms, [(b.a, b.b, 1) for b in caffeine.bonds])
    assert isomorphic(sf, skeleton) is not None
