"""Coarsenings between diagram languages and the coarser-than order.

Three rewrites are registered, each directed toward less detail:

m1  BALLSTICK3D -> WIRE2D        orthographic projection onto x,y
m2  BALLSTICK3D -> SPACEFILL3D   keep spheres as balls, drop sticks
m3  WIRE2D      -> WIRE2D_HDEP   delete hydrogen vertices and their lines

A diagram is coarser than another when a chain of registered coarsenings maps
the finer one onto it and the finer language sits strictly above the coarser
one in the catalog order. The catalog stands in for "no reverse coarsening
exists": nothing in it adds detail back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .aboutness import Interpretation, brute_force_is_about, is_about
from .chemgraph import DEFAULT_TABLE, MolecularGraph, ValenceTable
from .diaglang import (
    BALLSTICK3D,
    SPACEFILL3D,
    WIRE2D,
    WIRE2D_HDEP,
    Diagram,
    Token,
    builtin_language,
    require_well_formed,
    well_formed,
)
from .errors import DiagrammaError
from .matching import find_isomorphism

Rewrite = Callable[[Diagram], Diagram]


@dataclass(frozen=True)
class CoarseningFn:
    id: str
    source_lang: str
    target_lang: str
    rewrite: Rewrite = field(compare=False, repr=False)
    description: str = ""


def _rename(symbol: str, prefix: str) -> str:
    return f"{prefix}:{symbol.split(':', 1)[1]}"


def _project(d: Diagram) -> Diagram:
    tokens = {}
    taken: set[tuple[float, float]] = set()
    for t, tok in d.tokens.items():
        if tok.symbol.startswith("sphere:"):
            x, y = tok.position[0], tok.position[1]
            # atoms stacked along z would coincide; nudge deterministically
            while (x, y) in taken:
                x += 1e-3
            taken.add((x, y))
            tokens[t] = Token(t, _rename(tok.symbol, "vertex"), (x, y), tok.label)
        else:
            tokens[t] = Token(t, _rename(tok.symbol, "line"), None, tok.label)
    return Diagram(WIRE2D, tokens, d.connections, d.name)


def _spacefill(d: Diagram) -> Diagram:
    tokens = {
        t: Token(t, _rename(tok.symbol, "ball"), tok.position, tok.label)
        for t, tok in d.tokens.items()
        if tok.symbol.startswith("sphere:")
    }
    return Diagram(SPACEFILL3D, tokens, frozenset(), d.name)


def _suppress_h(d: Diagram) -> Diagram:
    hydrogens = {t for t, tok in d.tokens.items() if tok.symbol == "vertex:H"}
    doomed = set(hydrogens)
    for t, tok in d.tokens.items():
        if tok.symbol.startswith("line:") and set(d.neighbors(t)) & hydrogens:
            doomed.add(t)
    tokens = {t: tok for t, tok in d.tokens.items() if t not in doomed}
    conns = frozenset(c for c in d.connections if not set(c) & doomed)
    return Diagram(WIRE2D_HDEP, tokens, conns, d.name)


M1 = CoarseningFn("m1", BALLSTICK3D, WIRE2D, _project, "project spheres to vertices (drop z), sticks to lines")
M2 = CoarseningFn("m2", BALLSTICK3D, SPACEFILL3D, _spacefill, "spheres to balls in place, drop sticks")
M3 = CoarseningFn("m3", WIRE2D, WIRE2D_HDEP, _suppress_h, "delete hydrogen vertices and their lines")
_CATALOG = (M1, M2, M3)


def registered_coarsenings() -> list[CoarseningFn]:
    return list(_CATALOG)


def get_coarsening(cid: str) -> CoarseningFn:
    for m in _CATALOG:
        if m.id == cid:
            return m
    raise KeyError(f"no registered coarsening {cid!r}")


@lru_cache(maxsize=None)
def language_order() -> frozenset[tuple[str, str]]:
    """Strict order as (finer, coarser) pairs: transitive closure of the catalog."""
    pairs = {(m.source_lang, m.target_lang) for m in _CATALOG}
    while True:
        extra = {(a, d) for a, b in pairs for c, d in pairs if b == c} - pairs
        if not extra:
            break
        pairs |= extra
    if any(a == b for a, b in pairs):
        raise AssertionError("coarsening catalog has a cycle")
    return frozenset(pairs)


def finer_than(lang_a: str, lang_b: str) -> bool:
    return (lang_a, lang_b) in language_order()


def coarsening_paths(source: str, target: str) -> list[list[CoarseningFn]]:
    """All chains of registered coarsenings leading from ``source`` to ``target``."""
    if source == target:
        return []
    out = []
    for m in _CATALOG:
        if m.source_lang != source:
            continue
        if m.target_lang == target:
            out.append([m])
        else:
            out.extend([m] + rest for rest in coarsening_paths(m.target_lang, target))
    return out


def apply_coarsening(m: CoarseningFn, d: Diagram, table: ValenceTable = DEFAULT_TABLE) -> Diagram:
    if d.language != m.source_lang:
        raise DiagrammaError(f"{m.id} applies to {m.source_lang} diagrams, got {d.language}")
    require_well_formed(d, builtin_language(m.source_lang, table))
    out = m.rewrite(d)
    violations = well_formed(out, builtin_language(m.target_lang, table))
    if violations:  # registered rewrites must preserve well-formedness
        raise AssertionError(f"{m.id} produced an ill-formed diagram: {violations[0]}")
    return out


def apply_chain(chain: Sequence[CoarseningFn], d: Diagram, table: ValenceTable = DEFAULT_TABLE) -> Diagram:
    for m in chain:
        d = apply_coarsening(m, d, table)
    return d


def coarsen_to(d: Diagram, target: str, table: ValenceTable = DEFAULT_TABLE) -> tuple[Diagram, list[CoarseningFn]]:
    """Coarsen ``d`` into ``target`` along the first registered chain."""
    paths = coarsening_paths(d.language, target)
    if not paths:
        raise DiagrammaError(f"no registered coarsening from {d.language} to {target}")
    chain = paths[0]
    return apply_chain(chain, d, table), chain


def _close(p: tuple[float, ...], q: tuple[float, ...]) -> bool:
    return len(p) == len(q) and all(math.isclose(a, b, rel_tol=1e-6, abs_tol=1e-6) for a, b in zip(p, q))


def structurally_equal(d1: Diagram, d2: Diagram) -> dict[int, int] | None:
    """Token bijection ``d1 -> d2`` preserving symbols and connections.

    Positions are compared (relative tolerance 1e-6) only for 3D languages;
    2D layout is presentation.
    """
    if d1.language != d2.language:
        return None
    nodes1 = {t: tok.symbol for t, tok in d1.tokens.items()}
    nodes2 = {t: tok.symbol for t, tok in d2.tokens.items()}
    edges1 = {c: "" for c in d1.connections}
    edges2 = {c: "" for c in d2.connections}
    node_ok = None
    if d1.language in (BALLSTICK3D, SPACEFILL3D):

        def node_ok(a: int, b: int) -> bool:
            p, q = d1.tokens[a].position, d2.tokens[b].position
            if p is None or q is None:
                return p is q
            return _close(p, q)

    return find_isomorphism(nodes1, edges1, nodes2, edges2, node_ok)


@dataclass(frozen=True)
class CoarserVerdict:
    result: bool
    justification: str
    chain: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.result


def coarser_than(d2: Diagram, d1: Diagram, table: ValenceTable = DEFAULT_TABLE) -> CoarserVerdict:
    """Is ``d2`` coarser than ``d1``?"""
    require_well_formed(d1, builtin_language(d1.language, table))
    require_well_formed(d2, builtin_language(d2.language, table))
    if not finer_than(d1.language, d2.language):
        return CoarserVerdict(False, f"{d1.language} is not strictly finer than {d2.language} in the catalog")
    for chain in coarsening_paths(d1.language, d2.language):
        image = apply_chain(chain, d1, table)
        if structurally_equal(image, d2) is not None:
            ids = tuple(m.id for m in chain)
            return CoarserVerdict(True, "via " + " then ".join(ids), ids)
    tried = ", ".join("+".join(m.id for m in c) for c in coarsening_paths(d1.language, d2.language))
    return CoarserVerdict(False, f"no registered coarsening maps the finer diagram onto it (tried {tried})")


def lift(
    m: CoarseningFn, d2: Diagram, x: MolecularGraph, witness: Interpretation, table: ValenceTable = DEFAULT_TABLE
) -> Diagram:
    """Build a source-language preimage of ``d2`` that is about ``x``.

    ``witness`` interprets ``d2`` in ``x``; it tells which atoms are bonded
    (m2) and which atoms were suppressed (m3).
    """
    atom_token = {p: t for t, p in witness.token_to_part.items() if isinstance(p, int)}
    if m is M1:
        tokens = {}
        for t, tok in d2.tokens.items():
            if tok.symbol.startswith("vertex:"):
                tokens[t] = Token(t, _rename(tok.symbol, "sphere"), (*tok.position, 0.0), tok.label)
            else:
                tokens[t] = Token(t, _rename(tok.symbol, "stick"), None, tok.label)
        return Diagram(BALLSTICK3D, tokens, d2.connections, d2.name)
    if m is M2:
        tokens = {t: Token(t, _rename(tok.symbol, "sphere"), tok.position, tok.label) for t, tok in d2.tokens.items()}
        conns = set()
        next_id = max(tokens, default=0) + 1
        for (a, b), order in x.bond_orders.items():
            if a in atom_token and b in atom_token:
                tokens[next_id] = Token(next_id, f"stick:{order}")
                conns |= {(atom_token[a], next_id), (atom_token[b], next_id)}
                next_id += 1
        return Diagram(BALLSTICK3D, tokens, frozenset(conns), d2.name)
    if m is M3:
        tokens = dict(d2.tokens)
        conns = set(d2.connections)
        token_of = dict(atom_token)
        next_id = max(tokens, default=0) + 1
        taken = {tok.position for tok in tokens.values() if tok.position is not None}
        for a in x.atoms:
            if a in token_of:
                continue
            anchor = next((token_of[n] for n in x.neighbors(a) if n in token_of), None)
            base = tokens[anchor].position if anchor is not None else (0.0, 0.0)
            k = 1
            pos = (base[0] + 25.0, base[1] + 25.0)
            while pos in taken:
                k += 1
                pos = (base[0] + 25.0 * math.cos(k), base[1] + 25.0 * math.sin(k) + k)
            taken.add(pos)
            tokens[next_id] = Token(next_id, f"vertex:{x.element(a)}", pos)
            token_of[a] = next_id
            next_id += 1
        covered = {p for p in witness.token_to_part.values() if isinstance(p, tuple)}
        for (a, b), order in x.bond_orders.items():
            if (a, b) in covered:
                continue
            tokens[next_id] = Token(next_id, f"line:{order}")
            conns |= {(token_of[a], next_id), (token_of[b], next_id)}
            next_id += 1
        return Diagram(WIRE2D, tokens, frozenset(conns), d2.name)
    raise DiagrammaError(f"no lifting rule for {m.id}")


@dataclass
class CoarseningReport:
    coarsening: str
    clause2_checked: int = 0
    clause2_failures: list[str] = field(default_factory=list)
    clause3_checked: int = 0
    clause3_failures: list[str] = field(default_factory=list)
    wellformed_failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.clause2_failures or self.clause3_failures or self.wellformed_failures)

    @property
    def clause2_passed(self) -> int:
        return self.clause2_checked - len(self.clause2_failures)


def check_coarsening_properties(
    m: CoarseningFn,
    sample: Sequence[tuple[Diagram, MolecularGraph]],
    table: ValenceTable = DEFAULT_TABLE,
    use_oracle: bool = False,
) -> CoarseningReport:
    """Check aboutness preservation and constructive surjectivity on a sample.

    Source-language pairs about their molecule test preservation directly and
    then feed their image to the lifting check; target-language pairs go
    straight to lifting. With ``use_oracle`` the brute-force decision is used
    and its size guard applies.
    """
    decide = brute_force_is_about if use_oracle else is_about
    src = builtin_language(m.source_lang, table)
    tgt = builtin_language(m.target_lang, table)
    report = CoarseningReport(m.id)
    for k, (d, x) in enumerate(sample):
        label = d.name or f"sample {k}"
        if d.language == m.source_lang:
            if decide(d, src, x) is None:
                continue
            image = m.rewrite(d)
            if well_formed(image, tgt):
                report.wellformed_failures.append(label)
                continue
            report.clause2_checked += 1
            if decide(image, tgt, x) is None:
                report.clause2_failures.append(label)
                continue
            d2 = image
        elif d.language == m.target_lang:
            d2 = d
        else:
            raise DiagrammaError(f"sample {k} is in {d.language}, not {m.source_lang} or {m.target_lang}")
        witness = decide(d2, tgt, x)
        if witness is None:
            continue
        report.clause3_checked += 1
        pre = lift(m, d2, x, witness, table)
        if (
            well_formed(pre, src)
            or structurally_equal(m.rewrite(pre), d2) is None
            or decide(pre, src, x) is None
        ):
            report.clause3_failures.append(label)
    return report
