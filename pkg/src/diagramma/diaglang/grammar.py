"""Well-formedness, geometric connection and semantic abstraction of diagrams.

Grammar rules check syntax only. A carbon vertex with five lines is a
perfectly good expression; whether it depicts anything is a separate question.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..chemgraph import MolecularGraph
from ..errors import IllFormedDiagram, StructureError
from .diagram import Diagram
from .language import Kind, InterpretedLanguage

RULES = {
    "vocab": "every token symbol belongs to the vocabulary",
    "r1": "every DT token has exactly 2 connections, both to IT tokens",
    "r2": "IT tokens never connect directly to IT tokens",
    "r3": "at most one DT token per IT-token pair",
    "r4": "required positions present with matching dimension",
    "r5": "distinct IT tokens have distinct positions",
    "r6": "no explicit connections",
    "r7": "no hydrogen symbols",
}


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    tokens: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.rule}: {self.message}"


def _check_language(d: Diagram, lang: InterpretedLanguage) -> None:
    if d.language != lang.id:
        raise ValueError(f"diagram is in {d.language}, language given is {lang.id}")


def well_formed(d: Diagram, lang: InterpretedLanguage) -> list[Violation]:
    """Return grammar violations; an empty list means the diagram is well-formed."""
    _check_language(d, lang)
    out: list[Violation] = []
    vocab = lang.vocabulary
    for t, tok in d.tokens.items():
        if tok.symbol not in vocab:
            out.append(Violation("vocab", f"token {t}: symbol {tok.symbol!r} not in {lang.id}", (t,)))
    known = {t: vocab[tok.symbol] for t, tok in d.tokens.items() if tok.symbol in vocab}
    adj = d.adjacency()

    def is_it(t: int) -> bool:
        return t in known and known[t].kind is Kind.IT

    def is_dt(t: int) -> bool:
        return t in known and known[t].kind is Kind.DT

    for rule in lang.grammar:
        if rule == "r1":
            for t in d.tokens:
                if is_dt(t):
                    nbrs = adj[t]
                    if len(nbrs) != 2 or not all(is_it(n) for n in nbrs):
                        out.append(Violation("r1", f"DT token {t} has connections {nbrs}", (t,)))
        elif rule == "r2":
            for a, b in sorted(d.connections):
                if is_it(a) and is_it(b):
                    out.append(Violation("r2", f"IT tokens {a} and {b} connected directly", (a, b)))
        elif rule == "r3":
            seen: dict[frozenset[int], int] = {}
            for t in d.tokens:
                if is_dt(t):
                    ends = frozenset(n for n in adj[t] if is_it(n))
                    if len(ends) < 2:
                        continue
                    if ends in seen:
                        out.append(
                            Violation("r3", f"DT tokens {seen[ends]} and {t} join the same pair", (seen[ends], t))
                        )
                    else:
                        seen[ends] = t
        elif rule == "r4":
            for t, tok in d.tokens.items():
                if t not in known:
                    continue
                need = known[t].geometry_arity
                have = 0 if tok.position is None else len(tok.position)
                if need != have:
                    out.append(Violation("r4", f"token {t} has {have}-D position, needs {need}-D", (t,)))
        elif rule == "r5":
            where: dict[tuple, int] = {}
            for t, tok in d.tokens.items():
                if is_it(t) and tok.position is not None:
                    if tok.position in where:
                        out.append(
                            Violation("r5", f"tokens {where[tok.position]} and {t} share a position", (where[tok.position], t))
                        )
                    else:
                        where[tok.position] = t
        elif rule == "r6":
            for a, b in sorted(d.connections):
                out.append(Violation("r6", f"explicit connection {a}-{b} not allowed", (a, b)))
        elif rule == "r7":
            for t, tok in d.tokens.items():
                if tok.symbol.endswith(":H") or (t in known and known[t].element == "H"):
                    out.append(Violation("r7", f"token {t} is a hydrogen symbol", (t,)))
        else:
            raise ValueError(f"unknown grammar rule {rule!r}")
    return out


def is_well_formed(d: Diagram, lang: InterpretedLanguage) -> bool:
    return not well_formed(d, lang)


def require_well_formed(d: Diagram, lang: InterpretedLanguage) -> None:
    violations = well_formed(d, lang)
    if violations:
        raise IllFormedDiagram(violations)


def token_radius(d: Diagram, lang: InterpretedLanguage, t: int) -> float:
    return lang.table[lang.vocabulary[d.tokens[t].symbol].element].covalent_radius


def derived_connections(d: Diagram, lang: InterpretedLanguage) -> frozenset[tuple[int, int]]:
    """IT-token connections as the language reads them.

    Overlap languages connect two balls when their centre distance is below
    ``overlap_factor`` times the sum of covalent radii; other languages return
    the explicit connection set unchanged.
    """
    _check_language(d, lang)
    if not lang.geometric:
        return d.connections
    factor = lang.params.overlap_factor
    its = [t for t, tok in d.tokens.items() if lang.vocabulary[tok.symbol].kind is Kind.IT]
    for t in its:
        if d.tokens[t].position is None:
            raise StructureError(f"token {t} has no position")
    out = set()
    for i, a in enumerate(its):
        pa = d.tokens[a].position
        for b in its[i + 1 :]:
            if math.dist(pa, d.tokens[b].position) < factor * (token_radius(d, lang, a) + token_radius(d, lang, b)):
                out.add((a, b))
    return frozenset(out)


def abstract_diagram(d: Diagram, lang: InterpretedLanguage) -> MolecularGraph:
    """Read a well-formed diagram as the chemical graph it depicts.

    IT tokens become atoms with the same ids; each DT token becomes a bond
    between its two IT neighbours; overlap languages get one single bond per
    derived connection.
    """
    require_well_formed(d, lang)
    vocab = lang.vocabulary
    atoms = {t: vocab[tok.symbol].element for t, tok in d.tokens.items() if vocab[tok.symbol].kind is Kind.IT}
    bonds = []
    if lang.geometric:
        bonds = [(a, b, 1) for a, b in sorted(derived_connections(d, lang))]
    else:
        for t, tok in d.tokens.items():
            sym = vocab[tok.symbol]
            if sym.kind is Kind.DT:
                a, b = d.neighbors(t)
                bonds.append((a, b, sym.bond_order))
    return MolecularGraph(atoms, bonds, name=d.name)
