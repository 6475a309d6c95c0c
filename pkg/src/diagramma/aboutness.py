"""Deciding whether a diagram is about a molecule.

A diagram D in language L is about x when some injective interpretation maps
every token to a part of x such that

1. each token's image instantiates the type its symbol maps to;
2. two IT tokens are connected iff their images are directly connected;
3. each DT token's image inheres in the images of the tokens it connects;
4. every part of x whose type is in L's type set is some token's image.

:func:`is_about` searches with a labeled-graph matcher, :func:`verify_interpretation`
checks the four conditions independently, and :func:`brute_force_is_about`
enumerates candidate maps for small cases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .chemgraph import MolecularGraph, Registry, bond_key
from .diaglang import (
    Diagram,
    InterpretedLanguage,
    Kind,
    Part,
    bearers,
    derived_connections,
    instance_of,
    parts_of,
    require_well_formed,
)
from .errors import DiagrammaError
from .matching import find_isomorphism

BRUTE_FORCE_LIMIT = 12
CONNECTED = "connected"


@dataclass(frozen=True)
class Interpretation:
    token_to_part: Mapping[int, Part]

    def __post_init__(self) -> None:
        object.__setattr__(self, "token_to_part", dict(sorted(self.token_to_part.items())))
        if len(set(self.token_to_part.values())) != len(self.token_to_part):
            raise ValueError("interpretation is not injective")

    def __getitem__(self, token: int) -> Part:
        return self.token_to_part[token]

    def __len__(self) -> int:
        return len(self.token_to_part)

    def describe(self) -> dict[str, str]:
        return {str(t): format_part(p) for t, p in self.token_to_part.items()}


def format_part(p: Part) -> str:
    return f"bond {p[0]}-{p[1]}" if isinstance(p, tuple) else f"atom {p}"


@dataclass(frozen=True)
class Counterexample:
    message: str
    tokens: tuple[int, ...] = ()
    parts: tuple[Part, ...] = ()

    def __str__(self) -> str:
        return self.message


@dataclass
class ClauseReport:
    clauses: dict[int, list[Counterexample]] = field(default_factory=lambda: {1: [], 2: [], 3: [], 4: []})

    @property
    def ok(self) -> bool:
        return not any(self.clauses.values())

    def clause_ok(self, n: int) -> bool:
        return not self.clauses[n]

    def summary(self) -> str:
        return ", ".join(f"clause {n}: {'ok' if not ce else ce[0]}" for n, ce in self.clauses.items())


def entity_connected(lang: InterpretedLanguage, x: MolecularGraph, a: int, b: int) -> bool:
    """Direct connection between two atoms of ``x`` as the language sees it.

    A bond that is itself a typed part (a DT instance) mediates the connection
    and so does not count; only untyped bonds connect atoms directly.
    """
    key = bond_key(a, b)
    return a != b and x.bond_order(a, b) is not None and lang.bond_type(x, key) is None


def typed_parts(lang: InterpretedLanguage, x: MolecularGraph) -> list[Part]:
    """Parts of ``x`` instantiating some type of the language."""
    out: list[Part] = [a for a in x.atoms if lang.atom_type(x, a) is not None]
    out.extend(k for k in x.bond_orders if lang.bond_type(x, k) is not None)
    return out


def verify_interpretation(
    d: Diagram, lang: InterpretedLanguage, x: MolecularGraph, interp: Interpretation | Mapping[int, Part]
) -> ClauseReport:
    iota = interp.token_to_part if isinstance(interp, Interpretation) else dict(interp)
    if set(iota) != set(d.tokens):
        raise ValueError("interpretation must be total on the diagram's tokens")
    if len(set(iota.values())) != len(iota):
        raise ValueError("interpretation must be injective")
    report = ClauseReport()
    vocab = lang.vocabulary
    all_parts = set(parts_of(x))

    for t, tok in d.tokens.items():
        want = vocab[tok.symbol].mapped_type
        part = iota[t]
        if part not in all_parts or not instance_of(x, part, want):
            report.clauses[1].append(
                Counterexample(f"token {t} ({tok.symbol}) -> {format_part(part)} is not an instance of {want}", (t,), (part,))
            )

    def image_is_it(t: int) -> bool:
        p = iota[t]
        return p in all_parts and any(instance_of(x, p, ty) for ty in lang.it_types)

    def image_is_dt(t: int) -> bool:
        p = iota[t]
        return p in all_parts and any(instance_of(x, p, ty) for ty in lang.dt_types)

    conns = derived_connections(d, lang)
    it_tokens = [t for t in d.tokens if image_is_it(t)]
    for i, t1 in enumerate(it_tokens):
        for t2 in it_tokens[i + 1 :]:
            diagram_side = (min(t1, t2), max(t1, t2)) in conns
            entity_side = entity_connected(lang, x, iota[t1], iota[t2])
            if diagram_side != entity_side:
                report.clauses[2].append(
                    Counterexample(
                        f"tokens {t1},{t2} connected={diagram_side} but images connected={entity_side}",
                        (t1, t2),
                        (iota[t1], iota[t2]),
                    )
                )

    for t in d.tokens:
        if not image_is_dt(t):
            continue
        hosts = bearers(x, iota[t])
        for n in d.neighbors(t):
            if iota[n] not in hosts:
                report.clauses[3].append(
                    Counterexample(
                        f"{format_part(iota[t])} (token {t}) does not inhere in {format_part(iota[n])} (token {n})",
                        (t, n),
                        (iota[t], iota[n]),
                    )
                )

    image = set(iota.values())
    for part in typed_parts(lang, x):
        if part not in image:
            report.clauses[4].append(Counterexample(f"{format_part(part)} of x is not depicted", (), (part,)))
    return report


def _pattern(d: Diagram, lang: InterpretedLanguage):
    vocab = lang.vocabulary
    nodes = {t: vocab[tok.symbol].mapped_type for t, tok in d.tokens.items() if vocab[tok.symbol].kind is Kind.IT}
    edges: dict[tuple[int, int], str] = {}
    carrier: dict[tuple[int, int], int] = {}
    for a, b in derived_connections(d, lang):
        if a in nodes and b in nodes:
            edges[(a, b)] = CONNECTED
    for t, tok in d.tokens.items():
        sym = vocab[tok.symbol]
        if sym.kind is not Kind.DT:
            continue
        ends = [n for n in d.neighbors(t) if n in nodes]
        if len(ends) != 2:
            raise DiagrammaError(f"DT token {t} must join exactly two IT tokens for matching")
        key = bond_key(*ends)
        if key in edges:
            raise DiagrammaError(f"IT tokens {key} joined twice")
        edges[key] = sym.mapped_type
        carrier[key] = t
    return nodes, edges, carrier


def _target(lang: InterpretedLanguage, x: MolecularGraph):
    nodes = {a: lang.atom_type(x, a) for a in x.atoms if lang.atom_type(x, a) is not None}
    edges: dict[tuple[int, int], str] = {}
    for key in x.bond_orders:
        typed = lang.bond_type(x, key)
        a, b = key
        if a in nodes and b in nodes:
            edges[key] = typed or CONNECTED
        elif typed is not None:
            return None  # typed bond on an untyped atom: no diagram can cover it
    return nodes, edges


def is_about(d: Diagram, lang: InterpretedLanguage, x: MolecularGraph) -> Interpretation | None:
    """Return a witnessing interpretation if ``d`` is about ``x``, else ``None``."""
    require_well_formed(d, lang)
    nodes1, edges1, carrier = _pattern(d, lang)
    target = _target(lang, x)
    if target is None:
        return None
    nodes2, edges2 = target
    m = find_isomorphism(nodes1, edges1, nodes2, edges2)
    if m is None:
        return None
    iota: dict[int, Part] = dict(m)
    for (a, b), t in carrier.items():
        iota[t] = bond_key(m[a], m[b])
    witness = Interpretation(iota)
    report = verify_interpretation(d, lang, x, witness)
    if not report.ok:  # matcher and verifier disagree: a bug, not an answer
        raise AssertionError(f"matcher produced an invalid witness: {report.summary()}")
    return witness


def brute_force_is_about(d: Diagram, lang: InterpretedLanguage, x: MolecularGraph) -> Interpretation | None:
    """Enumerate injective type-respecting token maps and keep the first that verifies.

    Guarded to at most 12 tokens and 12 typed parts of ``x``.
    """
    require_well_formed(d, lang)
    parts = typed_parts(lang, x)
    if len(d.tokens) > BRUTE_FORCE_LIMIT or len(parts) > BRUTE_FORCE_LIMIT:
        raise DiagrammaError(
            f"brute force limited to {BRUTE_FORCE_LIMIT} tokens/parts "
            f"(got {len(d.tokens)} tokens, {len(parts)} parts)"
        )
    tokens = list(d.tokens)
    all_parts = parts_of(x)
    options = [
        [p for p in all_parts if instance_of(x, p, lang.vocabulary[d.tokens[t].symbol].mapped_type)] for t in tokens
    ]
    for choice in itertools.product(*options):
        if len(set(choice)) != len(choice):
            continue
        iota = dict(zip(tokens, choice))
        if verify_interpretation(d, lang, x, iota).ok:
            return Interpretation(iota)
    return None


def about_registry(d: Diagram, lang: InterpretedLanguage, registry: Registry) -> list[str]:
    """Names of registry molecules the diagram is about.

    A molecule file stands for one instance; being about "the class" of a
    registered molecule means being about its registered instance.
    """
    return [e.name for e in registry if is_about(d, lang, e.graph) is not None]
