"""Diagram generators for property tests and the selftest suite."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .aboutness import BRUTE_FORCE_LIMIT, typed_parts
from .chemgraph import DEFAULT_TABLE, MolecularGraph, ValenceTable, random_molecule, restrict
from .diaglang import (
    BALLSTICK3D,
    LANGUAGE_IDS,
    SPACEFILL3D,
    WIRE2D,
    WIRE2D_HDEP,
    Diagram,
    Kind,
    Token,
    builtin_language,
    is_well_formed,
)
from .layout import embed

_PREFIX = {
    WIRE2D: ("vertex", "line", 2),
    WIRE2D_HDEP: ("vertex", "line", 2),
    BALLSTICK3D: ("sphere", "stick", 3),
    SPACEFILL3D: ("ball", None, 3),
}


def render_diagram(
    g: MolecularGraph,
    lang_id: str,
    seed: int = 0,
    table: ValenceTable = DEFAULT_TABLE,
    positions: dict[int, tuple[float, ...]] | None = None,
) -> Diagram:
    """Draw ``g`` as a diagram of the given language.

    IT tokens reuse atom ids; DT tokens are numbered after the largest atom id
    in bond order. Hydrogen-suppressed output draws only the heavy skeleton.
    """
    it_prefix, dt_prefix, dim = _PREFIX[lang_id]
    if lang_id == WIRE2D_HDEP:
        g = restrict(g, [e for e in g.atoms.values() if e != "H"])
    if positions is None:
        positions = embed(g, dim=dim, seed=seed, table=table)
    else:
        positions = {a: tuple(positions[a][:dim]) for a in g.atoms}
    tokens = {a: Token(a, f"{it_prefix}:{el}", positions[a]) for a, el in g.atoms.items()}
    conns = set()
    if dt_prefix:
        next_id = max(g.atoms, default=0) + 1
        for b in g.bonds:
            tokens[next_id] = Token(next_id, f"{dt_prefix}:{b.order}")
            conns.add((b.a, next_id))
            conns.add((b.b, next_id))
            next_id += 1
    return Diagram(lang_id, tokens, frozenset(conns), g.name)


MUTATIONS = ("element_swap", "order_swap", "delete_token", "add_token")


def mutate(d: Diagram, kind: str, rng: random.Random, table: ValenceTable = DEFAULT_TABLE) -> Diagram | None:
    """Apply one structural mutation; ``None`` when it does not apply to ``d``."""
    lang = builtin_language(d.language, table)
    vocab = lang.vocabulary
    its = [t for t, tok in d.tokens.items() if vocab[tok.symbol].kind is Kind.IT]
    dts = [t for t, tok in d.tokens.items() if vocab[tok.symbol].kind is Kind.DT]
    tokens = dict(d.tokens)
    conns = set(d.connections)
    if kind == "element_swap":
        if not its:
            return None
        t = rng.choice(its)
        prefix = d.tokens[t].symbol.split(":")[0]
        others = sorted(s for s, sd in vocab.items() if sd.kind is Kind.IT and s != d.tokens[t].symbol)
        tokens[t] = Token(t, rng.choice(others), d.tokens[t].position)
        assert tokens[t].symbol.startswith(prefix)
    elif kind == "order_swap":
        if not dts:
            return None
        t = rng.choice(dts)
        prefix, order = d.tokens[t].symbol.split(":")
        new = rng.choice([k for k in "123" if k != order])
        tokens[t] = Token(t, f"{prefix}:{new}")
    elif kind == "delete_token":
        if not d.tokens:
            return None
        t = rng.choice(sorted(d.tokens))
        doomed = {t}
        if t in its:
            doomed |= {n for n in d.neighbors(t) if n in dts}
        for u in doomed:
            del tokens[u]
        conns = {c for c in conns if not (set(c) & doomed)}
    elif kind == "add_token":
        new_id = max(d.tokens, default=0) + 1
        pairs = [
            (a, b)
            for i, a in enumerate(its)
            for b in its[i + 1 :]
            if not any(set(d.neighbors(t)) == {a, b} for t in dts)
        ]
        dt_syms = sorted(s for s, sd in vocab.items() if sd.kind is Kind.DT)
        if dt_syms and pairs and rng.random() < 0.5:
            a, b = rng.choice(pairs)
            tokens[new_id] = Token(new_id, rng.choice(dt_syms))
            conns |= {(a, new_id), (b, new_id)}
        else:
            it_syms = sorted(s for s, sd in vocab.items() if sd.kind is Kind.IT)
            dim = vocab[it_syms[0]].geometry_arity
            far = 1000.0 + 500.0 * len(d.tokens)
            if d.language == SPACEFILL3D and its and rng.random() < 0.5:
                # drop the new ball onto an existing one so it overlaps
                base = d.tokens[rng.choice(its)].position
                pos = tuple(v + (30.0 if k == 0 else 0.0) for k, v in enumerate(base))
            else:
                pos = (far,) + (0.0,) * (dim - 1)
            tokens[new_id] = Token(new_id, rng.choice(it_syms), pos)
    else:
        raise ValueError(f"unknown mutation {kind!r}")
    out = Diagram(d.language, tokens, frozenset(conns), d.name)
    return out if is_well_formed(out, lang) else None


@dataclass(frozen=True)
class Case:
    diagram: Diagram
    molecule: MolecularGraph
    origin: str  # "positive", a mutation name, or "cross"


def within_guard(d: Diagram, x: MolecularGraph, table: ValenceTable = DEFAULT_TABLE) -> bool:
    lang = builtin_language(d.language, table)
    return len(d.tokens) <= BRUTE_FORCE_LIMIT and len(typed_parts(lang, x)) <= BRUTE_FORCE_LIMIT


def oracle_cases(n: int, seed: int = 0, table: ValenceTable = DEFAULT_TABLE) -> list[Case]:
    """``n`` diagram/molecule pairs within the brute-force guard.

    Roughly 40% exact renderings, 40% mutated renderings, 20% renderings
    paired with a different random molecule.
    """
    rng = random.Random(seed)
    cases: list[Case] = []
    draw = 0
    while len(cases) < n:
        draw += 1
        lang_id = LANGUAGE_IDS[len(cases) % len(LANGUAGE_IDS)]
        x = random_molecule(rng.randrange(10**9), 4 if lang_id == WIRE2D_HDEP else 2, table)
        d = render_diagram(x, lang_id, seed=draw, table=table)
        roll = rng.random()
        if roll < 0.4:
            case = Case(d, x, "positive")
        elif roll < 0.8:
            kind = rng.choice(MUTATIONS)
            m = mutate(d, kind, rng, table)
            if m is None:
                continue
            case = Case(m, x, kind)
        else:
            other = random_molecule(rng.randrange(10**9), 2, table)
            case = Case(d, other, "cross")
        if within_guard(case.diagram, case.molecule, table):
            cases.append(case)
    return cases


def positive_cases(lang_id: str, n: int, seed: int = 0, max_heavy: int = 6, table: ValenceTable = DEFAULT_TABLE):
    """``n`` (diagram, molecule) pairs where the diagram is a rendering of the molecule."""
    rng = random.Random(seed)
    out = []
    for k in range(n):
        x = random_molecule(rng.randrange(10**9), max_heavy, table)
        out.append((render_diagram(x, lang_id, seed=k, table=table), x))
    return out
