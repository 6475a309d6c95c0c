"""Slow, obviously-correct reference checks used only by the tests."""

import itertools
import random

from diagramma.chemgraph import MolecularGraph


def brute_force_isomorphic(g1: MolecularGraph, g2: MolecularGraph) -> bool:
    if len(g1) != len(g2) or len(g1.bond_orders) != len(g2.bond_orders):
        return False
    ids1, ids2 = list(g1.atoms), list(g2.atoms)
    for perm in itertools.permutations(ids2):
        m = dict(zip(ids1, perm))
        if all(g1.element(a) == g2.element(m[a]) for a in ids1) and all(
            g2.bond_order(m[a], m[b]) == o for (a, b), o in g1.bond_orders.items()
        ):
            return True
    return False


def preserves(g1: MolecularGraph, g2: MolecularGraph, m: dict) -> bool:
    """Check a claimed isomorphism edge by edge and atom by atom."""
    if sorted(m) != sorted(g1.atoms) or sorted(m.values()) != sorted(g2.atoms):
        return False
    if any(g1.element(a) != g2.element(b) for a, b in m.items()):
        return False
    for a in g1.atoms:
        for b in g1.atoms:
            if a < b and g1.bond_order(a, b) != g2.bond_order(m[a], m[b]):
                return False
    return True


def permuted(g: MolecularGraph, rng: random.Random, offset: int = 0) -> tuple[MolecularGraph, dict]:
    ids = list(g.atoms)
    new = [i + offset for i in ids]
    rng.shuffle(new)
    mapping = dict(zip(ids, new))
    return g.relabel(mapping), mapping


def valence_count(g: MolecularGraph, atom: int) -> int:
    """Valence by scanning the bond list rather than adjacency."""
    return sum(b.order for b in g.bonds if atom in (b.a, b.b))
