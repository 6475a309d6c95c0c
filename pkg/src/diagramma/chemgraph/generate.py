from __future__ import annotations

import random

from .elements import DEFAULT_TABLE, ValenceTable
from .graph import MolecularGraph

_WEIGHTS = {"C": 8, "N": 3, "O": 3, "S": 1, "P": 1, "F": 1, "Cl": 1, "Br": 1, "I": 1}


def random_molecule(seed: int, max_heavy_atoms: int, table: ValenceTable = DEFAULT_TABLE) -> MolecularGraph:
    """Random connected molecule whose valences are all allowed, hydrogen-completed.

    Heavy atoms are grown as a random tree with occasional ring closures; each
    heavy atom first draws a target valence from its allowed set and leftover
    capacity is filled with hydrogens. Deterministic in ``seed``.
    """
    if max_heavy_atoms < 1:
        raise ValueError("max_heavy_atoms must be >= 1")
    rng = random.Random(seed)
    pool = [
        s for s in table if s != "H" and table[s].max_valence > 0 and any(v > 0 for v in table[s].allowed_valences)
    ]
    weights = [_WEIGHTS.get(s, 1) for s in pool]
    n = rng.randint(1, max_heavy_atoms)

    elements: list[str] = []
    free: list[int] = []
    bonds: dict[tuple[int, int], int] = {}

    def new_atom(min_valence: int) -> int | None:
        for _ in range(20):
            el = rng.choices(pool, weights)[0]
            choices = sorted(v for v in table[el].allowed_valences if v >= min_valence)
            if choices:
                elements.append(el)
                free.append(rng.choice(choices))
                return len(elements) - 1
        return None

    if new_atom(0) is None:
        raise ValueError("valence table has no usable heavy elements")
    while len(elements) < n:
        open_sites = [i for i, f in enumerate(free) if f > 0]
        if not open_sites:
            break
        parent = rng.choice(open_sites)
        child = new_atom(1)
        if child is None:
            break
        cap = min(free[parent], free[child], 3)
        order = rng.choices(range(1, cap + 1), [6, 2, 1][:cap])[0]
        bonds[(parent, child)] = order
        free[parent] -= order
        free[child] -= order
    for _ in range(rng.randint(0, 2)):
        open_sites = [i for i, f in enumerate(free) if f > 0]
        pairs = [(a, b) for a in open_sites for b in open_sites if a < b and (a, b) not in bonds]
        if not pairs:
            break
        a, b = rng.choice(pairs)
        bonds[(a, b)] = 1
        free[a] -= 1
        free[b] -= 1

    atoms = {i + 1: el for i, el in enumerate(elements)}
    bond_list = [(a + 1, b + 1, o) for (a, b), o in bonds.items()]
    next_id = len(elements) + 1
    for i, f in enumerate(free):
        for _ in range(f):
            atoms[next_id] = "H"
            bond_list.append((i + 1, next_id, 1))
            next_id += 1
    return MolecularGraph(atoms, bond_list)
