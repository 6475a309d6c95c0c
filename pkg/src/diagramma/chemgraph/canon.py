"""Canonical codes and isomorphism for molecular graphs.

Canonical labeling uses iterative neighborhood refinement (a Morgan-style
colour refinement over element and bond order) and breaks remaining ties by
individualizing one atom at a time, keeping the lexicographically smallest
leaf certificate. Automorphisms discovered at equal leaves prune the search.
"""

from __future__ import annotations

from ..matching import find_isomorphism
from .graph import MolecularGraph

CanonicalCode = str


def _rank(keys: list) -> list[int]:
    index = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [index[k] for k in keys]


def _refine(colors: list[int], adj: list[list[tuple[int, int]]]) -> list[int]:
    cells = len(set(colors))
    while True:
        keys = [(colors[v], tuple(sorted((colors[u], o) for u, o in adj[v]))) for v in range(len(colors))]
        colors = _rank(keys)
        n_cells = len(set(colors))
        if n_cells == cells:
            return colors
        cells = n_cells


def _individualize(colors: list[int], v: int) -> list[int]:
    return _rank([(c, 0 if w == v else 1) for w, c in enumerate(colors)])


class _Canonizer:
    def __init__(self, g: MolecularGraph):
        self.ids = list(g.atoms)
        pos = {a: i for i, a in enumerate(self.ids)}
        self.elements = [g.atoms[a] for a in self.ids]
        self.adj: list[list[tuple[int, int]]] = [[] for _ in self.ids]
        self.edges = []
        for (a, b), o in g.bond_orders.items():
            i, j = pos[a], pos[b]
            self.adj[i].append((j, o))
            self.adj[j].append((i, o))
            self.edges.append((i, j, o))
        self.best = None
        self.seen: dict[tuple, tuple[list[int], list[int]]] = {}
        self.automorphisms: list[list[int]] = []

    def certificate(self, colors: list[int]):
        # leaf colouring is discrete: colour = final position
        order = [0] * len(colors)
        for v, c in enumerate(colors):
            order[c] = v
        elements = tuple(self.elements[v] for v in order)
        edges = tuple(sorted((min(colors[i], colors[j]), max(colors[i], colors[j]), o) for i, j, o in self.edges))
        return (elements, edges), order

    def orbit_rep(self, path: list[int]):
        parent = list(range(len(self.ids)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.automorphisms:
            if all(gamma[p] == p for p in path):
                for v, w in enumerate(gamma):
                    rv, rw = find(v), find(w)
                    if rv != rw:
                        parent[max(rv, rw)] = min(rv, rw)
        return find

    def search(self, colors: list[int], path: list[int]) -> int | None:
        """Explore below ``path``; a returned depth means "abandon up to here"."""
        colors = _refine(colors, self.adj)
        n = len(colors)
        if len(set(colors)) == n:
            cert, order = self.certificate(colors)
            if cert in self.seen:
                old_order, old_path = self.seen[cert]
                gamma = [0] * n
                for i in range(n):
                    gamma[order[i]] = old_order[i]
                self.automorphisms.append(gamma)
                d = 0
                while d < min(len(path), len(old_path)) - 1 and path[d] == old_path[d]:
                    d += 1
                return d
            self.seen[cert] = (order, list(path))
            if self.best is None or cert < self.best:
                self.best = cert
            return None
        target = min(c for c in set(colors) if colors.count(c) > 1)
        cell = [v for v in range(n) if colors[v] == target]
        depth = len(path)
        explored: list[int] = []
        for v in cell:
            if explored:
                find = self.orbit_rep(path)
                if any(find(v) == find(e) for e in explored):
                    continue
            explored.append(v)
            back = self.search(_individualize(colors, v), path + [v])
            if back is not None and back < depth:
                return back
        return None

    def run(self):
        if not self.ids:
            return ((), ())
        self.search(_rank(self.elements), [])
        return self.best


def canonical_form(g: MolecularGraph) -> CanonicalCode:
    """Deterministic string equal for two graphs iff they are isomorphic."""
    elements, edges = _Canonizer(g).run()
    return ".".join(elements) + "|" + ",".join(f"{i}-{j}:{o}" for i, j, o in edges)


def isomorphic(g1: MolecularGraph, g2: MolecularGraph) -> dict[int, int] | None:
    """Element- and bond-order-preserving atom bijection ``g1 -> g2``, if any."""
    return find_isomorphism(g1.atoms, g1.bond_orders, g2.atoms, g2.bond_orders)
