"""Exact labeled-graph isomorphism by backtracking.

Nodes carry labels and undirected edges carry labels; a match is a bijection
preserving both. Pattern nodes are visited rarest signature first, then by
connectivity to the already-matched set, so candidate lists stay short on
chemical graphs.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable, Hashable, Mapping

Node = Hashable


def sort_key(node: Node):
    return (0, node, "") if isinstance(node, int) else (1, 0, repr(node))


def _adjacency(nodes: Mapping[Node, Hashable], edges: Mapping[tuple, Hashable]):
    adj: dict[Node, dict[Node, Hashable]] = {n: {} for n in nodes}
    for (u, v), label in edges.items():
        if u == v:
            raise ValueError(f"loop on node {u!r}")
        adj[u][v] = label
        adj[v][u] = label
    return adj


def _signature(label, nbrs: Mapping[Node, Hashable]):
    return (label, len(nbrs), tuple(sorted(map(repr, nbrs.values()))))


def find_isomorphism(
    nodes1: Mapping[Node, Hashable],
    edges1: Mapping[tuple, Hashable],
    nodes2: Mapping[Node, Hashable],
    edges2: Mapping[tuple, Hashable],
    node_ok: Callable[[Node, Node], bool] | None = None,
) -> dict[Node, Node] | None:
    """Return a label-preserving bijection ``nodes1 -> nodes2`` or ``None``.

    ``edges`` map unordered node pairs to labels. ``node_ok(p, t)`` is an
    optional extra compatibility test on candidate pairs.
    """
    if len(nodes1) != len(nodes2) or len(edges1) != len(edges2):
        return None
    adj1 = _adjacency(nodes1, edges1)
    adj2 = _adjacency(nodes2, edges2)
    sig1 = {n: _signature(nodes1[n], adj1[n]) for n in nodes1}
    sig2 = {n: _signature(nodes2[n], adj2[n]) for n in nodes2}
    rarity = Counter(sig2.values())
    if Counter(sig1.values()) != rarity:
        return None

    by_sig: dict[tuple, list[Node]] = {}
    for n in sorted(nodes2, key=sort_key):
        by_sig.setdefault(sig2[n], []).append(n)

    # visiting order: rarest first, then most-connected to the visited set
    order: list[Node] = []
    placed: set[Node] = set()
    remaining = sorted(nodes1, key=sort_key)
    links = {n: 0 for n in nodes1}
    while remaining:
        best = min(remaining, key=lambda n: (-links[n], rarity[sig1[n]], sort_key(n)))
        remaining.remove(best)
        order.append(best)
        placed.add(best)
        for nb in adj1[best]:
            if nb not in placed:
                links[nb] += 1

    earlier = []
    for k, p in enumerate(order):
        before = set(order[:k])
        earlier.append([q for q in adj1[p] if q in before])

    mapping: dict[Node, Node] = {}
    used: set[Node] = set()

    def candidates(k: int):
        p = order[k]
        prev = earlier[k]
        if prev:
            anchor = mapping[prev[0]]
            pool = sorted((n for n in adj2[anchor] if sig2[n] == sig1[p]), key=sort_key)
        else:
            pool = by_sig[sig1[p]]
        for c in pool:
            if c in used:
                continue
            if any(adj2[c].get(mapping[q]) != adj1[p][q] for q in prev):
                continue
            if sum(1 for n in adj2[c] if n in used) != len(prev):
                continue
            if node_ok is not None and not node_ok(p, c):
                continue
            yield c

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        p = order[k]
        for c in candidates(k):
            mapping[p] = c
            used.add(c)
            if extend(k + 1):
                return True
            del mapping[p]
            used.discard(c)
        return False

    return dict(mapping) if extend(0) else None
