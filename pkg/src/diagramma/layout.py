"""Coordinates for drawing molecules as diagrams.

Bonded atoms are pulled to the sum of their covalent radii and non-bonded
atoms pushed beyond ``clearance`` times that sum, so that a 3D layout read
back with sphere overlap (factor 1.1) recovers exactly the bonds.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import minimize

from .chemgraph import DEFAULT_TABLE, MolecularGraph, ValenceTable

CLEARANCE = 1.3


class LayoutError(RuntimeError):
    pass


def _energy(flat, n, dim, pairs_i, pairs_j, target, bonded):
    pos = flat.reshape(n, dim)
    diff = pos[pairs_i] - pos[pairs_j]
    dist = np.sqrt((diff**2).sum(axis=1) + 1e-12)
    resid = np.where(bonded, dist - target, np.minimum(dist - target, 0.0))
    e = float((resid**2).sum())
    coef = (2 * resid / dist)[:, None] * diff
    grad = np.zeros_like(pos)
    np.add.at(grad, pairs_i, coef)
    np.add.at(grad, pairs_j, -coef)
    return e, grad.ravel()


def embed(
    g: MolecularGraph,
    dim: int = 3,
    seed: int = 0,
    table: ValenceTable = DEFAULT_TABLE,
    overlap_factor: float = 1.1,
    attempts: int = 25,
    decimals: int = 3,
) -> dict[int, tuple[float, ...]]:
    """Positions (picometre units) for every atom, keyed by atom id.

    In 3D the result is verified: an atom pair is within
    ``overlap_factor`` times its radius sum iff it is bonded. In 2D the
    only guarantee is that positions are distinct.
    """
    ids = list(g.atoms)
    n = len(ids)
    if n == 0:
        return {}
    if n == 1:
        return {ids[0]: (0.0,) * dim}
    radius = np.array([table[g.element(a)].covalent_radius for a in ids])
    ii, jj = np.triu_indices(n, 1)
    bonded = np.array([g.bond_order(ids[i], ids[j]) is not None for i, j in zip(ii, jj)])
    rsum = radius[ii] + radius[jj]
    target = np.where(bonded, rsum, CLEARANCE * rsum)
    rng = np.random.default_rng(seed)
    scale = float(radius.mean()) * 2 * max(1.0, n ** (1 / dim))
    best = None
    for _ in range(attempts):
        x0 = rng.normal(scale=scale, size=n * dim)
        res = minimize(_energy, x0, args=(n, dim, ii, jj, target, bonded), jac=True, method="L-BFGS-B")
        pos = res.x.reshape(n, dim)
        pos = np.round(pos - pos.mean(axis=0), decimals) + 0.0  # + 0.0 clears negative zeros
        coords = {a: tuple(float(v) for v in p) for a, p in zip(ids, pos)}
        if len(set(coords.values())) < n:
            continue
        if dim == 2 and best is None:
            best = coords
        if _overlap_matches(coords, g, ids, radius, overlap_factor):
            return coords
    if dim == 2 and best is not None:
        return best
    raise LayoutError(f"no consistent {dim}D layout found for {g.formula()} in {attempts} attempts")


def _overlap_matches(coords, g, ids, radius, factor) -> bool:
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            near = math.dist(coords[ids[i]], coords[ids[j]]) < factor * (radius[i] + radius[j])
            if near != (g.bond_order(ids[i], ids[j]) is not None):
                return False
    return True
