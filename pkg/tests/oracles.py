"""Brute-force oracles used to freeze and cross-check library answers.

Everything here enumerates lattice points in a box and is deliberately
naive; it shares no code with the algorithms under test beyond plain
integer arithmetic.
"""

from __future__ import annotations

import numpy as np


def box_points(d, bound, inequalities=(), equations=(), congruences=(), lower=0):
    """All integer points of ``[lower, bound]^d`` meeting the constraints, as an (N, d) array."""
    axes = [np.arange(lower, bound + 1)] * d
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d).astype(np.int64)
    keep = np.ones(len(grid), dtype=bool)
    for a in inequalities:
        keep &= grid @ np.asarray(a, dtype=np.int64) >= 0
    for e in equations:
        keep &= grid @ np.asarray(e, dtype=np.int64) == 0
    for row, m in congruences:
        keep &= (grid @ np.asarray(row, dtype=np.int64)) % m == 0
    return grid[keep]


def minimal_elements(points):
    """Irreducible nonzero elements of a finite set closed under the relevant decompositions.

    Points are visited by increasing coordinate sum (all points lie in the
    nonnegative orthant, so summands are componentwise smaller).  A point
    is reducible exactly when some already-found irreducible y has
    ``x - y`` in the set.
    """
    pts = {tuple(int(v) for v in p) for p in points}
    zero = tuple([0] * (len(next(iter(pts))) if pts else 0))
    pts.discard(zero)
    out = []
    for x in sorted(pts, key=lambda v: (sum(v), v)):
        if not any(tuple(a - b for a, b in zip(x, y)) in pts for y in out):
            out.append(x)
    return sorted(out)


def minimal_in_monoid(points, member):
    """Elements x of a finite set with no other y in the set and ``x - y in monoid``."""
    pts = sorted({tuple(p) for p in points})
    return [x for x in pts if not any(y != x and member(tuple(a - b for a, b in zip(x, y))) for y in pts)]


def n_combinations(gens, bound):
    """All N-combinations of ``gens`` whose coordinates stay within ``[-bound, bound]``."""
    d = len(gens[0]) if gens else 0
    seen = {tuple([0] * d)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple(a + b for a, b in zip(v, g))
                if w not in seen and all(abs(c) <= bound for c in w):
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen
