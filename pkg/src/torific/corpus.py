"""Seeded random instances and a fixed suite of symmetric fans.

Shared by the ``corpus`` command and the test-suite so both draw from the
same distributions.
"""

from __future__ import annotations

import random
from typing import Callable

from .abelian import Cone, FgAbelianGroup, primitive, unit_vector, vscale
from .fan import FanAction, KatoFan
from .graded import CharacterMultiset, Grading
from .hilbert import ConstrainedMonoidSpec
from .ideal import MonoidIdeal, ideal_from
from .monoid import ToricMonoid, facets, saturate
from .torify import ModelAction, build_model

__all__ = [
    "random_spec",
    "random_sharp_monoid",
    "random_facet_pair",
    "random_grading",
    "random_ideal",
    "random_model",
    "random_composition",
    "symmetric_fan_suite",
    "GENERATORS",
]


def _row(rng: random.Random, d: int, lo: int, hi: int) -> tuple[int, ...]:
    while True:
        r = tuple(rng.randint(lo, hi) for _ in range(d))
        if any(r):
            return r


def random_spec(rng: random.Random, max_rank: int = 3) -> ConstrainedMonoidSpec:
    """Orthant cut by a few extra half-spaces, maybe an equation or a congruence.

    Staying inside the orthant keeps the box oracle exact.
    """
    d = rng.randint(1, max_rank)
    ineqs = [unit_vector(d, i) for i in range(d)]
    ineqs += [_row(rng, d, -3, 3) for _ in range(rng.randint(0, 2))]
    eqs = []
    if d >= 2 and rng.random() < 0.2:
        eqs.append(_row(rng, d, -2, 2))
    congs = []
    if rng.random() < 0.3:
        congs.append((_row(rng, d, 0, 2), rng.choice([2, 3])))
    return ConstrainedMonoidSpec(d, tuple(ineqs), tuple(eqs), tuple(congs))


def random_sharp_monoid(rng: random.Random, max_rank: int = 3, min_rank: int = 1) -> ToricMonoid:
    """Saturation of a few random vectors spanning a pointed cone."""
    while True:
        d = rng.randint(min_rank, max_rank)
        gens = [_row(rng, d, -1, 3) for _ in range(rng.randint(d, d + 2))]
        cone = Cone.from_generators(d, gens)
        if cone.lineality or cone.dim < min_rank:
            continue
        return saturate(ToricMonoid.from_generators(d, gens))


def random_facet_pair(rng: random.Random):
    while True:
        m = random_sharp_monoid(rng, 3, 1)
        fs = facets(m)
        if fs:
            return m, rng.choice(fs)


_TARGETS = (
    FgAbelianGroup.free(1),
    FgAbelianGroup.free(2),
    FgAbelianGroup(1, (2,)),
    FgAbelianGroup(0, (2,)),
    FgAbelianGroup(0, (3,)),
    FgAbelianGroup(2, (2,)),
)


def random_grading(rng: random.Random, monoid: ToricMonoid | None = None) -> Grading:
    m = monoid or random_sharp_monoid(rng, 3, 1)
    target = rng.choice(_TARGETS)
    rows = [tuple(rng.randint(-2, 2) for _ in range(m.ambient_rank)) for _ in range(target.dim)]
    return Grading.from_rows(m, target, rows)


def random_ideal(rng: random.Random, max_rank: int = 3) -> MonoidIdeal:
    """Diagonal ideals of the orthant, multiples of the extremal generators,
    or random sums of generators.  The diagonal ones in rank three are where
    saturation thresholds above one show up."""
    r = rng.random()
    if r < 0.2 and max_rank >= 3:
        p = ToricMonoid.orthant(3)
        return ideal_from(p, [vscale(rng.randint(1, 7), unit_vector(3, k)) for k in range(3)])
    p = random_sharp_monoid(rng, max_rank, 1)
    if r < 0.5:
        rays = set(p.cone.rays)
        extremal = [g for g in p.generators if primitive(g) in rays]
        elems = [vscale(rng.randint(1, 7), g) for g in extremal]
    else:
        elems = []
        for _ in range(rng.randint(1, 3)):
            v = (0,) * p.ambient_rank
            for g in p.generators:
                k = rng.randint(0, 2)
                v = tuple(x + k * y for x, y in zip(v, g))
            elems.append(v)
    return ideal_from(p, elems)


_MODEL_TARGETS = (FgAbelianGroup.free(1), FgAbelianGroup.free(2), FgAbelianGroup(1, (2,)))


def random_model(rng: random.Random) -> ModelAction:
    """Model action with ``rk M <= 2``, ``|sigma| <= 3`` and entries in [-3, 3]."""
    target = rng.choice(_MODEL_TARGETS)
    rk = rng.randint(0, 2)
    if rk == 0:
        m = ToricMonoid.trivial(0)
    else:
        m = random_sharp_monoid(rng, 2, rk)
    rows = [tuple(rng.randint(-3, 3) for _ in range(m.ambient_rank)) for _ in range(target.dim)]
    g = Grading.from_rows(m, target, rows)
    sigma = []
    for _ in range(rng.randint(1, 3)):
        while True:
            e = target.reduce(tuple(rng.randint(-3, 3) for _ in range(target.dim)))
            if any(e):
                break
        sigma.append(e)
    return build_model(m, g, sigma)


def random_composition(rng: random.Random):
    """A model action with multisets S and T whose supports cover supp(sigma)
    and whose sum is the one-shot multiset R."""
    model = random_model(rng)
    support = model.sigma.support().elements()
    rng.shuffle(support)
    cut = rng.randint(1, len(support))
    s_part, t_part = support[:cut], support[cut:]
    # T is never empty: it repeats part of S when S took everything
    t_part = t_part + rng.sample(s_part, rng.randint(0 if t_part else 1, len(s_part)))
    S = CharacterMultiset.from_elements(model.target, [e for e in s_part for _ in range(rng.randint(1, 2))])
    T = CharacterMultiset.from_elements(model.target, t_part)
    return model, S, T


# ---------------------------------------------------------------------------
# symmetric fans


def _fan(n, rays, cones):
    return KatoFan.from_cones(n, rays, cones)


def symmetric_fan_suite() -> list[tuple[str, FanAction]]:
    """Fans in rank at most three with finite groups of coordinate or
    ray permutations (possibly with signs) preserving them."""
    swap2 = [[0, 1], [1, 0]]
    neg1 = [[-1]]
    rot_p2 = [[0, -1], [1, -1]]
    flip_x = [[-1, 0], [0, 1]]
    hex_rot = [[1, -1], [1, 0]]
    swap12 = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    cyc3 = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    flip_z = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
    flip_x3 = [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]
    rot_sq = [[0, -1, 0], [1, 0, 0], [0, 0, 1]]
    to_far = [[-1, 0, 0], [-1, 1, 0], [-1, 0, 1]]  # e1 -> -e1-e2-e3

    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    cube = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    cube_cones = [[i, j, k] for i in (0, 1) for j in (2, 3) for k in (4, 5)]
    corners = [(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)]
    octa_cones = [[i for i, v in enumerate(corners) if v[axis] == s] for axis in range(3) for s in (1, -1)]
    hexagon = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    p2 = [(1, 0), (0, 1), (-1, -1)]
    p3 = e + [(-1, -1, -1)]
    p2p1 = [(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)]
    square = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]

    suite = [
        ("ray", _fan(1, [(1,)], [[0]]), []),
        ("line-reflection", _fan(1, [(1,), (-1,)], [[0], [1]]), [neg1]),
        ("quadrant-trivial", _fan(2, [(1, 0), (0, 1)], [[0, 1]]), []),
        ("quadrant-swap", _fan(2, [(1, 0), (0, 1)], [[0, 1]]), [swap2]),
        ("skew-cone-swap", _fan(2, [(1, 0), (1, 1)], [[0, 1]]), [[[1, 0], [1, -1]]]),
        ("plane-s3", _fan(2, p2, [[0, 1], [1, 2], [0, 2]]), [swap2, rot_p2]),
        ("plane-transposition", _fan(2, p2, [[0, 1], [1, 2], [0, 2]]), [swap2]),
        (
            "square-dihedral",
            _fan(2, [(1, 0), (0, 1), (-1, 0), (0, -1)], [[0, 1], [1, 2], [2, 3], [3, 0]]),
            [swap2, flip_x],
        ),
        (
            "square-flips",
            _fan(2, [(1, 0), (0, 1), (-1, 0), (0, -1)], [[0, 1], [1, 2], [2, 3], [3, 0]]),
            [flip_x, [[1, 0], [0, -1]]],
        ),
        ("hexagon-dihedral", _fan(2, hexagon, [[i, (i + 1) % 6] for i in range(6)]), [swap2, hex_rot]),
        ("hexagon-rotation", _fan(2, hexagon, [[i, (i + 1) % 6] for i in range(6)]), [hex_rot]),
        ("octant-s3", _fan(3, e, [[0, 1, 2]]), [swap12, cyc3]),
        ("octant-cyclic", _fan(3, e, [[0, 1, 2]]), [cyc3]),
        ("octant-transposition", _fan(3, e, [[0, 1, 2]]), [swap12]),
        ("octant-trivial", _fan(3, e, [[0, 1, 2]]), []),
        ("space-s4", _fan(3, p3, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]), [swap12, cyc3, to_far]),
        ("cube-hyperoctahedral", _fan(3, cube, cube_cones), [swap12, cyc3, flip_z]),
        ("cube-flips", _fan(3, cube, cube_cones), [flip_x3, flip_z, [[1, 0, 0], [0, -1, 0], [0, 0, 1]]]),
        ("octahedral-fan", _fan(3, corners, octa_cones), [swap12, cyc3, flip_z]),
        ("square-pyramid-rotation", _fan(3, square, [[0, 1, 2, 3]]), [rot_sq]),
        ("square-pyramid-reflection", _fan(3, square, [[0, 1, 2, 3]]), [flip_x3]),
        ("two-octants", _fan(3, e + [(0, 0, -1)], [[0, 1, 2], [0, 1, 3]]), [swap12, flip_z]),
        ("prism", _fan(3, p2p1, [[a, b, c] for a, b in ((0, 1), (1, 2), (0, 2)) for c in (3, 4)]), [swap12, flip_z]),
        ("wedge-with-ray", _fan(3, e, [[0, 1], [2]]), [swap12]),
    ]
    return [(name, FanAction(f, tuple(gs))) for name, f, gs in suite]


GENERATORS: dict[str, Callable] = {
    "constrained_spec": random_spec,
    "monoid": random_sharp_monoid,
    "grading": random_grading,
    "ideal": random_ideal,
    "model_action": random_model,
}
