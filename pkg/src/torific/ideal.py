"""Monomial ideals of toric monoids, their saturations and toric blowups.

Ideals are stored by minimal generators.  Saturations come from the Rees
cone, spanned by ``(p, 0)`` for p in the monoid and ``(a, 1)`` for the
ideal generators: an element a lies in ``(nI)^sat`` exactly when ``(a, n)``
lies in that cone.  Blowups are compared on the dual side through the
subdivision cut out by the order function ``v -> min_a <a, v>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .abelian import Cone, Lattice, Vector, dot, graded_lex_key, vadd, vsub
from .errors import (
    NotMember,
    NotPrime,
    NotSaturatedParent,
    NotSharp,
    ThresholdSearchExhausted,
    ZeroIdeal,
)
from .hilbert import lattice_hilbert_basis, slice_minimal
from .monoid import (
    DEFAULT_SEARCH_BUDGET,
    ToricMonoid,
    _ideal_complement_face,
    monoids_equal,
    saturate,
)

__all__ = [
    "MonoidIdeal",
    "Subdivision",
    "BlowupChart",
    "ThresholdReport",
    "ideal_from",
    "unit_ideal",
    "zero_ideal",
    "ideal_product",
    "ideal_power",
    "ideal_saturation",
    "saturated_power",
    "is_prime",
    "ideal_height",
    "order_subdivision",
    "blowup_charts",
    "blowups_equal",
    "saturation_threshold",
    "saturation_threshold_report",
    "saturation_threshold_by_subdivision",
    "DEFAULT_WINDOW",
    "DEFAULT_CAP",
]

DEFAULT_WINDOW = 3
DEFAULT_CAP = 16


def _minimalize(parent: ToricMonoid, elements: Iterable[Vector]) -> tuple[Vector, ...]:
    """Drop every element divisible by another; of two associates keep the first."""
    elements = set(elements)
    if parent.is_sharp():
        # a proper divisor has strictly smaller weight, so nothing kept is ever dropped
        ell = parent.positive_functional
        keep = []
        for g in sorted(elements, key=lambda v: (dot(ell, v), graded_lex_key(v))):
            if not any(parent.contains(vsub(g, h)) for h in keep):
                keep.append(g)
        return tuple(sorted(keep, key=graded_lex_key))
    keep: list[Vector] = []
    for g in sorted(elements, key=graded_lex_key):
        if any(parent.contains(vsub(g, h)) for h in keep):
            continue
        keep = [h for h in keep if not parent.contains(vsub(h, g))]
        keep.append(g)
    return tuple(sorted(keep, key=graded_lex_key))


@dataclass(frozen=True)
class MonoidIdeal:
    parent: ToricMonoid
    gens: tuple[Vector, ...]

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(self.parent.contains(vsub((0,) * self.parent.ambient_rank, g)) for g in self.gens)

    def contains(self, v: Sequence[int]) -> bool:
        return any(self.parent.contains(vsub(v, g)) for g in self.gens)

    def contains_ideal(self, other: "MonoidIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def same_ideal(self, other: "MonoidIdeal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def __repr__(self):
        return f"MonoidIdeal({[list(g) for g in self.gens]})"


def ideal_from(parent: ToricMonoid, elements: Iterable[Sequence[int]]) -> MonoidIdeal:
    elems = [tuple(int(x) for x in e) for e in elements]
    for e in elems:
        if not parent.contains(e):
            raise NotMember("ideal generator is not in the monoid", vector=list(e))
    return MonoidIdeal(parent, _minimalize(parent, elems))


def unit_ideal(parent: ToricMonoid) -> MonoidIdeal:
    return MonoidIdeal(parent, ((0,) * parent.ambient_rank,))


def zero_ideal(parent: ToricMonoid) -> MonoidIdeal:
    return MonoidIdeal(parent, ())


def ideal_product(i: MonoidIdeal, j: MonoidIdeal) -> MonoidIdeal:
    if i.parent != j.parent:
        raise ValueError("ideals of different monoids")
    return MonoidIdeal(i.parent, _minimalize(i.parent, (vadd(a, b) for a in i.gens for b in j.gens)))


def ideal_power(i: MonoidIdeal, n: int) -> MonoidIdeal:
    if n < 0:
        raise ValueError("negative power")
    out = unit_ideal(i.parent)
    for _ in range(n):
        out = ideal_product(out, i)
    return out


# ---------------------------------------------------------------------------
# saturation


@lru_cache(maxsize=256)
def _rees_data(i: MonoidIdeal):
    p = i.parent
    d = p.ambient_rank
    gens = [g + (0,) for g in p.generators] + [a + (1,) for a in i.gens]
    cone = Cone.from_generators(d + 1, gens)
    lattice = Lattice.span([b + (0,) for b in p.group.basis] + [(0,) * d + (1,)], d + 1)
    return cone, lattice


def _check_saturated_sharp(p: ToricMonoid):
    if not p.saturated:
        raise NotSaturatedParent("parent monoid is not saturated")
    if not p.is_sharp():
        raise NotSharp("sharpen the parent before saturating ideals")


@lru_cache(maxsize=256)
def _rees_basis(i: MonoidIdeal) -> dict[int, tuple[Vector, ...]]:
    """Hilbert basis of the saturated Rees monoid, grouped by positive level."""
    cone, lattice = _rees_data(i)
    levels: dict[int, list[Vector]] = {}
    for h in lattice_hilbert_basis(lattice, cone.halfspaces):
        if h[-1] > 0:
            levels.setdefault(h[-1], []).append(h[:-1])
    return {k: tuple(v) for k, v in levels.items()}


@lru_cache(maxsize=1024)
def _rees_level(i: MonoidIdeal, n: int) -> tuple[Vector, ...]:
    # every level-n element is a level-l basis element plus a level n-l element
    if n == 0:
        return ((0,) * i.parent.ambient_rank,)
    cands = set()
    for level, hs in _rees_basis(i).items():
        if level <= n:
            cands.update(vadd(h, s) for h in hs for s in _rees_level(i, n - level))
    # x is a minimal generator iff x - p drops out of (nI)^sat for every generator p
    cone, _ = _rees_data(i)
    keep = [
        x for x in cands if not any(cone.contains(vsub(x, g) + (n,)) for g in i.parent.generators)
    ]
    return tuple(sorted(keep, key=graded_lex_key))


def saturated_power(i: MonoidIdeal, n: int, method: str = "rees") -> MonoidIdeal:
    """``(nI)^sat``, read off level n of the Rees cone.

    ``method="rees"`` assembles level n from the Hilbert basis of the Rees
    monoid, computed once per ideal; ``method="slice"`` solves the level-n
    slice from scratch.
    """
    _check_saturated_sharp(i.parent)
    if n < 0:
        raise ValueError("negative power")
    if i.is_zero():
        return i
    if n == 0:
        return unit_ideal(i.parent)
    if method == "rees":
        return MonoidIdeal(i.parent, _rees_level(i, n))
    if method != "slice":
        raise ValueError(f"unknown method {method!r}")
    cone, lattice = _rees_data(i)
    d = i.parent.ambient_rank
    level = (0,) * d + (1,)
    pts = slice_minimal(lattice, cone.halfspaces, [level], [n])
    return MonoidIdeal(i.parent, tuple(sorted((x[:-1] for x in pts), key=graded_lex_key)))


def ideal_saturation(i: MonoidIdeal) -> MonoidIdeal:
    return saturated_power(i, 1)


# ---------------------------------------------------------------------------
# primes


def is_prime(i: MonoidIdeal) -> bool:
    _check_saturated_sharp(i.parent)
    if i.is_unit():
        return False
    return _ideal_complement_face(i.parent, list(i.gens)) is not None


def ideal_height(i: MonoidIdeal) -> int:
    if not is_prime(i):
        raise NotPrime("height is defined here for prime ideals only", gens=[list(g) for g in i.gens])
    k = _ideal_complement_face(i.parent, list(i.gens))
    return i.parent.rank - k.rank


# ---------------------------------------------------------------------------
# subdivisions and charts


@dataclass(frozen=True)
class Subdivision:
    """Maximal cells of linearity of the order function on the dual cone.

    ``labels[k]`` lists the indices of the generators attaining the
    minimum on the interior of ``cells[k]``.
    """

    support: Cone
    cells: tuple[Cone, ...]
    labels: tuple[tuple[int, ...], ...]

    def cell_set(self) -> frozenset:
        return frozenset(self.cells)

    def __eq__(self, other):
        if not isinstance(other, Subdivision):
            return NotImplemented
        return self.support == other.support and self.cell_set() == other.cell_set()

    def __hash__(self):
        return hash((self.support, self.cell_set()))

    def refines(self, other: "Subdivision") -> bool:
        return self.support == other.support and all(
            any(big.contains_cone(c) for big in other.cells) for c in self.cells
        )


def order_subdivision(i: MonoidIdeal) -> Subdivision:
    if i.is_zero():
        raise ZeroIdeal("order subdivision of the zero ideal")
    p = i.parent
    d = p.ambient_rank
    sigma = Cone.from_inequalities(d, p.generators)
    cells: dict[Cone, list[int]] = {}
    for k, a in enumerate(i.gens):
        ineqs = list(p.generators) + [vsub(b, a) for b in i.gens if b != a]
        cell = Cone.from_inequalities(d, ineqs)
        if cell.dim == sigma.dim:
            cells.setdefault(cell, []).append(k)
    ordered = sorted(cells.items(), key=lambda kv: kv[1])
    return Subdivision(sigma, tuple(c for c, _ in ordered), tuple(tuple(v) for _, v in ordered))


@dataclass(frozen=True)
class BlowupChart:
    monoid: ToricMonoid
    generator: Vector
    indices: tuple[int, ...]


def _chart_monoid(p: ToricMonoid, gens: Sequence[Vector], a: Vector) -> ToricMonoid:
    return ToricMonoid.from_generators(p.ambient_rank, list(p.generators) + [vsub(b, a) for b in gens])


def blowup_charts(p: ToricMonoid, i: MonoidIdeal, saturated: bool = True) -> list[BlowupChart]:
    """One chart ``P[I - a]`` per generator a, merged when charts coincide."""
    if i.is_zero():
        raise ZeroIdeal("blowup along the zero ideal")
    charts: list[BlowupChart] = []
    for k, a in enumerate(i.gens):
        m = _chart_monoid(p, i.gens, a)
        if saturated:
            m = saturate(m)
        for n, c in enumerate(charts):
            if monoids_equal(c.monoid, m):
                charts[n] = BlowupChart(c.monoid, c.generator, c.indices + (k,))
                break
        else:
            charts.append(BlowupChart(m, a, (k,)))
    return charts


def blowups_equal(p: ToricMonoid, i: MonoidIdeal, j: MonoidIdeal) -> bool:
    if i.parent != p or j.parent != p:
        raise ValueError("ideals must belong to the given monoid")
    return order_subdivision(i) == order_subdivision(j)


# ---------------------------------------------------------------------------
# saturation thresholds


@dataclass(frozen=True)
class ThresholdReport:
    threshold: int
    window_verified: int
    certified: bool

    def to_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "window_verified": self.window_verified,
            "certified": self.certified,
        }


class _ThresholdData:
    """Caches ``(nI)^sat`` and the charts it induces."""

    def __init__(self, p: ToricMonoid, i: MonoidIdeal, budget: int):
        self.p, self.i, self.budget = p, i, budget
        self.power = lru_cache(maxsize=None)(lambda n: saturated_power(i, n))
        self.targets = [saturate(_chart_monoid(p, i.gens, a)) for a in i.gens]

    def power_chart(self, n: int, a: Vector) -> ToricMonoid:
        na = tuple(n * x for x in a)
        return _chart_monoid(self.p, self.power(n).gens, na)

    def identity_holds(self, n: int) -> bool:
        return all(
            monoids_equal(self.power_chart(n, a), t, self.budget) for a, t in zip(self.i.gens, self.targets)
        )

    def monotone_step(self, n: int) -> bool:
        """``P[(nI)^sat - na] ⊆ P[((n+1)I)^sat - (n+1)a]`` for every generator a.

        Called once the identity holds at n + 1, so the right-hand chart is
        the saturated target and membership is a cone and lattice test.
        """
        return all(
            all(t.contains(g) for g in self.power_chart(n, a).generators) for a, t in zip(self.i.gens, self.targets)
        )


def _validate_threshold_input(p: ToricMonoid, i: MonoidIdeal):
    if i.is_zero():
        raise ZeroIdeal("threshold of the zero ideal")
    if i.parent != p:
        raise ValueError("ideal must belong to the given monoid")
    _check_saturated_sharp(p)


def saturation_threshold_report(
    p: ToricMonoid,
    i: MonoidIdeal,
    window: int = DEFAULT_WINDOW,
    cap: int = DEFAULT_CAP,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> ThresholdReport:
    """Least n with ``P[I - a]^sat = P[(nI)^sat - na]`` for all generators a.

    The chart of ``(nI)^sat`` only grows with n and is bounded by the
    saturated chart, so once the identity holds it holds for all larger n.
    That monotonicity is checked explicitly across the window, together with
    the identity itself, before a value is returned.
    """
    _validate_threshold_input(p, i)
    data = _ThresholdData(p, i, budget)
    for n in range(1, cap + 1):
        if not data.identity_holds(n):
            continue
        for m in range(n, n + window):
            if not data.identity_holds(m + 1) or not data.monotone_step(m):
                raise ThresholdSearchExhausted(
                    "identity found but not stable across the window", candidate=n, failed_at=m
                )
        return ThresholdReport(n, window, True)
    raise ThresholdSearchExhausted("no threshold up to the cap", cap=cap)


def saturation_threshold(p: ToricMonoid, i: MonoidIdeal, window: int = DEFAULT_WINDOW, cap: int = DEFAULT_CAP) -> int:
    return saturation_threshold_report(p, i, window, cap).threshold


def saturation_threshold_by_subdivision(
    p: ToricMonoid, i: MonoidIdeal, cap: int = DEFAULT_CAP, budget: int = DEFAULT_SEARCH_BUDGET
) -> int:
    """Least n for which blowing up ``(nI)^sat`` is already normal.

    Works purely with ``J = (nI)^sat``: its order subdivision must agree with
    that of I, and the chart ``P[J - b]`` at the generator b owning each
    maximal cell must be saturated.  Charts at the remaining generators are
    localizations of these and need no separate check.
    """
    _validate_threshold_input(p, i)
    target = order_subdivision(i)
    for n in range(1, cap + 1):
        j = saturated_power(i, n)
        sub = order_subdivision(j)
        if sub != target:
            continue
        ok = True
        for labels in sub.labels:
            chart = _chart_monoid(p, j.gens, j.gens[labels[0]])
            if not monoids_equal(chart, saturate(chart), budget):
                ok = False
                break
        if ok:
            return n
    raise ThresholdSearchExhausted("no threshold up to the cap", cap=cap)
