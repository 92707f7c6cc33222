"""Toric monoids: faces, primes, sharpening, localization, saturation, splitting.

A :class:`ToricMonoid` is a finitely generated submonoid of ``Z^d``.  When
the ``saturated`` flag is set the generator tuple is canonical (units basis
with both signs, then the Hilbert basis of the sharp part reduced modulo the
units), so two saturated monoids are equal exactly when their generators
are.  Unsaturated monoids keep their given generators (deduplicated and
sorted) and are compared through bounded membership search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .abelian import (
    Cone,
    IntMatrix,
    Lattice,
    Vector,
    dot,
    extend_to_unimodular,
    graded_lex_key,
    inverse_unimodular,
    primitive,
    rank_of,
    unit_vector,
    vadd,
    vneg,
    vsub,
)
from .errors import (
    CriterionMismatch,
    NotAFace,
    NotAFacet,
    NotMember,
    NotSharp,
    UndecidedMembership,
)
from .hilbert import lattice_hilbert_basis

__all__ = [
    "ToricMonoid",
    "Face",
    "LatticeMap",
    "SplitResult",
    "FacetSplitResult",
    "rank",
    "faces",
    "facets",
    "as_face",
    "prime_height",
    "is_inner",
    "sharpen",
    "localize",
    "saturate",
    "splits_off",
    "facet_split",
    "facet_split_criteria",
    "monoids_equal",
    "DEFAULT_SEARCH_BUDGET",
]

DEFAULT_SEARCH_BUDGET = 200_000


def _canonical_saturated_generators(cone: Cone, group: Lattice) -> tuple[Vector, ...]:
    d = group.ambient_rank
    units = group.intersect_kernel(cone.facets + cone.equations)
    unit_gens = []
    for u in units.basis:
        unit_gens += [u, vneg(u)]
    ineqs = cone.facets
    if units.rank == 0:
        sharp_part = lattice_hilbert_basis(group, ineqs)
    else:
        # work in a complement of the units inside the group
        coords = [group.coordinates(u) for u in units.basis]
        w = extend_to_unimodular(coords, group.rank)
        comp = [group.from_coordinates(col) for col in w.columns[units.rank:]]
        comp_lattice = Lattice.span(comp, d)
        sharp_part = [units.reduce(h) for h in lattice_hilbert_basis(comp_lattice, ineqs)]
    return tuple(sorted(unit_gens, key=graded_lex_key)) + tuple(sorted(set(sharp_part), key=graded_lex_key))


@dataclass(frozen=True, eq=False)
class ToricMonoid:
    ambient_rank: int
    generators: tuple[Vector, ...]
    saturated: bool = False

    # construction -------------------------------------------------------

    @classmethod
    def from_generators(cls, d: int, generators: Iterable[Sequence[int]], saturated: bool = False) -> "ToricMonoid":
        gens = {tuple(int(x) for x in g) for g in generators}
        if any(len(g) != d for g in gens):
            raise ValueError("generator of wrong length")
        gens.discard((0,) * d)
        m = cls(d, tuple(sorted(gens, key=graded_lex_key)), False)
        return saturate(m) if saturated else m

    @classmethod
    def from_cone(cls, cone: Cone, group: Lattice) -> "ToricMonoid":
        """Saturated monoid ``cone ∩ group``."""
        return cls(cone.ambient_rank, _canonical_saturated_generators(cone, group), True)

    @classmethod
    def orthant(cls, d: int) -> "ToricMonoid":
        return cls(d, tuple(sorted((unit_vector(d, i) for i in range(d)), key=graded_lex_key)), True)

    @classmethod
    def trivial(cls, d: int) -> "ToricMonoid":
        return cls(d, (), True)

    # structure ----------------------------------------------------------

    @cached_property
    def group(self) -> Lattice:
        return Lattice.span(self.generators, self.ambient_rank)

    @cached_property
    def cone(self) -> Cone:
        return Cone.from_generators(self.ambient_rank, self.generators)

    @cached_property
    def unit_lattice(self) -> Lattice:
        """``M ∩ (-M)``: spanned by the generators lying in the lineality space."""
        lin = self.cone.facets + self.cone.equations
        return Lattice.span(
            (g for g in self.generators if all(dot(n, g) == 0 for n in lin)), self.ambient_rank
        )

    @property
    def rank(self) -> int:
        return self.group.rank

    def is_sharp(self) -> bool:
        return self.unit_lattice.rank == 0

    @cached_property
    def positive_functional(self) -> Vector:
        """Sum of facet normals: zero on units, positive on the rest of the cone."""
        return self.cone.interior_functional()

    def contains(self, v: Sequence[int], budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
        v = tuple(v)
        if len(v) != self.ambient_rank:
            raise ValueError("vector of wrong length")
        if not self.cone.contains(v) or not self.group.contains(v):
            return False
        if self.saturated:
            return True
        return _member_search(self, v, budget)

    def __eq__(self, other):
        if not isinstance(other, ToricMonoid):
            return NotImplemented
        return (self.ambient_rank, self.generators, self.saturated) == (
            other.ambient_rank,
            other.generators,
            other.saturated,
        )

    def __hash__(self):
        return hash((self.ambient_rank, self.generators, self.saturated))

    def __repr__(self):
        tag = "sat" if self.saturated else "fg"
        return f"ToricMonoid<{tag}>({list(map(list, self.generators))})"


def _member_search(m: ToricMonoid, x: Vector, budget: int) -> bool:
    """Exhaustive search for x as a nonnegative combination of generators.

    Unit generators only matter modulo the unit lattice, so states are
    remainders reduced into canonical coset representatives; the positive
    functional strictly drops along every other generator, which bounds the
    search.
    """
    units = m.unit_lattice
    ell = m.positive_functional
    steps = [g for g in m.generators if dot(ell, g) > 0]
    start = units.reduce(x)
    seen = {start}
    stack = [start]
    while stack:
        r = stack.pop()
        if not any(r):
            return True
        for g in steps:
            y = vsub(r, g)
            if not m.cone.contains(y):
                continue
            y = units.reduce(y)
            if y in seen:
                continue
            seen.add(y)
            if len(seen) > budget:
                raise UndecidedMembership(
                    "membership search exceeded its budget", vector=list(x), budget=budget
                )
            stack.append(y)
    return False


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class Face:
    parent: ToricMonoid
    generator_subset: frozenset
    supporting_normal: Vector

    @property
    def generators(self) -> tuple[Vector, ...]:
        return tuple(g for i, g in enumerate(self.parent.generators) if i in self.generator_subset)

    @property
    def rank(self) -> int:
        return rank_of(self.generators)

    def monoid(self) -> ToricMonoid:
        return ToricMonoid(self.parent.ambient_rank, self.generators, self.parent.saturated)

    def contains(self, v) -> bool:
        return dot(self.supporting_normal, v) == 0 and self.parent.contains(v)

    def __repr__(self):
        return f"Face({sorted(self.generator_subset)}, normal={list(self.supporting_normal)})"


def _facet_zero_sets(m: ToricMonoid) -> list[tuple[frozenset, Vector]]:
    return [
        (frozenset(i for i, g in enumerate(m.generators) if dot(n, g) == 0), n)
        for n in m.cone.facets
    ]


def _closure(m: ToricMonoid, subset: Iterable[int]) -> frozenset:
    """Generator indices of the smallest face containing the given generators."""
    subset = frozenset(subset)
    out = frozenset(range(len(m.generators)))
    for z, _ in _facet_zero_sets(m):
        if subset <= z:
            out &= z
    return out


def _make_face(m: ToricMonoid, subset: frozenset) -> Face:
    normal = (0,) * m.ambient_rank
    for z, n in _facet_zero_sets(m):
        if subset <= z:
            normal = vadd(normal, n)
    return Face(m, subset, normal)


def _all_faces(m: ToricMonoid) -> list[Face]:
    zs = [z for z, _ in _facet_zero_sets(m)]
    found = {frozenset(range(len(m.generators)))}
    frontier = list(found)
    while frontier:
        nxt = []
        for f in frontier:
            for z in zs:
                g = f & z
                if g not in found:
                    found.add(g)
                    nxt.append(g)
        frontier = nxt
    faces_ = [_make_face(m, s) for s in found]
    return sorted(faces_, key=lambda f: (rank_of(f.generators), sorted(f.generator_subset)))


def _require_sharp_saturated(m: ToricMonoid):
    if not m.saturated:
        m = saturate(m)
    if not m.is_sharp():
        raise NotSharp("monoid has nonzero units", unit_rank=m.unit_lattice.rank)
    return m


def rank(m: ToricMonoid) -> int:
    return m.rank


def faces(m: ToricMonoid) -> list[Face]:
    """All faces of a sharp saturated monoid, ordered by rank."""
    return _all_faces(_require_sharp_saturated(m))


def facets(m: ToricMonoid) -> list[Face]:
    r = m.rank
    return [f for f in _all_faces(m) if f.rank == r - 1]


def as_face(m: ToricMonoid, f) -> Face:
    """Accept a Face of m, or an iterable of generator indices forming a face."""
    if isinstance(f, Face):
        if f.parent != m:
            raise NotAFace("face belongs to a different monoid")
        subset = f.generator_subset
    else:
        subset = frozenset(int(i) for i in f)
        if any(i < 0 or i >= len(m.generators) for i in subset):
            raise NotAFace("generator index out of range", indices=sorted(subset))
    if _closure(m, subset) != subset:
        raise NotAFace("generator subset is not a face", indices=sorted(subset))
    return _make_face(m, subset)


def prime_height(m: ToricMonoid, f) -> int:
    f = as_face(m, f)
    return m.rank - f.rank


def is_inner(m: ToricMonoid, v: Sequence[int]) -> bool:
    if not m.contains(v):
        raise NotMember("element is not in the monoid", vector=list(v))
    return all(dot(n, v) > 0 for n in m.cone.facets)


# ---------------------------------------------------------------------------
# sharpening, localization, saturation


@dataclass(frozen=True)
class LatticeMap:
    """Projection of ``M^gp`` onto the sharp quotient, with a section."""

    source_rank: int
    target_rank: int
    group: Lattice
    lift_columns: tuple[Vector, ...]
    _inverse: IntMatrix
    _unit_rank: int

    def project(self, v: Sequence[int]) -> Vector:
        z = self.group.coordinates(v)
        if z is None:
            raise NotMember("vector not in the group of the monoid", vector=list(v))
        y = self._inverse @ z
        return tuple(y[self._unit_rank:])

    def lift(self, y: Sequence[int]) -> Vector:
        out = (0,) * self.source_rank
        for c, col in zip(y, self.lift_columns):
            if c:
                out = tuple(a + c * b for a, b in zip(out, col))
        return out

    def pull_functional(self, n: Sequence[int]) -> Vector:
        """A functional on the source, restricted to the quotient (primitive)."""
        return primitive(tuple(dot(n, col) for col in self.lift_columns))


def sharpen(m: ToricMonoid) -> tuple[ToricMonoid, LatticeMap]:
    """``M / M^×`` in coordinates of the quotient lattice, with the projection."""
    if not m.saturated:
        m = saturate(m)
    d = m.ambient_rank
    group = m.group
    units = m.unit_lattice
    if units.rank == 0:
        cols = tuple(unit_vector(d, i) for i in range(d))
        ident = Lattice.full(d)
        return m, LatticeMap(d, d, ident, cols, IntMatrix.identity(d), 0)
    coords = [group.coordinates(u) for u in units.basis]
    w = extend_to_unimodular(coords, group.rank)
    w_inv = inverse_unimodular(w)
    s = units.rank
    lift_cols = [group.from_coordinates(col) for col in w.columns[s:]]
    q = group.rank - s
    ineqs = [tuple(dot(n, c) for c in lift_cols) for n in m.cone.facets]
    if q == 1 and all(a[0] <= 0 for a in ineqs):
        lift_cols = [vneg(lift_cols[0])]
        w_inv = IntMatrix.from_rows(
            [row if i != s else vneg(row) for i, row in enumerate(w_inv.rows)], w_inv.ncols
        )
        ineqs = [vneg(a) for a in ineqs]
    quotient = ToricMonoid.from_cone(Cone.from_inequalities(q, ineqs), Lattice.full(q))
    return quotient, LatticeMap(d, q, group, tuple(lift_cols), w_inv, s)


def saturate(m: ToricMonoid) -> ToricMonoid:
    if m.saturated:
        return m
    return ToricMonoid.from_cone(m.cone, m.group)


def localize(m: ToricMonoid, f) -> ToricMonoid:
    """``M[-F]``.  Saturated input gives a saturated (canonical) output."""
    f = as_face(m, f)
    gens = list(m.generators) + [vneg(g) for g in f.generators]
    loc = ToricMonoid.from_generators(m.ambient_rank, gens)
    return saturate(loc) if m.saturated else loc


def monoids_equal(a: ToricMonoid, b: ToricMonoid, budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("monoids live in different ambient lattices")
    if a.saturated and b.saturated:
        return a.generators == b.generators
    return all(b.contains(g, budget) for g in a.generators) and all(a.contains(g, budget) for g in b.generators)


# ---------------------------------------------------------------------------
# splitting


@dataclass(frozen=True)
class SplitResult:
    splits: bool
    complement: Face | None


@dataclass(frozen=True)
class FacetSplitResult:
    splits: bool
    generator: Vector | None
    criteria: tuple[bool, bool, bool, bool, bool]


def _in_ideal(m: ToricMonoid, v: Vector, ideal_gens: Sequence[Vector]) -> bool:
    return any(m.contains(vsub(v, g)) for g in ideal_gens)


def _ideal_complement_face(m: ToricMonoid, ideal_gens: Sequence[Vector]):
    """If the ideal generated by ``ideal_gens`` is prime, its complementary
    face; otherwise None."""
    outside = [i for i, h in enumerate(m.generators) if not _in_ideal(m, h, ideal_gens)]
    k = _closure(m, outside)
    if any(_in_ideal(m, m.generators[i], ideal_gens) for i in k):
        return None
    return _make_face(m, k)


def _direct_complement(m: ToricMonoid, n: Face) -> Face | None:
    """Brute force over faces K with M = N ⊕ K."""
    r = m.rank
    all_idx = frozenset(range(len(m.generators)))
    for k in _all_faces(m):
        if n.rank + k.rank != r:
            continue
        if n.generator_subset | k.generator_subset != all_idx:
            continue
        if rank_of(n.generators + k.generators) == r:
            return k
    return None


def _split_criteria(m: ToricMonoid, n: Face):
    direct = _direct_complement(m, n)
    k = _ideal_complement_face(m, [g for g in n.generators if any(g)])
    crit_b = k is not None and (m.rank - k.rank) >= n.rank
    crit_c = k is not None and k.rank + n.rank <= m.rank
    return direct, k, crit_b, crit_c


def splits_off(m: ToricMonoid, n) -> SplitResult:
    """Whether the face N is a direct summand, decided by primality of
    ``(N^+)`` and its height, and cross-checked by direct reconstruction."""
    m = _require_sharp_saturated(m)
    n = as_face(m, n)
    direct, k, crit_b, crit_c = _split_criteria(m, n)
    if not (crit_b == crit_c == (direct is not None)):
        raise CriterionMismatch(
            "split-off criteria disagree",
            direct=direct is not None,
            prime_height=crit_b,
            prime_rank=crit_c,
        )
    if crit_b and direct.generator_subset != k.generator_subset:
        raise CriterionMismatch("complement faces disagree")
    return SplitResult(crit_b, k if crit_b else None)


def facet_split(m: ToricMonoid, f) -> FacetSplitResult:
    """Facet splitting with all five criteria; raises on disagreement."""
    criteria, generator = facet_split_criteria(m, f)
    if len(set(criteria)) != 1:
        raise CriterionMismatch("facet split criteria disagree", criteria=list(criteria))
    return FacetSplitResult(criteria[0], generator, criteria)


def facet_split_criteria(m: ToricMonoid, f) -> tuple[tuple[bool, ...], Vector | None]:
    """Evaluate five equivalent conditions for a facet to split off.

    They are: direct splitting; ``(F^+)`` prime of height at least
    ``rk M - 1``; ``(F^+)`` prime with at most one edge outside F; ``(F^+)``
    equal to the union of the other height-one primes; and principality of
    the prime ``M \\ F``.
    """
    m = _require_sharp_saturated(m)
    f = as_face(m, f)
    r = m.rank
    if f.rank != r - 1:
        raise NotAFacet("face is not a facet", rank=f.rank, monoid_rank=r)
    direct, k, crit_b, _ = _split_criteria(m, f)
    crit_a = direct is not None
    edges_outside = [ray for ray in m.cone.rays if dot(f.supporting_normal, ray) != 0]
    crit_c = k is not None and len(edges_outside) <= 1
    # (d): union of other height-one primes = complement of the intersection of other facets
    others = [z for z, nrm in _facet_zero_sets(m) if z != f.generator_subset]
    inter = frozenset(range(len(m.generators)))
    for z in others:
        inter &= z
    union_gens = [g for i, g in enumerate(m.generators) if i not in inter]
    fplus = [g for g in f.generators if any(g)]
    crit_d = all(_in_ideal(m, g, union_gens) for g in fplus) and all(
        _in_ideal(m, g, fplus) for g in union_gens
    )
    # (e): minimal generators of M \ F
    outside = [g for i, g in enumerate(m.generators) if i not in f.generator_subset]
    minimal = [g for g in outside if not any(h != g and m.contains(vsub(g, h)) for h in outside)]
    crit_e = len(minimal) == 1
    return (crit_a, crit_b, crit_c, crit_d, crit_e), (minimal[0] if crit_e else None)
