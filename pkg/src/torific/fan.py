"""Embedded rational fans, their subdivisions, and finite symmetry actions.

A fan lives in ``Z^n`` and is stored as a set of cones, each one the set of
its primitive ray generators, closed under taking faces.  The zero cone is
the empty set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .abelian import Cone, IntMatrix, Vector, dot, is_zero, primitive, vadd
from .errors import DimensionMismatch, GroupTooLarge, InvalidFan, NotAnAutomorphism, RayOutsideSupport

__all__ = [
    "KatoFan",
    "FanAction",
    "is_subdivision",
    "stellar_subdivision",
    "barycentric_subdivision",
    "barycenters",
    "is_action_simple",
    "DEFAULT_ORDER_BOUND",
]

DEFAULT_ORDER_BOUND = 10_000

RaySet = frozenset  # frozenset of primitive Vectors


class KatoFan:
    """Fan given by its cones; equality compares maximal cones."""

    def __init__(self, lattice_rank: int, cones: Iterable[RaySet]):
        self.lattice_rank = lattice_rank
        self._cones = frozenset(cones)

    # construction -----------------------------------------------------------

    @classmethod
    def from_cones(cls, n: int, rays: Sequence[Sequence[int]], cones: Iterable[Iterable[int]]) -> "KatoFan":
        """Build from a ray list and cones given as index lists; faces are added."""
        vecs = []
        for r in rays:
            r = tuple(int(x) for x in r)
            if len(r) != n:
                raise DimensionMismatch("ray has wrong length", expected=n, got=len(r))
            if is_zero(r):
                raise InvalidFan("zero ray")
            vecs.append(primitive(r))
        sets = []
        for c in cones:
            idx = list(c)
            if any(i < 0 or i >= len(vecs) for i in idx):
                raise InvalidFan("ray index out of range", cone=idx)
            sets.append([vecs[i] for i in idx])
        return cls.from_ray_sets(n, sets)

    @classmethod
    def from_ray_sets(cls, n: int, cones: Iterable[Iterable[Sequence[int]]]) -> "KatoFan":
        all_cones: set = {frozenset()}
        maximal = []
        for gens in cones:
            gens = [primitive(tuple(g)) for g in gens]
            if any(len(g) != n for g in gens):
                raise DimensionMismatch("ray has wrong length", expected=n)
            c = Cone.from_generators(n, gens)
            if c.lineality:
                raise InvalidFan("cone is not pointed", rays=[list(g) for g in gens])
            if set(c.rays) != set(gens):
                raise InvalidFan("listed vector is not an extremal ray", rays=[list(g) for g in gens])
            for face in c.face_ray_sets():
                all_cones.add(frozenset(c.rays[i] for i in face))
            maximal.append((frozenset(c.rays), c))
        for (s1, c1), (s2, c2) in combinations(maximal, 2):
            common = s1 & s2
            if common not in all_cones or c1.intersect(c2) != Cone.from_generators(n, common):
                raise InvalidFan(
                    "cones do not meet in a common face",
                    first=sorted(map(list, s1)),
                    second=sorted(map(list, s2)),
                )
        return cls(n, all_cones)

    # structure --------------------------------------------------------------

    @property
    def cones(self) -> frozenset:
        return self._cones

    @cached_property
    def rays(self) -> tuple[Vector, ...]:
        return tuple(sorted({r for c in self._cones for r in c}))

    @cached_property
    def maximal_cones(self) -> frozenset:
        return frozenset(c for c in self._cones if not any(c < d for d in self._cones))

    @cached_property
    def _geometry(self) -> dict:
        return {c: Cone.from_generators(self.lattice_rank, c) for c in self._cones}

    def cone(self, rays: RaySet) -> Cone:
        return self._geometry[rays]

    def dim(self, rays: RaySet) -> int:
        return self._geometry[rays].dim

    def faces_of(self, rays: RaySet) -> list[RaySet]:
        return [c for c in self._cones if c <= rays]

    def is_simplicial(self) -> bool:
        return all(len(c) == self.dim(c) for c in self._cones)

    def cones_containing(self, v: Sequence[int]) -> list[RaySet]:
        return [c for c in self._cones if self._geometry[c].contains(v)]

    def in_support(self, v: Sequence[int]) -> bool:
        return any(self._geometry[c].contains(v) for c in self.maximal_cones)

    def index_form(self) -> tuple[tuple[Vector, ...], list[list[int]]]:
        """Sorted rays and maximal cones as sorted index lists."""
        pos = {r: i for i, r in enumerate(self.rays)}
        cones = sorted(sorted(pos[r] for r in c) for c in self.maximal_cones)
        return self.rays, cones

    def __eq__(self, other):
        if not isinstance(other, KatoFan):
            return NotImplemented
        return self.lattice_rank == other.lattice_rank and self.maximal_cones == other.maximal_cones

    def __hash__(self):
        return hash((self.lattice_rank, self.maximal_cones))

    def __repr__(self):
        rays, cones = self.index_form()
        return f"KatoFan(n={self.lattice_rank}, rays={list(rays)}, cones={cones})"


# ---------------------------------------------------------------------------
# subdivisions


def _facets_of(f: KatoFan, c: RaySet) -> list[RaySet]:
    d = f.dim(c)
    return [x for x in f.faces_of(c) if f.dim(x) == d - 1]


def is_subdivision(fine: KatoFan, coarse: KatoFan) -> bool:
    """Every cone of ``fine`` lies in a cone of ``coarse`` and the supports agree.

    Coverage of a maximal coarse cone is checked combinatorially: the fine
    cones of full dimension inside it must form a pseudomanifold whose
    boundary lies on the boundary of the coarse cone.
    """
    if fine.lattice_rank != coarse.lattice_rank:
        return False
    coarse_max = [(c, coarse.cone(c)) for c in coarse.maximal_cones]
    for t in fine.maximal_cones:
        if not any(all(g.contains(r) for r in t) for _, g in coarse_max):
            return False
    for s, g in coarse_max:
        d = g.dim
        inside = [t for t in fine.maximal_cones if fine.dim(t) == d and all(g.contains(r) for r in t)]
        if not inside:
            return False
        counts: dict = {}
        for t in inside:
            for phi in _facets_of(fine, t):
                on_boundary = any(all(dot(n, r) == 0 for r in phi) for n in g.facets)
                if not on_boundary:
                    counts[phi] = counts.get(phi, 0) + 1
        if any(k != 2 for k in counts.values()):
            return False
    return True


def stellar_subdivision(f: KatoFan, v: Sequence[int]) -> KatoFan:
    """Star subdivision at the ray through v."""
    v = tuple(v)
    if len(v) != f.lattice_rank:
        raise DimensionMismatch("ray has wrong length", expected=f.lattice_rank, got=len(v))
    if is_zero(v):
        raise RayOutsideSupport("zero vector does not span a ray")
    v = primitive(v)
    containing = f.cones_containing(v)
    if not containing:
        raise RayOutsideSupport("ray is not in the support of the fan", ray=list(v))
    if v in f.rays:
        return f
    hit = set(containing)
    out = {c for c in f.cones if c not in hit}
    for s in containing:
        for rho in f.faces_of(s):
            if rho not in hit:
                out.add(rho | {v})
    return KatoFan(f.lattice_rank, out)


def barycenters(f: KatoFan) -> dict[int, list[Vector]]:
    """Primitive barycenters of the cones of dimension at least two, by dimension."""
    out: dict[int, list[Vector]] = {}
    for c in f.cones:
        d = f.dim(c)
        if d < 2:
            continue
        total = (0,) * f.lattice_rank
        for r in c:
            total = vadd(total, r)
        out.setdefault(d, []).append(primitive(total))
    return {d: sorted(vs) for d, vs in out.items()}


def barycentric_subdivision(f: KatoFan) -> KatoFan:
    """Stellar subdivisions at the barycenters of the original cones, largest
    dimension first.  Within one dimension the order does not matter."""
    out = f
    centres = barycenters(f)
    for d in sorted(centres, reverse=True):
        for b in centres[d]:
            out = stellar_subdivision(out, b)
    return out


# ---------------------------------------------------------------------------
# symmetry


def _as_matrix(n: int, g) -> IntMatrix:
    m = g if isinstance(g, IntMatrix) else IntMatrix.from_rows([tuple(int(x) for x in row) for row in g], n)
    if m.shape != (n, n):
        raise DimensionMismatch("group element has wrong shape", expected=[n, n], got=list(m.shape))
    return m


@dataclass(frozen=True)
class FanAction:
    """Finite group of lattice automorphisms preserving a fan."""

    fan: KatoFan
    generators: tuple[IntMatrix, ...]
    order_bound: int = DEFAULT_ORDER_BOUND
    _elements: tuple = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self):
        n = self.fan.lattice_rank
        gens = tuple(_as_matrix(n, g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        cones = self.fan.cones
        for k, g in enumerate(gens):
            if abs(g.det()) != 1:
                raise NotAnAutomorphism("matrix is not unimodular", generator=k)
            for c in cones:
                if frozenset(g @ r for r in c) not in cones:
                    raise NotAnAutomorphism("matrix does not map the fan to itself", generator=k)
        object.__setattr__(self, "_elements", _closure(n, gens, self.order_bound))

    @property
    def elements(self) -> tuple[IntMatrix, ...]:
        return self._elements

    @property
    def order(self) -> int:
        return len(self._elements)

    def on(self, other: KatoFan) -> "FanAction":
        """The same group acting on another fan in the same lattice."""
        return FanAction(other, self.generators, self.order_bound)


def _closure(n: int, gens: Sequence[IntMatrix], bound: int) -> tuple[IntMatrix, ...]:
    identity = IntMatrix.identity(n)
    seen = {identity.rows: identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                p = g @ h
                if p.rows not in seen:
                    seen[p.rows] = p
                    nxt.append(p)
                    if len(seen) > bound:
                        raise GroupTooLarge("group generated exceeds the order bound", bound=bound)
        frontier = nxt
    return tuple(seen[k] for k in sorted(seen))


def is_action_simple(a: FanAction) -> bool:
    """Every element stabilising a cone fixes the span of that cone pointwise."""
    for g in a.elements:
        for c in a.fan.cones:
            moved = {r: g @ r for r in c}
            if frozenset(moved.values()) == c and any(moved[r] != r for r in c):
                return False
    return True
