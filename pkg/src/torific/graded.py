"""Gradings of toric monoids by finitely generated abelian groups."""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .abelian import (
    Cone,
    FgAbelianGroup,
    GroupHom,
    IntMatrix,
    Lattice,
    Vector,
    cokernel,
    dot,
    smith_normal_form,
    vadd,
)
from .errors import CriterionMismatch, NotSurjective
from .hilbert import slice_minimal
from .ideal import MonoidIdeal, _minimalize, ideal_product, unit_ideal, zero_ideal
from .monoid import ToricMonoid, as_face, sharpen

__all__ = [
    "Grading",
    "CharacterMultiset",
    "degree",
    "degree_zero_monoid",
    "is_taut",
    "is_loose",
    "taut_by_definition",
    "taut_by_criterion",
    "loose_by_definition",
    "loose_by_criterion",
    "dual_taut_check",
    "stabilizer_at_face",
    "reduced_image",
    "balanced_closure",
    "torific_ideal_single",
    "torific_ideal",
    "invariant_ideal_part",
]


@dataclass(frozen=True)
class Grading:
    """``chi: M^gp -> L`` given by an integer matrix on the ambient lattice."""

    monoid: ToricMonoid
    target: FgAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.monoid.ambient_rank):
            raise ValueError(
                f"grading matrix has shape {self.matrix.shape}, expected "
                f"{(self.target.dim, self.monoid.ambient_rank)}"
            )

    @classmethod
    def from_rows(cls, monoid: ToricMonoid, target: FgAbelianGroup, rows) -> "Grading":
        return cls(monoid, target, IntMatrix.from_rows(rows, monoid.ambient_rank))

    def __call__(self, v: Sequence[int]) -> Vector:
        return self.target.reduce(self.matrix @ tuple(v))

    @property
    def rows(self) -> tuple[Vector, ...]:
        return self.matrix.rows

    @cached_property
    def kernel_lattice(self) -> Lattice:
        """``ker(chi^gp)`` inside ``M^gp``."""
        return self.monoid.group.intersect_kernel(self.matrix.rows, self.target.moduli)

    def with_monoid(self, monoid: ToricMonoid) -> "Grading":
        return Grading(monoid, self.target, self.matrix)

    def unit_degrees_vanish(self) -> bool:
        return all(self.target.is_zero_element(self(u)) for u in self.monoid.unit_lattice.basis)

    def reduced(self, warn: bool = True) -> tuple["Grading", str | None]:
        """Replace L by ``L / chi(M^x)`` when units carry nonzero degrees."""
        if self.unit_degrees_vanish():
            return self, None
        units = self.monoid.unit_lattice.basis
        h = GroupHom(
            FgAbelianGroup.free(len(units)),
            self.target,
            IntMatrix.from_columns([self.matrix @ u for u in units], self.target.dim),
        )
        quotient, proj = cokernel(h)
        message = f"units have nonzero degree; target reduced from {self.target} to {quotient}"
        if warn:
            warnings.warn(message, stacklevel=2)
        return Grading(self.monoid, quotient, proj.matrix @ self.matrix), message


def degree(g: Grading, v: Sequence[int]) -> Vector:
    return g(v)


def degree_zero_monoid(g: Grading) -> ToricMonoid:
    m = g.monoid
    if not m.saturated:
        raise ValueError("degree-zero monoid is computed for saturated monoids")
    return ToricMonoid.from_cone(m.cone, g.kernel_lattice)


# ---------------------------------------------------------------------------
# taut and loose


def taut_by_definition(g: Grading) -> bool:
    """The kernel contains an inner element of M."""
    m0 = degree_zero_monoid(g)
    total = (0,) * g.monoid.ambient_rank
    for h in m0.generators:
        total = vadd(total, h)
    return all(dot(n, total) > 0 for n in g.monoid.cone.facets)


def _free_image_cone(g: Grading) -> Cone:
    r = g.target.free_rank
    return Cone.from_generators(r, [g(h)[:r] for h in g.monoid.generators])


def taut_by_criterion(g: Grading) -> bool:
    """The image of M is a group, i.e. its free part spans a linear subspace."""
    return not _free_image_cone(g).rays


def loose_by_definition(g: Grading) -> bool:
    m0 = degree_zero_monoid(g)
    return m0.group == g.kernel_lattice


def loose_by_criterion(g: Grading) -> bool:
    image_rank = _free_image_cone(g).dim
    return degree_zero_monoid(g).rank + image_rank == g.monoid.rank


def _prepare(g: Grading) -> Grading:
    if not g.monoid.saturated:
        raise ValueError("taut/loose are evaluated on saturated monoids")
    return g.reduced()[0]


def is_taut(g: Grading) -> bool:
    g = _prepare(g)
    a, b = taut_by_definition(g), taut_by_criterion(g)
    if a != b:
        raise CriterionMismatch("taut criteria disagree", definition=a, criterion=b)
    return a


def is_loose(g: Grading) -> bool:
    g = _prepare(g)
    a, b = loose_by_definition(g), loose_by_criterion(g)
    if a != b:
        raise CriterionMismatch("loose criteria disagree", definition=a, criterion=b)
    return a


def dual_taut_check(g: Grading) -> bool:
    """Tautness read on the dual side: ``L^v ∩ sigma = {0}``.

    Pulling sigma back along the dual of chi gives the cone of functionals
    y on L with ``y(chi(m)) >= 0`` for all m in M; taut means it is zero.
    Only defined for a free target onto which chi maps surjectively.
    """
    g = _prepare(g)
    if not g.target.is_free():
        raise NotSurjective("dual check needs a free target", target=str(g.target))
    r = g.target.free_rank
    images = [g.matrix @ b for b in g.monoid.group.basis]
    if r:
        if not images:
            raise NotSurjective("chi is not surjective")
        _, dmat, _ = smith_normal_form(IntMatrix.from_columns(images, r))
        diag = [dmat.rows[i][i] for i in range(min(dmat.shape))]
        if len(diag) < r or any(x != 1 for x in diag[:r]):
            raise NotSurjective("chi is not surjective", invariants=diag)
    cone = Cone.from_inequalities(r, [g.matrix @ h for h in g.monoid.generators])
    return cone.is_zero()


# ---------------------------------------------------------------------------
# stabilizers and multisets


def stabilizer_at_face(g: Grading, f) -> tuple[FgAbelianGroup, GroupHom]:
    """``L / chi(F^gp)`` with the projection from L."""
    f = as_face(g.monoid, f)
    basis = Lattice.span(f.generators, g.monoid.ambient_rank).basis
    h = GroupHom(
        FgAbelianGroup.free(len(basis)),
        g.target,
        IntMatrix.from_columns([g(b) for b in basis], g.target.dim)
        if basis
        else IntMatrix.zeros(g.target.dim, 0),
    )
    return cokernel(h)


@dataclass(frozen=True)
class CharacterMultiset:
    """Multiset of nonzero characters, stored as sorted (element, multiplicity) pairs."""

    target: FgAbelianGroup
    entries: tuple[tuple[Vector, int], ...] = ()

    @classmethod
    def from_elements(cls, target: FgAbelianGroup, elements: Iterable[Sequence[int]], drop_zero: bool = True):
        counts = Counter(target.reduce(tuple(e)) for e in elements)
        return cls._from_counts(target, counts, drop_zero)

    @classmethod
    def from_entries(cls, target: FgAbelianGroup, entries: Iterable[tuple[Sequence[int], int]]):
        counts: Counter = Counter()
        for e, k in entries:
            if k < 0:
                raise ValueError("negative multiplicity")
            counts[target.reduce(tuple(e))] += k
        return cls._from_counts(target, counts, True)

    @classmethod
    def _from_counts(cls, target, counts, drop_zero):
        zero = target.zero()
        if not drop_zero and counts.get(zero):
            raise ValueError("zero character in multiset")
        items = sorted((e, k) for e, k in counts.items() if k and e != zero)
        return cls(target, tuple(items))

    def elements(self) -> list[Vector]:
        return [e for e, k in self.entries for _ in range(k)]

    def support(self) -> "CharacterMultiset":
        return CharacterMultiset(self.target, tuple((e, 1) for e, _ in self.entries))

    def total(self) -> Vector:
        s = self.target.zero()
        for e in self.elements():
            s = self.target.add(s, e)
        return s

    def is_balanced(self) -> bool:
        return self.target.is_zero_element(self.total())

    def __len__(self):
        return sum(k for _, k in self.entries)

    def __add__(self, other: "CharacterMultiset") -> "CharacterMultiset":
        return CharacterMultiset.from_elements(self.target, self.elements() + other.elements())


def reduced_image(s: CharacterMultiset, phi: GroupHom) -> CharacterMultiset:
    if phi.source != s.target:
        raise ValueError("homomorphism source differs from the multiset's group")
    return CharacterMultiset.from_elements(phi.target, (phi(e) for e in s.elements()))


def balanced_closure(s: CharacterMultiset) -> CharacterMultiset:
    if s.is_balanced():
        return s
    return CharacterMultiset.from_elements(s.target, s.elements() + [s.target.neg(s.total())])


# ---------------------------------------------------------------------------
# torific ideals and invariant parts


def _slice(g: Grading, value: Sequence[int]) -> list[Vector]:
    m = g.monoid
    return slice_minimal(m.group, m.cone.halfspaces, g.matrix.rows, list(value), list(g.target.moduli))


def torific_ideal_single(g: Grading, l: Sequence[int]) -> MonoidIdeal:
    """Ideal generated by the elements of degree l."""
    m = g.monoid
    if not m.saturated:
        raise ValueError("torific ideals are computed on saturated monoids")
    l = g.target.reduce(tuple(l))
    if m.is_sharp():
        return MonoidIdeal(m, tuple(_slice(g, l)))
    # pass to the sharp quotient, where units no longer shift degrees
    red, _ = g.reduced(warn=False)
    proj = _target_projection(g, red)
    sharp_m, lmap = sharpen(m)
    sharp_rows = [tuple(dot(row, c) for c in lmap.lift_columns) for row in red.matrix.rows]
    sharp_g = Grading(sharp_m, red.target, IntMatrix.from_rows(sharp_rows, sharp_m.ambient_rank))
    gens = _slice(sharp_g, proj(l))
    lifted = [lmap.lift(y) for y in gens]
    return MonoidIdeal(m, _minimalize(m, lifted))


def _target_projection(g: Grading, red: Grading):
    """The map L -> reduced target matching ``Grading.reduced``."""
    if red.target == g.target and red.matrix == g.matrix:
        return g.target.reduce
    units = g.monoid.unit_lattice.basis
    h = GroupHom(
        FgAbelianGroup.free(len(units)),
        g.target,
        IntMatrix.from_columns([g.matrix @ u for u in units], g.target.dim),
    )
    _, proj = cokernel(h)
    return proj


def torific_ideal(g: Grading, s: CharacterMultiset) -> MonoidIdeal:
    out = unit_ideal(g.monoid)
    cache: dict = {}
    for e in s.elements():
        if e not in cache:
            cache[e] = torific_ideal_single(g, e)
        out = ideal_product(out, cache[e])
        if out.is_zero():
            return zero_ideal(g.monoid)
    return out


def invariant_ideal_part(g: Grading, j: MonoidIdeal) -> MonoidIdeal:
    """``J ∩ ker(chi)`` as an ideal of the degree-zero monoid."""
    m0 = degree_zero_monoid(g)
    if j.is_zero():
        return MonoidIdeal(m0, ())
    elems = []
    for b in j.gens:
        target = g.target.neg(g(b))
        for s in _slice(g, target):
            elems.append(vadd(b, s))
    return MonoidIdeal(m0, _minimalize(m0, elems))
