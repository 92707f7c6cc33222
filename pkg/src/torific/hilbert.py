"""Hilbert bases of lattice points in pointed rational cones.

The primary route triangulates the cone (pulling triangulation), lists the
lattice points of each fundamental parallelepiped through the Smith form of
the simplex matrix, and keeps the irreducible candidates.  A second,
independent route runs a normal-form completion on the image lattice and is
used as a cross-check in the test suite.

Slices ``{x : level(x) = value}`` of a monoid are handled by homogenising
with an extra coordinate k and reading off the k = 1 part of the Hilbert
basis of the enlarged monoid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .abelian import (
    Cone,
    IntMatrix,
    Lattice,
    Vector,
    adjugate,
    congruence_kernel,
    dot,
    graded_lex_key,
    inverse_unimodular,
    rank_of,
    smith_normal_form,
    solve_rational,
    vsub,
)
from .errors import DimensionMismatch, NotPointed

__all__ = [
    "ConstrainedMonoidSpec",
    "HilbertBasis",
    "hilbert_basis",
    "hilbert_basis_by_completion",
    "lattice_hilbert_basis",
    "module_generators",
    "slice_minimal",
    "is_member",
]


@dataclass(frozen=True)
class ConstrainedMonoidSpec:
    """Lattice points x of Z^d with ``a.x >= 0``, ``e.x = 0`` and ``c.x = 0 mod m``."""

    ambient_rank: int
    inequalities: tuple[Vector, ...] = ()
    equations: tuple[Vector, ...] = ()
    congruences: tuple[tuple[Vector, int], ...] = ()

    def __post_init__(self):
        d = self.ambient_rank
        object.__setattr__(self, "inequalities", tuple(tuple(int(x) for x in a) for a in self.inequalities))
        object.__setattr__(self, "equations", tuple(tuple(int(x) for x in e) for e in self.equations))
        object.__setattr__(
            self, "congruences", tuple((tuple(int(x) for x in r), int(m)) for r, m in self.congruences)
        )
        rows = list(self.inequalities) + list(self.equations) + [r for r, _ in self.congruences]
        if any(len(r) != d for r in rows):
            raise DimensionMismatch("constraint row of wrong length", ambient_rank=d)
        if any(m < 2 for _, m in self.congruences):
            raise ValueError("congruence moduli must be >= 2")

    @classmethod
    def orthant(cls, d: int, **kw) -> "ConstrainedMonoidSpec":
        eye = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
        return cls(d, inequalities=eye, **kw)

    def lattice(self) -> Lattice:
        rows = list(self.equations) + [r for r, _ in self.congruences]
        moduli = [0] * len(self.equations) + [m for _, m in self.congruences]
        return Lattice.span(congruence_kernel(rows, moduli, self.ambient_rank), self.ambient_rank)


@dataclass(frozen=True)
class HilbertBasis:
    elements: tuple[Vector, ...] = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, v):
        return tuple(v) in self.elements


def is_member(spec: ConstrainedMonoidSpec, x: Sequence[int]) -> bool:
    if len(x) != spec.ambient_rank:
        raise DimensionMismatch(
            f"vector of length {len(x)} for ambient rank {spec.ambient_rank}",
            ambient_rank=spec.ambient_rank,
        )
    return (
        all(dot(a, x) >= 0 for a in spec.inequalities)
        and all(dot(e, x) == 0 for e in spec.equations)
        and all(dot(r, x) % m == 0 for r, m in spec.congruences)
    )


# ---------------------------------------------------------------------------
# full-dimensional pointed cones in Z^g


def _pulling_triangulation(rays: Sequence[Vector], facets: Sequence[Vector], g: int) -> list[tuple[int, ...]]:
    zero_sets = [frozenset(i for i, r in enumerate(rays) if dot(n, r) == 0) for n in facets]

    def faces_of(face: frozenset, k: int):
        cands = {z & face for z in zero_sets}
        cands.discard(face)
        out = []
        for c in cands:
            if rank_of(rays[i] for i in c) == k - 1 and not any(c < o for o in cands if rank_of(rays[i] for i in o) == k - 1):
                out.append(c)
        return out

    def tri(face: frozenset, k: int):
        if len(face) == k:
            return [tuple(sorted(face))]
        apex = min(face)
        out = []
        for f in faces_of(face, k):
            if apex in f:
                continue
            out.extend(tuple(sorted(s + (apex,))) for s in tri(f, k - 1))
        return out

    return tri(frozenset(range(len(rays))), g)


def _parallelepiped_points(simplex: Sequence[Vector], g: int) -> list[Vector]:
    """Nonzero lattice points of ``{sum t_i r_i : 0 <= t_i < 1}``."""
    r = IntMatrix.from_columns(simplex, g)
    det = r.det()
    delta = abs(det)
    if delta == 1:
        return []
    sign = 1 if det > 0 else -1
    adj = adjugate(r.rows)
    u, dmat, _ = smith_normal_form(r)
    u_inv = inverse_unimodular(u)
    diag = [dmat.rows[i][i] for i in range(g)]
    pts = []
    for c in product(*(range(x) for x in diag)):
        if not any(c):
            continue
        z = u_inv @ c
        lam = [(sign * dot(row, z)) % delta for row in adj]
        pts.append(tuple(sum(r.rows[i][j] * lam[j] for j in range(g)) // delta for i in range(g)))
    return pts


def _minimal_elements(cands: Iterable[Vector], in_cone, weight: Sequence[int]) -> list[Vector]:
    """Irreducible elements of a candidate set containing the Hilbert basis.

    ``weight`` is strictly positive on the cone minus zero, so a summand of x
    has smaller weight; it suffices to test x against irreducibles found so far.
    """
    cands = sorted(set(c for c in cands if any(c)), key=lambda c: (dot(weight, c), graded_lex_key(c)))
    out: list[Vector] = []
    for x in cands:
        if not any(in_cone(vsub(x, y)) for y in out):
            out.append(x)
    return sorted(out, key=graded_lex_key)


def _hilbert_full(g: int, inequalities: Sequence[Vector]) -> list[Vector]:
    """Hilbert basis of ``{z in Z^g : a.z >= 0}``, assumed full-dimensional and pointed."""
    if g == 0:
        return []
    cone = Cone.from_inequalities(g, inequalities)
    rays, facets = cone.rays, cone.facets
    cands = set(rays)
    for simplex in _pulling_triangulation(rays, facets, g):
        cands.update(_parallelepiped_points([rays[i] for i in simplex], g))
    weight = [sum(col) for col in zip(*facets)]
    return _minimal_elements(cands, cone.contains, weight)


def lattice_hilbert_basis(lattice: Lattice, inequalities: Sequence[Sequence[int]]) -> list[Vector]:
    """Hilbert basis of ``{x in lattice : a.x >= 0}`` in canonical order.

    Raises :class:`NotPointed` if the cone of solutions contains a line.
    """
    d = lattice.ambient_rank
    basis = list(lattice.basis)
    k = len(basis)
    pulled = [tuple(dot(a, b) for b in basis) for a in inequalities]
    cone_k = Cone.from_inequalities(k, pulled)
    if cone_k.lineality:
        raise NotPointed("solution cone contains a line", lineality=[list(v) for v in cone_k.lineality])
    # restrict to the lattice points of the linear span of the cone
    sub = Lattice.full(k).intersect_kernel(cone_k.equations)
    sub_basis = list(sub.basis)
    g = len(sub_basis)
    pulled_g = [tuple(dot(a, b) for b in sub_basis) for a in pulled]
    out = []
    for z in _hilbert_full(g, pulled_g):
        y = [sum(zi * b[j] for zi, b in zip(z, sub_basis)) for j in range(k)]
        out.append(tuple(sum(yi * b[j] for yi, b in zip(y, basis)) for j in range(d)))
    return sorted(out, key=graded_lex_key)


def hilbert_basis(spec: ConstrainedMonoidSpec) -> HilbertBasis:
    return HilbertBasis(tuple(lattice_hilbert_basis(spec.lattice(), spec.inequalities)))


# ---------------------------------------------------------------------------
# completion route


def _conformal_le(u: Sequence[int], v: Sequence[int]) -> bool:
    """u is sign-compatible with v and no larger in any coordinate."""
    return all(a * b >= 0 and abs(a) <= abs(b) for a, b in zip(u, v))


def _normal_form(v: Vector, basis: Sequence[Vector]) -> Vector:
    changed = True
    while changed and any(v):
        changed = False
        for g in basis:
            if _conformal_le(g, v):
                v = vsub(v, g)
                changed = True
                break
    return v


def _graver_completion(generators: Sequence[Vector]) -> list[Vector]:
    """Conformally minimal elements of the lattice spanned by ``generators``."""
    basis = []
    for g in generators:
        for s in (g, tuple(-x for x in g)):
            if any(s) and s not in basis:
                basis.append(s)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop()
        s = tuple(a + b for a, b in zip(basis[i], basis[j]))
        r = _normal_form(s, basis)
        if any(r):
            basis.append(r)
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))
    minimal = [b for b in basis if not any(c != b and _conformal_le(c, b) for c in basis)]
    return minimal


def hilbert_basis_by_completion(spec: ConstrainedMonoidSpec) -> HilbertBasis:
    """Same output as :func:`hilbert_basis`, by an unrelated algorithm.

    The monoid is embedded into N^m through its facet functionals; its
    Hilbert basis is then the set of nonnegative conformally minimal
    elements of the image lattice.  Much slower; meant for testing.
    """
    lattice = spec.lattice()
    d = spec.ambient_rank
    basis = list(lattice.basis)
    k = len(basis)
    pulled = [tuple(dot(a, b) for b in basis) for a in spec.inequalities]
    cone_k = Cone.from_inequalities(k, pulled)
    if cone_k.lineality:
        raise NotPointed("solution cone contains a line")
    sub = Lattice.full(k).intersect_kernel(cone_k.equations)
    if not sub.basis:
        return HilbertBasis(())
    functionals = [f for f in pulled if any(dot(f, b) for b in sub.basis)]
    image = [tuple(dot(f, b) for f in functionals) for b in sub.basis]
    to_coords = IntMatrix.from_columns(image, len(functionals))
    out = []
    for v in _graver_completion(image):
        if any(x < 0 for x in v):
            continue
        # the map is injective, so the rational solve is exact
        coef = solve_rational(to_coords.columns, v)
        y = [sum(int(c) * b[j] for c, b in zip(coef, sub.basis)) for j in range(k)]
        out.append(tuple(sum(yi * b[j] for yi, b in zip(y, basis)) for j in range(d)))
    return HilbertBasis(tuple(sorted(out, key=graded_lex_key)))


# ---------------------------------------------------------------------------
# slices


def slice_minimal(
    lattice: Lattice,
    inequalities: Sequence[Sequence[int]],
    level_rows: Sequence[Sequence[int]],
    level_values: Sequence[int],
    moduli: Sequence[int] | None = None,
) -> list[Vector]:
    """Minimal elements of the slice ``{x : level_i(x) = value_i (mod m_i)}``
    of the monoid ``lattice ∩ {a.x >= 0}``, up to translation by its
    degree-zero part.  The slice through 0 returns ``[0]``."""
    d = lattice.ambient_rank
    if moduli is None:
        moduli = [0] * len(level_rows)
    basis = list(lattice.basis)
    k = len(basis)
    # homogenised lattice in Z^{k+1}: (z, t) with level(Bz) - t*value = 0 (mod m)
    rows = [tuple(dot(r, b) for b in basis) + (-v,) for r, v in zip(level_rows, level_values)]
    hom = Lattice.span(congruence_kernel(rows, moduli, k + 1), k + 1)
    ineqs = [tuple(dot(a, b) for b in basis) + (0,) for a in inequalities]
    ineqs.append((0,) * k + (1,))
    out = []
    for h in lattice_hilbert_basis(hom, ineqs):
        if h[-1] == 1:
            out.append(tuple(sum(zi * b[j] for zi, b in zip(h[:-1], basis)) for j in range(d)))
    return sorted(out, key=graded_lex_key)


def module_generators(
    spec: ConstrainedMonoidSpec,
    level_rows: Sequence[Sequence[int]],
    level_values: Sequence[int],
    moduli: Sequence[int] | None = None,
) -> list[Vector]:
    """Generators of the slice ``level = value`` as a module over the
    degree-zero monoid.

    A single level row may be passed as a flat vector with a scalar value.
    For the slice through zero the module is the degree-zero monoid itself,
    and its Hilbert basis is returned.
    """
    if level_rows and isinstance(level_rows[0], int):
        level_rows, level_values = [tuple(level_rows)], [level_values]
    if moduli is None:
        moduli = [0] * len(level_rows)
    for r in level_rows:
        if len(r) != spec.ambient_rank:
            raise DimensionMismatch("level row of wrong length", ambient_rank=spec.ambient_rank)
    through_zero = all((v % m == 0) if m else v == 0 for v, m in zip(level_values, moduli))
    if through_zero:
        lat = spec.lattice().intersect_kernel(level_rows, moduli)
        return lattice_hilbert_basis(lat, spec.inequalities)
    return slice_minimal(spec.lattice(), spec.inequalities, level_rows, level_values, moduli)
