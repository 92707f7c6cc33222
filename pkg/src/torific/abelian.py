"""Exact integer linear algebra.

Matrix normal forms, lattices inside ``Z^d``, finitely generated abelian
groups and their homomorphisms, and rational polyhedral cones kept in both
generator and inequality form.  Every computation uses Python integers (and
:class:`fractions.Fraction` where a rational intermediate is unavoidable), so
there is no overflow and no rounding anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]

__all__ = [
    "IntMatrix",
    "Lattice",
    "FgAbelianGroup",
    "GroupHom",
    "Cone",
    "smith_normal_form",
    "hermite_rows",
    "kernel_basis",
    "congruence_kernel",
    "cokernel",
    "dual_cone",
    "is_pointed",
    "lattice_quotient_saturation",
    "rank_of",
    "primitive",
    "dot",
    "graded_lex_key",
]


# ---------------------------------------------------------------------------
# vector helpers


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def vadd(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: int, a: Sequence[int]) -> Vector:
    return tuple(c * x for x in a)


def vneg(a: Sequence[int]) -> Vector:
    return tuple(-x for x in a)


def is_zero(a: Sequence[int]) -> bool:
    return not any(a)


def content(a: Sequence[int]) -> int:
    return reduce(gcd, a, 0)


def primitive(a: Sequence[int]) -> Vector:
    """Divide a nonzero vector by the gcd of its entries."""
    g = content(a)
    if g == 0:
        return tuple(a)
    return tuple(x // g for x in a)


def graded_lex_key(v: Sequence[int]):
    """Sort key: coordinate sum first, then lexicographic."""
    return (sum(v), tuple(v))


def unit_vector(d: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(d))


def rank_of(vectors: Iterable[Sequence[int]]) -> int:
    """Rank over Q of a list of integer vectors (fraction-free elimination)."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [p[c] * x - f * y for x, y in zip(rows[i], p)]
                g = content(rows[i])
                if g > 1:
                    rows[i] = [x // g for x in rows[i]]
        rank += 1
        if rank == len(rows):
            break
    return rank


def solve_rational(columns: Sequence[Sequence[int]], target: Sequence[int]):
    """Return rational x with sum x_j columns[j] = target, or None."""
    n = len(columns)
    d = len(target)
    aug = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(d)]
    piv_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, d) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(d):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, d):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][n]
    return x


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntMatrix:
    """Row-major integer matrix with explicit shape (so 0-row matrices keep
    their column count)."""

    nrows: int
    ncols: int
    rows: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rows[0])
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, cols: Iterable[Sequence[int]], nrows: int) -> "IntMatrix":
        cols = [tuple(c) for c in cols]
        return cls.from_rows(
            (tuple(c[i] for c in cols) for i in range(nrows)), ncols=len(cols)
        )

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def zeros(cls, r: int, c: int) -> "IntMatrix":
        return cls(r, c, tuple((0,) * c for _ in range(r)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def columns(self) -> tuple[Vector, ...]:
        return tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.ncols, self.nrows, self.columns)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = other.columns
            return IntMatrix(
                self.nrows,
                other.ncols,
                tuple(tuple(dot(r, c) for c in cols) for r in self.rows),
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(dot(r, v) for r in self.rows)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return determinant(self.rows)

    def rank(self) -> int:
        return rank_of(self.rows)

    def is_unimodular(self) -> bool:
        return self.nrows == self.ncols and abs(self.det()) == 1

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def adjugate(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Integer adjugate, so that adj * m = det * I."""
    n = len(rows)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(map(list, rows)) if k != i]
            adj[j][i] = (-1) ** (i + j) * determinant(minor)
    return adj


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U*m*V = D diagonal, d_i | d_{i+1}, U and V unimodular."""
    nr, nc = m.shape
    a = [list(r) for r in m.rows]
    u = [list(unit_vector(nr, i)) for i in range(nr)]
    v = [list(unit_vector(nc, i)) for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        changed = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        changed = True
            if changed:
                best = None
                for i in range(t, nr):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best][t])):
                        best = i
                if best != t:
                    swap_rows(t, best)
                jbest = None
                for j in range(t, nc):
                    if a[t][j] and (jbest is None or abs(a[t][j]) < abs(a[t][jbest])):
                        jbest = j
                if abs(a[t][jbest]) < abs(a[t][t]):
                    swap_cols(t, jbest)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return (
        IntMatrix.from_rows(u, nr),
        IntMatrix.from_rows(a, nc),
        IntMatrix.from_rows(v, nc),
    )


def hermite_rows(vectors: Iterable[Sequence[int]], ncols: int) -> list[Vector]:
    """Reduced row-style Hermite normal form of the lattice spanned by ``vectors``.

    The result is the unique echelon basis with positive pivots and entries
    above each pivot reduced into ``[0, pivot)``; it serves as a canonical
    key for the lattice.
    """
    a = [list(v) for v in vectors if any(v)]
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r >= len(a) or a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        a = a[:r] + [row for row in a[r:] if any(row)]
    return [tuple(row) for row in a[:r]]


def kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Basis (in Hermite form) of the integer kernel ``{x : A x = 0}``."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return [unit_vector(ncols, i) for i in range(ncols)]
    u, d, v = smith_normal_form(IntMatrix.from_rows(rows, ncols))
    rk = sum(1 for i in range(min(d.shape)) if d.rows[i][i])
    cols = v.columns[rk:]
    return hermite_rows(cols, ncols)


def congruence_kernel(rows: Sequence[Sequence[int]], moduli: Sequence[int], ncols: int) -> list[Vector]:
    """Basis of ``{x : row_i . x = 0 (mod m_i)}``; modulus 0 means an equation.

    Each congruence becomes an extra coordinate t with ``row . x - m t = 0``;
    the kernel is then projected back to the first ``ncols`` coordinates,
    which is injective because t is determined by x.
    """
    congr = [i for i, m in enumerate(moduli) if m]
    k = len(congr)
    ext = []
    for i, (r, m) in enumerate(zip(rows, moduli)):
        row = list(r) + [0] * k
        if m:
            row[ncols + congr.index(i)] = -m
        ext.append(row)
    ker = kernel_basis(ext, ncols + k)
    return hermite_rows([v[:ncols] for v in ker], ncols)


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class Lattice:
    """Sublattice of ``Z^d`` stored by its Hermite basis (canonical)."""

    ambient_rank: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, tuple(hermite_rows(vectors, ambient_rank)))

    @classmethod
    def full(cls, d: int) -> "Lattice":
        return cls(d, tuple(unit_vector(d, i) for i in range(d)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def _pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(b) if x) for b in self.basis)

    def reduce(self, v: Sequence[int]) -> Vector:
        """Canonical representative of the coset ``v + self``."""
        v = list(v)
        for b, p in zip(self.basis, self._pivots):
            q = v[p] // b[p]
            if q:
                v = [x - q * y for x, y in zip(v, b)]
        return tuple(v)

    def coordinates(self, v: Sequence[int]):
        """Integer coordinates of v in the Hermite basis, or None if v is not in the lattice."""
        v = list(v)
        coords = []
        for b, p in zip(self.basis, self._pivots):
            if v[p] % b[p]:
                return None
            q = v[p] // b[p]
            coords.append(q)
            if q:
                v = [x - q * y for x, y in zip(v, b)]
        if any(v):
            return None
        return tuple(coords)

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def from_coordinates(self, c: Sequence[int]) -> Vector:
        out = [0] * self.ambient_rank
        for ci, b in zip(c, self.basis):
            if ci:
                out = [x + ci * y for x, y in zip(out, b)]
        return tuple(out)

    def saturation(self) -> "Lattice":
        return Lattice(self.ambient_rank, tuple(lattice_quotient_saturation(self.basis, self.ambient_rank)))

    def is_saturated(self) -> bool:
        return self == self.saturation()

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(b) for b in other.basis)

    def intersect_kernel(self, rows: Sequence[Sequence[int]], moduli: Sequence[int] | None = None) -> "Lattice":
        """Sublattice of elements v with ``row . v = 0 (mod m)`` for each row."""
        if moduli is None:
            moduli = [0] * len(rows)
        in_coords = [[dot(r, b) for b in self.basis] for r in rows]
        ker = congruence_kernel(in_coords, moduli, self.rank)
        return Lattice.span((self.from_coordinates(c) for c in ker), self.ambient_rank)


def lattice_quotient_saturation(sub: Iterable[Sequence[int]], ambient_rank: int) -> list[Vector]:
    """Basis of the saturation ``Z^d ∩ span_Q(sub)``."""
    sub = [tuple(s) for s in sub if any(s)]
    if not sub:
        return []
    orth = kernel_basis(sub, ambient_rank)
    if not orth:
        return [unit_vector(ambient_rank, i) for i in range(ambient_rank)]
    return kernel_basis(orth, ambient_rank)


def extend_to_unimodular(cols: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """Unimodular n x n matrix whose first k columns span the same lattice as
    ``cols`` (which must span a saturated sublattice of ``Z^n``)."""
    k = len(cols)
    if k == 0:
        return IntMatrix.identity(n)
    u, d, v = smith_normal_form(IntMatrix.from_columns(cols, n))
    if any(d.rows[i][i] != 1 for i in range(k)):
        raise ValueError("columns do not span a saturated sublattice")
    # U K V = [I; 0]  =>  K V = U^{-1}[:, :k]
    return inverse_unimodular(u)


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    dt = m.det()
    if abs(dt) != 1:
        raise ValueError("matrix is not unimodular")
    adj = adjugate(m.rows)
    return IntMatrix.from_rows([[x * dt for x in row] for row in adj], m.ncols)


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`` in invariant-factor form."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion invariants must be >= 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion invariants must form a divisibility chain")

    @classmethod
    def free(cls, r: int) -> "FgAbelianGroup":
        return cls(r, ())

    @property
    def dim(self) -> int:
        """Length of element representatives."""
        return self.free_rank + len(self.torsion)

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-slot modulus, 0 for free slots."""
        return (0,) * self.free_rank + self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self):
        if self.free_rank:
            return None
        return reduce(lambda a, b: a * b, self.torsion, 1)

    def reduce(self, v: Sequence[int]) -> Vector:
        if len(v) != self.dim:
            raise ValueError(f"element of length {len(v)} in a group of dimension {self.dim}")
        return tuple(x % m if m else x for x, m in zip(v, self.moduli))

    def zero(self) -> Vector:
        return (0,) * self.dim

    def add(self, a, b) -> Vector:
        return self.reduce(vadd(a, b))

    def neg(self, a) -> Vector:
        return self.reduce(vneg(a))

    def scale(self, c: int, a) -> Vector:
        return self.reduce(vscale(c, a))

    def is_zero_element(self, a) -> bool:
        return is_zero(self.reduce(a))

    def __str__(self):
        parts = ["Z"] * min(self.free_rank, 1)
        if self.free_rank > 1:
            parts = [f"Z^{self.free_rank}"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by an integer matrix acting on representatives."""

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError("matrix shape does not match source/target")
        cols = self.matrix.columns
        for j, m in enumerate(self.source.moduli):
            if m and not self.target.is_zero_element(vscale(m, cols[j])):
                raise ValueError("matrix does not respect the torsion of the source")

    def __call__(self, v: Sequence[int]) -> Vector:
        return self.target.reduce(self.matrix @ tuple(v))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self ∘ other."""
        return GroupHom(other.source, self.target, self.matrix @ other.matrix)


def cokernel(h: GroupHom) -> tuple[FgAbelianGroup, GroupHom]:
    """``target / im(h)`` in invariant-factor form, with the projection."""
    tgt = h.target
    n = tgt.dim
    rel_cols = list(h.matrix.columns)
    for i, t in enumerate(tgt.torsion):
        rel_cols.append(vscale(t, unit_vector(n, tgt.free_rank + i)))
    if not rel_cols:
        q = FgAbelianGroup(n, ())
        return q, GroupHom(tgt, q, IntMatrix.identity(n))
    u, d, _ = smith_normal_form(IntMatrix.from_columns(rel_cols, n))
    diag = [d.rows[i][i] if i < d.ncols else 0 for i in range(n)]
    torsion_slots = [i for i in range(n) if diag[i] >= 2]
    free_slots = [i for i in range(n) if diag[i] == 0]
    q = FgAbelianGroup(len(free_slots), tuple(diag[i] for i in torsion_slots))
    proj_rows = [u.rows[i] for i in free_slots + torsion_slots]
    return q, GroupHom(tgt, q, IntMatrix.from_rows(proj_rows, n))


# ---------------------------------------------------------------------------
# cones


def _double_description(d: int, inequalities: Sequence[Sequence[int]]):
    """Generators of ``{x : a.x >= 0 for all a}`` as (lineality, rays).

    Incremental double description with the combinatorial adjacency test.
    Lineality is kept as a separate basis; rays are extreme modulo it.
    """
    lin: list[Vector] = [unit_vector(d, i) for i in range(d)]
    rays: list[Vector] = []
    zsets: list[frozenset] = []
    seen = []
    for idx, a in enumerate(inequalities):
        a = tuple(a)
        if not any(a):
            continue
        seen.append(idx)
        vals = [dot(a, l) for l in lin]
        k = next((i for i, x in enumerate(vals) if x), None)
        if k is not None:
            l0 = lin[k]
            s = vals[k]
            if s < 0:
                l0, s = vneg(l0), -s
            new_lin = []
            for i, l in enumerate(lin):
                if i == k:
                    continue
                w = primitive(vsub(vscale(s, l), vscale(dot(a, l), l0)))
                if any(w):
                    new_lin.append(w)
            new_rays, new_z = [], []
            for r, z in zip(rays, zsets):
                new_rays.append(primitive(vsub(vscale(s, r), vscale(dot(a, r), l0))))
                new_z.append(z | {idx})
            new_rays.append(primitive(l0))
            new_z.append(frozenset(seen[:-1]))
            lin, rays, zsets = new_lin, new_rays, new_z
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, x in enumerate(vals) if x > 0]
        neg = [i for i, x in enumerate(vals) if x < 0]
        zer = [i for i, x in enumerate(vals) if x == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_z = [zsets[i] for i in pos] + [zsets[i] | {idx} for i in zer]
        for p in pos:
            for q in neg:
                common = zsets[p] & zsets[q]
                adjacent = True
                for t in range(len(rays)):
                    if t != p and t != q and common <= zsets[t]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                w = primitive(vsub(vscale(vals[p], rays[q]), vscale(vals[q], rays[p])))
                if any(w):
                    new_rays.append(w)
                    new_z.append(common | {idx})
        rays, zsets = new_rays, new_z
    return lin, rays


def _orthogonal_projector(basis: Sequence[Sequence[int]], d: int):
    """Function projecting integer vectors orthogonally off span(basis),
    returning a primitive integer representative."""
    if not basis:
        return primitive
    k = len(basis)
    gram = [[Fraction(dot(basis[i], basis[j])) for j in range(k)] for i in range(k)]
    # invert the Gram matrix
    inv = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    g = [row[:] for row in gram]
    for c in range(k):
        p = next(i for i in range(c, k) if g[i][c] != 0)
        g[c], g[p] = g[p], g[c]
        inv[c], inv[p] = inv[p], inv[c]
        pv = g[c][c]
        g[c] = [x / pv for x in g[c]]
        inv[c] = [x / pv for x in inv[c]]
        for i in range(k):
            if i != c and g[i][c] != 0:
                f = g[i][c]
                g[i] = [x - f * y for x, y in zip(g[i], g[c])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[c])]

    def project(v):
        b = [dot(row, v) for row in basis]
        coef = [sum(inv[i][j] * b[j] for j in range(k)) for i in range(k)]
        w = [Fraction(x) for x in v]
        for c, row in zip(coef, basis):
            if c:
                w = [x - c * y for x, y in zip(w, row)]
        den = reduce(lambda a, f: a * f.denominator // gcd(a, f.denominator), w, 1)
        return primitive(tuple(int(x * den) for x in w))

    return project


def _canonical_generators(d: int, lin: Sequence[Vector], rays: Sequence[Vector]):
    lin_basis = tuple(lattice_quotient_saturation(lin, d))
    proj = _orthogonal_projector(lin_basis, d)
    out = {proj(r) for r in rays}
    out.discard((0,) * d)
    return lin_basis, tuple(sorted(out))


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone in ``R^d`` with both descriptions.

    ``rays`` are the primitive extreme rays modulo the lineality space,
    taken orthogonal to it; ``lineality`` is the Hermite basis of the
    lattice points of the lineality space.  Dually ``facets`` are primitive
    inner normals lying in the linear span of the cone and ``equations`` is
    the Hermite basis of the integer orthogonal complement of that span.
    All four are canonical, so ``==`` is set equality of cones.
    """

    ambient_rank: int
    rays: tuple[Vector, ...]
    lineality: tuple[Vector, ...]
    facets: tuple[Vector, ...]
    equations: tuple[Vector, ...]

    @classmethod
    def from_generators(cls, d: int, generators: Iterable[Sequence[int]]) -> "Cone":
        gens = [tuple(g) for g in generators if any(g)]
        for g in gens:
            if len(g) != d:
                raise ValueError("generator of wrong length")
        dlin, drays = _double_description(d, gens)
        equations, facets = _canonical_generators(d, dlin, drays)
        halfspaces = list(facets) + list(equations) + [vneg(e) for e in equations]
        lin, rays = _double_description(d, halfspaces)
        lineality, rays = _canonical_generators(d, lin, rays)
        return cls(d, rays, lineality, facets, equations)

    @classmethod
    def from_inequalities(
        cls, d: int, inequalities: Iterable[Sequence[int]], equations: Iterable[Sequence[int]] = ()
    ) -> "Cone":
        eqs = [tuple(e) for e in equations]
        halfspaces = [tuple(a) for a in inequalities] + eqs + [vneg(e) for e in eqs]
        lin, rays = _double_description(d, halfspaces)
        lineality, rays = _canonical_generators(d, lin, rays)
        gens = list(rays) + list(lineality) + [vneg(x) for x in lineality]
        dlin, drays = _double_description(d, gens)
        equations_, facets = _canonical_generators(d, dlin, drays)
        return cls(d, rays, lineality, facets, equations_)

    @classmethod
    def zero(cls, d: int) -> "Cone":
        return cls.from_generators(d, [])

    # descriptions in the plain V/H form
    @property
    def generators(self) -> tuple[Vector, ...]:
        return self.rays + self.lineality + tuple(vneg(x) for x in self.lineality)

    @property
    def halfspaces(self) -> tuple[Vector, ...]:
        return self.facets + self.equations + tuple(vneg(x) for x in self.equations)

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    def is_pointed(self) -> bool:
        return not self.lineality

    def is_full_dimensional(self) -> bool:
        return not self.equations

    def is_zero(self) -> bool:
        return not self.rays and not self.lineality

    def contains(self, v: Sequence[int]) -> bool:
        return all(dot(n, v) >= 0 for n in self.facets) and all(dot(e, v) == 0 for e in self.equations)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def in_relative_interior(self, v: Sequence[int]) -> bool:
        return all(dot(n, v) > 0 for n in self.facets) and all(dot(e, v) == 0 for e in self.equations)

    def dual(self) -> "Cone":
        return Cone(self.ambient_rank, self.facets, self.equations, self.rays, self.lineality)

    def interior_functional(self) -> Vector:
        """A vector strictly positive on the cone minus its lineality space."""
        return reduce(vadd, self.facets, (0,) * self.ambient_rank)

    def intersect(self, other: "Cone") -> "Cone":
        return Cone.from_inequalities(self.ambient_rank, self.halfspaces + other.halfspaces)

    def face_ray_sets(self) -> list[frozenset]:
        """All faces as sets of ray indices, largest first (pointed cones)."""
        zs = [frozenset(i for i, r in enumerate(self.rays) if dot(n, r) == 0) for n in self.facets]
        faces = {frozenset(range(len(self.rays)))}
        frontier = list(faces)
        while frontier:
            nxt = []
            for f in frontier:
                for z in zs:
                    g = f & z
                    if g != f and g not in faces:
                        faces.add(g)
                        nxt.append(g)
            frontier = nxt
        return sorted(faces, key=lambda s: (-len(s), sorted(s)))


def dual_cone(c: Cone) -> Cone:
    return c.dual()


def is_pointed(c: Cone) -> bool:
    """Pointedness via full-dimensionality of the dual."""
    return c.dual().is_full_dimensional()
