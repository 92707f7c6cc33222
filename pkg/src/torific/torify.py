"""Model-case torification.

From a sharp graded monoid ``(M, chi_M)`` and a multiset ``sigma`` of nonzero
characters build ``P = M ⊕ N^sigma``, with the i-th new basis vector graded
by the i-th entry of sigma, and the divisor that omits the components dual
to those vectors.  Blowing up a torific ideal of P and following the divisor
through each chart makes the action toroidal; this module computes the
charts and checks that claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .abelian import (
    FgAbelianGroup,
    GroupHom,
    IntMatrix,
    Lattice,
    Vector,
    dot,
    unit_vector,
)
from .errors import NotAFace, NotBalanced, NotSharp, UnknownComponent, ZeroCharacterInSigma
from .graded import (
    CharacterMultiset,
    Grading,
    balanced_closure,
    degree_zero_monoid,
    invariant_ideal_part,
    is_loose,
    is_taut,
    reduced_image,
    stabilizer_at_face,
    torific_ideal,
)
from .ideal import MonoidIdeal, blowup_charts, ideal_from
from .monoid import (
    ToricMonoid,
    as_face,
    facet_split,
    faces,
    monoids_equal,
    saturate,
    sharpen,
)

__all__ = [
    "ModelAction",
    "ChartReport",
    "TorifyReport",
    "QuotientReport",
    "build_model",
    "origin_signature",
    "face_signature",
    "divisor_tracking",
    "is_action_toroidal",
    "toroidal_reduction",
    "torify",
    "quotient_report",
    "degree_zero_normalization",
    "two_stage_charts",
    "one_shot_charts",
]


@dataclass(frozen=True)
class ModelAction:
    monoid: ToricMonoid
    grading: Grading
    sigma: CharacterMultiset
    P: ToricMonoid
    chi: Grading
    removed: tuple[Vector, ...]
    new_generators: tuple[Vector, ...]

    @property
    def target(self) -> FgAbelianGroup:
        return self.grading.target


def build_model(m: ToricMonoid, chi_m: Grading, sigma: CharacterMultiset | Iterable[Sequence[int]]) -> ModelAction:
    if chi_m.monoid != m:
        raise ValueError("grading belongs to a different monoid")
    if not m.saturated:
        m = saturate(m)
        chi_m = chi_m.with_monoid(m)
    if not m.is_sharp():
        raise NotSharp("model monoid must be sharp")
    target = chi_m.target
    if isinstance(sigma, CharacterMultiset):
        if sigma.target != target:
            raise ValueError("signature and grading use different groups")
        chars = sigma.elements()
    else:
        # keep the caller's order: it fixes the coordinates of N^sigma
        chars = [target.reduce(tuple(e)) for e in sigma]
        if any(e == target.zero() for e in chars):
            raise ZeroCharacterInSigma("signature contains the zero character")
        sigma = CharacterMultiset.from_elements(target, chars)
    a, r = m.ambient_rank, len(chars)
    d = a + r
    gens = [g + (0,) * r for g in m.generators] + [unit_vector(d, a + i) for i in range(r)]
    p = ToricMonoid.from_generators(d, gens, saturated=True)
    rows = [row + tuple(c[k] for c in chars) for k, row in enumerate(chi_m.matrix.rows)]
    chi = Grading(p, target, IntMatrix.from_rows(rows, d))
    new = tuple(unit_vector(d, a + i) for i in range(r))
    return ModelAction(m, chi_m, sigma, p, chi, new, new)


# ---------------------------------------------------------------------------
# signatures


def origin_signature(model: ModelAction, face=None) -> CharacterMultiset:
    """Signature at the closed orbit, or at the orbit of a face of P."""
    if face is None:
        return model.sigma
    _, proj = stabilizer_at_face(model.chi, face)
    return reduced_image(model.sigma, proj)


def face_signature(model: ModelAction, face) -> list[tuple[Vector, int]]:
    """Signature at a face computed directly as cosets of ``chi(F^gp)``.

    Returns canonical coset representatives in L (with multiplicities) of
    the degrees of the new basis vectors outside the face, skipping those
    that land in ``chi(F^gp)``.
    """
    f = as_face(model.P, face)
    target = model.target
    rels = [model.chi(b) for b in Lattice.span(f.generators, model.P.ambient_rank).basis]
    rels += [tuple(t if j == target.free_rank + i else 0 for j in range(target.dim)) for i, t in enumerate(target.torsion)]
    sub = Lattice.span(rels, target.dim)
    counts: dict = {}
    for e in model.new_generators:
        if e in f.generators:
            continue
        rep = sub.reduce(model.chi(e))
        if any(rep):
            counts[rep] = counts.get(rep, 0) + 1
    return sorted(counts.items())


# ---------------------------------------------------------------------------
# divisors and toroidality


@dataclass(frozen=True)
class DivisorClasses:
    exceptional: tuple[Vector, ...]
    removed: tuple[Vector, ...]
    kept: tuple[Vector, ...]


def divisor_tracking(p: ToricMonoid, chart: ToricMonoid, generator: Sequence[int], removed: Iterable[Vector]) -> DivisorClasses:
    """Sort the facets of a blowup chart into exceptional, removed and kept.

    A chart facet on which the chart's generator is positive lies over the
    centre, so it belongs to the exceptional divisor.  Any other facet is
    the strict transform of a facet of P (same normal); it is removed when
    that facet of P was removed, and kept otherwise.
    """
    removed = {tuple(n) for n in removed}
    old = set(p.cone.facets)
    exc, rem, kept = [], [], []
    for n in chart.cone.facets:
        if dot(n, generator) > 0 or n not in old:
            exc.append(n)
        elif n in removed:
            rem.append(n)
        else:
            kept.append(n)
    return DivisorClasses(tuple(exc), tuple(rem), tuple(kept))


@dataclass(frozen=True)
class ToroidalResult:
    toroidal: bool
    monoid: ToricMonoid
    grading: Grading


def toroidal_reduction(g: Grading, removed: Sequence[Vector]) -> ToroidalResult:
    """Remove divisor components one at a time, as long as each one splits
    off with a degree-zero generator.

    Works on the sharp quotient of the chart with L reduced by the degrees
    of the units.  Returns the monoid of the final divisor together with
    its grading; on failure the sharp quotient itself is returned.
    """
    chart = g.monoid if g.monoid.saturated else saturate(g.monoid)
    facet_normals = set(chart.cone.facets)
    for n in removed:
        if tuple(n) not in facet_normals:
            raise UnknownComponent("removed normal is not a facet of the chart", normal=list(n))
    red, _ = g.with_monoid(chart).reduced(warn=False)
    q, lmap = sharpen(chart)
    rows = [tuple(dot(row, c) for c in lmap.lift_columns) for row in red.matrix.rows]
    qg = Grading(q, red.target, IntMatrix.from_rows(rows, q.ambient_rank))
    start = ToroidalResult(False, q, qg)
    current = q
    for n in removed:
        nbar = lmap.pull_functional(n)
        subset = frozenset(i for i, h in enumerate(current.generators) if dot(nbar, h) == 0)
        try:
            face = as_face(current, subset)
        except NotAFace:
            return start
        if face.rank != current.rank - 1:
            return start
        split = facet_split(current, face)
        if not split.splits or not qg.target.is_zero_element(qg(split.generator)):
            return start
        current = face.monoid()
    return ToroidalResult(True, current, qg.with_monoid(current))


def is_action_toroidal(g: Grading, removed: Sequence[Vector]) -> bool:
    return toroidal_reduction(g, removed).toroidal


# ---------------------------------------------------------------------------
# the pipeline


@dataclass(frozen=True)
class ChartReport:
    monoid: ToricMonoid
    generator: Vector
    merged: tuple[int, ...]
    exceptional: tuple[Vector, ...]
    removed: tuple[Vector, ...]
    kept: tuple[Vector, ...]
    toroidal: bool
    taut: bool
    loose: bool


@dataclass(frozen=True)
class TorifyReport:
    model: ModelAction
    mode: str
    S: CharacterMultiset
    ideal: MonoidIdeal
    vacuous: bool
    charts: tuple[ChartReport, ...]
    toroidal: bool
    input_taut: bool
    input_loose: bool
    notes: tuple[str, ...] = field(default_factory=tuple)


def _choose_S(model: ModelAction, mode: str) -> CharacterMultiset:
    if mode == "balanced":
        return balanced_closure(model.sigma)
    if mode == "raw":
        return model.sigma
    raise ValueError(f"unknown mode {mode!r}")


def torify(model: ModelAction, mode: str = "balanced", S: CharacterMultiset | None = None) -> TorifyReport:
    if S is None:
        S = _choose_S(model, mode)
    else:
        mode = "custom"
    p, chi = model.P, model.chi
    ideal = torific_ideal(chi, S)
    in_taut, in_loose = is_taut(chi), is_loose(chi)
    notes = []
    if ideal.is_zero():
        notes.append("torific ideal is zero; the blowup is empty and the statement is vacuous")
        return TorifyReport(model, mode, S, ideal, True, (), True, in_taut, in_loose, tuple(notes))
    reports = []
    for chart in blowup_charts(p, ideal, saturated=True):
        classes = divisor_tracking(p, chart.monoid, chart.generator, model.removed)
        result = toroidal_reduction(chi.with_monoid(chart.monoid), classes.removed)
        reports.append(
            ChartReport(
                chart.monoid,
                chart.generator,
                chart.indices,
                classes.exceptional,
                classes.removed,
                classes.kept,
                result.toroidal,
                is_taut(result.grading),
                is_loose(result.grading),
            )
        )
    overall = all(r.toroidal for r in reports)
    return TorifyReport(model, mode, S, ideal, False, tuple(reports), overall, in_taut, in_loose, tuple(notes))


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class QuotientReport:
    degree_zero: ToricMonoid
    invariant_ideal: MonoidIdeal
    quotient_charts: tuple[tuple[Vector, ToricMonoid], ...]
    balanced: bool
    charts_match: bool | None


def quotient_report(chi: Grading, ideal: MonoidIdeal, S: CharacterMultiset | None = None, strict: bool = False) -> QuotientReport:
    """Degree-zero data of the torification along ``ideal = I_S``.

    Always returns M0 and the invariant part of the ideal.  When S is given
    and balanced, the degree-zero monoid of each saturated chart is compared
    with the saturated chart of ``(M0, (I_S)0)`` at the same generator.  An
    unbalanced S skips that comparison, or raises NotBalanced when strict.
    """
    m0 = degree_zero_monoid(chi)
    inv = invariant_ideal_part(chi, ideal)
    balanced = S is not None and S.is_balanced()
    if not balanced:
        if strict:
            total = list(S.total()) if S is not None else None
            raise NotBalanced("chart identity needs a balanced multiset", total=total)
        return QuotientReport(m0, inv, (), False, None)
    if ideal.is_zero():
        return QuotientReport(m0, inv, (), True, True)
    qcharts, match = [], True
    for a in ideal.gens:
        chart = saturate(_chart(chi.monoid, ideal.gens, a))
        q = degree_zero_monoid(chi.with_monoid(chart))
        qcharts.append((a, q))
        # balanced: every generator of I_S has degree zero, so it generates (I_S)0 too
        if a not in inv.gens or saturate(_chart(m0, inv.gens, a)) != q:
            match = False
    return QuotientReport(m0, inv, tuple(qcharts), True, match)


def _chart(base: ToricMonoid, gens: Sequence[Vector], a: Vector) -> ToricMonoid:
    return ToricMonoid.from_generators(
        base.ambient_rank, list(base.generators) + [tuple(x - y for x, y in zip(b, a)) for b in gens]
    )


# ---------------------------------------------------------------------------
# helpers used by the invariant tests


def degree_zero_normalization(m: ToricMonoid, g: Grading) -> ToricMonoid:
    """m together with the degree-zero elements of its saturation."""
    extra = degree_zero_monoid(g.with_monoid(saturate(m))).generators
    return ToricMonoid.from_generators(m.ambient_rank, list(m.generators) + list(extra))


def one_shot_charts(model: ModelAction, R: CharacterMultiset) -> frozenset:
    ideal = torific_ideal(model.chi, R)
    return frozenset(c.monoid for c in blowup_charts(model.P, ideal) if c.monoid.is_sharp())


def two_stage_charts(
    model: ModelAction, S: CharacterMultiset, T: CharacterMultiset, second: str = "pullback"
) -> frozenset:
    """Blow up ``I_S`` on P, then a second ideal on every maximal chart.

    ``second="pullback"`` uses the ideal generated on the chart by the
    generators of ``I_T`` on P.  ``second="torific"`` recomputes the torific
    ideal of T from the chart's own grading; its degree-T slice can be larger
    than the pullback, and then the composite differs.
    """
    if second not in ("torific", "pullback"):
        raise ValueError(f"unknown second stage {second!r}")
    out = set()
    first = torific_ideal(model.chi, S)
    pulled = torific_ideal(model.chi, T).gens
    for c in blowup_charts(model.P, first):
        if not c.monoid.is_sharp():
            continue
        if second == "torific":
            ideal = torific_ideal(model.chi.with_monoid(c.monoid), T)
        else:
            ideal = ideal_from(c.monoid, pulled)
        if ideal.is_zero():
            continue
        for d in blowup_charts(c.monoid, ideal):
            if d.monoid.is_sharp():
                out.add(d.monoid)
    return frozenset(out)
