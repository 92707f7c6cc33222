"""
Torifying a one-dimensional torus acting with weights 1, 1, -1
===============================================================

"""

from torific.abelian import FgAbelianGroup
from torific.graded import Grading, torific_ideal
from torific.monoid import ToricMonoid
from torific.torify import build_model, quotient_report, torify

# the model: P = N^3 graded by (1, 1, -1), every coordinate hyperplane
# except the toric boundary is removed from the divisor
Z = FgAbelianGroup.free(1)
point = ToricMonoid.trivial(0)
model = build_model(point, Grading.from_rows(point, Z, [()]), [(1,), (1,), (-1,)])
print("P generators:", model.P.generators)
print("degrees:", model.chi.matrix.rows[0])

# balanced mode appends minus the sum, giving S = {1, 1, -1, -1}
report = torify(model, "balanced")
print("S:", report.S.elements())
print("torific ideal:", report.ideal.gens)

# each chart: exceptional facets, strict transforms still removed, verdict
for c in report.charts:
    print(c.generator, c.monoid.generators, "removed", c.removed, "toroidal", c.toroidal)

# the removed facet e2 - e1 has degree zero, which is what makes it removable
print("degree of e2 - e1:", model.chi((-1, 1, 0)))

# quotient side: degree-zero charts equal the blowup of the invariant ideal
q = quotient_report(model.chi, report.ideal, report.S)
print("M0:", q.degree_zero.generators, "(I_S)0:", q.invariant_ideal.gens, "match:", q.charts_match)

# raw mode blows up I_{1} * I_{1} * I_{-1} instead
print("raw ideal:", torific_ideal(model.chi, model.sigma).gens, "toroidal:", torify(model, "raw").toroidal)
