"""
When saturated powers first give the normalized blowup
=======================================================

"""

from torific.ideal import (
    ideal_from,
    saturated_power,
    saturation_threshold_by_subdivision,
    saturation_threshold_report,
)
from torific.monoid import ToricMonoid

# the A1 cone: saturated powers of (2,0), (0,2) already work at n = 1
a1 = ToricMonoid.from_generators(2, [(2, 0), (1, 1), (0, 2)], saturated=True)
i = ideal_from(a1, [(2, 0), (0, 2)])
print("A1:", saturation_threshold_report(a1, i).to_dict())
print("(I)^sat:", saturated_power(i, 1).gens)

# diagonal ideals on N^3 with multipliers (2, 3, 7) need n = 2
n3 = ToricMonoid.orthant(3)
diag = ideal_from(n3, [(2, 0, 0), (0, 3, 0), (0, 0, 7)])
print("diagonal:", saturation_threshold_report(n3, diag).to_dict())
print("subdivision route:", saturation_threshold_by_subdivision(n3, diag))
for n in (1, 2):
    print(n, len(saturated_power(diag, n).gens), "generators of (nI)^sat")
