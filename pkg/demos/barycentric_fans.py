"""
Barycentric subdivision makes symmetric fans simple
====================================================

"""

from torific.corpus import symmetric_fan_suite
from torific.fan import FanAction, KatoFan, barycentric_subdivision, is_action_simple

# the swap of coordinates fixes the quadrant but moves its rays
quadrant = KatoFan.from_cones(2, [(1, 0), (0, 1)], [[0, 1]])
swap = FanAction(quadrant, ([[0, 1], [1, 0]],))
print("quadrant simple:", is_action_simple(swap))

# after subdividing at (1, 1) every stabilizer acts trivially on its cone
sub = barycentric_subdivision(quadrant)
print("cones:", sorted(sorted(c) for c in sub.maximal_cones))
print("subdivided simple:", is_action_simple(swap.on(sub)))

# the whole suite
for name, action in symmetric_fan_suite():
    after = is_action_simple(action.on(barycentric_subdivision(action.fan)))
    print(f"{name:28s} order {action.order:3d}  before {is_action_simple(action)!s:5s}  after {after}")
