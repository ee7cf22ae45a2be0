# coding: utf-8

# # Cyclic actions on a fan
#
# A generator matrix acts on the fan if it permutes rays and cones. The action
# must also be proper: a cone sent to itself has to be fixed ray by ray.

from fanchar.action import fixed_subcomplex, restrict_to_fixed, validate_action
from fanchar.corpus import ROT4, hexagon, product_of_lines, projective_plane
from fanchar.errors import NotFanAutomorphism, NotProper
from fanchar.exactalg import IntMatrix, divisors

_, hexfan, rot6 = hexagon()
action = validate_action(hexfan, rot6)
print("order", action.order, "ray permutation", action.ray_perm)

# For each divisor j the power c^j fixes a subsphere of dimension delta - 1.

for j in divisors(action.order):
    fixed = fixed_subcomplex(hexfan, action, j)
    print(j, fixed.delta, fixed.complex.facets)

# Swapping the two coordinate rays of the projective plane maps the cone
# they span to itself without fixing it, so the action is not proper.

_, plane, _ = projective_plane()
try:
    validate_action(plane, IntMatrix([[0, 1], [1, 0]]))
except NotProper as exc:
    print(exc)

try:
    validate_action(plane, ROT4)
except NotFanAutomorphism as exc:
    print(exc)

# The fixed fan of c^l carries an action of the quotient group. Here the
# reflection fixes a line, and the restricted instance is the 1-dimensional fan.

_, lines, _ = product_of_lines()
mirror = validate_action(lines, IntMatrix([[1, 0], [0, -1]]))
sub, sub_action = restrict_to_fixed(lines, mirror, 1)
print(sub, sub_action.order)
