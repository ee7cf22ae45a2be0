# coding: utf-8

# # Graded and ungraded characters
#
# At c^j the graded character is the h-polynomial of the fixed sphere times
# Q(q) = det(1 - q c^j) / (1 - q)^delta. Setting q = 1 gives the ungraded value.

from fanchar.action import validate_action
from fanchar.character import character_data, expand_character, sr_series, ungraded_character
from fanchar.corpus import hexagon, product_of_lines

for make in (product_of_lines, hexagon):
    name, fan, g = make()
    action = validate_action(fan, g)
    print(name)
    for j, e in character_data(fan, action).items():
        print(f"  j={j}: h = {e.h_poly},  Q = {e.q_poly},  cyclotomic {dict(e.cyclo.exponents)},"
              f"  graded = {e.graded},  value = {e.ungraded}")
    print("  values on 1, c, c^2, ...:", expand_character(ungraded_character(fan, action), action.order))

# The hexagon's rotation has graded value 1 - q + q^2: a negative coefficient.

# Before dividing by the parameters the series is h / (1 - q)^delta.

name, fan, g = product_of_lines()
action = validate_action(fan, g)
print(sr_series(fan, action, 4, 6))
