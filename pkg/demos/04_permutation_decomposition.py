# coding: utf-8

# # Writing a character as a sum of permutation characters
#
# For a cyclic group every rational character is an integer combination of the
# characters on cosets of the subgroups <c^l>. Moebius inversion on the divisor
# lattice finds the coefficients.

from fanchar.action import validate_action
from fanchar.character import decompose, decompose_graded, expand_character, ungraded_character
from fanchar.corpus import hexagon, product_of_lines

dec = decompose((6, 1, 3, 4, 3, 1), 6)
print({l: str(m) for l, m in dec.multiplicities.items()}, dec.verdict)
print([int(v) for v in expand_character(dec.reconstruct(), 6)])

# The ungraded character of a proper action always decomposes with
# non-negative coefficients. The graded pieces need not.

name, fan, g = hexagon()
action = validate_action(fan, g)
gd = decompose_graded(fan, action)
for i, (ch, d) in enumerate(zip(gd.characters, gd.degrees)):
    print(i, expand_character(ch, 6), d.verdict)

# For prime-power order every degree works out.

name, fan, g = product_of_lines()
action = validate_action(fan, g)
print(ungraded_character(fan, action))
print([str(d.verdict) for d in decompose_graded(fan, action).degrees])
