# coding: utf-8

# # Quotient instances and the cyclotomic bookkeeping
#
# Q at c^l can be read off from the cyclotomic exponents of Q at c alone,
# and the value at 1 from prime exponents. Restricting to the fixed fan of c^l
# gives a smaller instance whose character relates to the original by explicit
# cyclotomic and prime-power factors.

import time

from fanchar.action import validate_action
from fanchar.character import (
    character_data,
    check_q_formulas,
    cross_check_quotient,
    decompose,
    q_power_from_base,
)
from fanchar.corpus import generate_corpus, hexagon
from fanchar.exactalg import divisors

name, fan, g = hexagon()
action = validate_action(fan, g)
base = character_data(fan, action)
for l in divisors(6):
    print(l, base[l].q_poly, q_power_from_base(base[1].cyclo, 6, l))

for l in divisors(6):
    report = cross_check_quotient(fan, action, l, base)
    print(l, report.passed, len(report.results))

# The same checks over the whole generated corpus.

t0 = time.perf_counter()
count = 0
for name, fan, g in generate_corpus():
    action = validate_action(fan, g)
    base = character_data(fan, action)
    assert check_q_formulas(fan, action, base).passed
    assert all(cross_check_quotient(fan, action, l, base).passed for l in divisors(action.order))
    assert decompose({j: e.ungraded for j, e in base.items()}, action.order).verdict.is_permutation
    count += 1
print(count, "instances checked in", round(time.perf_counter() - t0, 2), "s")
