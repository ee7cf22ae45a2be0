# coding: utf-8

# # Fans, their complexes and h-vectors
#
# A complete simplicial fan is given by primitive integer rays and the maximal
# cones they span. The rays and cones form a simplicial sphere, and its
# h-vector is what the characters are built from.

from fanchar.corpus import coxeter_fan, cross_polytope, product_of_lines, projective_plane
from fanchar.errors import FanInvalid
from fanchar.fan import Fan, complex_from_fan, complex_h_polynomial, f_vector, validate_fan

_, plane, _ = projective_plane()
print(plane)
print(validate_fan(plane, "geometric"))

# The f-vector counts faces by size, starting with the empty face.

for name, fan in [("plane", plane), ("lines", product_of_lines()[1]),
                  ("octahedron", cross_polytope(3)), ("braid A3", coxeter_fan(4))]:
    c = complex_from_fan(fan)
    print(f"{name:>10}: f = {f_vector(c).counts}   h = {complex_h_polynomial(c)}")

# The braid fan of A3 gives the Eulerian numbers 1, 11, 11, 1.

# Validation reports every broken condition at once.

try:
    validate_fan(Fan(2, [(2, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2)]))
except FanInvalid as exc:
    print(exc.codes)

# A six-ray cycle that winds twice around the origin looks fine combinatorially,
# which is why the geometric level exists.

rays = [(1, 0), (-1, 1), (0, -1), (-1, 0), (1, -1), (0, 1)]
double = Fan(2, rays, [(i, (i + 1) % 6) for i in range(6)])
print(validate_fan(double).level_achieved)
try:
    validate_fan(double, "geometric")
except FanInvalid as exc:
    print(exc.codes)
