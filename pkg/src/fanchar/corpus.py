"""Constructors for fans with cyclic symmetry, used by the tests and demos.

Every constructor returns ``(name, fan, generator)``; the pair is not
validated here.  ``generate_corpus`` keeps only instances that pass
``validate_fan`` and ``validate_action``.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from .action import validate_action
from .errors import ValidationError
from .exactalg import IntMatrix, matrix_order, vector_gcd
from .fan import Fan, product_fan, validate_fan

ROT3 = IntMatrix([[0, -1], [1, -1]])
ROT4 = IntMatrix([[0, -1], [1, 0]])
ROT6 = IntMatrix([[1, -1], [1, 0]])


def projective_plane():
    return "projective_plane", Fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (2, 0)]), ROT3


def product_of_lines(generator=ROT4, name="product_of_lines_rot4"):
    fan = Fan(2, [(1, 0), (-1, 0), (0, 1), (0, -1)], [(0, 2), (0, 3), (1, 2), (1, 3)])
    return name, fan, generator


def hexagon():
    rays = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    return "hexagon_rot6", Fan(2, rays, [(i, (i + 1) % 6) for i in range(6)]), ROT6


def reflection():
    return product_of_lines(IntMatrix([[1, 0], [0, -1]]), "product_of_lines_reflection")


def line():
    return Fan(1, [(1,), (-1,)], [(0,), (1,)])


def _pseudo_angle(v):
    # monotone in the polar angle, exact
    x, y = v
    t = Fraction(y, abs(x) + abs(y))
    if x >= 0:
        return t if y >= 0 else 4 + t
    return 2 - t


def planar_fan(rays) -> Fan:
    """Complete 2-D fan whose cones join angularly consecutive rays."""
    rays = sorted(set(rays), key=_pseudo_angle)
    m = len(rays)
    return Fan(2, rays, [(i, (i + 1) % m) for i in range(m)])


def orbit(g: IntMatrix, v):
    out = [tuple(v)]
    w = g.apply(v)
    while w != out[0]:
        out.append(w)
        w = g.apply(w)
    return out


def random_primitive(rng, bound, dim=2):
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(dim))
        if vector_gcd(v) == 1:
            return v


def random_planar_instance(rng, generator: IntMatrix, extra=(), n_orbits=2, bound=3, name="planar"):
    rays = list(extra)
    for _ in range(n_orbits):
        rays += orbit(generator, random_primitive(rng, bound))
    return name, planar_fan(rays), generator


def coxeter_fan(m: int) -> Fan:
    """Braid-arrangement fan of type A_{m-1} in Z^m / Z(1,...,1).

    Coordinates are those of ``e_1 .. e_{m-1}``; rays are the images of the
    0/1 indicator vectors of nonempty proper subsets, cones are maximal chains.
    """
    d = m - 1
    subsets = []
    for mask in range(1, 2**m - 1):
        subsets.append(frozenset(i for i in range(m) if mask >> i & 1))

    def vec(s):
        if m - 1 in s:
            return tuple(-int(i not in s) for i in range(d))
        return tuple(int(i in s) for i in range(d))

    index = {s: k for k, s in enumerate(subsets)}
    cones = []
    for perm in permutations(range(m)):
        chain = [index[frozenset(perm[: k + 1])] for k in range(d)]
        cones.append(chain)
    return Fan(d, [vec(s) for s in subsets], cones)


def coxeter_generator(perm, sign=1) -> IntMatrix:
    """Matrix of ``e_i -> sign * e_perm[i]`` on Z^m / Z(1,...,1)."""
    m = len(perm)
    d = m - 1
    cols = []
    for i in range(d):
        t = perm[i]
        col = [-1] * d if t == m - 1 else [int(k == t) for k in range(d)]
        cols.append([sign * x for x in col])
    return IntMatrix.from_columns(cols, d)


def block_diag(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows = [list(r) + [0] * b.ncols for r in a.rows]
    rows += [[0] * a.ncols + list(r) for r in b.rows]
    return IntMatrix(rows, ncols=a.ncols + b.ncols)


def product_instance(x, y):
    nx, fx, gx = x
    ny, fy, gy = y
    return f"{nx}*{ny}", product_fan(fx, fy), block_diag(gx, gy)


def cross_polytope(dim: int) -> Fan:
    rays = []
    for i in range(dim):
        for s in (1, -1):
            rays.append(tuple(s * int(k == i) for k in range(dim)))
    cones = []
    for mask in range(2**dim):
        cones.append([2 * i + (mask >> i & 1) for i in range(dim)])
    return Fan(dim, rays, cones)


def signed_permutation(perm, signs) -> IntMatrix:
    d = len(perm)
    cols = [[signs[i] * int(k == perm[i]) for k in range(d)] for i in range(d)]
    return IntMatrix.from_columns(cols, d)


def is_valid(instance, level="basic") -> bool:
    _, fan, g = instance
    try:
        validate_fan(fan, level)
        validate_action(fan, g)
    except ValidationError:
        return False
    return True


def _planar_instances(rng):
    out = []
    gens = [("rot3", ROT3, 2), ("rot4", ROT4, 1), ("rot6", ROT6, 1), ("minus_id", IntMatrix([[-1, 0], [0, -1]]), 3)]
    for name, g, orbits in gens:
        for k in range(3):
            out.append(random_planar_instance(rng, g, n_orbits=orbits + k % 2, name=f"planar_{name}_{k}"))
    # reflections: the mirror line must carry rays
    refl = [
        (IntMatrix([[1, 0], [0, -1]]), [(1, 0), (-1, 0)]),
        (IntMatrix([[0, 1], [1, 0]]), [(1, 1), (-1, -1)]),
    ]
    for i, (g, axis) in enumerate(refl):
        for k in range(2):
            out.append(random_planar_instance(rng, g, extra=axis, n_orbits=3, name=f"planar_refl{i}_{k}"))
    # rotation composed with -1, and powers, on symmetric fans
    out.append(("hexagon_rot3", hexagon()[1], ROT6 @ ROT6))
    out.append(("hexagon_minus_id", hexagon()[1], ROT6 ** 3))
    out.append(("lines_minus_id", product_of_lines()[1], ROT4 @ ROT4))
    return out


def _cross_polytope_instances():
    out = []
    fan = cross_polytope(3)
    for perm in permutations(range(3)):
        for mask in range(8):
            signs = [(-1) ** (mask >> i & 1) for i in range(3)]
            g = signed_permutation(perm, signs)
            if g == IntMatrix.identity(3):
                continue
            out.append((f"cross3_{''.join(map(str, perm))}_{mask}", fan, g))
    return out


def _coxeter_instances():
    out = []
    picks = {
        3: [(1, 2, 0), (1, 0, 2)],
        4: [(1, 2, 3, 0), (1, 0, 3, 2), (1, 2, 0, 3), (1, 0, 2, 3)],
        5: [(1, 2, 3, 4, 0), (1, 0, 3, 4, 2), (1, 2, 0, 3, 4)],
    }
    for m, perms in picks.items():
        fan = coxeter_fan(m)
        for perm in perms:
            for sign in (1, -1):
                g = coxeter_generator(perm, sign)
                out.append((f"coxeter_A{m - 1}_{''.join(map(str, perm))}_{'+' if sign > 0 else '-'}", fan, g))
    return out


def generate_corpus(seed: int = 20081030, level: str = "geometric"):
    """Valid instances: random planar fans, 3-D cross-polytope fans with signed
    permutations, braid-arrangement fans, and products of these."""
    rng = random.Random(seed)
    planar = [x for x in _planar_instances(rng) if is_valid(x, level)]
    base = [projective_plane(), product_of_lines(), hexagon(), reflection()]
    cross = [x for x in _cross_polytope_instances() if is_valid(x, level)]
    coxeter = [x for x in _coxeter_instances() if is_valid(x, level)]
    line_neg = ("line_neg", line(), IntMatrix([[-1]]))
    products = [
        product_instance(product_of_lines(), projective_plane()),  # order 12
        product_instance(product_of_lines(), hexagon()),  # order 12
        product_instance(hexagon(), projective_plane()),  # order 6
        product_instance(projective_plane(), line_neg),  # order 6
        product_instance(product_of_lines(), line_neg),  # order 4
        product_instance(hexagon(), line_neg),  # order 6
        product_instance(reflection(), projective_plane()),  # order 6
    ]
    products = [x for x in products if is_valid(x, level)]
    cross4 = cross_polytope(4)
    wide = [
        ("cross4_signed_4cycle", cross4, signed_permutation((1, 2, 3, 0), (1, 1, 1, -1))),
        ("cross4_rot4_rot4", cross4, signed_permutation((1, 0, 3, 2), (1, -1, -1, 1))),
        ("cross4_rot4_minus", cross4, signed_permutation((1, 0, 2, 3), (1, -1, -1, -1))),
    ]
    wide = [x for x in wide if is_valid(x, level)]
    return base + planar + cross + coxeter + products + wide


def instance_order(instance) -> int:
    return matrix_order(instance[2])
