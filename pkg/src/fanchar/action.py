"""Cyclic group actions on fans: validation, fixed subcomplexes, restriction."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, InvariantViolation, NotFanAutomorphism, NotProper, NotUnimodular
from .exactalg import (
    DEFAULT_ORDER_CAP,
    IntMatrix,
    determinant,
    fixed_subspace_dimension,
    integer_kernel_basis,
    matrix_order,
    solve_exact,
)
from .fan import Fan, SimplicialComplex


@dataclass(frozen=True)
class GroupAction:
    """A generator ``c`` of order ``n`` together with its permutation of the rays."""

    generator: IntMatrix
    order: int
    ray_perm: tuple[int, ...]

    def perm_power(self, j: int) -> tuple[int, ...]:
        j %= self.order
        out = list(range(len(self.ray_perm)))
        for _ in range(j):
            out = [self.ray_perm[i] for i in out]
        return tuple(out)

    def matrix_power(self, j: int) -> IntMatrix:
        return self.generator ** (j % self.order)


@dataclass(frozen=True)
class FixedData:
    divisor: int
    complex: SimplicialComplex
    delta: int


def _cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        i = perm[start]
        while i != start:
            cyc.append(i)
            seen.add(i)
            i = perm[i]
        out.append(tuple(cyc))
    return out


def validate_action(fan: Fan, generator: IntMatrix, cap: int = DEFAULT_ORDER_CAP) -> GroupAction:
    """Check that ``generator`` acts properly on ``fan``; return the action.

    Properness is tested combinatorially.  A face mapped to itself by
    ``c^j`` is a union of cycles of the induced ray permutation, so an
    improper face exists exactly when some nontrivial cycle of ``c^j`` lies
    inside a maximal cone; that cycle is reported as the witness.
    """
    d = fan.dim
    if generator.shape != (d, d):
        raise DimensionMismatch(f"generator is {generator.nrows}x{generator.ncols}, fan dimension is {d}")
    det = determinant(generator)
    if det not in (1, -1):
        raise NotUnimodular(f"generator has determinant {det}")
    n = matrix_order(generator, cap)

    index = fan.ray_index
    perm = []
    for i, r in enumerate(fan.rays):
        img = generator.apply(r)
        if img not in index:
            raise NotFanAutomorphism("ray", i, f"ray {i} = {list(r)} maps to {list(img)}, which is not a ray")
        perm.append(index[img])

    cones = {frozenset(c) for c in fan.maximal_cones}
    for k, cone in enumerate(fan.maximal_cones):
        img = frozenset(perm[i] for i in cone)
        if img not in cones:
            raise NotFanAutomorphism(
                "cone", k, f"cone {k} = {list(cone)} maps to {sorted(img)}, which is not a maximal cone"
            )

    action = GroupAction(generator, n, tuple(perm))
    facet_sets = [frozenset(c) for c in fan.maximal_cones]
    for j in range(1, n):
        for cyc in _cycles(action.perm_power(j)):
            if len(cyc) > 1 and any(f.issuperset(cyc) for f in facet_sets):
                raise NotProper(j, cyc)
    return action


def _maximal_sets(sets):
    uniq = sorted(set(sets), key=len, reverse=True)
    out = []
    for s in uniq:
        if not any(s < t for t in out):
            out.append(s)
    return out


def fixed_subcomplex(fan: Fan, action: GroupAction, j: int) -> FixedData:
    """Faces of the fan's complex fixed by ``c^j``, and ``dim V_{c^j}``."""
    perm = action.perm_power(j)
    fixed = {i for i, k in enumerate(perm) if i == k}
    pieces = [frozenset(c) & fixed for c in fan.maximal_cones]
    facets = sorted(tuple(sorted(s)) for s in _maximal_sets(pieces))
    complex_ = SimplicialComplex(len(fan.rays), facets)
    delta = fixed_subspace_dimension(action.matrix_power(j))
    if any(len(f) != delta for f in facets):
        raise InvariantViolation(
            f"fixed complex of c^{j} has facets of sizes {sorted({len(f) for f in facets})}, "
            f"but the fixed subspace has dimension {delta}"
        )
    return FixedData(j, complex_, delta)


def fixed_ray_indices(action: GroupAction, l: int) -> list[int]:
    perm = action.perm_power(l)
    return [i for i, k in enumerate(perm) if i == k]


def trivial_instance() -> tuple[Fan, GroupAction]:
    """The 0-dimensional fan (one empty cone) with the trivial group."""
    return Fan(0, [], [()]), GroupAction(IntMatrix.identity(0), 1, ())


def restrict_to_fixed(fan: Fan, action: GroupAction, l: int) -> tuple[Fan, GroupAction]:
    """Restrict to the fixed lattice of ``c^l`` with the induced action of ``c``.

    The new lattice is the saturated integer kernel of ``c^l - 1``; rays are
    the rays fixed by ``c^l`` (in increasing original index) written in a
    basis of that kernel.  When nothing but the origin is fixed the result is
    the 0-dimensional instance.
    """
    n = action.order
    if l % n == 0:
        return fan, action
    g_l = action.matrix_power(l)
    basis = integer_kernel_basis(g_l - IntMatrix.identity(fan.dim))
    if not basis:
        return trivial_instance()

    def coords(v):
        x = solve_exact(basis, v)
        if x is None or any(t.denominator != 1 for t in x):
            raise InvariantViolation(f"{list(v)} is not an integer combination of the fixed lattice basis")
        return tuple(int(t) for t in x)

    keep = fixed_ray_indices(action, l)
    renumber = {old: new for new, old in enumerate(keep)}
    rays = [coords(fan.rays[i]) for i in keep]
    fixed = fixed_subcomplex(fan, action, l)
    cones = [tuple(renumber[i] for i in f) for f in fixed.complex.facets]
    sub = Fan(len(basis), rays, cones)
    columns = [coords(action.generator.apply(b)) for b in basis]
    gen = IntMatrix.from_columns(columns, len(basis))
    return sub, validate_action(sub, gen, cap=n)
