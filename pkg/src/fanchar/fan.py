"""Complete simplicial fans, their simplicial complexes, f- and h-vectors."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import FanInvalid
from .exactalg import IntMatrix, IntPolynomial, determinant, rank, solve_exact, vector_gcd

BASIC = "basic"
GEOMETRIC = "geometric"
GEOMETRIC_MAX_DIM = 3


@dataclass(frozen=True)
class Fan:
    """Rays (primitive integer vectors) and maximal cones as ray-index tuples."""

    dim: int
    rays: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[tuple[int, ...], ...]

    def __init__(self, dim: int, rays: Iterable[Sequence[int]], maximal_cones: Iterable[Iterable[int]]):
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in rays))
        object.__setattr__(
            self, "maximal_cones", tuple(tuple(sorted(int(i) for i in c)) for c in maximal_cones)
        )

    @property
    def ray_index(self) -> dict[tuple[int, ...], int]:
        return {r: i for i, r in enumerate(self.rays)}


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex given by its facets; faces are all subsets of facets.

    The empty complex ``{∅}`` is ``SimplicialComplex(n, ((),))``.
    """

    vertex_count: int
    facets: tuple[tuple[int, ...], ...]

    def __init__(self, vertex_count: int, facets: Iterable[Iterable[int]]):
        object.__setattr__(self, "vertex_count", int(vertex_count))
        object.__setattr__(self, "facets", tuple(tuple(sorted(f)) for f in facets))

    def faces(self) -> set[frozenset[int]]:
        out = set()
        for f in self.facets:
            for k in range(len(f) + 1):
                out.update(frozenset(s) for s in combinations(f, k))
        return out

    @property
    def dimension(self) -> int:
        """Largest facet cardinality minus one (so ``{∅}`` has dimension -1)."""
        return max((len(f) for f in self.facets), default=0) - 1


@dataclass(frozen=True)
class FVector:
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(x) for x in self.counts))


@dataclass
class ValidationReport:
    level_requested: str
    level_achieved: str
    checks: dict[str, bool] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


def normalize_rays(fan: Fan) -> Fan:
    """Divide every ray by the gcd of its coordinates."""
    rays = []
    for r in fan.rays:
        g = vector_gcd(r)
        rays.append(tuple(x // g for x in r) if g else r)
    return Fan(fan.dim, rays, fan.maximal_cones)


def complex_from_fan(fan: Fan) -> SimplicialComplex:
    return SimplicialComplex(len(fan.rays), fan.maximal_cones)


def f_vector(c: SimplicialComplex) -> FVector:
    counts = Counter(len(face) for face in c.faces())
    top = max(counts)
    return FVector([counts.get(k, 0) for k in range(top + 1)])


def h_polynomial(f: FVector, d: int) -> IntPolynomial:
    """h-polynomial of a pure (d-1)-dimensional complex with f-vector ``f``.

    ``h_k = sum_{i<=k} (-1)^(k-i) C(d-i, k-i) f_{i-1}``; ``f.counts[i]`` is
    ``f_{i-1}``.
    """
    fs = list(f.counts) + [0] * max(0, d + 1 - len(f.counts))
    h = [
        sum((-1) ** (k - i) * comb(d - i, k - i) * fs[i] for i in range(k + 1))
        for k in range(d + 1)
    ]
    return IntPolynomial(h)


def facet_count(c: SimplicialComplex) -> int:
    return len(c.facets)


def complex_h_polynomial(c: SimplicialComplex) -> IntPolynomial:
    return h_polynomial(f_vector(c), c.dimension + 1)


# ---------------------------------------------------------------------------
# validation

def _ridges(facets):
    count = Counter()
    for f in facets:
        for ridge in combinations(f, len(f) - 1):
            count[ridge] += 1
    return count


def _connected(facets) -> bool:
    if len(facets) <= 1:
        return True
    by_ridge = {}
    for idx, f in enumerate(facets):
        for ridge in combinations(f, len(f) - 1):
            by_ridge.setdefault(ridge, []).append(idx)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for ridge in combinations(facets[i], len(facets[i]) - 1):
            for j in by_ridge[ridge]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(seen) == len(facets)


def reduced_euler_characteristic(f: FVector) -> int:
    return sum((x if i % 2 else -x) for i, x in enumerate(f.counts))


def _side(fan: Fan, ridge, apex) -> int:
    m = IntMatrix([fan.rays[i] for i in ridge] + [fan.rays[apex]])
    det = determinant(m)
    return (det > 0) - (det < 0)


def _generic_interior_point(fan: Fan, facet, ridges):
    """A point inside ``facet`` lying on no hyperplane spanned by a ridge."""
    rays = [fan.rays[i] for i in facet]
    walls = [[fan.rays[i] for i in r] for r in ridges]
    for t in range(2, 200):
        weights = [t**k for k in range(len(rays))]
        x = tuple(sum(w * r[c] for w, r in zip(weights, rays)) for c in range(fan.dim))
        if all(determinant(IntMatrix(w + [x])) != 0 for w in walls):
            return x
    raise RuntimeError("could not find a generic point")


def _covering_count(fan: Fan, x) -> int:
    hits = 0
    for cone in fan.maximal_cones:
        coeffs = solve_exact([fan.rays[i] for i in cone], x)
        if coeffs is not None and all(a > 0 for a in coeffs):
            hits += 1
    return hits


def _geometric_checks(fan: Fan, reasons):
    ridges = _ridges(fan.maximal_cones)
    apexes = {}
    for f in fan.maximal_cones:
        for v in f:
            ridge = tuple(u for u in f if u != v)
            apexes.setdefault(ridge, []).append(v)
    for ridge, (u, w) in apexes.items():
        if _side(fan, ridge, u) * _side(fan, ridge, w) >= 0:
            reasons.append(("Overlap", f"cones on ridge {list(ridge)} lie on the same side"))
            return
    x = _generic_interior_point(fan, fan.maximal_cones[0], list(ridges))
    hits = _covering_count(fan, x)
    if hits != 1:
        reasons.append(("Overlap", f"a generic point lies in {hits} maximal cones"))


def validate_fan(fan: Fan, level: str = BASIC) -> ValidationReport:
    """Check that ``fan`` describes a complete simplicial fan.

    Raises ``FanInvalid`` listing every failed check.  The geometric level
    adds an exact non-overlap test for ``dim <= 3``: the two cones on every
    ridge must lie on opposite sides of it, and a generic point must be
    covered exactly once.  Together with the pseudo-manifold property this
    rules out overlapping cone interiors.
    """
    if level not in (BASIC, GEOMETRIC):
        raise ValueError(f"unknown validation level {level!r}")
    d = fan.dim
    reasons = []
    report = ValidationReport(level, BASIC)

    for i, r in enumerate(fan.rays):
        if len(r) != d:
            reasons.append(("RayDimension", f"ray {i} has {len(r)} coordinates, expected {d}"))
    if reasons:
        raise FanInvalid(reasons)
    for i, r in enumerate(fan.rays):
        g = vector_gcd(r)
        if g != 1:
            reasons.append(("NonPrimitiveRay", f"ray {i} = {list(r)} has coordinate gcd {g}"))
    dup = [r for r, k in Counter(fan.rays).items() if k > 1]
    for r in dup:
        reasons.append(("DuplicateRay", f"ray {list(r)} appears more than once"))
    report.checks["primitive_distinct_rays"] = not reasons

    if not fan.maximal_cones:
        reasons.append(("NotSimplicial", "no maximal cones"))
        raise FanInvalid(reasons)
    if d == 0:
        if fan.rays or fan.maximal_cones != ((),):
            reasons.append(("NotSimplicial", "a 0-dimensional fan has no rays and one empty cone"))
            raise FanInvalid(reasons)
        report.checks.update(simplicial=True, pseudo_manifold=True, connected=True, euler=True)
        report.level_achieved = level
        return report

    n_rays = len(fan.rays)
    structural_ok = True
    for k, cone in enumerate(fan.maximal_cones):
        if any(not 0 <= i < n_rays for i in cone):
            reasons.append(("ConeIndex", f"cone {k} refers to a missing ray"))
            structural_ok = False
        elif len(set(cone)) != d:
            reasons.append(("NotSimplicial", f"cone {k} has {len(set(cone))} rays, expected {d}"))
            structural_ok = False
        elif rank(IntMatrix([fan.rays[i] for i in cone])) != d:
            reasons.append(("NotSimplicial", f"rays of cone {k} are linearly dependent"))
            structural_ok = False
    if len(set(fan.maximal_cones)) != len(fan.maximal_cones):
        reasons.append(("NotSimplicial", "repeated maximal cone"))
        structural_ok = False
    report.checks["simplicial"] = structural_ok
    if not structural_ok:
        raise FanInvalid(reasons)

    used = set().union(*map(set, fan.maximal_cones))
    unused = sorted(set(range(n_rays)) - used)
    if unused:
        reasons.append(("UnusedRay", f"rays {unused} lie in no maximal cone"))

    bad = [r for r, k in _ridges(fan.maximal_cones).items() if k != 2]
    report.checks["pseudo_manifold"] = not bad
    if bad:
        r = bad[0]
        reasons.append(
            ("PseudoManifold", f"ridge {list(r)} lies in {_ridges(fan.maximal_cones)[r]} facets, expected 2")
        )
    connected = _connected(fan.maximal_cones)
    report.checks["connected"] = connected
    if not connected:
        reasons.append(("Disconnected", "facet adjacency graph is disconnected"))
    cx = complex_from_fan(fan)
    fv = f_vector(cx)
    euler = reduced_euler_characteristic(fv)
    sphere = 1 if d % 2 else -1
    report.checks["euler"] = euler == sphere
    if not report.checks["euler"]:
        reasons.append(
            ("EulerCharacteristic", f"reduced Euler characteristic {euler}, sphere needs {sphere}")
        )
    if reasons:
        raise FanInvalid(reasons)

    h = h_polynomial(fv, d).padded(d + 1)
    if h != h[::-1]:
        report.warnings.append(f"h-vector {list(h)} is not symmetric")
    report.checks["h_symmetric"] = h == h[::-1]

    if level == GEOMETRIC:
        if d <= GEOMETRIC_MAX_DIM:
            _geometric_checks(fan, reasons)
            report.checks["no_overlap"] = not reasons
            if reasons:
                raise FanInvalid(reasons)
            report.level_achieved = GEOMETRIC
        else:
            report.warnings.append(f"geometric check skipped for dim {d} > {GEOMETRIC_MAX_DIM}")
    return report


def product_fan(a: Fan, b: Fan) -> Fan:
    """Product of two fans in the direct sum of their ambient spaces."""
    rays = [tuple(r) + (0,) * b.dim for r in a.rays]
    rays += [(0,) * a.dim + tuple(r) for r in b.rays]
    off = len(a.rays)
    cones = [tuple(ca) + tuple(off + i for i in cb) for ca in a.maximal_cones for cb in b.maximal_cones]
    return Fan(a.dim + b.dim, rays, cones)


__all__ = [
    "BASIC",
    "GEOMETRIC",
    "Fan",
    "FVector",
    "SimplicialComplex",
    "ValidationReport",
    "complex_from_fan",
    "complex_h_polynomial",
    "f_vector",
    "facet_count",
    "h_polynomial",
    "normalize_rays",
    "product_fan",
    "reduced_euler_characteristic",
    "validate_fan",
]
