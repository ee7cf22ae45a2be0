"""Characters of the cyclic group on ``Q[Δ]/Θ`` and their permutation decomposition.

Characters of ``G = <c>`` of order ``n`` are rational, so they are stored
as maps ``{j: value}`` over the divisors ``j`` of ``n``: the value at
``c**j``, which is also the value on every generator of ``<c**j>``.  The
key ``n`` is the identity element.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

from .action import FixedData, GroupAction, fixed_subcomplex, restrict_to_fixed
from .errors import InvariantViolation, NotPrimePower, UnboundedPoset
from .exactalg import (
    ONE,
    ONE_MINUS_Q,
    CyclotomicFactorization,
    IntPolynomial,
    char_poly_one_minus_qg,
    cyclotomic,
    divisors,
    factor_into_cyclotomics,
    fixed_subspace_dimension,
    moebius_nt,
    p_adic_valuation,
    poly_exact_divide,
    prime_factorization,
    prime_power_base,
    totient,
)
from .fan import Fan, complex_h_polynomial, facet_count


# ---------------------------------------------------------------------------
# per-element data

def q_polynomial(action: GroupAction, j: int) -> IntPolynomial:
    """``det(1 - q c^j) / (1 - q)^delta``, the non-unit-eigenvalue factor."""
    g = action.matrix_power(j)
    delta = fixed_subspace_dimension(g)
    return poly_exact_divide(char_poly_one_minus_qg(g), ONE_MINUS_Q**delta)


def graded_character(fan: Fan, action: GroupAction, j: int) -> IntPolynomial:
    fixed = fixed_subcomplex(fan, action, j)
    return complex_h_polynomial(fixed.complex) * q_polynomial(action, j)


@dataclass(frozen=True)
class CharacterEntry:
    divisor: int
    graded: IntPolynomial
    ungraded: int
    q_poly: IntPolynomial
    cyclo: CyclotomicFactorization
    fixed: FixedData
    h_poly: IntPolynomial


def character_entry(fan: Fan, action: GroupAction, j: int) -> CharacterEntry:
    fixed = fixed_subcomplex(fan, action, j)
    h = complex_h_polynomial(fixed.complex)
    qp = q_polynomial(action, j)
    graded = h * qp
    ungraded = facet_count(fixed.complex) * qp(1)
    if graded(1) != ungraded or qp[0] != 1:
        raise InvariantViolation(f"character data at c^{j} is inconsistent")
    element_order = action.order // gcd(j, action.order)
    cyclo = factor_into_cyclotomics(qp, element_order)
    return CharacterEntry(j, graded, ungraded, qp, cyclo, fixed, h)


def character_data(fan: Fan, action: GroupAction, exponents: Iterable[int] | None = None) -> dict[int, CharacterEntry]:
    """``CharacterEntry`` for every divisor of the order (or the given exponents)."""
    if exponents is None:
        exponents = divisors(action.order)
    return {j: character_entry(fan, action, j) for j in exponents}


def ungraded_character(fan: Fan, action: GroupAction) -> dict[int, int]:
    out = {}
    for j in divisors(action.order):
        fixed = fixed_subcomplex(fan, action, j)
        out[j] = facet_count(fixed.complex) * q_polynomial(action, j)(1)
    return out


def sr_series(fan: Fan, action: GroupAction, j: int, N: int) -> tuple[int, ...]:
    """First ``N + 1`` coefficients of the graded character of ``Q[Δ]`` at ``c^j``."""
    fixed = fixed_subcomplex(fan, action, j)
    h = complex_h_polynomial(fixed.complex)
    delta = fixed.delta
    if delta == 0:
        series = [1] + [0] * N
    else:
        series = [comb(i + delta - 1, delta - 1) for i in range(N + 1)]
    return tuple(sum(h[k] * series[i - k] for k in range(i + 1)) for i in range(N + 1))


# ---------------------------------------------------------------------------
# permutation characters and Möbius inversion

def induced_character(l: int, n: int) -> dict[int, int]:
    """Permutation character of ``G`` on the cosets of ``<c^l>``."""
    if n % l:
        raise ValueError(f"{l} does not divide {n}")
    return {j: (l if j % l == 0 else 0) for j in divisors(n)}


def expand_character(values: Mapping[int, int], n: int) -> tuple:
    """Values at ``1, c, c^2, ..., c^(n-1)``."""
    return tuple(values[gcd(k, n)] for k in range(n))


def character_from_powers(seq: Sequence, n: int) -> dict[int, int]:
    """Inverse of ``expand_character``; rejects values that are not constant on
    generators of the same subgroup."""
    if len(seq) != n:
        raise ValueError(f"expected {n} values, got {len(seq)}")
    out = {}
    for k, v in enumerate(seq):
        j = gcd(k, n)
        if out.setdefault(j, v) != v:
            raise ValueError(f"values at c^{j} and c^{k} differ, so the character is not rational")
    return out


def subgroup_moebius(l: int, j: int) -> int:
    """Möbius function of the subgroup lattice between ``<c^l>`` and ``<c^j>``."""
    if l % j:
        raise ValueError(f"<c^{l}> is not contained in <c^{j}>")
    return moebius_nt(l // j)


def f_transform(values: Mapping[int, int], n: int) -> dict[int, int]:
    """``F(<c^l>) = sum over subgroups K >= <c^l> of mu(<c^l>, K) * chi(K)``."""
    return {l: sum(subgroup_moebius(l, j) * values[j] for j in divisors(l)) for l in divisors(n)}


def f_inverse(fvals: Mapping[int, int], n: int) -> dict[int, int]:
    """Undo ``f_transform``: ``chi(<c^j>)`` is the sum of ``F`` over the subgroups containing ``<c^j>``."""
    return {j: sum(fvals[l] for l in divisors(j)) for j in divisors(n)}


@dataclass(frozen=True)
class Verdict:
    is_permutation: bool
    witness: int | None = None
    multiplicity: Fraction | None = None

    def __str__(self):
        if self.is_permutation:
            return "Permutation"
        return f"NotPermutation(l={self.witness}, m={self.multiplicity})"


@dataclass(frozen=True)
class Decomposition:
    """``chi = sum_l multiplicities[l] * ind_{<c^l>}^G``."""

    n: int
    multiplicities: dict[int, Fraction]
    f_values: dict[int, int]
    verdict: Verdict

    def reconstruct(self) -> dict[int, Fraction]:
        out = {j: Fraction(0) for j in divisors(self.n)}
        for l, m in self.multiplicities.items():
            for j, v in induced_character(l, self.n).items():
                out[j] += m * v
        return out


def _as_divisor_map(values, n) -> dict[int, int]:
    if isinstance(values, Mapping):
        missing = set(divisors(n)) - set(values)
        if missing:
            raise ValueError(f"character values missing at divisors {sorted(missing)}")
        return {j: values[j] for j in divisors(n)}
    return character_from_powers(values, n)


def decompose(values, n: int) -> Decomposition:
    """Write a rational character as a combination of transitive permutation characters.

    ``values`` is a divisor map or a length-``n`` sequence indexed by powers
    of the generator.
    """
    vals = _as_divisor_map(values, n)
    fvals = f_transform(vals, n)
    mult = {l: Fraction(fvals[l], l) for l in divisors(n)}
    verdict = Verdict(True)
    for l, m in mult.items():
        if m < 0 or m.denominator != 1:
            verdict = Verdict(False, l, m)
            break
    return Decomposition(n, mult, fvals, verdict)


@dataclass(frozen=True)
class GradedDecomposition:
    degrees: tuple[Decomposition, ...]
    characters: tuple[dict[int, int], ...]

    @property
    def is_permutation(self) -> bool:
        return all(dec.verdict.is_permutation for dec in self.degrees)

    def first_failure(self):
        """``(degree, verdict)`` of the lowest failing degree, or None."""
        for i, dec in enumerate(self.degrees):
            if not dec.verdict.is_permutation:
                return i, dec.verdict
        return None


def graded_values(fan: Fan, action: GroupAction) -> dict[int, IntPolynomial]:
    return {j: graded_character(fan, action, j) for j in divisors(action.order)}


def decompose_graded(fan: Fan, action: GroupAction, graded: Mapping[int, IntPolynomial] | None = None) -> GradedDecomposition:
    if graded is None:
        graded = graded_values(fan, action)
    n = action.order
    top = max(p.degree for p in graded.values())
    chars = tuple({j: graded[j][i] for j in divisors(n)} for i in range(top + 1))
    return GradedDecomposition(tuple(decompose(ch, n) for ch in chars), chars)


@dataclass(frozen=True)
class PrimePowerReport:
    p: int | None
    r: int
    differences_ok: bool
    graded_ok: bool
    failures: tuple[int, ...] = ()

    @property
    def agree(self) -> bool:
        return self.differences_ok == self.graded_ok

    @property
    def passed(self) -> bool:
        return self.differences_ok and self.graded_ok


def prime_power_check(fan: Fan, action: GroupAction) -> PrimePowerReport:
    """For ``n = p^r`` check that consecutive graded values differ by polynomials
    with non-negative coefficients, and that every degree decomposes into
    permutation characters."""
    n = action.order
    if n == 1:
        p, r = None, 0
    else:
        pp = prime_power_base(n)
        if pp is None:
            raise NotPrimePower(f"group order {n} is not a prime power")
        p, r = pp
    graded = graded_values(fan, action)
    failures = []
    for i in range(1, r):
        diff = graded[p**i] - graded[p ** (i - 1)]
        if not diff.has_nonnegative_coefficients():
            failures.append(i)
    graded_ok = decompose_graded(fan, action, graded).is_permutation
    return PrimePowerReport(p, r, not failures, graded_ok, tuple(failures))


# ---------------------------------------------------------------------------
# the cyclotomic bookkeeping of Q_{c^l}

def cyclotomic_degree_ratio(k: int, l: int) -> int:
    """``deg Phi_k / deg Phi_{k/(k,l)}``: how many primitive ``k/(k,l)``-th roots
    each primitive k-th root's l-th powers cover."""
    return totient(k) // totient(k // gcd(k, l))


def _deg_ratio_to(N: int, m: int) -> int:
    # deg Phi_N / deg Phi_m, for the prime-power bookkeeping below
    return totient(N) // totient(m)


def q_power_from_base(cyclo: CyclotomicFactorization, n: int, l: int) -> IntPolynomial:
    """``Q_{c^l}`` from the cyclotomic exponents of ``Q_c``."""
    out = ONE
    for k in divisors(n):
        if k == 1 or l % k == 0:
            continue
        a = cyclo.a(k)
        if a:
            out = out * cyclotomic(k // gcd(k, l)) ** (a * cyclotomic_degree_ratio(k, l))
    return out


def b_exponent(p: int, l: int, n: int, cyclo: CyclotomicFactorization) -> int:
    """Exponent of ``p`` in ``Q_{c^l}(1)``.

    ``l | n``; only the exponents ``a_k`` with ``k | n`` are read, so the same
    factorization serves quotient orders ``n`` that divide the group order.
    """
    if n % l:
        raise ValueError(f"{l} does not divide {n}")
    ml, mn = p_adic_valuation(p, l), p_adic_valuation(p, n)
    if ml == mn:
        return 0
    rest = l // p**ml
    total = 0
    for i in range(ml + 1, mn + 1):
        for s in divisors(rest):
            a = cyclo.a(p**i * s)
            if a:
                total += a * _deg_ratio_to(p**i * s, p ** (i - ml))
    return total


def q_value_from_b(l: int, n: int, cyclo: CyclotomicFactorization) -> int:
    out = 1
    for p in prime_factorization(n):
        out *= p ** b_exponent(p, l, n, cyclo)
    return out


def b_quotient_exponent(p: int, j: int, l: int, n: int, cyclo: CyclotomicFactorization) -> int:
    """Exponent ``b^l(p, j, n)`` with ``j | l | n``.

    The second branch uses ``deg Phi_{p^i k} / deg Phi_{p^(i-r+1)}``; that is
    the weight for which the contributions of ``a = p^q k`` (q = 0..r) add up
    to the exponent difference between ``Q_{c^j}`` and its quotient
    counterpart.
    """
    big_m = p_adic_valuation(p, l)
    mn = p_adic_valuation(p, n)
    if big_m == mn:
        return 0
    r = p_adic_valuation(p, j)
    k = j // p**r
    total = 0
    for i in range(big_m + 1, mn + 1):
        if r == 0:
            total += cyclo.a(p**i * j) * _deg_ratio_to(p**i * j, p**i)
        else:
            total += (p - 1) * cyclo.a(p**i * k) * _deg_ratio_to(p**i * k, p ** (i - r + 1))
    return total


def c_factor(a: int, l: int, n: int, cyclo: CyclotomicFactorization) -> int:
    out = 1
    for p in prime_factorization(n):
        out *= p ** b_quotient_exponent(p, a, l, n, cyclo)
    return out


# ---------------------------------------------------------------------------
# quotient instances

def quotient_character(fan: Fan, action: GroupAction, l: int) -> dict[int, CharacterEntry]:
    """Character data of ``G/<c^l>`` on the fixed fan of ``c^l``, at ``c^j`` for ``j | l``."""
    sub_fan, sub_action = restrict_to_fixed(fan, action, l)
    return character_data(sub_fan, sub_action, divisors(l))


@dataclass(frozen=True)
class CheckResult:
    l: int
    j: int
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CheckReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]


def _cyclo_product(cyclo, n, l, j, skip_dividing_l):
    out = ONE
    for k in divisors(n):
        if k == 1 or j % k == 0:
            continue
        if skip_dividing_l and l % k == 0:
            continue
        if not skip_dividing_l and l % k:
            continue
        a = cyclo.a(k)
        if a:
            out = out * cyclotomic(k // gcd(k, j)) ** (a * cyclotomic_degree_ratio(k, j))
    return out


def cross_check_quotient(fan: Fan, action: GroupAction, l: int, base: Mapping[int, CharacterEntry] | None = None) -> CheckReport:
    """Compare the character with the one of the quotient instance for ``l``.

    For every ``j | l`` four identities are checked exactly: the graded
    relation with the extra cyclotomic factor, the product formula for the
    quotient's graded character, and the two prime-power forms of the
    ungraded relation.
    """
    n = action.order
    if base is None:
        base = character_data(fan, action)
    cyclo = base[1].cyclo
    quot = quotient_character(fan, action, l)
    report = CheckReport()
    for j in divisors(l):
        full = base[j]
        qe = quot[j]

        extra = _cyclo_product(cyclo, n, l, j, skip_dividing_l=True)
        lhs, rhs = full.graded, qe.graded * extra
        report.results.append(CheckResult(l, j, "graded_relation", lhs == rhs, f"{lhs} vs {rhs}"))

        inner = _cyclo_product(cyclo, n, l, j, skip_dividing_l=False)
        rhs = full.h_poly * inner
        report.results.append(
            CheckResult(l, j, "quotient_graded_formula", qe.graded == rhs, f"{qe.graded} vs {rhs}")
        )

        ratio = Fraction(1)
        for p in prime_factorization(n):
            ratio *= Fraction(p) ** (b_exponent(p, j, n, cyclo) - b_exponent(p, j, l, cyclo))
        rhs = qe.ungraded * ratio
        report.results.append(
            CheckResult(l, j, "ungraded_b_relation", full.ungraded == rhs, f"{full.ungraded} vs {rhs}")
        )

        cprod = 1
        for a in divisors(j):
            cprod *= c_factor(a, l, n, cyclo)
        rhs = qe.ungraded * cprod
        report.results.append(
            CheckResult(l, j, "ungraded_c_relation", full.ungraded == rhs, f"{full.ungraded} vs {rhs}")
        )
    return report


def check_q_formulas(fan: Fan, action: GroupAction, base: Mapping[int, CharacterEntry] | None = None) -> CheckReport:
    """``Q_{c^l}`` from ``Q_c`` and ``Q_{c^l}(1)`` from the b exponents, for all ``l | n``."""
    n = action.order
    if base is None:
        base = character_data(fan, action)
    cyclo = base[1].cyclo
    report = CheckReport()
    for l in divisors(n):
        direct = base[l].q_poly
        derived = q_power_from_base(cyclo, n, l)
        report.results.append(CheckResult(l, l, "q_from_base", direct == derived, f"{direct} vs {derived}"))
        value = q_value_from_b(l, n, cyclo)
        report.results.append(CheckResult(l, l, "q_value_from_b", direct(1) == value, f"{direct(1)} vs {value}"))
    return report


# ---------------------------------------------------------------------------
# weighted sums over a bounded poset

def poset_weighted_check(poset: Iterable[int], fprime: Mapping[int, int], cmap: Mapping[int, int]):
    """Return ``(sum_p fprime(p) * prod_{q <= p} cmap(q), hypothesis_ok)``.

    The poset is a set of positive integers ordered by divisibility and must
    have a least and a greatest element.  ``hypothesis_ok`` says whether every
    up-set sum ``sum_{q >= p} fprime(q)`` is non-negative.
    """
    elems = sorted(set(poset))
    if not elems:
        raise UnboundedPoset("empty poset")
    bottom, top = elems[0], elems[-1]
    if any(e % bottom for e in elems) or any(top % e for e in elems):
        raise UnboundedPoset("poset has no least or no greatest element")
    hypothesis_ok = all(sum(fprime[q] for q in elems if q % p == 0) >= 0 for p in elems)
    value = 0
    for p in elems:
        weight = 1
        for q in elems:
            if p % q == 0:
                weight *= cmap[q]
        value += fprime[p] * weight
    return value, hypothesis_ok
