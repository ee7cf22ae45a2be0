"""Exact integer arithmetic: polynomials, matrices, cyclotomics, Möbius values.

Everything here works with Python ints (arbitrary precision) and, where a
linear solve needs it, ``fractions.Fraction``.  Nothing touches floating
point.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import InexactDivision, NotCyclotomicProduct, OrderExceedsCap

DEFAULT_ORDER_CAP = 10_000


class IntPolynomial:
    """Univariate polynomial in ``q`` with integer coefficients.

    ``coefficients[i]`` is the coefficient of ``q**i``.  Trailing zeros are
    stripped, so the zero polynomial has an empty coefficient tuple.
    Instances are immutable and hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable[int] = ()):
        c = [int(x) for x in coefficients]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def constant(cls, value: int) -> IntPolynomial:
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        return cls([0] * degree + [coeff])

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self._c):
            return self._c[i]
        return 0

    def padded(self, length: int) -> tuple[int, ...]:
        """Coefficients ``0 .. length-1``, zero-filled or truncated."""
        return tuple(self[i] for i in range(length))

    def __call__(self, x):
        acc = 0
        for a in reversed(self._c):
            acc = acc * x + a
        return acc

    def _coerce(self, other) -> IntPolynomial:
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self._c), len(other._c))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-a for a in self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._c or not other._c:
            return IntPolynomial()
        out = [0] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = IntPolynomial((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(("IntPolynomial", self._c))

    def __repr__(self):
        return f"IntPolynomial({list(self._c)})"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                var = "q" if i == 1 else f"q^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if a < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def has_nonnegative_coefficients(self) -> bool:
        return all(a >= 0 for a in self._c)


ONE = IntPolynomial((1,))
ONE_MINUS_Q = IntPolynomial((1, -1))


def poly_divmod(num: IntPolynomial, den: IntPolynomial):
    """Long division over the integers; raises if a quotient step is fractional."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(num.coefficients)
    dd = den.degree
    lead = den.coefficients[-1]
    if len(rem) - 1 < dd:
        return IntPolynomial(), num
    quot = [0] * (len(rem) - dd)
    for k in range(len(rem) - 1 - dd, -1, -1):
        top = rem[k + dd]
        if top == 0:
            continue
        if top % lead:
            raise InexactDivision(f"{num} is not divisible by {den} over the integers")
        t = top // lead
        quot[k] = t
        for i, b in enumerate(den.coefficients):
            rem[k + i] -= t * b
    return IntPolynomial(quot), IntPolynomial(rem)


def poly_exact_divide(num: IntPolynomial, den: IntPolynomial) -> IntPolynomial:
    quot, rem = poly_divmod(num, den)
    if not rem.is_zero():
        raise InexactDivision(f"{num} / {den} leaves remainder {rem}")
    return quot


# ---------------------------------------------------------------------------
# number theory

def divisors(m: int) -> list[int]:
    if m < 1:
        raise ValueError("divisors() needs a positive integer")
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def prime_factorization(m: int) -> dict[int, int]:
    """Trial-division factorization ``{p: e}``; empty for m == 1."""
    if m < 1:
        raise ValueError("prime_factorization() needs a positive integer")
    out = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def prime_power_base(m: int):
    """Return ``(p, k)`` if ``m == p**k`` with k >= 1, else None."""
    if m < 2:
        return None
    f = prime_factorization(m)
    if len(f) != 1:
        return None
    (p, k), = f.items()
    return p, k


def totient(m: int) -> int:
    out = m
    for p in prime_factorization(m):
        out = out // p * (p - 1)
    return out


def moebius_nt(m: int) -> int:
    """Classical Möbius function from the prime factorization."""
    f = prime_factorization(m)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


@functools.lru_cache(maxsize=None)
def moebius_recursive(m: int) -> int:
    """Möbius function from ``mu(1) = 1`` and ``sum_{d | m} mu(d) = 0`` (m > 1).

    Deliberately shares no code with ``moebius_nt``; used as its oracle.
    """
    if m < 1:
        raise ValueError("moebius_recursive() needs a positive integer")
    if m == 1:
        return 1
    return -sum(moebius_recursive(d) for d in range(1, m) if m % d == 0)


def p_adic_valuation(p: int, n: int) -> int:
    if n < 1:
        raise ValueError("valuation needs a positive integer")
    i = 0
    while n % p == 0:
        n //= p
        i += 1
    return i


# ---------------------------------------------------------------------------
# cyclotomic polynomials

@functools.lru_cache(maxsize=None)
def cyclotomic(l: int) -> IntPolynomial:
    """The l-th cyclotomic polynomial, by dividing q^l - 1 by the lower ones."""
    if l < 1:
        raise ValueError("cyclotomic index must be >= 1")
    num = IntPolynomial.monomial(l) - 1
    for d in divisors(l)[:-1]:
        num = poly_exact_divide(num, cyclotomic(d))
    return num


@dataclass(frozen=True)
class CyclotomicFactorization:
    """Exponents ``a_l`` (l >= 2) with ``prod Phi_l ** a_l`` equal to a polynomial.

    ``n`` is the order of the group element the polynomial came from; every
    key divides it.  Zero exponents are not stored.
    """

    exponents: Mapping[int, int]
    n: int

    def __post_init__(self):
        clean = {int(k): int(v) for k, v in sorted(self.exponents.items()) if v}
        for k in clean:
            if k < 2 or self.n % k:
                raise ValueError(f"cyclotomic index {k} does not divide {self.n}")
        object.__setattr__(self, "exponents", clean)

    def a(self, k: int) -> int:
        return self.exponents.get(k, 0)

    def product(self) -> IntPolynomial:
        out = ONE
        for k, e in self.exponents.items():
            out = out * cyclotomic(k) ** e
        return out

    def __hash__(self):
        return hash((tuple(self.exponents.items()), self.n))


def factor_into_cyclotomics(p: IntPolynomial, m: int) -> CyclotomicFactorization:
    """Split ``p`` into cyclotomic factors ``Phi_l`` with ``l | m``, ``l >= 2``.

    Trial division only; the factorization is unique because cyclotomic
    polynomials are irreducible and pairwise distinct.
    """
    if p[0] != 1:
        raise NotCyclotomicProduct(f"{p} does not have constant term 1")
    rest = p
    exps = {}
    for l in divisors(m):
        if l == 1:
            continue
        phi = cyclotomic(l)
        while rest.degree >= phi.degree:
            try:
                rest = poly_exact_divide(rest, phi)
            except InexactDivision:
                break
            exps[l] = exps.get(l, 0) + 1
    if rest != ONE:
        raise NotCyclotomicProduct(
            f"{p} is not a product of Phi_l with l | {m}; leftover factor {rest}"
        )
    return CyclotomicFactorization(exps, m)


# ---------------------------------------------------------------------------
# integer matrices

class IntMatrix:
    """Dense integer matrix, stored as a tuple of row tuples."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        self.rows = tuple(tuple(int(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if self.rows:
            widths = {len(r) for r in self.rows}
            if len(widths) != 1:
                raise ValueError("ragged matrix")
            self.ncols = widths.pop()
        else:
            self.ncols = 0 if ncols is None else ncols

    @classmethod
    def identity(cls, d: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(d)] for i in range(d)], ncols=d)

    @classmethod
    def zeros(cls, r: int, c: int) -> IntMatrix:
        return cls([[0] * c for _ in range(r)], ncols=c)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        return cls([[col[i] for col in columns] for i in range(nrows)], ncols=len(columns))

    @property
    def dim(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError(f"{self.nrows}x{self.ncols} matrix is not square")
        return self.nrows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.columns(), ncols=self.nrows)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ncols:
            raise ValueError("vector length does not match matrix")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = other.columns()
            return IntMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows],
                ncols=other.ncols,
            )
        return self.apply(other)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix([[k * a for a in r] for r in self.rows], ncols=self.ncols)

    def __pow__(self, e: int) -> IntMatrix:
        if e < 0:
            raise ValueError("negative matrix power")
        result = IntMatrix.identity(self.dim)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim))

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _bareiss(rows: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place; returns (rank, signed last pivot)."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = rows[r][c]
        for i in range(r + 1, m):
            a = rows[i][c]
            for j in range(c + 1, n):
                rows[i][j] = (p * rows[i][j] - a * rows[r][j]) // prev
            rows[i][c] = 0
        prev = p
        r += 1
    return r, sign * prev


def rank(m: IntMatrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    r, _ = _bareiss([list(row) for row in m.rows])
    return r


def determinant(m: IntMatrix) -> int:
    d = m.dim
    if d == 0:
        return 1
    r, last = _bareiss([list(row) for row in m.rows])
    return last if r == d else 0


def char_poly_one_minus_qg(g: IntMatrix) -> IntPolynomial:
    """``det(1 - q*g)`` by the Faddeev-LeVerrier recursion.

    With ``det(t - g) = t^d + c_1 t^{d-1} + ... + c_d`` the reversed
    polynomial is ``1 + c_1 q + ... + c_d q^d``.  Every division by k in the
    recursion is exact for integer matrices.
    """
    d = g.dim
    coeffs = [1]
    ident = IntMatrix.identity(d)
    mk = IntMatrix.zeros(d, d)
    for k in range(1, d + 1):
        mk = g @ mk + ident.scale(coeffs[-1])
        t = (g @ mk).trace()
        if t % k:
            raise InexactDivision("Faddeev-LeVerrier step is not integral")
        coeffs.append(-t // k)
    return IntPolynomial(coeffs)


def matrix_order(g: IntMatrix, cap: int = DEFAULT_ORDER_CAP) -> int:
    ident = IntMatrix.identity(g.dim)
    power = g
    for n in range(1, cap + 1):
        if power == ident:
            return n
        power = power @ g
    raise OrderExceedsCap(cap)


def fixed_subspace_dimension(g: IntMatrix) -> int:
    d = g.dim
    return d - rank(g - IntMatrix.identity(d))


def integer_kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of ``{v in Z^d : m v = 0}``.

    Unimodular column operations bring ``m`` to column-echelon form
    ``m U = [H | 0]``; the columns of U facing the zero block span the
    integer kernel, and they are saturated because U is invertible over Z.
    """
    a = [list(r) for r in m.rows]
    d = m.ncols
    u = [[int(i == j) for j in range(d)] for i in range(d)]

    def col_axpy(dst, src, k):  # column dst -= k * column src
        for row in a:
            row[dst] -= k * row[src]
        for row in u:
            row[dst] -= k * row[src]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    col = 0
    for row in a:
        if col == d:
            break
        while True:
            nz = [k for k in range(col, d) if row[k] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda k: abs(row[k]))
            if piv != col:
                col_swap(piv, col)
            done = True
            for k in range(col + 1, d):
                if row[k]:
                    col_axpy(k, col, row[k] // row[col])
                    if row[k]:
                        done = False
            if done:
                break
        if row[col] != 0:
            col += 1
    return [tuple(u[i][k] for i in range(d)) for k in range(col, d)]


def solve_exact(columns: Sequence[Sequence[int]], b: Sequence[int]):
    """Solve ``sum_k x_k * columns[k] = b`` over Q.

    Columns must be linearly independent.  Returns a tuple of Fractions, or
    None when ``b`` is not in their span.
    """
    k = len(columns)
    n = len(b)
    rows = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(b[i])] for i in range(n)]
    r = 0
    pivots = []
    for c in range(k):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            raise ValueError("columns are linearly dependent")
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(r)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, n)):
        return None
    return tuple(rows[i][k] for i in pivots)


def vector_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
