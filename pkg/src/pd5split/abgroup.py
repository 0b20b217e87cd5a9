"""Exact finitely generated abelian group arithmetic.

Integer matrices with arbitrary-precision entries, Smith normal form with
unimodular transforms, presentations, and the Hom/Ext/tensor/Tor calculus
that every other module relies on.  All values are immutable and all
operations are pure, so everything here is safe to share across threads.

>>> print(FgAbGroup.from_divisors(2, 3))
Z/6
>>> print(FgAbGroup.from_divisors(0, 30, 4))
Z (+) Z/2 (+) Z/60
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import zip_longest
from math import gcd, prod


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; inputs here are desk-scale."""
    if n <= 0:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(factorize(n)) == 1


# --------------------------------------------------------------------------
# Integer matrices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, arbitrary precision."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: list[list[int]]) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(r, c, tuple(x for row in rows for x in row))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.to_lists(), other.to_lists()
        out = []
        for i in range(self.rows):
            arow = a[i]
            out.append([sum(arow[k] * b[k][j] for k in range(self.cols))
                        for j in range(other.cols)])
        return IntMatrix.from_rows(out) if out else IntMatrix.zero(0, other.cols)

    def mul_vec(self, v: list[int]) -> list[int]:
        if self.cols != len(v):
            raise ValueError("shape mismatch")
        return [sum(self.at(i, k) * v[k] for k in range(self.cols)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def determinant(self) -> int:
        """Fraction-free (Bareiss) determinant, exact over Z."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_lists()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if pivot is None:
                    return 0
                a[k], a[pivot] = a[pivot], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Diagonalize m by unimodular row/column operations.

    Returns (d, u, v) with d = u * m * v, u and v unimodular, and the
    diagonal of d nonnegative with d1 | d2 | ... .  Pivot choice is the
    smallest nonzero absolute value, ties broken in row-major order, so
    the output is deterministic.

    >>> d, u, v = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    >>> [d.at(0, 0), d.at(1, 1)]
    [2, 4]
    """
    a = m.to_lists()
    rows, cols = m.rows, m.cols
    u = IntMatrix.identity(rows).to_lists()
    v = IntMatrix.identity(cols).to_lists()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        for k in range(cols):
            a[dst][k] += q * a[src][k]
        for k in range(rows):
            u[dst][k] += q * u[src][k]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def find_pivot(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(a[i][j])
                if x and (best is None or x < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while True:
        piv = find_pivot(t)
        if piv is None:
            break
        swap_rows(t, piv[0]) if piv[0] != t else None
        swap_cols(t, piv[1]) if piv[1] != t else None
        # Clear row and column t; a new smaller remainder becomes the pivot.
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        # Enforce divisibility of later entries by the pivot.
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    add_col(j, t, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if a[t][t] < 0:
                negate_row(t)
            t += 1
            if t >= min(rows, cols):
                break

    d = IntMatrix.from_rows(a) if rows else IntMatrix.zero(0, cols)
    return d, IntMatrix.from_rows(u) if rows else IntMatrix.identity(0), \
        IntMatrix.from_rows(v) if cols else IntMatrix.identity(0)


def diagonal_of(d: IntMatrix) -> list[int]:
    return [d.at(i, i) for i in range(min(d.rows, d.cols))]


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a Z-basis of ker(m) acting on column vectors."""
    d, _u, v = smith_normal_form(m)
    diag = diagonal_of(d)
    free = [j for j in range(m.cols) if j >= len(diag) or diag[j] == 0]
    cols = [[v.at(i, j) for i in range(m.cols)] for j in free]
    if not cols:
        return IntMatrix.zero(m.cols, 0)
    return IntMatrix.from_rows([[c[i] for c in cols] for i in range(m.cols)])


def solve(m: IntMatrix, b: list[int]) -> list[int] | None:
    """One integer solution x of m x = b, or None if none exists."""
    d, u, v = smith_normal_form(m)
    ub = u.mul_vec(b)
    diag = diagonal_of(d)
    y = [0] * m.cols
    for i in range(m.rows):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di:
                return None
            if i < m.cols:
                y[i] = ub[i] // di
    return v.mul_vec(y)


# --------------------------------------------------------------------------
# Finitely generated abelian groups
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FgAbGroup:
    """Z^rank (+) Z/d1 (+) ... (+) Z/dk with d1 | d2 | ... and di >= 2.

    The canonical form is the invariant-factor decomposition; a converter
    to prime-power (primary) form is provided for display.

    >>> FgAbGroup.from_divisors(2, 4).invariant_factors
    (2, 4)
    >>> FgAbGroup.from_divisors(2, 3).invariant_factors
    (6,)
    """

    rank: int
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        for d, e in zip(self.invariant_factors, self.invariant_factors[1:]):
            if e % d:
                raise ValueError("invariant factors must form a divisibility chain")
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError("invariant factors must be >= 2")

    # -- constructors ------------------------------------------------------

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n: int) -> "FgAbGroup":
        if n == 0:
            return cls(1, ())
        if n == 1:
            return cls(0, ())
        return cls(0, (n,))

    @classmethod
    def from_divisors(cls, *divisors: int) -> "FgAbGroup":
        """Canonicalize an arbitrary list of cyclic orders (0 means Z)."""
        rank = 0
        primary: dict[int, list[int]] = {}
        for d in divisors:
            d = abs(d)
            if d == 0:
                rank += 1
            elif d > 1:
                for p, e in factorize(d).items():
                    primary.setdefault(p, []).append(e)
        return cls._from_primary(rank, primary)

    @classmethod
    def _from_primary(cls, rank: int, primary: dict[int, list[int]]) -> "FgAbGroup":
        cleaned = {p: sorted(es, reverse=True) for p, es in sorted(primary.items()) if es}
        merged = zip_longest(*([p ** e for e in es] for p, es in cleaned.items()), fillvalue=1)
        factors = sorted(prod(t) for t in merged)
        return cls(rank, tuple(d for d in factors if d > 1))

    # -- structure ---------------------------------------------------------

    def primary_exponents(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for d in self.invariant_factors:
            for p, e in factorize(d).items():
                out.setdefault(p, []).append(e)
        return {p: sorted(es, reverse=True) for p, es in sorted(out.items())}

    def primary_decomposition(self) -> tuple[int, ...]:
        """Cyclic prime-power orders, e.g. Z/12 -> (4, 3)."""
        out = []
        for p, es in self.primary_exponents().items():
            out.extend(p ** e for e in es)
        return tuple(sorted(out))

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.rank:
            return None
        return prod(self.invariant_factors) if self.invariant_factors else 1

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    def torsion(self) -> "FgAbGroup":
        return FgAbGroup(0, self.invariant_factors)

    # -- arithmetic --------------------------------------------------------

    def direct_sum(self, *others: "FgAbGroup") -> "FgAbGroup":
        rank = self.rank + sum(g.rank for g in others)
        primary: dict[int, list[int]] = {}
        for g in (self, *others):
            for p, es in g.primary_exponents().items():
                primary.setdefault(p, []).extend(es)
        return FgAbGroup._from_primary(rank, primary)

    def _pairwise(self, other: "FgAbGroup", free_left: bool, free_right: bool) -> "FgAbGroup":
        # Shared skeleton: the cyclic-by-cyclic part is Z/gcd in every one of
        # Hom, Ext, tensor and Tor; they differ only in how free parts enter.
        mine, theirs = self.primary_exponents(), other.primary_exponents()
        primary: dict[int, list[int]] = {}
        for p in set(mine) | set(theirs):
            es = [min(e1, e2) for e1 in mine.get(p, []) for e2 in theirs.get(p, [])]
            if free_left:
                es.extend(theirs.get(p, []) * self.rank)
            if free_right:
                es.extend(mine.get(p, []) * other.rank)
            primary[p] = es
        return FgAbGroup._from_primary(0, primary)

    def tensor(self, other: "FgAbGroup") -> "FgAbGroup":
        g = self._pairwise(other, free_left=True, free_right=True)
        return FgAbGroup(self.rank * other.rank, g.invariant_factors)

    def tor(self, other: "FgAbGroup") -> "FgAbGroup":
        return self._pairwise(other, free_left=False, free_right=False)

    def hom(self, other: "FgAbGroup") -> "FgAbGroup":
        # Hom(Z/a, Z) = 0, Hom(Z, G) = G.
        g = self._pairwise(other, free_left=True, free_right=False)
        return FgAbGroup(self.rank * other.rank, g.invariant_factors)

    def ext(self, other: "FgAbGroup") -> "FgAbGroup":
        # Ext(Z, G) = 0, Ext(Z/a, Z) = Z/a.
        return self._pairwise(other, free_left=False, free_right=True)

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " (+) ".join(parts) if parts else "0"


# --------------------------------------------------------------------------
# Presentations and graded groups
# --------------------------------------------------------------------------

def group_from_presentation(generators: int, relations: IntMatrix) -> FgAbGroup:
    """Cokernel of the relation matrix: Z^generators / row space.

    `relations` has one relation per row and `generators` columns.

    >>> print(group_from_presentation(1, IntMatrix.from_rows([[2]])))
    Z/2
    >>> print(group_from_presentation(3, IntMatrix.zero(0, 3)))
    Z^3
    """
    if relations.cols != generators:
        raise ValueError("relation matrix must have one column per generator")
    if relations.rows == 0:
        return FgAbGroup.free(generators)
    d, _, _ = smith_normal_form(relations)
    diag = diagonal_of(d)
    nonzero = [x for x in diag if x != 0]
    rank = generators - len(nonzero)
    return FgAbGroup.from_divisors(*nonzero, *([0] * rank))


def quotient_group(span: IntMatrix, sub: IntMatrix) -> FgAbGroup:
    """span(cols of `span`) / span(cols of `sub`), with sub inside span.

    Columns of `sub` must be integer combinations of columns of `span`.
    """
    if sub.cols == 0:
        return FgAbGroup.free(span.cols)
    rel_rows = []
    for j in range(sub.cols):
        y = solve(span, list(sub.col(j)))
        if y is None:
            raise ValueError("subgroup generator not inside the span")
        rel_rows.append(y)
    return group_from_presentation(span.cols, IntMatrix.from_rows(rel_rows))


def homology_of_pair(d_out: IntMatrix, d_in: IntMatrix) -> FgAbGroup:
    """ker(d_out) / im(d_in) for consecutive boundary maps with d_out d_in = 0."""
    if d_out.cols != d_in.rows:
        raise ValueError("boundary maps are not composable")
    k = kernel_basis(d_out)
    if d_in.cols == 0 or d_in.is_zero():
        return FgAbGroup.free(k.cols)
    return quotient_group(k, d_in)


@dataclass(frozen=True)
class GradedGroup:
    """Finitely supported assignment degree -> FgAbGroup."""

    parts: tuple[tuple[int, FgAbGroup], ...]

    @classmethod
    def from_dict(cls, d: dict[int, FgAbGroup]) -> "GradedGroup":
        return cls(tuple(sorted((k, v) for k, v in d.items() if not v.is_trivial)))

    def at(self, degree: int) -> FgAbGroup:
        for k, v in self.parts:
            if k == degree:
                return v
        return FgAbGroup.trivial()

    def degrees(self) -> list[int]:
        return [k for k, _ in self.parts]

    def to_dict(self) -> dict[int, FgAbGroup]:
        return dict(self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "{}"
        return "{" + ", ".join(f"{k}: {v}" for k, v in self.parts) + "}"


_ZERO = FgAbGroup.trivial()
Z = FgAbGroup.free(1)


def _coefficient_group(coeff: FgAbGroup) -> FgAbGroup:
    if coeff.rank == 1 and not coeff.invariant_factors:
        return coeff
    if coeff.rank == 0 and len(coeff.invariant_factors) <= 1:
        return coeff
    raise ValueError("coefficients must be Z or a cyclic group Z/k")


def uct_cohomology(h: GradedGroup, coeff: FgAbGroup) -> GradedGroup:
    """Cohomology of a space from its (reduced) homology.

    Degree n is Hom(H_n, coeff) (+) Ext(H_{n-1}, coeff); see Hatcher,
    Theorem 3.2.

    >>> h = GradedGroup.from_dict({2: FgAbGroup.cyclic(2), 5: Z})
    >>> print(uct_cohomology(h, Z))
    {3: Z/2, 5: Z}
    """
    coeff = _coefficient_group(coeff)
    degrees = set(h.degrees()) | {k + 1 for k in h.degrees()}
    out = {}
    for n in degrees:
        out[n] = h.at(n).hom(coeff).direct_sum(h.at(n - 1).ext(coeff))
    return GradedGroup.from_dict(out)


def direct_sum(groups: list[FgAbGroup]) -> FgAbGroup:
    """Canonical-form direct sum of a list of groups.

    >>> print(direct_sum([FgAbGroup.cyclic(2), FgAbGroup.cyclic(3)]))
    Z/6
    """
    if not groups:
        return _ZERO
    return groups[0].direct_sum(*groups[1:])
