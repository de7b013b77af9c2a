"""Exact integer-matrix algebra: Smith normal form, membership in integer
column spans, and presentations of quotient groups Z^r / L.

Everything runs on Python's arbitrary-precision integers.  Intermediate
entries of a Smith reduction can outgrow any fixed width even for small
inputs, so no numpy fast paths are used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class DimensionMismatch(ValueError):
    """Vector or matrix dimensions do not line up."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with row-major entries."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise DimensionMismatch(
                f"expected {self.rows} rows, got {len(self.entries)}"
            )
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch(
                    f"expected {self.cols} columns, got a row of length {len(row)}"
                )

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, columns, rows: int | None = None) -> "IntMatrix":
        """Build the matrix whose j-th column is columns[j].

        `rows` is required when `columns` is empty (the shape is r x 0).
        """
        columns = [tuple(int(x) for x in col) for col in columns]
        if not columns:
            if rows is None:
                raise DimensionMismatch("row count required for an empty column list")
            return cls(rows, 0, tuple(() for _ in range(rows)))
        r = len(columns[0])
        if rows is not None and rows != r:
            raise DimensionMismatch(f"columns have length {r}, expected {rows}")
        entries = tuple(tuple(col[i] for col in columns) for i in range(r))
        return cls(r, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def apply(self, vector) -> tuple[int, ...]:
        """Matrix-vector product."""
        vector = tuple(vector)
        if len(vector) != self.cols:
            raise DimensionMismatch(
                f"vector of length {len(vector)} against {self.cols} columns"
            )
        return tuple(sum(a * x for a, x in zip(row, vector)) for row in self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols = list(zip(*other.entries)) if other.entries else []
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.entries
            ),
        )


@dataclass(frozen=True)
class SmithDecomposition:
    """Unimodular transforms and invariant diagonal: left @ A @ right is
    diagonal with non-negative entries, each dividing the next, zeros last.
    """

    left: IntMatrix
    right: IntMatrix
    diag: tuple[int, ...]

    def diagonal_matrix(self) -> IntMatrix:
        r, c = self.left.rows, self.right.cols
        return IntMatrix(
            r,
            c,
            tuple(
                tuple(self.diag[i] if i == j and i < len(self.diag) else 0 for j in range(c))
                for i in range(r)
            ),
        )


@dataclass(frozen=True)
class QuotientPresentation:
    """Finitely generated abelian group Z^r / L together with the projection
    sending ambient coordinates to (torsion coordinates, free coordinates).
    """

    ambient_rank: int
    free_rank: int
    invariant_factors: tuple[int, ...]
    projection: IntMatrix

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n

    def zero(self) -> tuple[int, ...]:
        return (0,) * (len(self.invariant_factors) + self.free_rank)


def snf(matrix: IntMatrix) -> SmithDecomposition:
    """Smith normal form by row/column reduction.

    Pivot choice is the smallest nonzero absolute value, ties broken by
    (row, col) scan order, which makes the transforms deterministic.
    """
    r, c = matrix.rows, matrix.cols
    m = [list(row) for row in matrix.entries]
    left = [[int(i == j) for j in range(r)] for i in range(r)]
    right = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        if i != j:
            m[i], m[j] = m[j], m[i]
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        if i != j:
            for row in m:
                row[i], row[j] = row[j], row[i]
            for row in right:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row[dst] += k * row[src]
        if k:
            ms, md = m[src], m[dst]
            for idx in range(c):
                md[idx] += k * ms[idx]
            ls, ld = left[src], left[dst]
            for idx in range(r):
                ld[idx] += k * ls[idx]

    def add_col(src, dst, k):
        if k:
            for row in m:
                row[dst] += k * row[src]
            for row in right:
                row[dst] += k * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        left[i] = [-x for x in left[i]]

    t = 0
    while t < min(r, c):
        # smallest-|entry| pivot in the trailing block; row-major scan keeps
        # the first of equal candidates
        pos = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = abs(m[i][j])
                if v and (best is None or v < best):
                    best, pos = v, (i, j)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            if m[t][t] < 0:
                negate_row(t)
            pivot = m[t][t]
            moved = False
            for i in range(t + 1, r):
                if m[i][t]:
                    add_row(t, i, -(m[i][t] // pivot))
                    if m[i][t]:
                        # remainder is smaller than the pivot; promote it
                        swap_rows(t, i)
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, c):
                if m[t][j]:
                    add_col(t, j, -(m[t][j] // pivot))
                    if m[t][j]:
                        swap_cols(t, j)
                        moved = True
                        break
            if moved:
                continue
            # pivot alone in its row and column; enforce that it divides the
            # whole trailing block so the invariant-factor chain holds
            offender = None
            for i in range(t + 1, r):
                if any(m[i][j] % pivot for j in range(t + 1, c)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        t += 1

    diag = tuple(m[i][i] for i in range(min(r, c)))
    return SmithDecomposition(
        left=IntMatrix.from_rows(left),
        right=IntMatrix.from_rows(right),
        diag=diag,
    )


def solve_membership(vector, lattice: IntMatrix) -> tuple[int, ...] | None:
    """Integer coefficients c with lattice @ c == vector, or None.

    The columns of `lattice` generate the subgroup being tested.
    """
    vector = tuple(int(x) for x in vector)
    if len(vector) != lattice.rows:
        raise DimensionMismatch(
            f"vector of length {len(vector)} against ambient rank {lattice.rows}"
        )
    dec = snf(lattice)
    w = dec.left.apply(vector)
    y = [0] * lattice.cols
    for i, wi in enumerate(w):
        if i < len(dec.diag) and dec.diag[i]:
            if wi % dec.diag[i]:
                return None
            y[i] = wi // dec.diag[i]
        elif wi:
            return None
    witness = dec.right.apply(y)
    assert lattice.apply(witness) == vector
    return witness


def quotient(lattice: IntMatrix) -> QuotientPresentation:
    """Presentation of Z^r modulo the integer column span of `lattice`."""
    r = lattice.rows
    dec = snf(lattice)
    torsion = [i for i, d in enumerate(dec.diag) if d > 1]
    free = [i for i in range(r) if i >= len(dec.diag) or dec.diag[i] == 0]
    rows = [dec.left.entries[i] for i in torsion]
    for i in free:
        row = dec.left.entries[i]
        lead = next((x for x in row if x), 0)
        rows.append(tuple(-x for x in row) if lead < 0 else row)
    projection = IntMatrix(len(rows), r, tuple(rows))
    return QuotientPresentation(
        ambient_rank=r,
        free_rank=len(free),
        invariant_factors=tuple(dec.diag[i] for i in torsion),
        projection=projection,
    )


def push_to_quotient(vector, presentation: QuotientPresentation) -> tuple[int, ...]:
    """Image of an ambient vector, torsion coordinates reduced into [0, factor)."""
    vector = tuple(int(x) for x in vector)
    if len(vector) != presentation.ambient_rank:
        raise DimensionMismatch(
            f"vector of length {len(vector)} against ambient rank "
            f"{presentation.ambient_rank}"
        )
    image = presentation.projection.apply(vector)
    factors = presentation.invariant_factors
    return tuple(
        x % factors[i] if i < len(factors) else x for i, x in enumerate(image)
    )


def rank(rows) -> int:
    """Rank over Q of an integer matrix given as an iterable of rows.

    Fraction-free elimination with per-row gcd reduction keeps the entries
    small without leaving exact arithmetic.
    """
    work = [list(row) for row in rows if any(row)]
    if not work:
        return 0
    ncols = len(work[0])
    rk = 0
    for col in range(ncols):
        pivot = None
        for i in range(rk, len(work)):
            v = work[i][col]
            if v and (pivot is None or abs(v) < abs(work[pivot][col])):
                pivot = i
        if pivot is None:
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        pv = work[rk][col]
        for i in range(rk + 1, len(work)):
            ci = work[i][col]
            if ci:
                row = [pv * a - ci * b for a, b in zip(work[i], work[rk])]
                g = 0
                for x in row:
                    g = gcd(g, x)
                work[i] = [x // g for x in row] if g > 1 else row
        rk += 1
        if rk == len(work):
            break
    return rk


def det(matrix: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if matrix.rows != matrix.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = matrix.rows
    if n == 0:
        return 1
    m = [list(row) for row in matrix.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y
