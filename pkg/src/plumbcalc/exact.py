"""Exact integer/rational linear algebra.

Everything here works on lists of Python ints or ``fractions.Fraction`` so that
results never depend on floating point.  Elimination is fraction-free
(Bareiss), which keeps every intermediate entry an integer that divides
exactly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[int]]


def bareiss_echelon(rows: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Returns the echelon matrix and the list of pivot columns.  Every entry of
    the result is an integer; the divisions by the previous pivot are exact.
    """
    m = [[int(v) for v in row] for row in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, n_rows):
            f = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c, n_cols):
                num = piv * row_i[j] - f * row_r[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                row_i[j] = q
        # entries left of the pivot column in lower rows are zero by construction
        pivots.append(c)
        prev = piv
        r += 1
    return m, pivots


def determinant(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if any(len(row) != n for row in rows):
        raise ValueError("determinant needs a square matrix")
    # Bareiss without pivot search on the diagonal; swap rows on zero pivots.
    m = [[int(v) for v in row] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def leading_minors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Determinants of the leading principal k x k submatrices, k = 1..n."""
    n = len(rows)
    return [determinant([list(row[:k]) for row in rows[:k]]) for k in range(1, n + 1)]


def nullspace(rows: Sequence[Sequence[int]], n_cols: int | None = None) -> list[list[Fraction]]:
    """Exact basis of the right kernel, one vector per free column.

    Each basis vector has a 1 in its free column and zeros in the other free
    columns (reduced echelon convention).
    """
    if n_cols is None:
        if not rows:
            raise ValueError("n_cols is required for an empty matrix")
        n_cols = len(rows[0])
    echelon, pivots = bareiss_echelon(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            row = echelon[r]
            s = sum((row[j] * x[j] for j in range(pc + 1, n_cols) if row[j]), Fraction(0))
            x[pc] = -s / row[pc]
        basis.append(x)
    return basis


def primitive_vector(vec: Sequence[Fraction | int]) -> list[int]:
    """Scale a rational vector to the integer vector with content 1.

    The sign is kept as given; the zero vector is rejected.
    """
    fracs = [Fraction(v) for v in vec]
    if all(v == 0 for v in fracs):
        raise ValueError("zero vector has no primitive form")
    den = reduce(lcm, (v.denominator for v in fracs), 1)
    ints = [int(v * den) for v in fracs]
    g = reduce(gcd, (abs(v) for v in ints), 0)
    return [v // g for v in ints]


def mat_vec(rows: Sequence[Sequence[int]], vec: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, vec)) for row in rows]


def solve_square(rows: Sequence[Sequence[Fraction | int]], rhs: Sequence[Fraction | int]) -> list[Fraction]:
    """Solve a nonsingular square system exactly by Gauss-Jordan over Q."""
    n = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular system")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [v / piv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]
