"""Exact rational linear algebra: Gaussian elimination over Fraction matrices.

Small dense systems only; everything here is deterministic and allocation-happy,
which is fine at the scale of per-simplex solves.
"""

from __future__ import annotations

from fractions import Fraction

Row = list[Fraction]


def _as_fraction_rows(rows) -> list[Row]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form. Returns (rref_rows, pivot_columns)."""
    mat = _as_fraction_rows(rows)
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def matrix_rank(rows) -> int:
    return len(rref(rows)[1])


def solve(rows, rhs) -> tuple[list[Fraction] | None, bool]:
    """Solve A x = b over the rationals.

    Returns (solution, unique). The solution sets free variables to zero;
    (None, False) means the system is inconsistent.
    """
    mat = _as_fraction_rows(rows)
    b = [Fraction(x) for x in rhs]
    if not mat:
        return [], True
    ncols = len(mat[0])
    aug = [row + [bi] for row, bi in zip(mat, b)]
    red, pivots = rref(aug)
    # Inconsistent iff a pivot lands in the rhs column.
    if ncols in pivots:
        return None, False
    x = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = red[r][ncols]
    return x, len(pivots) == ncols


def mat_vec(rows, x) -> list[Fraction]:
    return [sum((Fraction(a) * Fraction(v) for a, v in zip(row, x)), Fraction(0)) for row in rows]
