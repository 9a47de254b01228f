"""Exact simplex method over the rationals.

Solves min c.x subject to A x = b, x >= 0 with Fraction arithmetic throughout.
Anti-cycling is Bland's smallest-index rule, which also makes every solve
deterministic: same input, same optimal basis, same vertex.
"""

from __future__ import annotations

from fractions import Fraction


class LPInfeasible(Exception):
    pass


class LPUnbounded(Exception):
    pass


def _pivot(tableau, cost_rows, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [x / piv for x in tableau[row]]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            f = r[col]
            tableau[i] = [a - f * b for a, b in zip(r, tableau[row])]
    for k, cr in enumerate(cost_rows):
        if cr[col] != 0:
            f = cr[col]
            cost_rows[k] = [a - f * b for a, b in zip(cr, tableau[row])]
    basis[row] = col


def _run_simplex(tableau, cost_rows, basis, width):
    """Iterate Bland pivots on cost_rows[0] until optimal. Mutates in place."""
    cost = cost_rows[0]
    while True:
        enter = None
        for j in range(width):
            if cost[j] < 0:
                enter = j
                break
        if enter is None:
            return
        leave = None
        best = None
        for i, r in enumerate(tableau):
            if r[enter] > 0:
                ratio = r[-1] / r[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise LPUnbounded("objective unbounded below")
        _pivot(tableau, cost_rows, basis, leave, enter)
        cost = cost_rows[0]


def solve_lp(a_rows, b, c):
    """Minimize c.x subject to a_rows @ x = b, x >= 0.

    Returns (optimal_value, x) as Fractions. Raises LPInfeasible / LPUnbounded.
    """
    m = len(a_rows)
    n = len(c)
    tableau = []
    rhs = []
    for row, bi in zip(a_rows, b):
        row = [Fraction(x) for x in row]
        bi = Fraction(bi)
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        tableau.append(row)
        rhs.append(bi)
    # Phase 1: artificial variable per row.
    width = n + m
    full = []
    basis = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        full.append(tableau[i] + art + [rhs[i]])
        basis.append(n + i)
    phase1 = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    for i in range(m):
        phase1 = [a - b_ for a, b_ in zip(phase1, full[i])]
    cost_rows = [phase1]
    _run_simplex(full, cost_rows, basis, width)
    if -cost_rows[0][-1] != 0:
        raise LPInfeasible("no feasible point")
    # Drive artificials out of the basis; drop rows that turn out redundant.
    i = 0
    while i < len(full):
        if basis[i] >= n:
            col = next((j for j in range(n) if full[i][j] != 0), None)
            if col is None:
                del full[i]
                del basis[i]
                continue
            _pivot(full, cost_rows, basis, i, col)
        i += 1
    # Phase 2: original objective, artificial columns frozen at zero.
    phase2 = [Fraction(x) for x in c] + [Fraction(0)] * m + [Fraction(0)]
    for i, bi in enumerate(basis):
        if phase2[bi] != 0:
            f = phase2[bi]
            phase2 = [a - f * b_ for a, b_ in zip(phase2, full[i])]
    cost_rows = [phase2]
    _run_simplex(full, cost_rows, basis, n)
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = full[i][-1]
    return -cost_rows[0][-1], x


def feasible_point(a_rows, b, nvars):
    """A point with a_rows @ x = b, x >= 0, or None if none exists."""
    try:
        _, x = solve_lp(a_rows, b, [Fraction(0)] * nvars)
    except LPInfeasible:
        return None
    return x
