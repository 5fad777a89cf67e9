"""Exact Gaussian elimination over ``fractions.Fraction``.

Small dense systems only; everything downstream is desk scale (n <= 10).
"""

from __future__ import annotations

from fractions import Fraction


def solve_exact(rows, rhs):
    """Solve ``A x = b`` exactly.

    Returns a pair ``(status, solution)`` where status is one of
    ``"unique"``, ``"none"``, ``"many"``.  For ``"unique"`` the solution is a
    list of Fractions; for ``"many"`` it is a particular solution with every
    free variable set to 0; for ``"none"`` it is None.
    """
    m = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    n = len(aug[0]) - 1 if m else 0

    pivot_cols = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][c]
        aug[r] = [v / inv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break

    for i in range(r, m):
        if aug[i][n] != 0:
            return "none", None

    x = [Fraction(0)] * n
    for row_i, c in enumerate(pivot_cols):
        x[c] = aug[row_i][n]
    if len(pivot_cols) < n:
        return "many", x
    return "unique", x
