"""Exact Gaussian elimination over any field whose elements support
``+ - * /`` and truthiness (``Fraction`` and :class:`CycloNum` both do).

Pivoting picks the first nonzero entry in the column, so results are
deterministic and never depend on a numeric magnitude.
"""

from __future__ import annotations

from typing import Any, Sequence

Matrix = list[list[Any]]


def _copy(rows: Sequence[Sequence[Any]]) -> Matrix:
    return [list(r) for r in rows]


def echelon(rows: Sequence[Sequence[Any]]) -> tuple[Matrix, list[int], int]:
    """Row echelon form.

    Returns the reduced rows, the pivot columns, and the number of row swaps.
    """
    a = _copy(rows)
    if not a:
        return a, [], 0
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    swaps = 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            swaps += 1
        inv = 1 / a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            if f:
                f = f * inv
                row_r = a[r]
                row_i = a[i]
                row_i[c] = row_i[c] - row_i[c]  # exact zero of the right type
                for k in range(c + 1, ncols):
                    if row_r[k]:
                        row_i[k] = row_i[k] - f * row_r[k]
        pivots.append(c)
        r += 1
    return a, pivots, swaps


def rank(rows: Sequence[Sequence[Any]]) -> int:
    return len(echelon(rows)[1])


def det(rows: Sequence[Sequence[Any]]) -> Any:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    a, pivots, swaps = echelon(rows)
    if len(pivots) < n:
        return a[0][0] - a[0][0]
    d = a[0][0]
    for i in range(1, n):
        d = d * a[i][i]
    return -d if swaps % 2 else d


class SingularMatrix(ArithmeticError):
    pass


def solve(a_rows: Sequence[Sequence[Any]], b_rows: Sequence[Sequence[Any]]) -> Matrix:
    """Solve A X = B for square invertible A (Gauss-Jordan on [A | B])."""
    n = len(a_rows)
    aug = [list(a_rows[i]) + list(b_rows[i]) for i in range(n)]
    width = len(aug[0])
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c]), None)
        if p is None:
            raise SingularMatrix(f"singular matrix (column {c})")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv if x else x for x in aug[c]]
        pivot_row = aug[c]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                row = aug[i]
                for k in range(c, width):
                    if pivot_row[k]:
                        row[k] = row[k] - f * pivot_row[k]
    return [row[n:] for row in aug]


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> Matrix:
    out = []
    for row in a:
        new = []
        for j in range(len(b[0])):
            acc = None
            for k, x in enumerate(row):
                if x and b[k][j]:
                    t = x * b[k][j]
                    acc = t if acc is None else acc + t
            new.append(acc if acc is not None else row[0] - row[0])
        out.append(new)
    return out
