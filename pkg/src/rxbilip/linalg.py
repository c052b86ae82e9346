"""Exact Gaussian elimination over Q for the small matrices of constant parts."""

from __future__ import annotations

from typing import Sequence

from .poly import QQ


def column_pivots(columns: Sequence[Sequence]) -> list[int]:
    """Indices of the columns kept by greedy left-to-right independence.

    A column is kept when it is not in the span of the columns kept before it,
    so the result is the pivot set of row reduction with columns in the given order.
    """
    basis: list[tuple[int, list]] = []  # (pivot row, reduced vector)
    kept = []
    for k, col in enumerate(columns):
        v = [QQ(c) for c in col]
        for row, b in basis:
            if v[row]:
                f = v[row] / b[row]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is not None:
            basis.append((piv, v))
            kept.append(k)
    return kept


def rank(columns: Sequence[Sequence]) -> int:
    return len(column_pivots(columns))


def solve_in_span(columns: Sequence[Sequence], target: Sequence) -> list | None:
    """Coefficients c with sum c_k columns[k] = target, or None if target is outside the span.

    ``columns`` must be linearly independent.
    """
    m = len(target)
    k = len(columns)
    # augmented rows: m equations in k unknowns
    rows = [[QQ(columns[j][i]) for j in range(k)] + [QQ(target[i])] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] for i in range(r, m)):
        return None
    sol = [QQ(0)] * k
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][k]
    return sol
