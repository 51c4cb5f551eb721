"""Exact linear algebra over the Gaussian rationals (tiny matrices only)."""

from __future__ import annotations

from typing import Sequence

from .gaussian import GaussianRational, ZERO


def det(mat: Sequence[Sequence[GaussianRational]]) -> GaussianRational:
    """Determinant by cofactor expansion; fine for the small sizes used here."""
    n = len(mat)
    if n == 0:
        return GaussianRational(1)
    if n == 1:
        return mat[0][0]
    total = ZERO
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [list(row[:j]) + list(row[j + 1:]) for row in mat[1:]]
        term = mat[0][j] * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def rank(mat: Sequence[Sequence[GaussianRational]]) -> int:
    """Exact rank by Gaussian elimination."""
    rows = [list(r) for r in mat]
    if not rows:
        return 0
    r = 0
    cols = len(rows[0])
    for col in range(cols):
        pivot = next((i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r
