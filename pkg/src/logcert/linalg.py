"""Exact integer linear algebra: fraction-free elimination and nullspaces.

The elimination is Bareiss-style (single-step fraction-free), so intermediate
entries stay integers bounded by minors of the input, with exact divisions
throughout. gmpy2 integers are used when available; plain ints otherwise.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    def mpz(x):
        return int(x)


def row_echelon_fraction_free(matrix: List[list]) -> List[int]:
    """In-place fraction-free row echelon form; returns the pivot columns."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    pivot_cols: List[int] = []
    prev = mpz(1)
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if matrix[i][c]), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
        top = matrix[r]
        p = top[c]
        for i in range(r + 1, rows):
            row = matrix[i]
            f = row[c]
            for j in range(c + 1, cols):
                row[j] = (p * row[j] - f * top[j]) // prev
            row[c] = mpz(0)
        prev = p
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    return pivot_cols


def nullspace_int(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    """Primitive integer basis of the right nullspace of an integer matrix.

    One basis vector per free column: the free variable is set to 1 and the
    pivot variables are back-substituted exactly over the rationals, then
    denominators are cleared and the content divided out.
    """
    if not matrix:
        return []
    work = [[mpz(v) for v in row] for row in matrix]
    cols = len(work[0])
    pivot_cols = row_echelon_fraction_free(work)
    pivot_set = set(pivot_cols)
    basis: List[List[int]] = []
    for free in (c for c in range(cols) if c not in pivot_set):
        x = [Fraction(0)] * cols
        x[free] = Fraction(1)
        for r in range(len(pivot_cols) - 1, -1, -1):
            pc = pivot_cols[r]
            row = work[r]
            acc = Fraction(0)
            for j in range(pc + 1, cols):
                if x[j]:
                    acc += Fraction(int(row[j])) * x[j]
            x[pc] = -acc / Fraction(int(row[pc]))
        basis.append(clear_denominators(x))
    return basis


def clear_denominators(vector: Sequence[Fraction]) -> List[int]:
    """Scale a rational vector to a primitive integer vector."""
    lcm = 1
    for v in vector:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in vector]
    g = math.gcd(*ints) if any(ints) else 1
    return [v // g for v in ints]
