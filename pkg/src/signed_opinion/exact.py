"""Exact rational linear solves for small systems.

Floats are lifted to the simplest fraction that rounds back to the same
double, so generator weights such as ``0.2`` or ``7/30`` become ``1/5`` and
``7/30`` exactly.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

EXACT_MAX_N = 32


def to_fraction(x) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    x = float(x)
    if not np.isfinite(x):
        raise ValueError(f"cannot represent {x} as a fraction")
    exact = Fraction(x)
    for digits in range(1, 18):
        f = exact.limit_denominator(10**digits)
        if float(f) == x:
            return f
    return exact


def fraction_matrix(a) -> list[list[Fraction]]:
    return [[to_fraction(v) for v in row] for row in np.asarray(a, dtype=object)]


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``A x = b`` by Gauss-Jordan elimination over the rationals."""
    M = [list(map(to_fraction, row)) for row in A]
    rhs = list(map(to_fraction, b))
    n = len(M)
    if n > EXACT_MAX_N:
        raise ValueError(f"exact mode supports n <= {EXACT_MAX_N}, got {n}")
    if any(len(row) != n for row in M) or len(rhs) != n:
        raise ValueError("exact solve needs a square system with matching right-hand side")
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError(f"singular system: no pivot in column {col}")
        M[col], M[pivot] = M[pivot], M[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        p = M[col][col]
        for r in range(n):
            if r == col or M[r][col] == 0:
                continue
            factor = M[r][col] / p
            row_r, row_c = M[r], M[col]
            for c in range(col, n):
                row_r[c] -= factor * row_c[c]
            rhs[r] -= factor * rhs[col]
    return [rhs[i] / M[i][i] for i in range(n)]


def identity_minus(m) -> list[list[Fraction]]:
    F = fraction_matrix(m)
    n = len(F)
    return [[(1 if i == j else 0) - F[i][j] for j in range(n)] for i in range(n)]
