"""Small exact linear-algebra helpers over ``Fraction`` and ``int``."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(rows: Sequence[Sequence[int | Fraction]]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def vec_mat(v: Sequence, a: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    return tuple(sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0])))


def inverse(a: Sequence[Sequence[int | Fraction]]) -> Matrix:
    """Gauss-Jordan inverse of a square rational matrix."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def determinant(a: Sequence[Sequence[int | Fraction]]) -> Fraction:
    m = to_fractions(a)
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def rref(rows: Sequence[Sequence[int | Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row echelon form with zero rows dropped (a canonical subspace basis)."""
    m = to_fractions(rows)
    if not m:
        return ()
    width = len(m[0])
    lead = 0
    r = 0
    while r < len(m) and lead < width:
        pivot = next((i for i in range(r, len(m)) if m[i][lead] != 0), None)
        if pivot is None:
            lead += 1
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][lead]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][lead] != 0:
                f = m[i][lead]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        lead += 1
    return tuple(tuple(row) for row in m[:r])


def rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    return len(rref(rows))


def nullspace(rows: Sequence[Sequence[int | Fraction]], width: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : rows . x = 0} in Q^width."""
    red = rref(rows) if rows else ()
    pivots = []
    for row in red:
        pivots.append(next(j for j, x in enumerate(row) if x != 0))
    free = [j for j in range(width) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * width
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def scale_to_integers(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest positive multiple of ``v`` with integer entries."""
    from math import lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    return tuple(int(Fraction(x) * den) for x in v)
