"""Small dense exact matrices as lists of lists of Fractions."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .exact import InputError, to_rational

Matrix = list


def as_matrix(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    out = [[to_rational(v) for v in row] for row in rows]
    if out and any(len(row) != len(out[0]) for row in out):
        raise InputError("ragged matrix")
    return out


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> list[list[Fraction]]:
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def dot(u, v) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def scale(c, a):
    return [[c * x for x in row] for row in a]


def _integer_rows(a) -> list[list[int]]:
    """Clear denominators row by row; row scaling by nonzero integers keeps the rank."""
    out = []
    for row in a:
        row = [to_rational(x) for x in row]
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        out.append([int(x * lcm) for x in row])
    return out


def rank(a) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    m = _integer_rows(a)
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (p * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = p
        r += 1
        if r == rows:
            break
    return r


def det_bareiss(a) -> Fraction:
    """Determinant by fraction-free elimination after clearing denominators."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise InputError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    denom = 1
    for row in a:
        for x in row:
            x = to_rational(x)
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
    m = [[int(to_rational(x) * denom) for x in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], denom**n)


def det_cofactor(a) -> Fraction:
    """Determinant by Laplace expansion along the first row (small n only)."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return to_rational(a[0][0])
    if n == 2:
        return to_rational(a[0][0]) * a[1][1] - to_rational(a[0][1]) * a[1][0]
    total = Fraction(0)
    for j in range(n):
        if not a[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = to_rational(a[0][j]) * det_cofactor(minor)
        total += term if j % 2 == 0 else -term
    return total
