"""Independent reference implementations used only by the tests."""

import itertools
from fractions import Fraction

import sympy


def perfect_matching_pfaffian(m):
    """Pfaffian of a 2k x 2k alternating matrix as a signed sum over perfect matchings."""
    n = len(m)

    def rec(rest):
        if not rest:
            return Fraction(1)
        first, others = rest[0], rest[1:]
        total = Fraction(0)
        for pos, partner in enumerate(others):
            remaining = others[:pos] + others[pos + 1:]
            total += (-1) ** pos * Fraction(m[first][partner]) * rec(remaining)
        return total

    return rec(list(range(n)))


def minor(m, i):
    keep = [k for k in range(5) if k != i - 1]
    return [[m[a][b] for b in keep] for a in keep]


def polarized_beta(x, y):
    """beta by brute-force polarization of the 4x4 Pfaffians, signs alternating from +."""
    s = [[x[a][b] + y[a][b] for b in range(5)] for a in range(5)]
    out = []
    for i in range(1, 6):
        pf = perfect_matching_pfaffian
        val = pf(minor(s, i)) - pf(minor(x, i)) - pf(minor(y, i))
        out.append((-1) ** (i - 1) * val)
    return tuple(out)


def bracket_oracle(idx, mats):
    i, j, k, l, m = idx
    left = polarized_beta(mats[i - 1], mats[j - 1])
    right = polarized_beta(mats[l - 1], mats[m - 1])
    xk = mats[k - 1]
    return sum(left[a] * xk[a][b] * right[b] for a in range(5) for b in range(5))


def sympy_det(rows):
    d = sympy.Matrix([[sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in r] for r in rows]).det()
    return Fraction(int(d.p), int(d.q))


def all_indices():
    return itertools.product(range(1, 5), repeat=5)
