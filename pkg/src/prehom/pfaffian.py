"""Alternating matrices, the 4x4 Pfaffian and the bilinear map beta."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import InputError, to_rational


class NotSkewError(InputError):
    pass


class SkewMatrix:
    """An immutable alternating matrix over the rationals.

    Indices in the public API are 1-based to match the usual matrix notation.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(to_rational(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise InputError("alternating matrix must be square")
        for i in range(n):
            if rows[i][i]:
                raise NotSkewError(f"not skew-symmetric: diagonal entry ({i + 1},{i + 1}) is {rows[i][i]}")
            for j in range(i + 1, n):
                if rows[i][j] != -rows[j][i]:
                    raise NotSkewError(
                        f"not skew-symmetric: entry ({i + 1},{j + 1})={rows[i][j]} "
                        f"but ({j + 1},{i + 1})={rows[j][i]}"
                    )
        self.rows = rows

    @classmethod
    def zero(cls, n: int = 5) -> "SkewMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def from_upper(cls, n: int, entries: dict) -> "SkewMatrix":
        """Build from ``{(i, j): value}`` with 1-based ``i < j``."""
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in entries.items():
            if not 1 <= i < j <= n:
                raise InputError(f"bad upper-triangular index ({i},{j})")
            rows[i - 1][j - 1] = to_rational(v)
            rows[j - 1][i - 1] = -to_rational(v)
        return cls(rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __add__(self, other: "SkewMatrix") -> "SkewMatrix":
        return SkewMatrix._trusted([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "SkewMatrix") -> "SkewMatrix":
        return SkewMatrix._trusted([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __mul__(self, c) -> "SkewMatrix":
        c = to_rational(c)
        return SkewMatrix._trusted([[c * a for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __neg__(self) -> "SkewMatrix":
        return self * -1

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"SkewMatrix({[[str(x) for x in r] for r in self.rows]})"

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    @classmethod
    def _trusted(cls, rows) -> "SkewMatrix":
        obj = cls.__new__(cls)
        obj.rows = tuple(tuple(r) for r in rows)
        return obj

    def congruent(self, a: Sequence[Sequence]) -> "SkewMatrix":
        """``A X A^t``, again alternating."""
        n = self.size
        ax = [[sum((a[i][k] * self.rows[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
        return SkewMatrix._trusted(
            [[sum((ax[i][k] * a[j][k] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
        )


def pfaffian4(m: SkewMatrix) -> Fraction:
    if m.size != 4:
        raise InputError(f"pfaffian4 needs a 4x4 matrix, got {m.size}x{m.size}")
    return m[1, 2] * m[3, 4] - m[1, 3] * m[2, 4] + m[1, 4] * m[2, 3]


def delete_row_col(x: SkewMatrix, i: int) -> SkewMatrix:
    """The alternating matrix left after removing row and column ``i`` (1-based)."""
    if not 1 <= i <= x.size:
        raise InputError(f"index {i} out of range 1..{x.size}")
    keep = [k for k in range(x.size) if k != i - 1]
    return SkewMatrix._trusted([[x.rows[r][c] for c in keep] for r in keep])


_SIGNS = (1, -1, 1, -1, 1)


def beta(x: SkewMatrix, y: SkewMatrix) -> tuple[Fraction, ...]:
    """Polarization of the signed 4x4 sub-Pfaffians of a pair of 5x5 alternating matrices.

    The i-th component is ``(-1)^(i+1) (Pf(X^(i)+Y^(i)) - Pf(X^(i)) - Pf(Y^(i)))``.
    """
    if x.size != 5 or y.size != 5:
        raise InputError("beta is defined on 5x5 alternating matrices")
    out = []
    for i in range(1, 6):
        xi, yi = delete_row_col(x, i), delete_row_col(y, i)
        polar = pfaffian4(xi + yi) - pfaffian4(xi) - pfaffian4(yi)
        out.append(_SIGNS[i - 1] * polar)
    return tuple(out)
