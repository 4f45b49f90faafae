"""The equivariant quadratic map Phi: Alt5^4 -> Sym^2(Q^4) and its determinant.

Phi is only ever evaluated, never expanded: every entry is a fixed quadratic
form in the brackets [ijklm], and all ten entries are read off one memoized
bracket table by relabelling indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .brackets import BracketTable, Quadruple, _act
from .exact import InputError
from .pfaffian import SkewMatrix


@dataclass(frozen=True)
class BracketProduct:
    coefficient: int
    left: tuple
    right: tuple


def _terms(rows) -> tuple[BracketProduct, ...]:
    return tuple(BracketProduct(c, tuple(map(int, a)), tuple(map(int, b))) for c, a, b in rows)


# Expanded coefficient tables; one comment line per displayed summand group.
PHI11 = _terms([
    # 160[31114](3[24132] - 2[21342] - 2[23412])
    (480, "31114", "24132"), (-320, "31114", "21342"), (-320, "31114", "23412"),
    # 160[41112](3[32143] - 2[34213] - 2[31423])
    (480, "41112", "32143"), (-320, "41112", "34213"), (-320, "41112", "31423"),
    # 160[21113](3[43124] - 2[41234] - 2[42314])
    (480, "21113", "43124"), (-320, "21113", "41234"), (-320, "21113", "42314"),
    # 50([11233][11244] + [11322][11344] + [11422][11433])
    (50, "11233", "11244"), (50, "11322", "11344"), (50, "11422", "11433"),
    # -288([13241]^2 + [14321]^2 + [12431]^2)
    (-288, "13241", "13241"), (-288, "14321", "14321"), (-288, "12431", "12431"),
    # 224([13241][14321] + [14321][12431] + [12431][13241])
    (224, "13241", "14321"), (224, "14321", "12431"), (224, "12431", "13241"),
])

PHI12 = _terms([
    # 400[31114][32224]
    (400, "31114", "32224"),
    # -100([21113][22344] + [21114][22433])
    (-100, "21113", "22344"), (-100, "21114", "22433"),
    # -100([12223][11344] + [12224][11433])
    (-100, "12223", "11344"), (-100, "12224", "11433"),
    # 20[11422](4[31423] - [34213] - [32143])
    (80, "11422", "31423"), (-20, "11422", "34213"), (-20, "11422", "32143"),
    # 20[11322](4[41324] - [43214] - [42134])
    (80, "11322", "41324"), (-20, "11322", "43214"), (-20, "11322", "42134"),
    # -25([22144][11233] + [11244][22133])
    (-25, "22144", "11233"), (-25, "11244", "22133"),
    # 368[13241][23142]
    (368, "13241", "23142"),
    # 112([13241]([21342] + [23412]) + [23142]([12341] + [13421]))
    (112, "13241", "21342"), (112, "13241", "23412"), (112, "23142", "12341"), (112, "23142", "13421"),
    # 192([14321][23412] + [13421][24312])
    (192, "14321", "23412"), (192, "13421", "24312"),
    # -208([14321][21342] + [12431][23412])
    (-208, "14321", "21342"), (-208, "12431", "23412"),
])


def _evaluate(table: BracketTable, terms: Sequence[BracketProduct], relabel: Sequence[int]) -> Fraction:
    """Evaluate a bracket form at ``X^sigma``, where ``relabel[i-1] = sigma^-1(i)``.

    Uses ``[ijklm](X^sigma) = [sigma^-1(i) ... sigma^-1(m)](X)``.
    """
    total = Fraction(0)
    for t in terms:
        left = table[tuple(relabel[i - 1] for i in t.left)]
        if not left:
            continue
        right = table[tuple(relabel[i - 1] for i in t.right)]
        total += t.coefficient * left * right
    return total


_IDENTITY = (1, 2, 3, 4)


def _transposition(s: int) -> tuple[int, ...]:
    out = list(_IDENTITY)
    out[0], out[s - 1] = s, 1
    return tuple(out)


def coset_relabel(s: int, t: int) -> tuple[int, ...]:
    """``sigma^-1`` as a tuple, for the sigma with sigma^-1(1)=s, sigma^-1(2)=t.

    The remaining two slots take the unused indices in increasing order.
    """
    if s == t or not {s, t} <= set(_IDENTITY):
        raise InputError(f"need distinct indices in 1..4, got ({s},{t})")
    rest = [i for i in _IDENTITY if i not in (s, t)]
    return (s, t, *rest)


def _table(x) -> BracketTable:
    return x if isinstance(x, BracketTable) else BracketTable(x)


def phi11(x) -> Fraction:
    return _evaluate(_table(x), PHI11, _IDENTITY)


def phi12(x) -> Fraction:
    return _evaluate(_table(x), PHI12, _IDENTITY)


def phi_entry(x, s: int, t: int) -> Fraction:
    table = _table(x)
    if s == t:
        return _evaluate(table, PHI11, _transposition(s))
    return _evaluate(table, PHI12, coset_relabel(s, t))


def phi(x: Quadruple) -> tuple[tuple[Fraction, ...], ...]:
    """The symmetric 4x4 matrix Phi(X), exactly."""
    table = BracketTable(x)
    m = [[Fraction(0)] * 4 for _ in range(4)]
    for s in range(1, 5):
        for t in range(s, 5):
            v = phi_entry(table, s, t)
            m[s - 1][t - 1] = m[t - 1][s - 1] = v
    return tuple(tuple(row) for row in m)


def relative_invariant(x: Quadruple) -> Fraction:
    """f(X) = det Phi(X), homogeneous of degree 40."""
    return linalg.det_cofactor(phi(x))


# f(tX) = t^40 f(X) and det((det B)^2 B M B^t) = (det B)^10 det M force this exponent.
CHARACTER_EXPONENT = 10


@dataclass(frozen=True)
class EquivarianceReport:
    max_discrepancy: Fraction
    det_b: Fraction
    invariant_before: Fraction
    invariant_after: Fraction

    def invariant_scales_by(self, exponent: int) -> bool:
        """Whether f(rho(A,B)X) = (det B)^exponent f(X) held for this trial."""
        return self.invariant_after == self.det_b**exponent * self.invariant_before

    @property
    def ok(self) -> bool:
        return self.max_discrepancy == 0 and self.invariant_scales_by(CHARACTER_EXPONENT)


def check_equivariance(a, b, x: Quadruple) -> EquivarianceReport:
    """Compare Phi(rho(A,B)X) with (det B)^2 B Phi(X) B^t and record f on both sides."""
    a = linalg.as_matrix(a)
    b = linalg.as_matrix(b)
    if len(a) != 5 or linalg.det_bareiss(a) != 1:
        raise InputError("A must be a 5x5 matrix with determinant 1")
    det_b = linalg.det_bareiss(b) if len(b) == 4 else Fraction(0)
    if not det_b:
        raise InputError("B must be an invertible 4x4 matrix")
    image = phi(x)
    lhs = phi(_act(a, b, x))
    rhs = linalg.scale(det_b**2, linalg.matmul(linalg.matmul(b, image), linalg.transpose(b)))
    gap = max(abs(u - v) for ru, rv in zip(lhs, rhs) for u, v in zip(ru, rv))
    return EquivarianceReport(
        max_discrepancy=gap,
        det_b=det_b,
        invariant_before=linalg.det_cofactor(image),
        invariant_after=linalg.det_cofactor(lhs),
    )


# The five reference inputs and the images displayed alongside them.

def _skew(upper: dict) -> SkewMatrix:
    return SkewMatrix.from_upper(5, upper)


X01 = _skew({(1, 2): 1, (3, 4): 1})
X02 = _skew({(2, 3): 1, (4, 5): 1})
X03 = _skew({(1, 3): 1, (2, 5): 1})
X04 = _skew({(2, 4): 1, (3, 5): 1})
Y01 = _skew({(1, 2): 1, (1, 3): 1})
Y02 = _skew({(4, 5): 1})
Y03 = _skew({(2, 5): 1})
ZERO = SkewMatrix.zero(5)

_RANK3 = ((-192, 0, -192, -96), (0, -480, 0, 0), (-192, 0, -192, -96), (-96, 0, -96, -288))
_RANK2 = ((-192, 0, -192, -96), (0, 0, 0, 0), (-192, 0, -192, -96), (-96, 0, -96, -288))

REFERENCE_POINTS = (
    ("(X01,X02,X03,X04)", Quadruple((X01, X02, X03, X04)),
     ((0, 0, -720, 0), (0, -480, 0, 0), (-720, 0, 0, 0), (0, 0, 0, -288)), 4),
    ("(Y01,X02,X03,X04)", Quadruple((Y01, X02, X03, X04)), _RANK3, 3),
    ("(Y01,Y02,X03,X04)", Quadruple((Y01, Y02, X03, X04)), _RANK2, 2),
    ("(Y01,Y02,Y03,X04)", Quadruple((Y01, Y02, Y03, X04)),
     ((-192, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)), 1),
    ("(0,0,0,0)", Quadruple.zero(), ((0,) * 4,) * 4, 0),
)


@dataclass(frozen=True)
class RankRow:
    label: str
    matrix: tuple
    rank: int
    expected_matrix: tuple
    expected_rank: int

    @property
    def ok(self) -> bool:
        return self.rank == self.expected_rank and all(
            Fraction(u) == Fraction(v)
            for ru, rv in zip(self.matrix, self.expected_matrix)
            for u, v in zip(ru, rv)
        )


def rank_table() -> list[RankRow]:
    """Phi and its exact rank at the five reference inputs (ranks 4, 3, 2, 1, 0)."""
    rows = []
    for label, x, expected, expected_rank in REFERENCE_POINTS:
        m = phi(x)
        rows.append(RankRow(label, m, linalg.rank(m), expected, expected_rank))
    return rows


def all_permutations() -> list[tuple[int, ...]]:
    """Every sigma in S4 as the tuple ``(sigma(1), ..., sigma(4))``."""
    return list(itertools.permutations(_IDENTITY))
