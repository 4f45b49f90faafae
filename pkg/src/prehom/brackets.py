"""SL5-invariant brackets [ijklm] on quadruples of 5x5 alternating matrices."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import linalg
from .exact import InputError, to_rational
from .pfaffian import SkewMatrix, beta

INDICES = (1, 2, 3, 4)


class Quadruple(tuple):
    """An ordered 4-tuple of 5x5 alternating matrices, a point of Alt5^4."""

    def __new__(cls, matrices: Sequence[SkewMatrix]):
        matrices = tuple(m if isinstance(m, SkewMatrix) else SkewMatrix(m) for m in matrices)
        if len(matrices) != 4 or any(m.size != 5 for m in matrices):
            raise InputError("a quadruple is four 5x5 alternating matrices")
        return super().__new__(cls, matrices)

    @classmethod
    def zero(cls) -> "Quadruple":
        z = SkewMatrix.zero(5)
        return cls((z, z, z, z))

    def __mul__(self, t) -> "Quadruple":
        return Quadruple(tuple(m * t for m in self))

    __rmul__ = __mul__

    def permuted(self, order: Sequence[int]) -> "Quadruple":
        """``(X_order[0], ..., X_order[3])`` with 1-based ``order``."""
        return Quadruple(tuple(self[o - 1] for o in order))


def parse_index(idx) -> tuple[int, ...]:
    if isinstance(idx, str):
        idx = tuple(int(c) for c in idx)
    idx = tuple(idx)
    if len(idx) != 5 or any(i not in INDICES for i in idx):
        raise InputError(f"bracket index must be five entries from 1..4, got {idx}")
    return idx


class BracketTable:
    """Memoized bracket values at one fixed quadruple.

    Each beta(X_i, X_j) is computed once; brackets are filled in on demand.
    """

    def __init__(self, x: Quadruple):
        self.x = x
        self._beta: dict[tuple[int, int], tuple[Fraction, ...]] = {}
        self._xb: dict[tuple[int, int, int], tuple[Fraction, ...]] = {}
        self._cache: dict[tuple[int, ...], Fraction] = {}

    def beta(self, i: int, j: int) -> tuple[Fraction, ...]:
        key = (min(i, j), max(i, j))
        if key not in self._beta:
            self._beta[key] = beta(self.x[key[0] - 1], self.x[key[1] - 1])
        return self._beta[key]

    def __getitem__(self, idx) -> Fraction:
        idx = tuple(idx)
        value = self._cache.get(idx)
        if value is None:
            i, j, k, l, m = idx
            key = (k, min(l, m), max(l, m))
            xb = self._xb.get(key)
            if xb is None:
                xb = tuple(linalg.matvec(self.x[k - 1].rows, self.beta(l, m)))
                self._xb[key] = xb
            value = linalg.dot(self.beta(i, j), xb)
            self._cache[idx] = value
        return value


def bracket(idx, x: Quadruple) -> Fraction:
    """``beta(X_i, X_j)^t X_k beta(X_l, X_m)`` for ``idx = (i, j, k, l, m)``."""
    i, j, k, l, m = parse_index(idx)
    return linalg.dot(beta(x[i - 1], x[j - 1]), linalg.matvec(x[k - 1].rows, beta(x[l - 1], x[m - 1])))


def act(a, b, x: Quadruple) -> Quadruple:
    """The representation rho(A, B): ``(A X_1 A^t, ..., A X_4 A^t) B^t``.

    Reading the quadruple as a row vector of matrices, the new i-th entry is
    ``sum_j B[i][j] A X_j A^t``.
    """
    a = linalg.as_matrix(a)
    b = linalg.as_matrix(b)
    if len(a) != 5 or len(b) != 4:
        raise InputError("rho needs a 5x5 A and a 4x4 B")
    if linalg.det_bareiss(a) != 1:
        raise InputError("A must have determinant 1")
    if linalg.det_bareiss(b) == 0:
        raise InputError("B must be invertible")
    return _act(a, b, x)


def _act(a, b, x: Quadruple) -> Quadruple:
    conj = [m.congruent(a) for m in x]
    out = []
    for i in range(4):
        acc = SkewMatrix.zero(5)
        for j in range(4):
            if b[i][j]:
                acc = acc + conj[j] * b[i][j]
        out.append(acc)
    return Quadruple(out)


@dataclass(frozen=True)
class Violation:
    relation: str
    indices: tuple
    lhs: Fraction
    rhs: Fraction

    def __str__(self) -> str:
        return f"{self.relation} at {self.indices}: {self.lhs} != {self.rhs}"


def _relation_instances(t: BracketTable) -> Iterator[tuple[str, tuple, Fraction, Fraction]]:
    for idx in itertools.product(INDICES, repeat=5):
        i, j, k, l, m = idx
        v = t[idx]
        yield "(i) [ijklm]=[jiklm]", idx, v, t[j, i, k, l, m]
        yield "(i) [ijklm]=[ijkml]", idx, v, t[i, j, k, m, l]
        yield "(ii) [ijklm]=-[lmkij]", idx, v, -t[l, m, k, i, j]
        yield "(iii) [ijklm]+[jkilm]+[kijlm]=0", idx, v + t[j, k, i, l, m] + t[k, i, j, l, m], Fraction(0)
        if len(set(idx)) <= 2:
            yield "threekinds [ijklm]=0", idx, v, Fraction(0)
    for i, k, l, m in itertools.product(INDICES, repeat=4):
        yield "(iv) [iiklm]=-2[kiilm]", (i, k, l, m), t[i, i, k, l, m], -2 * t[k, i, i, l, m]
    for i, k, l in itertools.product(INDICES, repeat=3):
        base = t[i, i, k, l, i]
        yield "(v) [iikli]=-[iilki]", (i, k, l), base, -t[i, i, l, k, i]
        yield "(v) [iikli]=[iklii]", (i, k, l), base, t[i, k, l, i, i]
        yield "(v) [iikli]=-[ilkii]", (i, k, l), base, -t[i, l, k, i, i]
        yield "(vi) [iiilm]=0", (i, k, l), t[i, i, i, k, l], Fraction(0)
        yield "(vi) [ijkij]=0", (i, k, l), t[i, k, l, i, k], Fraction(0)


def check_bracket_relations(x: Quadruple) -> list[Violation]:
    """Evaluate every bracket relation instance at ``x``; return the ones that fail."""
    t = BracketTable(x)
    return [Violation(name, idx, lhs, rhs) for name, idx, lhs, rhs in _relation_instances(t) if lhs != rhs]


def count_relation_instances() -> int:
    return sum(1 for _ in _relation_instances(BracketTable(Quadruple.zero())))


def check_sl5_invariance(a, x: Quadruple) -> list[Violation]:
    """Compare all 4^5 brackets at ``x`` and at ``(A X_i A^t)``."""
    a = linalg.as_matrix(a)
    if len(a) != 5 or linalg.det_bareiss(a) != 1:
        raise InputError("A must be a 5x5 matrix with determinant 1")
    before = BracketTable(x)
    after = BracketTable(Quadruple(tuple(m.congruent(a) for m in x)))
    out = []
    for idx in itertools.product(INDICES, repeat=5):
        if before[idx] != after[idx]:
            out.append(Violation("SL5 invariance", idx, after[idx], before[idx]))
    return out


# seeded random inputs

_SMALL = tuple(Fraction(n, d) for n in range(-3, 4) for d in (1, 2) if n)


def random_rational(rng: random.Random, bound: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 2, 3)))


def random_skew(rng: random.Random, n: int = 5, bound: int = 3) -> SkewMatrix:
    entries = {(i, j): random_rational(rng, bound) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return SkewMatrix.from_upper(n, entries)


def random_quadruple(rng: random.Random, bound: int = 3) -> Quadruple:
    return Quadruple(tuple(random_skew(rng, 5, bound) for _ in range(4)))


def random_special_linear(rng: random.Random, n: int = 5, shears: int = 6) -> list[list[Fraction]]:
    """A product of elementary shears ``I + c E_pq`` (p != q), so det is exactly 1."""
    a = linalg.identity(n)
    for _ in range(shears):
        p, q = rng.sample(range(n), 2)
        c = rng.choice(_SMALL)
        for col in range(n):
            a[p][col] += c * a[q][col]
    return a


def random_general_linear(rng: random.Random, n: int = 4) -> list[list[Fraction]]:
    """A random invertible matrix with small rational entries."""
    while True:
        b = [[random_rational(rng, 2) for _ in range(n)] for _ in range(n)]
        if linalg.det_bareiss(b):
            return b


def diag(*alphas) -> list[list[Fraction]]:
    n = len(alphas)
    return [[to_rational(alphas[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def permutation_matrix(sigma: Sequence[int]) -> list[list[Fraction]]:
    """Matrix with (i, j) entry 1 exactly when ``i = sigma(j)``; ``sigma`` is 1-based, ``sigma[j-1] = sigma(j)``."""
    n = len(sigma)
    return [[Fraction(int(i + 1 == sigma[j])) for j in range(n)] for i in range(n)]


def e_epsilon(eps) -> list[list[Fraction]]:
    b = linalg.identity(4)
    b[0][1] = to_rational(eps)
    return b
