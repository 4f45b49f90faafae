import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prehom.brackets import random_skew
from prehom.exact import InputError
from prehom.pfaffian import NotSkewError, SkewMatrix, beta, delete_row_col, pfaffian4
from prehom.phi import X01, X02

from .oracles import perfect_matching_pfaffian, polarized_beta, sympy_det

seeds = st.integers(0, 10**6)


def test_pfaffian_examples():
    assert pfaffian4(SkewMatrix.from_upper(4, {(1, 2): 1, (3, 4): 1})) == 1
    assert pfaffian4(SkewMatrix.zero(4)) == 0
    assert pfaffian4(SkewMatrix.from_upper(4, {(1, 3): 5, (2, 4): 7})) == -35


def test_delete_row_col_examples():
    assert delete_row_col(X01, 5) == SkewMatrix.from_upper(4, {(1, 2): 1, (3, 4): 1})
    assert delete_row_col(X01, 1) == SkewMatrix.from_upper(4, {(2, 3): 1})
    assert delete_row_col(SkewMatrix.zero(5), 3) == SkewMatrix.zero(4)
    with pytest.raises(InputError):
        delete_row_col(X01, 6)


def test_beta_examples():
    assert beta(X01, X01) == (0, 0, 0, 0, 2)
    assert beta(X01, SkewMatrix.zero(5)) == (0,) * 5


def test_non_skew_input_names_the_entry():
    with pytest.raises(NotSkewError, match=r"not skew-symmetric: diagonal entry \(1,1\)"):
        SkewMatrix([[1, 0], [0, 0]])
    with pytest.raises(NotSkewError, match=r"entry \(1,2\)=1 but \(2,1\)=1"):
        SkewMatrix([[0, 1], [1, 0]])


@given(seeds)
def test_pfaffian_squared_is_determinant(seed):
    m = random_skew(random.Random(seed), 4, bound=6)
    assert pfaffian4(m) ** 2 == sympy_det(m.tolist())
    assert pfaffian4(m) == perfect_matching_pfaffian(m.tolist())


@given(seeds)
def test_beta_matches_brute_force_polarization(seed):
    rng = random.Random(seed)
    x, y = random_skew(rng), random_skew(rng)
    assert beta(x, y) == polarized_beta(x.tolist(), y.tolist())


@given(seeds, st.fractions(-4, 4, max_denominator=5))
def test_beta_is_symmetric_and_bilinear(seed, t):
    rng = random.Random(seed)
    x, y, z = random_skew(rng), random_skew(rng), random_skew(rng)
    assert beta(x, y) == beta(y, x)
    assert beta(x * 2, y) == tuple(2 * v for v in beta(x, y))
    lhs = beta(x * t + z, y)
    rhs = tuple(t * a + b for a, b in zip(beta(x, y), beta(z, y)))
    assert lhs == rhs


@given(seeds)
def test_beta_diagonal_is_signed_double_pfaffian(seed):
    x = random_skew(random.Random(seed))
    signs = (1, -1, 1, -1, 1)
    assert beta(x, x) == tuple(2 * sg * pfaffian4(delete_row_col(x, i)) for sg, i in zip(signs, range(1, 6)))


def test_congruence_preserves_skewness():
    a = [[1, 2, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 3, 1, 0], [0, 0, 0, 0, Fraction(1, 2)]]
    image = X02.congruent(a)
    assert all(image[i, i] == 0 for i in range(1, 6))
