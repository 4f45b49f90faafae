"""b-functions by exact differentiation, and Monte-Carlo archimedean zeta integrals.

The zeta integrals are estimated as Gaussian expectations, independently of
any radial reduction, and compared against the gamma-product closed forms.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .cocycle import GammaCocycle, ShiftFactor, cocycle_eval, gamma_product_complex, gamma_product_real
from .exact import (
    InputError,
    MultiPoly,
    apply_diff_operator,
    exact_divide,
    interpolate_grid,
    parse_poly,
    poly_eval,
)

CHUNK = 1 << 16
FIELDS = ("C", "R")


class ConsistencyError(ArithmeticError):
    """The differentiated power was not a constant multiple of P^s."""


@dataclass(frozen=True)
class BFunctionResult:
    r: int
    m: tuple[int, ...]
    b: MultiPoly
    degree: int

    def __call__(self, s: Sequence) -> Fraction:
        return poly_eval(self.b, s)


def _s_variables(r: int) -> tuple[str, ...]:
    return ("s",) if r == 1 else tuple(f"s{k + 1}" for k in range(r))


def _as_list(p) -> list[MultiPoly]:
    return [p] if isinstance(p, MultiPoly) else list(p)


def b_function_oracle(
    polys: Sequence[MultiPoly] | MultiPoly,
    duals: Sequence[MultiPoly] | MultiPoly | None,
    m: Sequence[int],
    max_grid: int | None = None,
) -> BFunctionResult:
    """Recover ``b_m(s)`` from ``Pbar(grad)^m P^(n+m) = b_m(n) P^n`` on a grid of integers n.

    Every grid value comes from an exact polynomial division, so an input that
    is not relatively invariant fails loudly instead of giving a wrong value.
    """
    polys = _as_list(polys)
    duals = polys if duals is None else _as_list(duals)
    r = len(polys)
    m = tuple(int(v) for v in m)
    if len(duals) != r or len(m) != r:
        raise InputError("P, Pbar and m must have the same length")
    if any(v < 0 for v in m) or not any(m):
        raise InputError("m must be nonnegative and nonzero")
    variables = polys[0].variables
    for p in polys + duals:
        if p.variables != variables:
            raise InputError("all polynomials must share one variable list")
        if p.is_zero() or not p.is_homogeneous():
            raise InputError(f"{p} is not a nonzero homogeneous polynomial")
    degree = sum(p.degree() * k for p, k in zip(polys, m))
    if max_grid is None:
        max_grid = degree
    if max_grid < degree:
        raise InputError(f"grid 0..{max_grid} is too small for degree {degree}")

    operator = MultiPoly.constant(variables, 1)
    for q, k in zip(duals, m):
        operator = operator * q**k
    powers: dict[tuple[int, int], MultiPoly] = {}

    def power(i: int, k: int) -> MultiPoly:
        if (i, k) not in powers:
            powers[i, k] = polys[i] ** k
        return powers[i, k]

    def product(exps) -> MultiPoly:
        out = MultiPoly.constant(variables, 1)
        for i, k in enumerate(exps):
            out = out * power(i, k)
        return out

    def value(node: tuple[int, ...]) -> Fraction:
        image = apply_diff_operator(operator, product([n + k for n, k in zip(node, m)]))
        try:
            quotient = exact_divide(image, product(node))
        except ArithmeticError as exc:
            raise ConsistencyError(f"not divisible by P^{node}: {exc}") from exc
        if not quotient.is_constant():
            raise ConsistencyError(f"quotient at n={node} depends on x: {quotient}")
        return quotient.constant_term()

    b = interpolate_grid(value, [degree] * r, _s_variables(r))
    return BFunctionResult(r, m, b, b.degree())


def normal_form_from_b(result: BFunctionResult) -> GammaCocycle:
    """Normal-form data for a one-variable b-function that splits over the rationals.

    Each rational root -alpha becomes a factor ``(s + alpha)`` with unit weight.
    """
    if result.r != 1 or result.m != (1,):
        raise InputError("normal form recovery needs r = 1 and m = (1,)")
    coeffs = [result.b.terms.get((k,), Fraction(0)) for k in range(result.degree + 1)]
    roots = _rational_roots(coeffs)
    if len(roots) != result.degree:
        raise InputError(f"b(s) = {result.b} does not split into rational linear factors")
    lead = coeffs[-1]
    return GammaCocycle([lead], [ShiftFactor([1], -root, {0: 1}) for root in roots])


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """All rational roots with multiplicity; ``coeffs[k]`` multiplies s^k."""
    coeffs = list(coeffs)
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    roots = []
    while len(ints) > 1 and ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]
    while len(ints) > 1:
        found = None
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if _horner(ints, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        ints = _deflate(ints, found)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def _horner(ints, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(ints):
        acc = acc * x + c
    return acc


def _deflate(ints, root: Fraction) -> list:
    """Divide by (s - root); coefficients may become rational."""
    out = [Fraction(0)] * (len(ints) - 1)
    acc = Fraction(0)
    for k in range(len(ints) - 1, 0, -1):
        acc = acc * root + ints[k]
        out[k - 1] = acc
    lcm = 1
    for c in out:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c * lcm) for c in out]


# Monte-Carlo zeta integrals


@dataclass(frozen=True)
class ZetaEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int


def _gaussian(rng: np.random.Generator, field: str, n: int, size: int) -> np.ndarray:
    if field == "R":
        # density exp(-pi x^2): variance 1/(2 pi)
        return rng.normal(0.0, math.sqrt(1.0 / (2.0 * math.pi)), size=(n, size))
    # density exp(-2 pi |z|^2) on C: real and imaginary parts each of variance 1/(4 pi)
    sd = math.sqrt(1.0 / (4.0 * math.pi))
    return rng.normal(0.0, sd, size=(n, size)) + 1j * rng.normal(0.0, sd, size=(n, size))


def _check_field(field: str) -> str:
    field = field.upper()
    if field not in FIELDS:
        raise InputError(f"field must be one of {FIELDS}, got {field!r}")
    return field


def _chunk_moments(args):
    field, evaluators, exponents, seed, stream, index, size = args
    rng = np.random.default_rng([seed, stream, index])
    x = _gaussian(rng, field, len(evaluators[0][1]), size)
    values = np.ones(size)
    for (f, _), e in zip(evaluators, exponents):
        if e:
            values = values * np.abs(f(x)) ** e
    mean = float(values.mean())
    return size, mean, float(((values - mean) ** 2).sum())


def zeta_numeric(
    field: str,
    polys: Sequence[MultiPoly] | MultiPoly,
    s: Sequence[float],
    samples: int,
    seed: int = 0,
    *,
    stream: int = 0,
    workers: int = 1,
) -> ZetaEstimate:
    """Estimate ``E[prod_i |P_i(x)|_K^s_i]`` under the normalized Gaussian on K^n.

    For K = C the valuation is ``|z|^2``. Sampling is split into fixed chunks,
    each seeded by ``(seed, stream, chunk index)`` and reduced in chunk order, so
    the result does not depend on ``workers``.
    """
    field = _check_field(field)
    polys = _as_list(polys)
    s = [float(v) for v in s]
    if len(s) != len(polys):
        raise InputError(f"{len(polys)} polynomials but {len(s)} exponents")
    if any(v < 0 or math.isnan(v) for v in s):
        raise InputError("zeta integrals need Re(s_k) > 0 (or exactly 0)")
    if samples < 2:
        raise InputError("need at least two samples")
    if not any(s):
        return ZetaEstimate(1.0, 0.0, samples, seed)
    exponents = [2.0 * v if field == "C" else v for v in s]
    evaluators = [(p.to_numpy(), p.variables) for p in polys]
    sizes = [CHUNK] * (samples // CHUNK) + ([samples % CHUNK] if samples % CHUNK else [])
    jobs = [(field, evaluators, exponents, seed, stream, i, size) for i, size in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(_chunk_moments, jobs))
    else:
        parts = [_chunk_moments(job) for job in jobs]
    # Chan et al. pairwise update, in fixed chunk order
    count, mean, m2 = 0, 0.0, 0.0
    for n, mu, sq in parts:
        delta = mu - mean
        total = count + n
        mean += delta * n / total
        m2 += sq + delta * delta * count * n / total
        count = total
    variance = m2 / (count - 1)
    return ZetaEstimate(mean, math.sqrt(variance / count), count, seed)


def zeta_complex_numeric(polys, s, samples: int, seed: int = 0, **kw) -> ZetaEstimate:
    return zeta_numeric("C", polys, s, samples, seed, **kw)


def zeta_real_numeric(polys, s, samples: int, seed: int = 0, **kw) -> ZetaEstimate:
    return zeta_numeric("R", polys, s, samples, seed, **kw)


@dataclass(frozen=True)
class ZetaReport:
    field: str
    s: list
    numeric: float
    stderr: float
    gamma: float
    residual: float
    samples: int
    seed: int
    pole: bool = False

    @property
    def passed(self) -> bool:
        return not self.pole and abs(self.numeric - self.gamma) <= 3.0 * self.stderr

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc.pop("pole")
        return doc


def verify_closed_form(
    field: str,
    polys,
    b: GammaCocycle,
    s: Sequence[float],
    samples: int,
    seed: int = 0,
    workers: int = 1,
) -> ZetaReport:
    """Monte-Carlo zeta value against the gamma-product closed form."""
    field = _check_field(field)
    s = [float(v) for v in s]
    estimate = zeta_numeric(field, polys, s, samples, seed, workers=workers)
    product = (gamma_product_complex if field == "C" else gamma_product_real)(b, s)
    gamma = float(np.real(product.value))
    if product.pole:
        residual = math.nan
    elif not any(s):
        residual = abs(estimate.mean - gamma)
    else:
        residual = abs(estimate.mean - gamma) / abs(gamma)
    return ZetaReport(field, s, estimate.mean, estimate.stderr, gamma, residual, estimate.samples, seed, product.pole)


@dataclass(frozen=True)
class DifferenceReport:
    field: str
    s: list
    shift: list
    lhs: float
    rhs: float
    sigma: float
    residual: float
    samples: int
    seed: int

    @property
    def passed(self) -> bool:
        return abs(self.lhs - self.rhs) <= 3.0 * self.sigma


BFunction = Union[GammaCocycle, BFunctionResult]


def _b_value(b: BFunction, m: Sequence[int], s: Sequence[float]) -> float:
    if isinstance(b, GammaCocycle):
        exact = [Fraction(v).limit_denominator(10**12) for v in s]
        return float(cocycle_eval(b, m, exact))
    if tuple(m) != b.m:
        raise InputError(f"b-function was computed for m={b.m}, not {tuple(m)}")
    acc = 0.0
    for e, c in b.b.terms.items():
        term = float(c)
        for v, k in zip(s, e):
            term *= v**k
        acc += term
    return acc


def verify_difference_equation(
    field: str,
    polys,
    b: BFunction,
    s: Sequence[float],
    shift: Sequence[int] | int,
    samples: int,
    seed: int = 0,
    workers: int = 1,
) -> DifferenceReport:
    """Compare ``Z(s+m)`` with ``(2 pi)^(-sum d_k m_k) b_m(s) Z(s)`` (K = C), or
    ``Z(s+2e_i)`` with ``(2 pi)^(-d_i) b_{e_i}(s) Z(s)`` (K = R, ``shift = i``, 1-based).

    The two sides come from independent random streams.
    """
    field = _check_field(field)
    polys = _as_list(polys)
    r = len(polys)
    s = [float(v) for v in s]
    degrees = [p.degree() for p in polys]
    if field == "C":
        m = [int(v) for v in (shift if isinstance(shift, Sequence) else [shift])]
        if len(m) != r or any(v < 0 for v in m):
            raise InputError("shift m must be a nonnegative vector of length r")
        target = [v + k for v, k in zip(s, m)]
        bm = m
        weight = sum(d * k for d, k in zip(degrees, m))
    else:
        i = int(shift if not isinstance(shift, Sequence) else shift[0])
        if not 1 <= i <= r:
            raise InputError(f"index i must be in 1..{r}")
        bm = [int(k == i - 1) for k in range(r)]
        m = [2 * v for v in bm]
        target = [v + k for v, k in zip(s, m)]
        weight = degrees[i - 1]
    if not any(m):
        z = zeta_numeric(field, polys, s, samples, seed, workers=workers)
        return DifferenceReport(field, s, m, z.mean, z.mean, z.stderr, 0.0, samples, seed)
    factor = (2.0 * math.pi) ** (-weight) * _b_value(b, bm, s)
    left = zeta_numeric(field, polys, target, samples, seed, stream=1, workers=workers)
    right = zeta_numeric(field, polys, s, samples, seed, stream=2, workers=workers)
    rhs = factor * right.mean
    sigma = math.hypot(left.stderr, factor * right.stderr)
    residual = abs(left.mean - rhs) / abs(rhs)
    return DifferenceReport(field, s, m, left.mean, rhs, sigma, residual, samples, seed)


# fixture polynomials; all multilinear, each with its b-function in normal form

def _fixture(text: str, c, factors) -> tuple[MultiPoly, GammaCocycle]:
    return parse_poly(text), GammaCocycle(c, factors)


FIXTURES = {
    "x": _fixture("x", [1], [ShiftFactor([1], 1, {0: 1})]),
    "x1*x2": _fixture("x1*x2", [1], [ShiftFactor([1], 1, {0: 2})]),
    "x11*x22 - x12*x21": _fixture("x11*x22 - x12*x21", [1], [ShiftFactor([1], 1, {0: 1, 1: 1})]),
}


def fixture_for(poly: MultiPoly) -> GammaCocycle | None:
    for p, b in FIXTURES.values():
        if p == poly:
            return b
    return None
