"""Normal-form 1-cocycles b: Z^r -> Q(s)^x and their gamma-product solutions.

A cocycle is a character ``m -> c_1^m_1 ... c_r^m_r`` times, for each shift
factor ``(mu, alpha, eta)``, a signed rising product of the linear factor
``mu(s) + alpha + j + nu`` raised to the weight ``z_j`` of ``eta``.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import InputError, format_rational, to_rational
from .gammafn import log_gamma

POLE_TOLERANCE = 1e-8
_LOG_2PI = math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)


class PoleError(ArithmeticError):
    """A vanishing linear factor landed in a denominator."""


class DegenerateFactorError(InputError):
    """A shift factor whose weights sum to zero cannot be normalized."""


@dataclass(frozen=True)
class ShiftFactor:
    mu: tuple[int, ...]
    alpha: Fraction
    eta: tuple[tuple[int, int], ...]

    def __init__(self, mu: Sequence[int], alpha, eta: Mapping[int, int] | Sequence[tuple[int, int]]):
        mu = tuple(int(v) for v in mu)
        if not any(mu):
            raise InputError("linear form mu must be nonzero")
        if math.gcd(*mu) != 1:
            raise InputError(f"nonzero coefficients of mu must have gcd 1, got {mu}")
        items = eta.items() if isinstance(eta, Mapping) else eta
        weights: dict[int, int] = {}
        for j, z in items:
            weights[int(j)] = weights.get(int(j), 0) + int(z)
        eta = tuple(sorted((j, z) for j, z in weights.items() if z))
        if not eta:
            raise InputError("eta must have a nonzero weight")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "alpha", to_rational(alpha))
        object.__setattr__(self, "eta", eta)

    @property
    def eps(self) -> int:
        """Sum of the weights of eta."""
        return sum(z for _, z in self.eta)

    def to_dict(self) -> dict:
        return {
            "mu": list(self.mu),
            "alpha": format_rational(self.alpha),
            "eta": {str(j): z for j, z in self.eta},
        }


@dataclass(frozen=True)
class GammaCocycle:
    c: tuple[Fraction, ...]
    factors: tuple[ShiftFactor, ...] = field(default=())

    def __init__(self, c: Sequence, factors: Sequence[ShiftFactor] = ()):
        c = tuple(to_rational(v) for v in c)
        if not c:
            raise InputError("a cocycle needs rank r >= 1")
        if any(v == 0 for v in c):
            raise InputError("character constants must be nonzero")
        factors = tuple(factors)
        for f in factors:
            if len(f.mu) != len(c):
                raise InputError(f"factor {f.mu} does not match rank {len(c)}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "factors", factors)

    @property
    def r(self) -> int:
        return len(self.c)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "c": [format_rational(v) for v in self.c],
            "factors": [f.to_dict() for f in self.factors],
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "GammaCocycle":
        try:
            r = int(doc["r"])
            c = [to_rational(v) for v in doc["c"]]
            factors = [
                ShiftFactor(f["mu"], to_rational(f["alpha"]), {int(j): int(z) for j, z in f["eta"].items()})
                for f in doc.get("factors", [])
            ]
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            raise InputError(f"malformed cocycle descriptor: {exc}") from exc
        if len(c) != r:
            raise InputError(f"r = {r} but {len(c)} character constants given")
        return cls(c, factors)


def _check_vector(b: GammaCocycle, v, name: str) -> None:
    if len(v) != b.r:
        raise InputError(f"{name} has length {len(v)}, cocycle rank is {b.r}")


def cocycle_eval(b: GammaCocycle, m: Sequence[int], s: Sequence) -> Fraction:
    """Exact value of ``b_m(s)``."""
    _check_vector(b, m, "m")
    _check_vector(b, s, "s")
    m = [int(v) for v in m]
    s = [to_rational(v) for v in s]
    value = Fraction(1)
    for ck, mk in zip(b.c, m):
        value *= ck**mk
    num, den = Fraction(1), Fraction(1)
    for f in b.factors:
        n = sum(k * v for k, v in zip(f.mu, m))
        if n == 0:
            continue
        base = sum(k * v for k, v in zip(f.mu, s)) + f.alpha
        nus = range(n) if n > 0 else range(n, 0)
        for j, z in f.eta:
            power = z if n > 0 else -z
            for nu in nus:
                term = base + j + nu
                if power > 0:
                    num *= term**power
                elif term == 0:
                    raise PoleError(f"factor mu(s)+{f.alpha}+{j}+{nu} vanishes at s={s} (m={m})")
                else:
                    den *= term**-power
    return value * num / den


def check_cocycle_law(b: GammaCocycle, m: Sequence[int], m2: Sequence[int], s: Sequence) -> bool:
    """``b_{m+m'}(s) == b_{m'}(s+m) b_m(s)``, exactly."""
    s = [to_rational(v) for v in s]
    total = [a + c for a, c in zip(m, m2)]
    shifted = [v + k for v, k in zip(s, m)]
    return cocycle_eval(b, total, s) == cocycle_eval(b, m2, shifted) * cocycle_eval(b, m, s)


def normalize_factor(f: ShiftFactor) -> tuple[ShiftFactor, tuple[int, ...]]:
    """Flip a factor with negative weight sum; return it and the sign character it sheds.

    The flip sends eta, mu, h(t) to -eta, -mu, h(-t-1). For h(t) = t + alpha this
    gives h(-t-1) = -(t + 1 - alpha): the stored factor stays monic with shift
    1 - alpha, and the -1 per linear factor becomes the character
    ``m -> prod_k ((-1)^(eps * mu_k))^(m_k)``. Because the weights are now read
    in the opposite generator, ``z'_j = -z_{-j}``.
    """
    eps = f.eps
    if eps == 0:
        raise DegenerateFactorError(f"weights of eta sum to zero: {dict(f.eta)}")
    if eps > 0:
        return f, (1,) * len(f.mu)
    flipped = ShiftFactor(
        tuple(-k for k in f.mu),
        1 - f.alpha,
        {-j: -z for j, z in f.eta},
    )
    signs = tuple(-1 if (flipped.eps * k) % 2 else 1 for k in flipped.mu)
    return flipped, signs


def normalize(b: GammaCocycle) -> GammaCocycle:
    """Same cocycle values, every factor with positive weight sum."""
    c = list(b.c)
    factors = []
    for f in b.factors:
        g, signs = normalize_factor(f)
        factors.append(g)
        c = [ck * sk for ck, sk in zip(c, signs)]
    return GammaCocycle(c, factors)


@dataclass(frozen=True)
class RegimeReport:
    nonnegative_mu: bool
    multilinear_mu: bool
    positive_end_weights: bool

    @property
    def all_hold(self) -> bool:
        return self.nonnegative_mu and self.multilinear_mu and self.positive_end_weights


def check_polynomial_regime(b: GammaCocycle) -> RegimeReport:
    """Necessary conditions for ``b_{e_k}`` to be polynomials, on the normalized form.

    (a) every mu has nonnegative coefficients; (b) every coefficient is 0 or 1
    (the multilinear case); (c) the lowest and highest weights of each eta are
    positive. These are not sufficient for polynomiality.
    """
    factors = normalize(b).factors
    return RegimeReport(
        nonnegative_mu=all(k >= 0 for f in factors for k in f.mu),
        multilinear_mu=all(k in (0, 1) for f in factors for k in f.mu),
        positive_end_weights=all(f.eta[0][1] > 0 and f.eta[-1][1] > 0 for f in factors),
    )


def degree_vector(b: GammaCocycle) -> tuple[int, ...]:
    """``d_k = sum_i mu_i(e_k) eps(eta_i)``."""
    return tuple(sum(f.mu[k] * f.eps for f in b.factors) for k in range(b.r))


# gamma products


@dataclass(frozen=True)
class GammaProductValue:
    value: complex | float
    log_value: complex | float
    pole: bool = False


def _near_pole(z) -> bool:
    z = complex(z)
    if abs(z.imag) > POLE_TOLERANCE or z.real > POLE_TOLERANCE:
        return False
    return abs(z.real - round(z.real)) <= POLE_TOLERANCE


def _log_gamma_any(z) -> complex:
    """log Gamma off the poles, shifting into Re(z) > 0 with Gamma(z+1) = z Gamma(z)."""
    z = complex(z)
    if z.real > 0:
        return complex(log_gamma(z if z.imag else z.real))
    n = math.ceil(1.0 - z.real)
    acc = complex(log_gamma(z + n if z.imag else z.real + n))
    for k in range(n):
        acc -= cmath.log(z + k)
    return acc


def _finish(log_total: complex, real_input: bool, pole: bool) -> GammaProductValue:
    if pole:
        return GammaProductValue(math.nan, math.nan, True)
    value = cmath.exp(log_total)
    if real_input:
        real = value.real
        if real > 0:
            return GammaProductValue(real, log_total.real)
        return GammaProductValue(real, log_total)
    return GammaProductValue(value, log_total)


def _gamma_product(b: GammaCocycle, s, halve: bool) -> GammaProductValue:
    _check_vector(b, s, "s")
    real_input = all(not isinstance(v, complex) for v in s)
    s = [complex(v) if isinstance(v, complex) else float(v) for v in s]
    if any(ck <= 0 for ck in b.c):
        raise InputError("gamma products need positive character constants")
    d = degree_vector(b)
    scale = 0.5 if halve else 1.0
    log_base = _LOG_PI if halve else _LOG_2PI
    log_total = 0j
    for sk, ck, dk in zip(s, b.c, d):
        log_total += scale * sk * (math.log(ck) - dk * log_base)
    pole = False
    for f in b.factors:
        mu_s = sum(k * v for k, v in zip(f.mu, s))
        for j, z in f.eta:
            top = scale * (mu_s + float(f.alpha) + j)
            bottom = scale * (float(f.alpha) + j)
            if _near_pole(top) or _near_pole(bottom):
                pole = True
                continue
            log_total += z * (_log_gamma_any(top) - _log_gamma_any(bottom))
    return _finish(log_total, real_input, pole)


def gamma_product_complex(b: GammaCocycle, s: Sequence) -> GammaProductValue:
    """``prod_k ((2 pi)^-d_k c_k)^s_k prod_ij (Gamma(mu_i(s)+alpha_i+j) / Gamma(alpha_i+j))^z_ij``."""
    return _gamma_product(b, s, halve=False)


def gamma_product_real(b: GammaCocycle, s: Sequence) -> GammaProductValue:
    """``prod_k (pi^-d_k c_k)^(s_k/2) prod_ij (Gamma((mu_i(s)+alpha_i+j)/2) / Gamma((alpha_i+j)/2))^z_ij``."""
    return _gamma_product(b, s, halve=True)


# seeded random normal forms


def _random_mu(rng: random.Random, r: int, low: int, high: int) -> tuple[int, ...]:
    while True:
        mu = tuple(rng.randint(low, high) for _ in range(r))
        if any(mu) and math.gcd(*mu) == 1:
            return mu


def random_cocycle(rng: random.Random, r: int | None = None) -> GammaCocycle:
    """Arbitrary normal-form data: signed mu, any rational shifts, mixed-sign weights."""
    r = r or rng.randint(1, 3)
    c = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(r)]
    factors = []
    for _ in range(rng.randint(1, 3)):
        eta = {}
        while not eta or sum(eta.values()) == 0:
            eta = {j: rng.choice((-2, -1, 1, 2)) for j in rng.sample(range(-2, 3), rng.randint(1, 3))}
        alpha = Fraction(rng.randint(-7, 7), rng.choice((2, 3, 5, 7)))
        factors.append(ShiftFactor(_random_mu(rng, r, -2, 3), alpha, eta))
    return GammaCocycle(c, factors)


def random_polynomial_cocycle(rng: random.Random, r: int | None = None, multilinear: bool = False) -> GammaCocycle:
    """Data in the polynomial regime: nonnegative mu, positive weights, positive alpha + j."""
    r = r or rng.randint(1, 3)
    c = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(r)]
    factors = []
    for _ in range(rng.randint(1, 3)):
        mu = _random_mu(rng, r, 0, 1 if multilinear else 3)
        eta = {j: rng.randint(1, 2) for j in rng.sample(range(0, 3), rng.randint(1, 2))}
        alpha = Fraction(rng.randint(1, 9), rng.choice((2, 3, 4, 5)))
        factors.append(ShiftFactor(mu, alpha, eta))
    return GammaCocycle(c, factors)


def gamma_difference_residual(b: GammaCocycle, s: Sequence[float], m: Sequence[int], field: str) -> float:
    """Relative residual of the shift law obeyed by the gamma product.

    Complex field: ``g(s+m) = (2 pi)^(-d.m) b_m(s) g(s)``.
    Real field: ``m`` must be a unit vector ``e_i`` and the law is
    ``g(s+2 e_i) = (2 pi)^(-d_i) b_{e_i}(s) g(s)``.
    """
    d = degree_vector(b)
    if field == "C":
        shift, product = list(m), gamma_product_complex
    elif field == "R":
        if sorted(m) != [0] * (len(m) - 1) + [1]:
            raise InputError("the real shift law is stated for unit vectors e_i")
        shift, product = [2 * v for v in m], gamma_product_real
    else:
        raise InputError(f"field must be 'C' or 'R', got {field!r}")
    s = [float(v) for v in s]
    lhs = product(b, [a + k for a, k in zip(s, shift)])
    base = product(b, s)
    if lhs.pole or base.pole:
        raise PoleError(f"gamma product has a pole near s={s}")
    factor = float(cocycle_eval(b, m, [Fraction(v) for v in s]))
    rhs = (2 * math.pi) ** -sum(dk * mk for dk, mk in zip(d, m)) * factor * base.value
    return abs(lhs.value - rhs) / abs(rhs)
