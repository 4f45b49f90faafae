"""Log-gamma on the right half plane via a Lanczos approximation.

Near the zeros of log Gamma at z = 1 and z = 2 a power series is used
instead so the relative error stays small there too.
"""

from __future__ import annotations

import cmath
import math
from numbers import Number


class DomainError(ValueError):
    pass


# g = 7, n = 9 Lanczos coefficients.
_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

_EULER_GAMMA = 0.57721566490153286061
# zeta(n) - 1 for n = 2, 3, ...
_ZETA_M1 = (
    0.64493406684822643647, 0.2020569031595942854, 0.082323233711138191516,
    0.036927755143369926331, 0.017343061984449139715, 0.0083492773819228268398,
    0.0040773561979443393787, 0.0020083928260822144179, 0.00099457512781808533715,
    0.0004941886041194645587, 0.00024608655330804829864, 0.00012271334757848914675,
    0.000061248135058704829259, 0.000030588236307020493552, 0.000015282259408651871733,
    7.6371976378997622736e-6, 3.8172932649998398565e-6, 1.9082127165539389257e-6,
    9.5396203387279611315e-7, 4.7693298678780646312e-7, 2.3845050272773299e-7,
    1.1921992596531107307e-7, 5.9608189051259479612e-8, 2.9803503514652280186e-8,
)
_SERIES_RADIUS = 0.3


def _log_gamma_2_plus(x):
    """log Gamma(2 + x) for small |x| (|x| < 2 converges; used for |x| <= 0.3)."""
    total = x * (1.0 - _EULER_GAMMA)
    power = -x
    for n, c in enumerate(_ZETA_M1, start=2):
        power = -power * x  # (-x)^n
        total += c * power / n
    return total


def _lanczos(z):
    z = z - 1.0
    a = _LANCZOS[0]
    t = z + _G + 0.5
    for i in range(1, len(_LANCZOS)):
        a += _LANCZOS[i] / (z + i)
    log = cmath.log if isinstance(z, complex) else math.log
    return _HALF_LOG_2PI + (z + 0.5) * log(t) - t + log(a)


def log_gamma(z: Number):
    """log Gamma(z) for Re(z) > 0; real input gives a float, complex a complex."""
    is_complex = isinstance(z, complex)
    z = complex(z) if is_complex else float(z)
    re = z.real if is_complex else z
    if not re > 0.0:
        raise DomainError(f"log_gamma requires Re(z) > 0, got {z}")
    log1p = (lambda w: cmath.log(1.0 + w)) if is_complex else math.log1p
    if abs(z - 2.0) <= _SERIES_RADIUS:
        return _log_gamma_2_plus(z - 2.0)
    if abs(z - 1.0) <= _SERIES_RADIUS:
        x = z - 1.0
        return _log_gamma_2_plus(x) - log1p(x)
    if re < 0.5:
        log = cmath.log if is_complex else math.log
        return log_gamma(z + 1.0) - log(z)
    return _lanczos(z)
