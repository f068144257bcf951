"""Self-contained numerical primitives for the exact statistics.

The regularized incomplete beta function is evaluated with a Lentz-style
continued fraction; its inverse is a bisection to 1e-10. The normal CDF uses
the classic Abramowitz & Stegun 26.2.17 rational approximation (|error| <
7.5e-8). No numerical library is involved; scipy appears only in the test
suite as an independent oracle.
"""
from __future__ import annotations

import math

from .errors import TutorError

_BETA_TOL = 1e-12
_BETA_MAX_ITER = 500
_INV_TOL = 1e-10


def log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def _betacf(a: float, b: float, x: float) -> float:
    # continued fraction for the incomplete beta, modified Lentz
    tiny = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_TOL:
            return h
    return h


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise TutorError("beta parameters must be positive")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    front = math.exp(
        a * math.log(x) + b * math.log(1.0 - x) - log_beta(a, b)
    )
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def beta_ppf(p: float, a: float, b: float) -> float:
    """Inverse of the regularized incomplete beta via bisection."""
    if not 0.0 <= p <= 1.0:
        raise TutorError("probability must be in [0, 1]")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if regularized_incomplete_beta(a, b, mid) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo < _INV_TOL:
            break
    return 0.5 * (lo + hi)


# Abramowitz & Stegun 26.2.17 coefficients.
_AS_B = (0.319381530, -0.356563782, 1.781477937, -1.821255978, 1.330274429)
_AS_P = 0.2316419
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def normal_cdf(x: float) -> float:
    if x == 0.0:
        return 0.5
    if x < 0.0:
        return 1.0 - normal_cdf(-x)
    t = 1.0 / (1.0 + _AS_P * x)
    poly = t * (
        _AS_B[0]
        + t * (_AS_B[1] + t * (_AS_B[2] + t * (_AS_B[3] + t * _AS_B[4])))
    )
    return 1.0 - _INV_SQRT_2PI * math.exp(-0.5 * x * x) * poly


def normal_ppf(p: float) -> float:
    if not 0.0 < p < 1.0:
        raise TutorError("probability must be in (0, 1)")
    lo, hi = -40.0, 40.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if normal_cdf(mid) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo < _INV_TOL:
            break
    return 0.5 * (lo + hi)


def student_t_cdf(x: float, df: int) -> float:
    """CDF of Student's t via the incomplete beta identity."""
    if df < 1:
        raise TutorError("degrees of freedom must be >= 1")
    if x == 0.0:
        return 0.5
    if x < 0.0:
        return 1.0 - student_t_cdf(-x, df)
    # Pick whichever equivalent form keeps the beta argument away from 1,
    # where forming it from x would lose precision to cancellation.
    if x * x < df:
        ib = regularized_incomplete_beta(0.5, df / 2.0, x * x / (df + x * x))
        return 0.5 + 0.5 * ib
    ib = regularized_incomplete_beta(df / 2.0, 0.5, df / (df + x * x))
    return 1.0 - 0.5 * ib


def student_t_ppf(p: float, df: int) -> float:
    if not 0.0 < p < 1.0:
        raise TutorError("probability must be in (0, 1)")
    lo, hi = -1e6, 1e6
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        if student_t_cdf(mid, df) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo < _INV_TOL:
            break
    return 0.5 * (lo + hi)


def mean_confidence_interval(
    values: list[float], level: float = 0.95
) -> tuple[float, float, float]:
    """(mean, lower, upper) of a t-based CI over the sample."""
    n = len(values)
    if n < 2:
        raise TutorError("need at least two values for a confidence interval")
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    if var == 0.0:
        return mean, mean, mean
    half = student_t_ppf(0.5 + level / 2.0, n - 1) * math.sqrt(var / n)
    return mean, mean - half, mean + half
