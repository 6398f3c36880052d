"""Large-index limiting forms of the series and the error function they need.

When the recurrence index is large the coefficient pair degenerates to
A ~ -eps/n, B ~ -mu/n, and one of the two channels dominates depending on
which of |mu|, |eps| is small.  The resummed limits are elementary:
x(exp(-eps x) - 1) for the A-dominated regime, and

    1 + sqrt(-pi mu x^2 / 2) Erf(sqrt(-mu x^2 / 2)) exp(-mu x^2 / 2)

for the B-dominated one.  erf is implemented locally (Kummer-transformed
series below |y| = 3, Lentz-evaluated continued fraction beyond) so the
values are bit-stable across platforms; the square roots are kept real for
mu > 0 through erfi.
"""

from __future__ import annotations

import math
from enum import Enum

_SQRT_PI = math.sqrt(math.pi)
_ERF_SWITCH = 3.0


class AsymptoticRegime(Enum):
    """Which coefficient channel dominates; always selected explicitly."""

    SMALL_MU = "small-mu"
    SMALL_EPS = "small-eps"


def _erf_series(y: float) -> float:
    # erf(y) = (2/sqrt(pi)) y e^{-y^2} sum_k (2y^2)^k / (1*3*...*(2k+1)),
    # an all-positive series, free of the alternating-sum cancellation.
    y2 = y * y
    term = 1.0
    total = 1.0
    k = 0
    while True:
        term *= 2.0 * y2 / (2.0 * k + 3.0)
        total += term
        k += 1
        if term <= 1e-17 * total or k > 500:
            break
    return 2.0 / _SQRT_PI * y * math.exp(-y2) * total


def _erfc_cf(y: float) -> float:
    # continued fraction erfc(y) = e^{-y^2}/sqrt(pi) / (y + (1/2)/(y + 1/(y + (3/2)/(y + ...))))
    # evaluated by the modified Lentz algorithm; y >= _ERF_SWITCH.
    tiny = 1e-300
    f = y
    c = f
    d = 0.0
    for j in range(1, 300):
        a = 0.5 * j
        d = y + a * d
        if d == 0.0:
            d = tiny
        c = y + a / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-17:
            break
    return math.exp(-y * y) / (_SQRT_PI * f)


def erf(y: float) -> float:
    """Error function, odd, |erf| <= 1; series below |y|=3, continued fraction beyond."""
    if y != y:
        return y
    ay = abs(y)
    if ay < _ERF_SWITCH:
        return _erf_series(y)
    val = 1.0 - _erfc_cf(ay)
    return val if y > 0 else -val


def erfi(y: float) -> float:
    """Imaginary-argument companion (2/sqrt(pi)) integral_0^y e^{t^2} dt."""
    y2 = y * y
    term = y
    total = y
    k = 0
    while True:
        term *= y2 / (k + 1.0) * (2.0 * k + 1.0) / (2.0 * k + 3.0)
        total += term
        k += 1
        if abs(term) <= 1e-17 * abs(total) or k > 800:
            break
    return 2.0 / _SQRT_PI * total


def asym_small_mu(epsilon: float, x: float) -> float:
    """Limiting form x (e^{-eps x} - 1) of the A-dominated channel, as displayed."""
    return x * math.expm1(-epsilon * x)


def asym_small_mu_resummed(epsilon: float, x: float) -> float:
    """Companion resummation x e^{-eps x}.

    Resumming c_{n+1} = -(eps/n) c_n with c_1 = 1 term by term gives this
    form rather than the displayed one (the two differ by the non-decaying
    -x); both are exposed and only the leading exponential behaviour is
    asserted anywhere.
    """
    return x * math.exp(-epsilon * x)


def asym_small_eps(mu: float, x: float) -> float:
    """Limiting form of the B-dominated channel, real for all real mu, x.

    With s = -mu x^2/2 this is 1 + sqrt(pi s) erf(sqrt(s)) e^s; for
    mu x^2 > 0 the real-valued continuation through erfi applies,
    1 - sqrt(-pi s) erfi(sqrt(-s)) e^s, which is the value of the
    even-coefficient series sum_n s^n Gamma(1/2)/Gamma(n+1/2) on both sides.
    """
    s = -0.5 * mu * x * x
    if s == 0.0:
        return 1.0
    if s > 0.0:
        rt = math.sqrt(s)
        return 1.0 + _SQRT_PI * rt * erf(rt) * math.exp(s)
    rt = math.sqrt(-s)
    return 1.0 - _SQRT_PI * rt * erfi(rt) * math.exp(s)


def limit_value(regime: AsymptoticRegime, mu: float, epsilon: float, x: float) -> float:
    """Evaluate the selected limiting form; the regime is never inferred."""
    if regime is AsymptoticRegime.SMALL_MU:
        return asym_small_mu(epsilon, x)
    return asym_small_eps(mu, x)
