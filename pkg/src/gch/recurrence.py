"""Ground-truth series evaluation by running the raw three-term recurrence.

This module never touches the closed-form nested sums: it generates
c_0, c_1, c_2, ... directly from c_{n+1} = A_n c_n + B_n c_{n-1} and
accumulates c_n x^(n+lam) with error-compensated (Neumaier) summation.
Every closed-form evaluator elsewhere in the package is cross-validated
against :func:`sum_series`.

Summation runs in ascending n; for mu > 0 the quadratic argument
z = -mu x^2/2 is negative and the series alternates, so the compensation
term carries most of the cancellation error.  The stop rule requires
three consecutive terms below tolerance because single small terms occur
spuriously at sign changes.

The ratio of consecutive coefficients decays like 1/n (both A_n and B_n
do), so empirically the series converges for every finite x; that is an
observation, not a proven bound, and the truncation caps treat it as
such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, PoleError
from .params import GchParams, coefficient_A, coefficient_B, _is_integer

#: consecutive below-tolerance terms required before the sum is declared converged
_STREAK = 3


@dataclass(frozen=True)
class Truncation:
    """Caps and tolerances for direct summation."""

    max_terms: int = 400
    rel_tol: float = 1e-12
    abs_floor: float = 1e-300

    def __post_init__(self) -> None:
        if self.max_terms < 8:
            raise ValueError("max_terms must be at least 8")
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError("rel_tol must lie in (0, 1)")
        if self.abs_floor <= 0.0:
            raise ValueError("abs_floor must be positive")


@dataclass(frozen=True)
class EvalResult:
    """Outcome of a series evaluation.

    ``last_term_mag`` is the magnitude of the last accumulated term (or, for
    the closed-form path, of the last order contribution) and serves as an
    a-posteriori error proxy.  ``terminated_at`` is the index n* with
    B_{n*} = 0 when the parameters belong to the polynomial class.
    ``orders`` is populated only by the closed-form evaluators and holds the
    per-order decomposition y_0, y_1, y_2, ...
    """

    value: float
    terms_used: int
    last_term_mag: float
    converged: bool
    terminated_at: Optional[int] = None
    orders: Optional[tuple[float, ...]] = None


def real_power(x: float, expo: float) -> float:
    """x**expo restricted to real values.

    Negative x with non-integer exponent and x = 0 with negative exponent
    raise DomainError; integer exponents of negative x follow the usual
    sign rule.
    """
    if expo == 0.0:
        return 1.0
    if x > 0.0:
        return math.pow(x, expo)
    if x == 0.0:
        if expo > 0.0:
            return 0.0
        raise DomainError(f"0**({expo}) diverges")
    if _is_integer(expo):
        k = round(expo)
        mag = math.pow(-x, float(k))
        return -mag if k % 2 else mag
    raise DomainError(f"({x})**({expo}) is not real")


def coefficients(p: GchParams, lam: float, c0: float, count: int) -> list[float]:
    """First ``count`` series coefficients c_0 .. c_{count-1} from the recurrence."""
    if count <= 0:
        return []
    out = [c0]
    if count == 1:
        return out
    out.append(coefficient_A(0, lam, p) * c0)
    for n in range(1, count - 1):
        out.append(coefficient_A(n, lam, p) * out[n] + coefficient_B(n, lam, p) * out[n - 1])
    return out


def detect_termination(p: GchParams, lam: float) -> Optional[int]:
    """Index n* with B_{n*} = 0, i.e. n* = 1 - lam - Omega/mu, if it is a
    positive integer (within 1e-12); None otherwise."""
    if p.mu == 0.0:
        raise PoleError("termination detection requires mu != 0")
    nstar = 1.0 - lam - p.Omega / p.mu
    if _is_integer(nstar) and round(nstar) >= 1:
        return int(round(nstar))
    return None


def sum_series(
    p: GchParams,
    lam: float,
    c0: float,
    x: float,
    t: Truncation | None = None,
) -> EvalResult:
    """Sum y(x) = sum_n c_n x^(n+lam) directly from the recurrence.

    Linear in c0.  Stops after three consecutive terms fall below
    rel_tol * |partial sum| (or below abs_floor); if the cap is reached
    first the partial value is still returned with ``converged=False``.

    Raises DomainError when x^lam is not real (x < 0 with fractional lam,
    or x = 0 with lam < 0).
    """
    if t is None:
        t = Truncation()
    xpow = real_power(x, lam)

    total = 0.0
    comp = 0.0  # Neumaier compensation
    streak = 0
    last_mag = 0.0
    n_used = 0

    c_prev = 0.0  # c_{n-1}
    c_cur = c0
    pw = 1.0  # x^n
    for n in range(t.max_terms):
        term = c_cur * pw * xpow
        s = total + term
        if abs(total) >= abs(term):
            comp += (total - s) + term
        else:
            comp += (term - s) + total
        total = s
        last_mag = abs(term)
        n_used = n + 1

        bar = max(t.rel_tol * abs(total + comp), t.abs_floor)
        streak = streak + 1 if last_mag <= bar else 0
        if streak >= _STREAK and n >= 2:
            break

        if n == 0:
            c_next = coefficient_A(0, lam, p) * c_cur
        else:
            c_next = coefficient_A(n, lam, p) * c_cur + coefficient_B(n, lam, p) * c_prev
        c_prev, c_cur = c_cur, c_next
        pw *= x

    terminated = detect_termination(p, lam) if p.mu != 0.0 else None
    return EvalResult(
        value=total + comp,
        terms_used=n_used,
        last_term_mag=last_mag,
        converged=streak >= _STREAK,
        terminated_at=terminated,
    )
