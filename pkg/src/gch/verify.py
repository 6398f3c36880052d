"""Independent correctness instruments.

Three checks live here, deliberately sharing no code with the evaluators
they police: an ODE residual computed analytically from a coefficient
list, a from-scratch confluent-hypergeometric summation used as the
eps = 0 oracle, and a grid sweep comparing the closed-form nested sums
against direct recurrence summation point by point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DomainError, GammaPole, GchError
from .params import GchParams, SolutionKind, _is_integer, validate
from .recurrence import Truncation, real_power, sum_series
from .series import NestedTruncation, eval_general


@dataclass(frozen=True)
class ResidualReport:
    """Value of the differential operator applied to a truncated series.

    ``scale`` is the largest term mass among the three operator pieces
    (coefficient magnitude times the sum of absolute summands), i.e. the
    size of what had to cancel; ``relative`` is the backward-error figure
    residual/scale.  Piece values themselves are unsuitable as a scale:
    at isolated x both polynomial coefficients of the operator can vanish,
    leaving every piece at roundoff size while the series is exact.
    """

    x: float
    residual: float
    scale: float

    @property
    def relative(self) -> float:
        if self.scale == 0.0:
            return 0.0 if self.residual == 0.0 else math.inf
        return abs(self.residual) / self.scale


def ode_residual(coeffs: Sequence[float], lam: float, p: GchParams, x: float) -> ResidualReport:
    """Apply x y'' + (mu x^2 + eps x + nu) y' + (Omega x + eps omega) y to
    sum_n c_n x^(n+lam), with derivatives taken term by term analytically.

    For coefficients that satisfy the recurrence exactly the residual is
    the truncation boundary term, O(x^(N+lam)); corrupting any interior
    coefficient breaks the cancellation at its own power of x.
    """
    if x == 0.0:
        if lam < 2.0:
            raise DomainError("residual at x = 0 needs lam >= 2 for finite derivatives")
        return ResidualReport(x=x, residual=0.0, scale=0.0)
    y_terms: list[float] = []
    yp_terms: list[float] = []
    ypp_terms: list[float] = []
    xpow = real_power(x, lam)  # x^(n+lam), advanced each term
    for n, c in enumerate(coeffs):
        e = n + lam
        y_terms.append(c * xpow)
        yp_terms.append(c * e * xpow / x)
        ypp_terms.append(c * e * (e - 1.0) * xpow / (x * x))
        xpow *= x
    c_yp = p.mu * x * x + p.eps * x + p.nu
    c_y = p.Omega * x + p.eps * p.omega
    piece1 = x * math.fsum(ypp_terms)
    piece2 = c_yp * math.fsum(yp_terms)
    piece3 = c_y * math.fsum(y_terms)
    residual = math.fsum((piece1, piece2, piece3))
    scale = max(
        abs(x) * math.fsum(abs(t) for t in ypp_terms),
        abs(c_yp) * math.fsum(abs(t) for t in yp_terms),
        abs(c_y) * math.fsum(abs(t) for t in y_terms),
    )
    return ResidualReport(x=x, residual=residual, scale=scale)


def kummer_oracle(a: float, gamma: float, z: float) -> float:
    """sum_m (a)_m z^m / ((1)_m (gamma)_m) by direct compensated summation.

    Written from scratch on purpose: this is the independent reference for
    every eps = 0 reduction, so it shares nothing with the nested-sum
    machinery.  Requires gamma away from the nonpositive integers and
    |z| <= 50.
    """
    if _is_integer(gamma) and round(gamma) <= 0:
        raise GammaPole(f"gamma = {gamma} is a nonpositive integer")
    if abs(z) > 50.0:
        raise DomainError("kummer_oracle is specified for |z| <= 50")
    total = 0.0
    comp = 0.0
    term = 1.0
    m = 0
    streak = 0
    while m < 1000:
        s = total + term
        if abs(total) >= abs(term):
            comp += (total - s) + term
        else:
            comp += (term - s) + total
        total = s
        m += 1
        term *= z * (a + m - 1.0) / (m * (gamma + m - 1.0))
        if abs(term) <= 1e-14 * abs(total + comp):
            streak += 1
            if streak >= 3:
                break
        else:
            streak = 0
    return total + comp


_GRID_MU = (-2.0, -0.5, 0.5, 2.0)
_GRID_EPS = (-2.0, -0.5, 0.5, 2.0)
_GRID_NU = (0.5, 1.5)
_GRID_OMEGA_CAP = (-1.0, 1.0)
_GRID_OMEGA = (0.25, 1.0)
_GRID_X = (0.1, 0.5, 1.0)


@dataclass(frozen=True)
class GridSpec:
    """Cartesian parameter grid for cross-validation; defaults reproduce the
    acceptance sweep (384 points, both kinds where valid)."""

    mu: tuple[float, ...] = _GRID_MU
    eps: tuple[float, ...] = _GRID_EPS
    nu: tuple[float, ...] = _GRID_NU
    Omega: tuple[float, ...] = _GRID_OMEGA_CAP
    omega: tuple[float, ...] = _GRID_OMEGA
    x: tuple[float, ...] = _GRID_X
    kinds: tuple[SolutionKind, ...] = (SolutionKind.FIRST, SolutionKind.SECOND)

    def points(self):
        for mu in self.mu:
            for eps in self.eps:
                for nu in self.nu:
                    for omega_cap in self.Omega:
                        for omega in self.omega:
                            for x in self.x:
                                yield GchParams(mu, eps, nu, omega_cap, omega), x


@dataclass(frozen=True)
class CrossRecord:
    params: GchParams
    kind: SolutionKind
    x: float
    oracle: Optional[float]
    closed: Optional[float]
    rel_err: Optional[float]
    error: Optional[str] = None


@dataclass(frozen=True)
class CrossReport:
    records: tuple[CrossRecord, ...]
    max_rel_err: float
    worst: Optional[CrossRecord]
    n_evaluated: int
    n_failed: int


def cross_validate(
    grid: GridSpec | None = None,
    t: Truncation | None = None,
    nt: NestedTruncation | None = None,
) -> CrossReport:
    """Closed form vs direct recurrence on every grid point.

    Per-point failures (kind restrictions, domain errors) are recorded and
    the sweep continues; the report carries the worst relative error and
    its location.
    """
    grid = grid or GridSpec()
    t = t or Truncation()
    nt = nt or NestedTruncation()
    records: list[CrossRecord] = []
    worst: Optional[CrossRecord] = None
    max_rel = 0.0
    n_eval = 0
    n_failed = 0
    for p, x in grid.points():
        for kind in grid.kinds:
            try:
                bundle = validate(p, kind)
                lam = bundle.lam
                oracle = sum_series(p, lam, 1.0, x, t).value
                closed = eval_general(p, lam, 1.0, x, nt).value
            except GchError as exc:
                n_failed += 1
                records.append(CrossRecord(p, kind, x, None, None, None, f"{type(exc).__name__}: {exc}"))
                continue
            diff = abs(closed - oracle)
            rel = 0.0 if diff == 0.0 else diff / abs(oracle) if oracle != 0.0 else math.inf
            rec = CrossRecord(p, kind, x, oracle, closed, rel)
            records.append(rec)
            n_eval += 1
            if rel > max_rel:
                max_rel = rel
                worst = rec
    return CrossReport(
        records=tuple(records),
        max_rel_err=max_rel,
        worst=worst,
        n_evaluated=n_eval,
        n_failed=n_failed,
    )
