"""Closed-form evaluation of both solution kinds by resummed nested series.

The series solution is reorganised by powers of eps_tilde = -eps*x/2 (the
"order" n).  The order-n contribution is an n-fold nested sum over
monotonically increasing indices i_0 <= i_1 <= ... <= i_n; chain k carries
the Pochhammer parameters

    a_k = Omega/(2 mu) + k/2 + lam/2        (numerator),
    b_k = 1 + k/2 + lam/2,  c_k = gamma + k/2 + lam/2   (denominators),

the innermost chain supplies the powers z^{i_n} with z = -mu*x^2/2, and
every non-innermost chain k is weighted by

    w_k(i) = (i + lam/2 + omega/2 + k/2)
             / ((i + 1/2 + lam/2 + k/2) (i - 1/2 + gamma + lam/2 + k/2)).

The B-terminated polynomial class is the same object with a_k written as
-beta_k for nonnegative integers beta_k: the rising factorial (-beta_k)_i
vanishes for i > beta_k and truncates chain k on its own.  Consequently a
single engine evaluates the infinite-series and polynomial classes; the
polynomial entry points only add the termination bookkeeping and their
gamma-function normalisations.

The Pochhammer ratios between adjacent indices are shorthand for the
telescoped products

    R_k(p, i) = prod_{j=p}^{i-1} r_k(j),
    r_k(j) = (a_k + j) / ((b_k + j)(c_k + j)),

which is the form the underlying B-coefficient products actually take; at
B-terminating parameters (a_k a nonpositive integer) the literal-ratio
reading hits 0/0 while the telescoped one stays finite, and direct
recurrence summation confirms the telescoped reading is the one that
solves the ODE.  The tail sums T_k(p) = sum_{i>=p} w_k(i) R_k(p,i)
T_{k+1}(i) then obey a one-term backward recurrence in p; scaling out
z^p, each chain is evaluated by the Horner-style fold

    U_k(p) = w_k(p) U_{k+1}(p) + z r_k(p) U_k(p+1)

(no weight on the innermost chain), so every summand is produced from its
neighbour by one multiplication, intermediate quantities stay on the
scale of Kummer-type sums, and the cost of an order is linear in the
chain cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from .errors import (
    BetaMismatch,
    IndeterminateError,
    NonFiniteError,
    NormalizationPole,
    NoTermination,
    PoleError,
)
from .params import GchParams, SolutionKind, _is_integer, validate
from .recurrence import EvalResult, detect_termination, real_power

_TINY = 1e-300


@dataclass(frozen=True)
class NestedTruncation:
    """Caps and tolerance for the doubly-infinite nested sums.

    ``max_order_N`` caps the outer order (the power of eps_tilde),
    ``max_inner`` caps every chain index, and ``rel_tol`` stops the outer
    sum once two consecutive orders contribute less than rel_tol times the
    running total.  Defaults cover |eps_tilde| <= 4 and |z| <= 8
    (|mu|, |eps| <= 4 with |x| <= 2) with margin; the adaptive stop keeps
    easy points cheap regardless.
    """

    max_order_N: int = 48
    max_inner: int = 72
    rel_tol: float = 1e-12

    def __post_init__(self) -> None:
        if self.max_order_N < 2:
            raise ValueError("max_order_N must be at least 2")
        if self.max_inner < 4:
            raise ValueError("max_inner must be at least 4")
        if self.rel_tol <= 0.0:
            raise ValueError("rel_tol must be positive")


class BetaSource(Enum):
    USER_SUPPLIED = "user"
    DERIVED_FROM_OMEGA = "omega"


@dataclass(frozen=True)
class BetaSequence:
    """Per-order termination indices beta_0, beta_1, ...

    ``None`` marks an order whose index is absent (not a nonnegative
    integer); that order's chain then runs with the Omega-derived
    infinite-series parameters up to the inner cap.  For Omega-derived
    sequences 2*beta_k + k is the same for every present entry, because a
    single Omega fixes the whole ladder.
    """

    betas: tuple[Optional[int], ...]
    source: BetaSource

    def __post_init__(self) -> None:
        if not self.betas:
            raise ValueError("beta sequence must not be empty")
        for k, b in enumerate(self.betas):
            if b is None:
                continue
            if not isinstance(b, int) or b < 0:
                raise ValueError(f"beta_{k}={b!r} is not a nonnegative integer")
        if self.source is BetaSource.DERIVED_FROM_OMEGA:
            levels = {2 * b + k for k, b in enumerate(self.betas) if b is not None}
            if len(levels) > 1:
                raise ValueError(f"Omega-derived betas are inconsistent: 2*beta_k+k = {sorted(levels)}")


def _signed_log_product(a: float, j0: int, j1: int) -> tuple[bool, float, float]:
    """(is_zero, sign, log|prod|) of prod_{j=j0}^{j1-1} (a + j).

    Uses log-gamma differences for the all-positive tail and walks the few
    nonpositive factors explicitly, so long products neither overflow nor
    lose the sign.
    """
    if j1 <= j0:
        return (False, 1.0, 0.0)
    if a + j0 > 0.0:
        return (False, 1.0, math.lgamma(a + j1) - math.lgamma(a + j0))
    sign = 1.0
    logmag = 0.0
    j = j0
    while j < j1 and a + j <= 0.0:
        f = a + j
        if f == 0.0:
            return (True, 0.0, float("-inf"))
        sign = -sign
        logmag += math.log(-f)
        j += 1
    if j < j1:
        logmag += math.lgamma(a + j1) - math.lgamma(a + j)
    return (False, sign, logmag)


def pochhammer_ratio(a: float, m: int, n: int) -> float:
    """(a)_m / (a)_n evaluated as the telescoped product prod_{j=n}^{m-1}(a+j).

    The telescoped form is exact for every a: a vanishing factor inside the
    product gives an exact 0.0 (m > n), while a vanishing factor inside the
    reciprocal (m < n) has no finite value and raises IndeterminateError.
    Short spans multiply directly; long ones go through signed log-gamma
    differences and saturate to +-inf past the double range.
    """
    if m < 0 or n < 0:
        raise ValueError("Pochhammer indices must be nonnegative integers")
    if m == n:
        return 1.0
    lo, hi = (n, m) if m > n else (m, n)
    if hi - lo <= 32:
        prod = 1.0
        for j in range(lo, hi):
            prod *= a + j
        if m > n:
            return prod
        if prod == 0.0:
            raise IndeterminateError(
                f"(a)_n vanishes while (a)_m does not at a={a}, m={m}, n={n}")
        return 1.0 / prod
    zero, sign, logmag = _signed_log_product(a, lo, hi)
    if zero:
        if m > n:
            return 0.0
        raise IndeterminateError(
            f"(a)_n vanishes while (a)_m does not at a={a}, m={m}, n={n}")
    if m < n:
        logmag = -logmag
    if logmag > 709.0:
        return sign * math.inf
    return sign * math.exp(logmag)


def _gamma_ratio(num_arg: float, den_arg: float, what: str) -> float:
    """Gamma(num_arg)/Gamma(den_arg) for normalisation prefactors."""
    try:
        num = math.gamma(num_arg)
        den = math.gamma(den_arg)
    except ValueError as exc:
        raise NormalizationPole(f"{what}: gamma pole at Gamma({num_arg})/Gamma({den_arg})") from exc
    return num / den


def _pole_guard(offset: float, cap: int, what: str) -> None:
    """Reject chain offsets that make a denominator (offset + i) vanish for
    some index i in 0..cap; validation rules exclude these for both roots."""
    if offset <= 0.0 and _is_integer(offset) and -round(offset) <= cap:
        raise PoleError(f"{what} denominator offset {offset} vanishes at index {int(-round(offset))}")


def _required_cap(z: float, a_mag: float, b: float, c: float, hard_cap: int) -> int:
    """Chain depth at which Kummer-type terms have decayed ~18 digits.

    Scans the upper envelope |z|^i (a_mag)_i / |(b)_i (c)_i| (all factors
    taken positive, so neither sign cancellation nor polynomial
    termination can hide a growing tail); returns hard_cap + 1 if the
    envelope has not decayed within the hard cap.
    """
    az = abs(z)
    if az == 0.0:
        return 8
    t = 1.0
    peak = 1.0
    i = 0
    while i <= hard_cap:
        ratio = az * (a_mag + i) / abs((b + i) * (c + i))
        t *= ratio
        i += 1
        if t > peak:
            peak = t
            if peak > 1e280:  # keep the scan itself finite
                t *= 1e-280
                peak *= 1e-280
        elif ratio < 0.95 and t <= 1e-18 * peak:
            return i
    return hard_cap + 1


def _nested_orders(
    p: GchParams,
    lam: float,
    x: float,
    t: NestedTruncation,
    a_of: Callable[[int], float],
    order_cap: int,
    min_cap: int = 0,
) -> tuple[list[float], int, bool]:
    """Per-order contributions S_n * eps_tilde^n of the bracketed series.

    Returns (orders, summand count, converged flag).  Order 0 is a plain
    compensated forward sum; higher orders fold their chains right to left
    with the backward recurrence.  The outer loop stops once two
    consecutive orders contribute below rel_tol times the running sum, or
    immediately after order 0 when eps = 0.  The converged flag also drops
    when max_inner is too small for the chains to have decayed.
    """
    h = 0.5 * lam
    gamma = p.gamma
    z = -0.5 * p.mu * x * x
    et = -0.5 * p.eps * x
    a_mag = max(abs(a_of(0)), abs(a_of(1)), abs(a_of(2)))
    need = _required_cap(z, a_mag, 1.0 + h, gamma + h, t.max_inner)
    inner_ok = need <= t.max_inner
    cap = min(t.max_inner, max(20, need, min_cap))

    # order 0: forward compensated summation of (a_0)_i z^i / ((b_0)_i (c_0)_i)
    a0 = a_of(0)
    b0 = 1.0 + h
    c0 = gamma + h
    _pole_guard(b0, cap, "chain 0")
    _pole_guard(c0, cap, "chain 0")
    total = 0.0
    comp = 0.0
    term = 1.0
    nterms = 0
    for i in range(cap + 1):
        s = total + term
        if abs(total) >= abs(term):
            comp += (total - s) + term
        else:
            comp += (term - s) + total
        total = s
        nterms += 1
        term *= z * (a0 + i) / ((b0 + i) * (c0 + i))
        if term == 0.0:
            break
    orders = [total + comp]
    if et == 0.0:
        return orders, nterms, inner_ok

    streak = 0
    converged = False
    et_pow = 1.0
    running = orders[0]
    max_n = min(t.max_order_N, order_cap)
    for n in range(1, max_n + 1):
        et_pow *= et
        # innermost chain n: U(p) = 1 + z r_n(p) U(p+1)
        a = a_of(n)
        b = 1.0 + 0.5 * n + h
        c = gamma + 0.5 * n + h
        _pole_guard(b, cap, f"chain {n}")
        _pole_guard(c, cap, f"chain {n}")
        u = [0.0] * (cap + 2)
        for pp in range(cap, -1, -1):
            u[pp] = 1.0 + z * (a + pp) / ((b + pp) * (c + pp)) * u[pp + 1]
        nterms += cap + 1
        # chains n-1 .. 0: U(p) = w_k(p) U_next(p) + z r_k(p) U(p+1)
        for k in range(n - 1, -1, -1):
            a = a_of(k)
            b = 1.0 + 0.5 * k + h
            c = gamma + 0.5 * k + h
            wnum = h + 0.5 * p.omega + 0.5 * k
            wd1 = 0.5 + h + 0.5 * k
            wd2 = gamma - 0.5 + h + 0.5 * k
            for off, what in ((b, f"chain {k}"), (c, f"chain {k}"), (wd1, f"weight {k}"), (wd2, f"weight {k}")):
                _pole_guard(off, cap, what)
            v = [0.0] * (cap + 2)
            for pp in range(cap, -1, -1):
                v[pp] = (pp + wnum) / ((pp + wd1) * (pp + wd2)) * u[pp] \
                    + z * (a + pp) / ((b + pp) * (c + pp)) * v[pp + 1]
            u = v
            nterms += cap + 1
        contrib = u[0] * et_pow
        orders.append(contrib)
        running += contrib
        if abs(contrib) <= max(t.rel_tol * abs(running), _TINY):
            streak += 1
            if streak >= 2:
                converged = True
                break
        else:
            streak = 0
    return orders, nterms, converged and inner_ok


def _validate_for_lambda(p: GchParams, lam: float) -> None:
    """Kind validation matching the indicial root in use.

    A lam that is neither root is allowed (the engine guards its own
    denominators); only finiteness is enforced then.
    """
    if lam == 0.0:
        validate(p, SolutionKind.FIRST)
    elif abs(lam - (1.0 - p.nu)) <= 1e-12:
        validate(p, SolutionKind.SECOND)
    else:
        for name in ("mu", "eps", "nu", "Omega", "omega"):
            if not math.isfinite(getattr(p, name)):
                raise NonFiniteError(f"parameter {name}={getattr(p, name)!r} is not finite")


def eval_general(
    p: GchParams,
    lam: float,
    c0: float,
    x: float,
    t: NestedTruncation | None = None,
) -> EvalResult:
    """General closed-form series c0 * x^lam * [S_0 + S_1 et + sum_n S_n et^n].

    The per-order decomposition (already scaled by c0 x^lam and the
    eps_tilde powers) is exposed on ``orders``.
    """
    if t is None:
        t = NestedTruncation()
    if p.mu == 0.0:
        raise PoleError("closed-form evaluation requires mu != 0 (Omega/(2 mu) appears)")
    _validate_for_lambda(p, lam)
    xpow = real_power(x, lam)
    half_ratio = p.Omega / (2.0 * p.mu)
    orders, nterms, converged = _nested_orders(
        p, lam, x, t, lambda k: half_ratio + 0.5 * k + 0.5 * lam, t.max_order_N
    )
    scaled = tuple(c0 * xpow * o for o in orders)
    return EvalResult(
        value=c0 * xpow * math.fsum(orders),
        terms_used=nterms,
        last_term_mag=abs(scaled[-1]) if len(scaled) > 1 else 0.0,
        converged=converged,
        terminated_at=detect_termination(p, lam),
        orders=scaled,
    )


def eval_qw_infinite(p: GchParams, x: float, t: NestedTruncation | None = None) -> EvalResult:
    """First-kind infinite series, normalised by Gamma(gamma - Omega/2mu)/Gamma(gamma)."""
    validate(p, SolutionKind.FIRST)
    if p.mu == 0.0:
        raise PoleError("closed-form evaluation requires mu != 0")
    c0 = _gamma_ratio(p.gamma - p.Omega / (2.0 * p.mu), p.gamma, "first-kind prefactor")
    return eval_general(p, 0.0, c0, x, t)


def eval_rw_infinite(p: GchParams, x: float, t: NestedTruncation | None = None) -> EvalResult:
    """Second-kind infinite series with its z^(1-gamma) prefactor.

    The value is z^(1-gamma) * Gamma(1 - Omega/2mu)/Gamma(2-gamma) times
    the bracketed sums at lam = 1 - nu; for x > 0 this equals
    eval_general at that root with c0 = (-mu/2)^(1-gamma) * the same
    gamma ratio.  Requires z^(1-gamma) to be real (z >= 0, or an integer
    exponent).  At nu = 1 the indicial roots coincide and this series is
    no longer independent of the first kind; the logarithmic companion
    solution is out of scope.
    """
    if t is None:
        t = NestedTruncation()
    validate(p, SolutionKind.SECOND)
    if p.mu == 0.0:
        raise PoleError("closed-form evaluation requires mu != 0")
    gamma = p.gamma
    lam = 1.0 - p.nu
    ratio = _gamma_ratio(1.0 - p.Omega / (2.0 * p.mu), 2.0 - gamma, "second-kind prefactor")
    z = -0.5 * p.mu * x * x
    zpow = real_power(z, 1.0 - gamma)
    half_ratio = p.Omega / (2.0 * p.mu)
    orders, nterms, converged = _nested_orders(
        p, lam, x, t, lambda k: half_ratio + 0.5 * k + 0.5 * lam, t.max_order_N
    )
    scaled = tuple(zpow * ratio * o for o in orders)
    return EvalResult(
        value=zpow * ratio * math.fsum(orders),
        terms_used=nterms,
        last_term_mag=abs(scaled[-1]) if len(scaled) > 1 else 0.0,
        converged=converged,
        terminated_at=detect_termination(p, lam),
        orders=scaled,
    )


def betas_from_omega(p: GchParams, lam: float, count: int) -> BetaSequence:
    """Termination indices beta_k = (-Omega/mu - lam - k)/2 for k < count.

    Orders whose index is not a nonnegative integer are marked absent
    (``None``); their chains contribute through the Omega-derived
    infinite-series weights instead.  A single Omega forces 2*beta_k + k
    to be constant, so present entries alternate with absent ones.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if p.mu == 0.0:
        raise PoleError("termination indices require mu != 0")
    base = -p.Omega / p.mu - lam
    betas: list[Optional[int]] = []
    for k in range(count):
        val = 0.5 * (base - k)
        if _is_integer(val, 1e-12 * max(1.0, abs(val))) and round(val) >= 0:
            betas.append(int(round(val)))
        else:
            betas.append(None)
    if betas[0] is None:
        raise NoTermination(
            f"beta_0 = {0.5 * base} is not a nonnegative integer; Omega={p.Omega} does not terminate"
        )
    return BetaSequence(tuple(betas), BetaSource.DERIVED_FROM_OMEGA)


def _check_beta_consistency(p: GchParams, lam: float, seq: BetaSequence) -> None:
    if seq.source is not BetaSource.DERIVED_FROM_OMEGA:
        return
    tol = 1e-9 * max(1.0, abs(p.Omega), abs(p.mu))
    for k, b in enumerate(seq.betas):
        if b is None:
            continue
        if abs(p.Omega + p.mu * (2.0 * b + k + lam)) > tol:
            raise BetaMismatch(
                f"beta_{k}={b} implies Omega={-p.mu * (2.0 * b + k + lam)}, got Omega={p.Omega}"
            )


def _poly_a_of(p: GchParams, lam: float, seq: BetaSequence) -> Callable[[int], float]:
    half_ratio = p.Omega / (2.0 * p.mu)

    def a_of(k: int) -> float:
        if k < len(seq.betas) and seq.betas[k] is not None:
            return -float(seq.betas[k])
        return half_ratio + 0.5 * k + 0.5 * lam

    return a_of


def eval_qw_poly(
    p: GchParams,
    betas: BetaSequence,
    x: float,
    t: NestedTruncation | None = None,
) -> EvalResult:
    """First-kind B-terminated class, normalised by Gamma(gamma+beta_0)/Gamma(gamma).

    Chain k is cut at beta_k by the rising factorial (-beta_k)_i; absent
    orders fall back to the Omega-derived weights.  The outer order is
    capped by both the truncation and the supplied sequence length.
    """
    if t is None:
        t = NestedTruncation()
    validate(p, SolutionKind.FIRST)
    if p.mu == 0.0:
        raise PoleError("closed-form evaluation requires mu != 0")
    _check_beta_consistency(p, 0.0, betas)
    b0 = betas.betas[0]
    first = float(b0) if b0 is not None else -p.Omega / (2.0 * p.mu)
    c0 = _gamma_ratio(p.gamma + first, p.gamma, "polynomial first-kind prefactor")
    orders, nterms, converged = _nested_orders(
        p, 0.0, x, t, _poly_a_of(p, 0.0, betas), len(betas.betas) - 1
    )
    scaled = tuple(c0 * o for o in orders)
    return EvalResult(
        value=c0 * math.fsum(orders),
        terms_used=nterms,
        last_term_mag=abs(scaled[-1]) if len(scaled) > 1 else 0.0,
        converged=converged,
        terminated_at=detect_termination(p, 0.0),
        orders=scaled,
    )


def eval_rw_poly(
    p: GchParams,
    psis: BetaSequence,
    x: float,
    t: NestedTruncation | None = None,
) -> EvalResult:
    """Second-kind B-terminated class with prefactor
    z^(1-gamma) * Gamma(psi_0 + 2 - gamma)/Gamma(2 - gamma)."""
    if t is None:
        t = NestedTruncation()
    validate(p, SolutionKind.SECOND)
    if p.mu == 0.0:
        raise PoleError("closed-form evaluation requires mu != 0")
    gamma = p.gamma
    lam = 1.0 - p.nu
    _check_beta_consistency(p, lam, psis)
    p0 = psis.betas[0]
    first = float(p0) if p0 is not None else -p.Omega / (2.0 * p.mu) - 0.5 * lam
    ratio = _gamma_ratio(first + 2.0 - gamma, 2.0 - gamma, "polynomial second-kind prefactor")
    z = -0.5 * p.mu * x * x
    zpow = real_power(z, 1.0 - gamma)
    orders, nterms, converged = _nested_orders(
        p, lam, x, t, _poly_a_of(p, lam, psis), len(psis.betas) - 1
    )
    scaled = tuple(zpow * ratio * o for o in orders)
    return EvalResult(
        value=zpow * ratio * math.fsum(orders),
        terms_used=nterms,
        last_term_mag=abs(scaled[-1]) if len(scaled) > 1 else 0.0,
        converged=converged,
        terminated_at=detect_termination(p, lam),
        orders=scaled,
    )
