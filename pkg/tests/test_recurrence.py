import math
import random

import pytest

from gch.errors import DomainError, PoleError
from gch.params import GchParams
from gch.recurrence import Truncation, coefficients, detect_termination, real_power, sum_series
from gch.verify import kummer_oracle, ode_residual

TIGHT = Truncation(max_terms=500, rel_tol=1e-14)


def test_x_zero_returns_c0():
    p = GchParams(-1.3, 0.7, 0.9, 0.4, 1.1)
    res = sum_series(p, 0.0, 5.0, 0.0)
    assert res.value == 5.0
    assert res.converged


def test_eps_zero_series_is_even():
    p = GchParams(2.0, 0.0, 0.8, 1.3, 0.5)
    a = sum_series(p, 0.0, 1.0, 0.7, TIGHT)
    b = sum_series(p, 0.0, 1.0, -0.7, TIGHT)
    assert a.value == b.value


def test_golden_point():
    # frozen from a max_terms=500, rel_tol=1e-14 self-run; 20-digit
    # high-precision recurrence agrees (0.86031086346992481151)
    p = GchParams(2.0, 1.0, 1.5, 3.0, 0.25)
    res = sum_series(p, 0.0, 1.0, 0.4, TIGHT)
    assert res.value == pytest.approx(0.8603108634699248, rel=1e-13)
    assert res.converged
    # the same coefficients nearly annihilate the differential operator
    rep = ode_residual(coefficients(p, 0.0, 1.0, 60), 0.0, p, 0.4)
    assert rep.relative < 1e-14


def test_linearity_in_c0():
    rng = random.Random(3)
    for _ in range(20):
        p = GchParams(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.3, 2.5),
                      rng.uniform(-2, 2), rng.uniform(-1, 1))
        x = rng.uniform(0.1, 1.0)
        a, b = rng.uniform(-2, 2), rng.uniform(-2, 2)
        va = sum_series(p, 0.0, a, x, TIGHT).value
        vb = sum_series(p, 0.0, b, x, TIGHT).value
        vab = sum_series(p, 0.0, a + b, x, TIGHT).value
        assert vab == pytest.approx(va + vb, rel=1e-13, abs=1e-14)


def test_detect_termination_examples():
    assert detect_termination(GchParams(1.0, 0, 1, -3.0, 0), 0.0) == 4
    assert detect_termination(GchParams(1.0, 0, 1, 2.5, 0), 0.0) is None
    # eigenvalue construction Omega = -mu(2*beta0 + lam) at beta0 = 3
    mu = -2.0
    p = GchParams(mu, 0, 1, -(mu * (2 * 3 + 0.0)), 0)
    assert detect_termination(p, 0.0) == 7


def test_detect_termination_requires_mu():
    with pytest.raises(PoleError):
        detect_termination(GchParams(0.0, 1, 1, 1, 1), 0.0)


def test_termination_kills_coefficient_b():
    rng = random.Random(17)
    for _ in range(40):
        mu = rng.choice([-1, 1]) * rng.uniform(0.1, 4.0)
        lam = rng.uniform(-1.5, 1.5)
        b0 = rng.randint(0, 10)
        from gch.params import coefficient_B
        p = GchParams(mu, 0.4, 0.9, -(mu * (2 * b0 + lam)), 0.2)
        nstar = 2 * b0 + 1
        assert detect_termination(p, lam) == nstar
        assert abs(coefficient_B(nstar, lam, p)) <= 1e-15 * abs(mu)


def test_eps_zero_kummer_reduction():
    # with eps = 0 the series collapses to the confluent-hypergeometric sum
    # in z = -mu x^2/2; checked against the independent oracle summation
    rng = random.Random(23)
    for _ in range(25):
        mu = rng.choice([-1, 1]) * rng.uniform(0.2, 3.0)
        nu = rng.uniform(0.1, 2.5)
        Om = rng.uniform(-3, 3)
        p = GchParams(mu, 0.0, nu, Om, 0.77)
        x = rng.uniform(0.05, math.sqrt(10.0 / abs(mu)))
        z = -0.5 * mu * x * x
        assert abs(z) <= 5.0
        lhs = sum_series(p, 0.0, 1.0, x, TIGHT).value
        rhs = kummer_oracle(Om / (2.0 * mu), p.gamma, z)
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_domain_error_negative_base():
    p = GchParams(1.0, 1.0, 0.5, 1.0, 1.0)
    with pytest.raises(DomainError):
        sum_series(p, 0.5, 1.0, -0.3)


def test_integer_lambda_negative_x_ok():
    p = GchParams(1.0, 1.0, -0.5, 1.0, 1.0)  # second kind lam = 1.5? use explicit integer lam
    res = sum_series(p, 2.0, 1.0, -0.4, TIGHT)
    assert math.isfinite(res.value)


def test_real_power():
    assert real_power(-2.0, 3.0) == -8.0
    assert real_power(0.0, 2.5) == 0.0
    assert real_power(4.0, 0.5) == 2.0
    with pytest.raises(DomainError):
        real_power(0.0, -1.0)
    with pytest.raises(DomainError):
        real_power(-1.0, 0.5)


def test_cap_hit_reports_not_converged():
    p = GchParams(-2.0, 1.5, 1.0, 0.7, 0.3)
    res = sum_series(p, 0.0, 1.0, 3.0, Truncation(max_terms=8, rel_tol=1e-12))
    assert not res.converged
    assert res.terms_used == 8
    assert math.isfinite(res.value)


def test_converged_invariant():
    p = GchParams(1.0, -0.6, 1.2, -0.8, 0.5)
    t = Truncation()
    res = sum_series(p, 0.0, 1.0, 0.9, t)
    assert res.converged
    assert res.value == 0.0 or res.last_term_mag <= max(t.rel_tol * abs(res.value), t.abs_floor)


def test_truncation_validation():
    with pytest.raises(ValueError):
        Truncation(max_terms=4)
    with pytest.raises(ValueError):
        Truncation(rel_tol=2.0)
    with pytest.raises(ValueError):
        Truncation(abs_floor=0.0)


def test_coefficients_against_recurrence():
    p = GchParams(1.5, -0.4, 0.9, 0.6, 1.3)
    from gch.params import coefficient_A, coefficient_B
    cs = coefficients(p, 0.0, 2.0, 8)
    assert cs[0] == 2.0
    assert cs[1] == coefficient_A(0, 0.0, p) * 2.0
    for n in range(1, 7):
        assert cs[n + 1] == pytest.approx(
            coefficient_A(n, 0.0, p) * cs[n] + coefficient_B(n, 0.0, p) * cs[n - 1], rel=1e-15)
