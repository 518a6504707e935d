"""Certified double-series summation and its one-variable relative."""

import cmath
import math

import numpy as np
import pytest

from ml2v.core import validate_params
from ml2v.errors import DomainError
from ml2v.oracle import oracle_eval
from ml2v.series import SeriesBudget, eval_double_series, eval_ml_one

P111 = validate_params(1, 1, 1)


def closed_form(x, y):
    # alpha = beta = mu = 1 reduces E to (x e^x - y e^y)/(x - y)
    if x == y:
        return (1 + x) * cmath.exp(x)
    return (x * cmath.exp(x) - y * cmath.exp(y)) / (x - y)


def test_budget_validation():
    SeriesBudget()
    with pytest.raises(DomainError):
        SeriesBudget(tol=0.0)
    with pytest.raises(DomainError):
        SeriesBudget(tol=math.inf)
    with pytest.raises(DomainError):
        SeriesBudget(max_terms=3)


def test_closed_form_anchor():
    ev = eval_double_series(2.0, 1.0, P111)
    ref = 2 * math.e**2 - math.e
    assert abs(ev.value - ref) / ref <= 1e-12
    assert abs(ev.value - ref) <= ev.est_error
    assert ev.method == "series"


def test_closed_form_random_points():
    rng = np.random.default_rng(19)
    for _ in range(25):
        x = complex(rng.uniform(-4, 4), rng.uniform(-2, 2))
        y = complex(rng.uniform(-4, 4), rng.uniform(-2, 2))
        ev = eval_double_series(x, y, P111)
        ref = closed_form(x, y)
        assert abs(ev.value - ref) <= ev.est_error + 1e-12 * max(1.0, abs(ref))


def test_equal_arguments_limit():
    ev = eval_double_series(1.5, 1.5, P111)
    ref = 2.5 * math.exp(1.5)
    assert abs(ev.value - ref) <= 1e-12 * ref


def test_swap_symmetry():
    rng = np.random.default_rng(23)
    for _ in range(15):
        a, b = rng.uniform(0.4, 1.3), rng.uniform(0.4, 1.3)
        mu = complex(rng.uniform(-0.5, 2.0), rng.uniform(-0.5, 0.5))
        x = complex(rng.uniform(-3, 3), rng.uniform(-1, 1))
        y = complex(rng.uniform(-3, 3), rng.uniform(-1, 1))
        e1 = eval_double_series(x, y, validate_params(a, b, mu))
        e2 = eval_double_series(y, x, validate_params(b, a, mu))
        assert abs(e1.value - e2.value) <= e1.est_error + e2.est_error + 1e-13


def test_shift_recurrence():
    # E(mu) = 1/Gamma(mu) + x E(mu+a) + y E(mu+b) - x y E(mu+a+b)
    from ml2v.gamma import recip_gamma

    rng = np.random.default_rng(31)
    for _ in range(15):
        a, b = rng.uniform(0.4, 1.4), rng.uniform(0.4, 1.4)
        if a * b >= 2:
            continue
        mu = complex(rng.uniform(0.2, 2.0), rng.uniform(-0.5, 0.5))
        x = complex(rng.uniform(-2.5, 2.5), rng.uniform(-1, 1))
        y = complex(rng.uniform(-2.5, 2.5), rng.uniform(-1, 1))
        evs = [
            eval_double_series(x, y, validate_params(a, b, m))
            for m in (mu, mu + a, mu + b, mu + a + b)
        ]
        lhs = evs[0].value
        rhs = recip_gamma(mu) + x * evs[1].value + y * evs[2].value - x * y * evs[3].value
        slack = 4 * sum(e.est_error for e in evs) + 1e-12 * max(1.0, abs(lhs))
        assert abs(lhs - rhs) <= slack


def test_negative_mu_pole_guard():
    # early reciprocal-gamma zeros must not trigger a premature stop
    pp = validate_params(0.7, 0.7, -2.5)
    ev = eval_double_series(3.0, 2.0, pp)
    ref = oracle_eval(3.0, 2.0, pp, digits=30).as_complex()
    assert abs(ev.value - ref) <= max(ev.est_error, 1e-12 * abs(ref))


def test_all_zero_value():
    ev = eval_double_series(0.0, 0.0, validate_params(1, 1, 0))
    assert ev.value == 0
    assert ev.est_error < 1e-15


def test_budget_exhaustion_is_soft():
    ev = eval_double_series(30.0, 30.0, validate_params(0.5, 0.5, 1), SeriesBudget(max_terms=50))
    assert math.isinf(ev.est_error)


def test_cancellation_error_estimate_honest():
    pp = validate_params(0.5, 0.5, 1)
    for t in (6.0, 10.0):
        ev = eval_double_series(-t, -t, pp)
        ref = oracle_eval(-t, -t, pp, digits=30).as_complex()
        assert abs(ev.value - ref) <= ev.est_error


def test_underflow_tail_not_dropped():
    # regression: reciprocal-gamma underflow must not fake series convergence
    pp = validate_params(0.5, 0.5, 1)
    ev = eval_double_series(-12.0, -12.0, pp)
    ref = oracle_eval(-12.0, -12.0, pp, digits=30).as_complex()
    assert abs(ev.value - ref) <= ev.est_error


def test_large_positive_arguments_accurate():
    pp = validate_params(0.5, 0.5, 1)
    ev = eval_double_series(12.0, 12.0, pp)
    ref = oracle_eval(12.0, 12.0, pp, digits=30).as_complex()
    assert abs(ev.value - ref) <= 1e-12 * abs(ref)


def test_one_variable_exponential():
    ev = eval_ml_one(1.7, 1.0, 1.0)
    assert abs(ev.value - math.exp(1.7)) <= max(ev.est_error, 1e-12)
    ev = eval_ml_one(4.0, 2.0, 1.0)
    assert abs(ev.value - math.cosh(2.0)) <= max(ev.est_error, 1e-12)


def test_one_variable_shifted_kappa():
    # kappa = -3: first four coefficients vanish, E = z^4 e^z
    z = 0.8 + 0.3j
    ev = eval_ml_one(z, 1.0, -3.0)
    ref = z**4 * cmath.exp(z)
    assert abs(ev.value - ref) <= max(ev.est_error, 1e-12)


def test_one_variable_validation():
    with pytest.raises(DomainError):
        eval_ml_one(1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        eval_ml_one(1.0, -0.5, 1.0)
