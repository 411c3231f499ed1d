import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eta_lab import (
    DEFAULT_CONFIG,
    DomainError,
    EvalConfig,
    InvalidArgumentError,
    Method,
    NonConvergenceError,
    SingularPointError,
    StripPoint,
    eta,
    eta_derivative,
    eta_many,
    eta_partial_sum,
    eta_reflected,
    functional_equation_residual,
    zeta_from_eta,
)
from eta_lab.eta import (
    coordinate_series,
    difference_series,
    functional_equation_sides,
    x_p,
    x_q,
    y_p,
    y_q,
)

from conftest import ORACLE_ZEROS

TOL = DEFAULT_CONFIG.tolerance
T1 = ORACLE_ZEROS[0]

strip_sigma = st.floats(0.0, 1.0)
strip_t = st.floats(-30.0, 30.0)


def mp_eta(s: complex) -> complex:
    with mpmath.workdps(30):
        return complex(mpmath.altzeta(mpmath.mpc(s.real, s.imag)))


# --- configuration and types ----------------------------------------------

@pytest.mark.parametrize("kwargs", [{"tolerance": 0.0}, {"tolerance": -1e-3}, {"max_terms": 0},
                                    {"derivative_order_cap": 0}])
def test_eval_config_rejects_invalid(kwargs):
    with pytest.raises(InvalidArgumentError):
        EvalConfig(**kwargs)


def test_strip_point():
    p = StripPoint(0.25, 2.0)
    assert p.s == complex(0.25, 2.0)
    assert p.reflected().s == complex(0.75, -2.0)
    assert p.in_closed_strip()
    assert not StripPoint(1.5, 0.0).in_closed_strip()


# --- partial sums -----------------------------------------------------------

def test_partial_sum_two_terms():
    assert eta_partial_sum(1, 2) == pytest.approx(0.5, abs=1e-16)


def test_partial_sum_four_terms():
    assert abs(eta_partial_sum(1, 4) - (1 - 1 / 2 + 1 / 3 - 1 / 4)) < 1e-15
    assert abs(eta_partial_sum(1, 4).imag) == 0.0


def test_partial_sum_zero_terms_is_invalid():
    with pytest.raises(InvalidArgumentError):
        eta_partial_sum(1, 0)


def test_partial_sum_long_agrees_with_accelerated_value():
    # With N terms the error of an alternating sum is bounded by the first omitted
    # term for real sigma; for complex s the terms rotate, so allow the modulus bound.
    s = complex(0.5, 14.1)
    n = 10**5
    accelerated = eta(s).value
    assert abs(eta_partial_sum(s, n) - accelerated) <= (n + 1) ** -0.5


@given(st.floats(0.05, 3.0), st.integers(1, 2000))
def test_alternating_truncation_bound(sigma, n):
    limit = mp_eta(complex(sigma, 0.0)).real
    assert abs(eta_partial_sum(sigma, n) - limit) <= (n + 1) ** -sigma + 1e-13


# --- eta values -------------------------------------------------------------

def test_eta_one_is_ln2():
    ev = eta(1)
    assert abs(ev.value - math.log(2.0)) < 1e-10
    assert ev.method is Method.AITKEN
    assert ev.terms_used > 0 and ev.error_estimate >= 0


def test_eta_two():
    assert abs(eta(2).value - math.pi**2 / 12) < 1e-10


def test_eta_zero_uses_euler_transform():
    ev = eta(0)
    assert abs(ev.value - 0.5) < 1e-8
    assert ev.method is Method.EULER


@pytest.mark.parametrize(
    "s, expected",
    [
        # frozen mpmath.altzeta values
        (complex(0.3, 7.0), complex(1.4940764529582337509, -1.2961704442270741475)),
        (complex(0.7, 7.0), complex(1.2834240234642410620, -0.95312449580429846456)),
        (complex(0.25, 2.0), complex(0.71138536211644948494, 0.42602478667710619270)),
        (complex(0.0, 30.0), complex(-1.0683345863538877467, -3.3977755979511448960)),
        (complex(0.0, 1.0), complex(0.53259318176309616657, 0.22938485772852589246)),
        (complex(0.5, 0.0), complex(0.60489864342163037025, 0.0)),
    ],
)
def test_eta_matches_frozen_oracle(s, expected):
    assert abs(eta(s).value - expected) < TOL


@given(strip_sigma, strip_t)
def test_eta_matches_mpmath(sigma, t):
    s = complex(sigma, t)
    assert abs(eta(s).value - mp_eta(s)) < TOL


def test_eta_rejects_negative_sigma():
    with pytest.raises(DomainError):
        eta(complex(-1.0, 0.0))


def test_forced_aitken_on_boundary_is_a_domain_error():
    with pytest.raises(DomainError):
        eta(complex(0.0, 3.0), method=Method.AITKEN)


def test_nonconvergence_carries_best_value():
    with pytest.raises(NonConvergenceError) as info:
        eta(complex(0.01, 20.0), EvalConfig(tolerance=1e-14, max_terms=64))
    err = info.value
    assert err.best_value is not None and err.terms_used <= 64 and err.error_estimate > 0


def test_raw_method_rigorous_bound_on_real_axis():
    ev = eta(2.0, EvalConfig(tolerance=1e-8), method=Method.RAW)
    assert ev.method is Method.RAW
    assert abs(ev.value - math.pi**2 / 12) <= ev.error_estimate <= 1e-8


def test_raw_method_needs_too_many_terms():
    with pytest.raises(NonConvergenceError):
        eta(0.5, EvalConfig(tolerance=1e-10, max_terms=10**6), method=Method.RAW)


@given(strip_sigma, strip_t)
def test_conjugate_symmetry(sigma, t):
    s = complex(sigma, t)
    assert abs(eta(s.conjugate()).value - eta(s).value.conjugate()) <= 2 * TOL


def test_method_agreement_on_grid():
    sig = np.linspace(0.2, 1.0, 5)
    ts = np.linspace(0.0, 30.0, 10)
    for a in sig:
        for b in ts:
            s = complex(a, b)
            ait = eta(s, method=Method.AITKEN)
            eul = eta(s, method=Method.EULER)
            assert abs(ait.value - eul.value) <= ait.error_estimate + eul.error_estimate


@given(st.lists(st.tuples(strip_sigma, strip_t), min_size=1, max_size=8))
def test_batch_is_bit_identical_to_scalar(points):
    s = np.array([complex(a, b) for a, b in points])
    batch = eta_many(s)
    for k, z in enumerate(s):
        assert batch[k] == eta(z).value


# --- reflected values and components ---------------------------------------

def test_reflected_matches_eta_of_one_minus_s():
    assert abs(eta_reflected(complex(0.25, 2.0)).value - eta(complex(0.75, -2.0)).value) <= 2 * TOL


def test_reflected_vanishes_at_first_zero():
    assert abs(eta_reflected(complex(0.5, 14.134725)).value) < 1e-6


def test_reflected_rejects_sigma_above_one():
    with pytest.raises(DomainError):
        eta_reflected(1.5)


def test_component_identity_at_sample_point():
    assert abs(x_q(0.3, 7.0) - x_p(0.7, 7.0)) <= 2 * TOL
    assert abs(y_q(0.3, 7.0) + y_p(0.7, 7.0)) <= 2 * TOL


def test_reflection_identities_grid():
    sig, ts = np.meshgrid(np.linspace(0, 1, 20), np.linspace(0, 30, 20), indexing="ij")
    p = eta_many((1 - sig) + 1j * ts)
    q = coordinate_series(sig, ts, reflected=True)
    assert np.max(np.abs(p.real - q.real)) <= 4 * TOL
    assert np.max(np.abs(p.imag + q.imag)) <= 4 * TOL


@given(strip_sigma, st.floats(0.0, 30.0))
def test_coordinate_series_matches_complex_route(sigma, t):
    direct = coordinate_series(sigma, t)
    assert abs(direct - eta(complex(sigma, t)).value) <= 2 * TOL
    assert x_p(sigma, t) == direct.real and y_p(sigma, t) == direct.imag
    assert y_q(sigma, t) == coordinate_series(sigma, t, reflected=True).imag


def test_difference_series_matches_eta_difference():
    a1, a2, t = 0.2, 0.8, 14.134725
    diff = difference_series(a1, a2, t)
    assert abs(diff - (eta(complex(a1, t)).value - eta(complex(a2, t)).value)) < 1e-9


def test_difference_series_of_equal_exponents_vanishes():
    assert difference_series(0.3, 0.3, 5.0) == 0


# --- derivative -------------------------------------------------------------

def test_derivative_at_one():
    # eta'(1) = gamma ln 2 - (ln 2)^2 / 2
    exact = 0.57721566490153286061 * math.log(2) - math.log(2) ** 2 / 2
    assert abs(eta_derivative(1) - exact) < 1e-10
    assert eta_derivative(1) == pytest.approx(0.159868, abs=1e-6)


def test_derivative_at_two_matches_finite_difference():
    h = 1e-5
    fd = (eta(2 + h).value - eta(2 - h).value) / (2 * h)
    assert abs(eta_derivative(2) - fd) < 1e-7


def test_second_derivative_at_one():
    # frozen mpmath.diff(altzeta, 1, 2)
    assert abs(eta_derivative(1, order=2) - (-0.065372592558898599146)) < 1e-9


def test_derivative_at_two_frozen():
    # frozen mpmath.diff(altzeta, 2)
    assert abs(eta_derivative(2) - 0.10131657816350450189) < 1e-10


def test_derivative_order_outside_cap():
    with pytest.raises(InvalidArgumentError):
        eta_derivative(1, order=5)
    with pytest.raises(InvalidArgumentError):
        eta_derivative(1, order=0)


def test_derivative_needs_positive_sigma():
    with pytest.raises(DomainError):
        eta_derivative(complex(0.0, 1.0))


@given(st.floats(0.05, 1.0), strip_t)
def test_derivative_conjugate_symmetry(sigma, t):
    s = complex(sigma, t)
    d = eta_derivative(s)
    assert abs(eta_derivative(s.conjugate()) - d.conjugate()) <= 2 * TOL * max(1.0, abs(d))


@given(st.floats(0.1, 0.9), st.floats(0.0, 30.0))
def test_derivative_matches_mpmath(sigma, t):
    s = complex(sigma, t)
    with mpmath.workdps(30):
        ref = complex(mpmath.diff(mpmath.altzeta, mpmath.mpc(sigma, t)))
    assert abs(eta_derivative(s) - ref) < 1e-8


def test_derivative_finite_difference_order():
    rng = np.random.default_rng(20240607)
    sig = rng.uniform(0.1, 0.9, 10)
    ts = rng.uniform(1.0, 29.0, 10)
    s = sig + 1j * ts
    exact = np.array([eta_derivative(z) for z in s])

    def discrepancy(h):
        vals = eta_many(np.concatenate([s + h, s - h]), lockstep=True).reshape(2, -1)
        return np.abs(exact - (vals[0] - vals[1]) / (2 * h))

    ratio = discrepancy(1e-4) / discrepancy(5e-5)
    assert np.all((ratio >= 3.5) & (ratio <= 4.5)), ratio


def test_cauchy_riemann_with_finite_differences():
    h = 1e-4
    for sigma in np.linspace(0.1, 0.9, 5):
        for t in (1.0, 13.0, 27.0):
            s = complex(sigma, t)
            vals = eta_many(np.array([s + h, s - h, s + 1j * h, s - 1j * h]), lockstep=True)
            d_sigma = (vals[0] - vals[1]) / (2 * h)
            d_t = (vals[2] - vals[3]) / (2 * h)
            assert abs(d_sigma.real - d_t.imag) < 1e-6
            assert abs(d_t.real + d_sigma.imag) < 1e-6
            # d x / d sigma = Re eta'(s)
            assert abs(d_sigma.real - eta_derivative(s).real) < 1e-6


# --- functional equation and zeta -------------------------------------------

def test_functional_equation_on_real_centre():
    assert functional_equation_residual(0.5) <= 2 * TOL


def test_functional_equation_generic_point():
    assert functional_equation_residual(complex(0.3, 5.0)) < 1e-8


def test_functional_equation_at_first_zero():
    s = complex(0.5, 14.134725)
    left, right = functional_equation_sides(s)
    assert functional_equation_residual(s) < 1e-8
    assert abs(left) < 1e-5 and abs(right) < 1e-5


@given(st.floats(0.01, 0.99), st.floats(-30, 30))
def test_functional_equation_property(sigma, t):
    assert functional_equation_residual(complex(sigma, t)) < 1e-8


@pytest.mark.parametrize("sigma", [0.0, 1.0, -0.2, 1.3])
def test_functional_equation_outside_open_strip(sigma):
    with pytest.raises(DomainError):
        functional_equation_residual(complex(sigma, 3.0))


def test_zeta_two():
    assert abs(zeta_from_eta(2) - math.pi**2 / 6) < 1e-9


def test_zeta_half():
    # frozen mpmath.zeta(0.5)
    assert abs(zeta_from_eta(0.5) - (-1.4603545088095868129)) < 1e-9


@pytest.mark.parametrize("k", [1, -1, 2])
def test_zeta_singular_at_factor_zeros(k):
    with pytest.raises(SingularPointError):
        zeta_from_eta(complex(1.0, 2 * math.pi * k / math.log(2)))


def test_zeta_pole():
    with pytest.raises(SingularPointError):
        zeta_from_eta(1)


@given(st.floats(0.05, 0.95), st.floats(0.5, 30))
def test_zeta_matches_mpmath(sigma, t):
    with mpmath.workdps(30):
        ref = complex(mpmath.zeta(mpmath.mpc(sigma, t)))
    z = zeta_from_eta(complex(sigma, t))
    assert cmath.isclose(z, ref, rel_tol=1e-8, abs_tol=1e-9)
