import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hblab import boundary as B
from hblab import exemplars as E
from hblab.errors import HypothesisViolation, NonFiniteSampleError, NonPositiveSupError
from hblab.geometry import SectorSpec, stolz_cross_section
from hblab.potential import disc_poisson_kernel

zero = lambda z: np.zeros(np.shape(z))
RADIAL = 1.0 - 2.0 ** -np.arange(4, 21)


# -- directional limits -----------------------------------------------------

@settings(max_examples=20, deadline=None)
@given(st.floats(-np.pi, np.pi), st.integers(3, 15), st.floats(0.1, 0.5))
def test_zero_field_limit_always_converges(base, k, d0):
    sched = 1.0 - d0 * 0.5 ** np.arange(k)
    est = B.directional_limit(zero, base, "radial", sched)
    assert est.limit == 0 and est.converged
    est = B.directional_limit(zero, base, SectorSpec.stolz(base, 0.4), d0 * 0.5 ** np.arange(k))
    assert est.limit == 0 and est.converged


def test_u0_radial_limit_example():
    est = B.directional_limit(E.u0_field(), 1.0, "radial", RADIAL)
    assert abs(est.limit) < 1e-8 and est.converged
    slope, r2 = est.decay_fit
    assert slope == pytest.approx(1.0, abs=0.02) and r2 > 0.999


def test_u0_stolz_limit_at_one_does_not_vanish():
    u = E.u0_field()
    sched = np.geomspace(0.1, 1e-5, 11)
    est = B.directional_limit(u, 0.0, SectorSpec.stolz(0.0, np.pi / 4), sched)
    # the sup over each cross-section grows like 1/d
    closed = [np.max(np.abs(u(stolz_cross_section(0.0, np.pi / 4, d)))) for d in sched]
    assert np.allclose(est.values, closed)
    assert not est.converged
    assert min(est.values) > 1.0


def test_directional_limit_validation():
    with pytest.raises(ValueError):
        B.directional_limit(zero, 0.0, "radial", [0.5, 0.9])
    with pytest.raises(ValueError):
        B.directional_limit(zero, 0.0, "radial", [0.9, 0.5, 0.99])
    with pytest.raises(ValueError):
        B.directional_limit(zero, 0.0, "diagonal", [0.5, 0.6, 0.7])
    with pytest.raises(NonFiniteSampleError):
        B.directional_limit(lambda z: np.full(np.shape(z), np.nan), 0.0, "radial", [0.5, 0.6, 0.7])


def test_vertical_limit():
    est = B.directional_limit(lambda z: np.imag(z) ** 2 + 0.25, 0.3, "vertical",
                              np.geomspace(0.1, 1e-6, 11))
    assert est.limit == pytest.approx(0.25, abs=1e-10) and est.converged


# -- sup profiles -------------------------------------------------------------

def test_sup_profile_examples():
    assert B.sup_profile(lambda z: np.full(np.shape(z), 2.5), "circle", 0.5, 64) == 2.5
    assert B.sup_profile(np.real, "hline", 0.5, 64, absolute=False) == pytest.approx(1.0)
    u = E.u0_field()
    t = 2 * np.pi * np.arange(10 ** 5) / 10 ** 5
    dense = np.max(np.abs(u(0.9 * np.exp(1j * t))))
    assert B.sup_profile(u, "circle", 0.9, 256) == pytest.approx(dense, rel=1e-3)
    with pytest.raises(ValueError):
        B.sup_profile(u, "circle", 0.9, 32)


@pytest.mark.parametrize("r", [0.5, 0.9, 0.99])
def test_sup_profile_refinement_monotone(r):
    u = E.u0_field()
    coarse = B.sup_profile(u, "circle", r, 128)
    fine = B.sup_profile(u, "circle", r, 256)
    assert fine >= coarse * (1 - 1e-9)


# -- growth fits --------------------------------------------------------------

def test_growth_fit_constant_and_u0():
    sched = [0.9, 0.95, 0.98, 0.99, 0.995, 0.998, 0.999]
    one = B.growth_fit(lambda z: np.ones(np.shape(z)), sched)
    assert one.exponent == pytest.approx(0.0, abs=0.01)
    assert B.growth_fit(E.u0_field(), sched).exponent == pytest.approx(2.0, abs=0.05)


@pytest.mark.parametrize("m", [0.5, 1.0, 2.0, 3.0])
def test_growth_fit_recovers_planted_exponent(m):
    fit = B.growth_fit(E.power_field(m), 1 - np.geomspace(0.1, 1e-3, 8))
    assert fit.exponent == pytest.approx(m, rel=0.02)
    assert fit.r2 > 0.999


def test_growth_fit_hline_and_exp_power():
    sched = np.geomspace(0.1, 1e-3, 8)
    fit = B.growth_fit(lambda z: np.imag(z) ** -1.5, sched, domain="hline")
    assert fit.exponent == pytest.approx(1.5, rel=0.02)
    kappa = 1.3
    f = lambda z: np.exp(0.7 * (1 - np.abs(z)) ** -kappa)
    fit = B.growth_fit(f, 1 - np.geomspace(0.2, 0.02, 8), kind="exp_power")
    assert fit.exponent == pytest.approx(kappa, rel=0.05)
    fixed = B.growth_fit(f, 1 - np.geomspace(0.2, 0.02, 8), kind="exp_power", inner_exponent=kappa)
    assert fixed.coefficient == pytest.approx(0.7, rel=1e-6)


def test_growth_fit_errors():
    with pytest.raises(NonPositiveSupError):
        B.growth_fit(zero, [0.9, 0.95, 0.98, 0.99, 0.995, 0.998])
    with pytest.raises(ValueError):
        B.growth_fit(zero, [0.9, 0.95, 0.98])


# -- mean value and transfer checks -----------------------------------------

def test_mean_value_examples():
    sq = lambda z: np.abs(z) ** 2
    assert B.mean_value_check(sq, 1.0, 0.0, 1.0).max_ratio == 0
    assert B.mean_value_check(sq, 0.5, 0.0, 1.0).max_ratio == 0
    with pytest.raises(HypothesisViolation):
        B.mean_value_check(np.real, 1.0, 0.0, 0.5)


def test_mean_value_ratio_stable_under_refinement():
    u = lambda z: np.abs(np.real(1 / z))
    rng = np.random.default_rng(4)
    rad = rng.uniform(0.3, 0.9, 100)
    z = rad * np.exp(1j * rng.uniform(0, 2 * np.pi, 100))
    r = 0.2 * rad
    a = B.mean_value_check(u, 0.5, z, r, n=64).max_ratio
    b = B.mean_value_check(u, 0.5, z, r, n=128).max_ratio
    assert np.isfinite(a) and abs(a - b) <= 0.05 * b


def test_domar_zero_field():
    rep = B.domar_transfer_check(zero, 1.0, 1.0)
    assert rep.c_prime == 0 and rep.passed


def test_domar_hypothesis_failure_detected():
    # |z|^-2 is not bounded by |Im z|^-1 near the real axis
    with pytest.raises(HypothesisViolation) as info:
        B.domar_transfer_check(lambda z: np.abs(z) ** -2, 1.0, 1.0)
    w = info.value.witness
    assert abs(w) ** -2 > 1.0 / abs(w.imag)


# -- L1 profiles --------------------------------------------------------------

def test_l1_profile_examples():
    one = B.l1_bound_profile(lambda z: np.ones(np.shape(z)), "circle", [0.5, 0.9])
    assert one.sup == pytest.approx(2 * np.pi)
    kern = lambda z: disc_poisson_kernel(np.abs(z), np.angle(z))
    prof = B.l1_bound_profile(kern, "circle", [0.5, 0.9, 0.99, 0.999])
    assert np.allclose(prof.values, np.pi, rtol=1e-9)
    assert not prof.unbounded_trend and not prof.divergent
    inv = B.l1_bound_profile(lambda z: 1 / np.imag(z), "hline", np.geomspace(0.5, 1e-3, 8))
    assert np.allclose(inv.values, 2 / np.geomspace(0.5, 1e-3, 8), rtol=1e-9)
    assert inv.unbounded_trend and inv.sup == pytest.approx(2e3)


def test_l1_profile_refinement():
    g = lambda z: 1 + np.real(z) ** 2
    a = B.l1_bound_profile(g, "hline", [0.5], n=128).values[0]
    b = B.l1_bound_profile(g, "hline", [0.5], n=256).values[0]
    assert abs(a - b) <= 1e-3 * abs(b)
    with pytest.raises(HypothesisViolation):
        B.l1_bound_profile(np.real, "circle", [0.5])


def test_tail_slope():
    x = np.linspace(0, 1, 10)
    slope, r2 = B.tail_slope(x, 3 * x + 1)
    assert slope == pytest.approx(3.0) and r2 == pytest.approx(1.0)
