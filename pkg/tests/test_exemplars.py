import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hblab import exemplars as E
from hblab.errors import DomainError
from hblab.fields import HarmonicField


# -- u0 ---------------------------------------------------------------------

def test_u0_examples():
    assert E.u0_eval(0.5, np.pi / 2) == pytest.approx(-0.24, abs=1e-15)
    assert E.u0_eval(0.5, np.pi / 2, "series", N=40) == pytest.approx(-0.24, abs=1e-9)
    r = np.linspace(0, 0.99, 7)
    assert np.all(E.u0_eval(r, 0.0) == 0)
    assert np.all(E.u0_eval(r, 0.0, "series") == 0)
    with pytest.raises(DomainError):
        E.u0_eval(1.0, 0.3)
    with pytest.raises(ValueError):
        E.u0_eval(0.5, 0.3, "series", N=8)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(-np.pi, np.pi))
def test_u0_is_harmonic(r, phi):
    z = r * np.exp(1j * phi)
    u = E.u0_field()
    h = 1e-3 * min(r, 1 - r)
    lap = u(z + h) + u(z - h) + u(z + 1j * h) + u(z - 1j * h) - 4 * u(z)
    scale = max(abs(u(z + s)) for s in (0, h, -h, 1j * h, -1j * h))
    assert abs(lap) <= 1e-4 * max(scale, 1e-300)


def test_u0_is_angular_derivative_of_kernel():
    from hblab.potential import disc_poisson_kernel
    r, phi, h = 0.8, 0.4, 1e-6
    fd = (disc_poisson_kernel(r, phi + h) - disc_poisson_kernel(r, phi - h)) / (2 * h)
    assert E.u0_eval(r, phi) == pytest.approx(fd, rel=1e-7)


def test_power_field_and_registry():
    f = E.resolve("power", m=3.0)
    assert f(0.5) == pytest.approx(8.0)
    names = E.list_exemplars()
    for key in ("u0", "wolf", "zero", "one", "catalog:rational_pole", "rect:height",
                "sector:inv_sqrt"):
        assert key in names
    with pytest.raises(KeyError):
        E.resolve("u9")


# -- catalog ----------------------------------------------------------------

def test_catalog_examples():
    assert E.catalog_eval("rational_pole", 0.0) == pytest.approx(-0.5)
    assert E.catalog_eval("boundary_jump", 0.1j) == 1
    assert E.catalog_eval("boundary_jump", -0.1j) == 0
    with pytest.raises(DomainError):
        E.catalog_eval("boundary_jump", 0.3)
    with pytest.raises(DomainError):
        E.catalog_eval("principal_log_cut_inside", -0.5)
    assert np.isfinite(E.catalog_eval("principal_log", -0.5))


@settings(max_examples=50, deadline=None)
@given(st.floats(-1, 1), st.floats(1e-6, 0.5))
def test_rational_pole_jump(alpha, beta):
    z = alpha + 1j * beta
    jump = E.catalog_eval("rational_pole", z) - E.catalog_eval("rational_pole", np.conj(z))
    assert jump == pytest.approx(2j * np.imag(1 / (z - 2)), abs=1e-14)
    assert abs(jump) <= 2 * beta


def test_catalog_fields_metadata():
    f = E.resolve("catalog:rational_pole")
    assert isinstance(f, HarmonicField)
    assert f.claimed_regularity == "analytic_off_reals"
    assert f.closed_form(0.5) == pytest.approx(1 / (0.5 - 2))


# -- construction parameters ------------------------------------------------

def test_wolf_params_validation():
    for bad in (dict(theta=0.0), dict(beta=0.3), dict(A=5), dict(A=2), dict(epsilon=0.0)):
        with pytest.raises(ValueError):
            E.WolfParams(**bad)
    p = E.WolfParams()
    assert p.band_width == pytest.approx(p.beta / 10)
    assert p.a == pytest.approx(np.pi / (2 * p.theta))


@pytest.mark.parametrize("eps", [0.05, 1.0, 1e-12])
def test_wolf_choose_K_matches_closed_form(eps):
    p = E.WolfParams(epsilon=eps)
    K = E.wolf_choose_K(p)
    assert np.isfinite(K)
    assert K == pytest.approx(-eps / np.tan(p.theta), rel=1e-8, abs=1e-15)


def test_wolf_ray_image_lies_on_rotated_ray():
    p = E.WolfParams(epsilon=0.05)
    K = E.wolf_choose_K(p)
    psi = np.pi / 2 - p.theta
    t = np.linspace(0.05, 0.95, 9) * 2 * np.cos(psi)
    z = 1 - t * np.exp(1j * psi)
    q = K + 1j * p.epsilon * (1 + z) / (1 - z)
    rotated = q * np.exp(-1j * p.theta)
    assert np.max(np.abs(rotated.imag)) <= 1e-12 * np.max(np.abs(q))
    assert np.all(rotated.real > 0)


# -- assembled construction -------------------------------------------------

@pytest.mark.slow
def test_wolf_w_is_v_plus_im_H(wolf):
    W, _ = wolf
    rng = np.random.default_rng(0)
    z = np.sqrt(rng.uniform(0, 0.9, 40)) * np.exp(2j * np.pi * rng.uniform(0, 1, 40))
    assert np.array_equal(W.w(z), W.v(z) + np.imag(W.H(z)))


@pytest.mark.slow
def test_wolf_h_vanishes_off_support(wolf):
    W, _ = wolf
    p = W.params
    psi = np.linspace(-np.pi / 2 + 1e-3, p.psi_lo - 1e-6, 50)
    t = np.linspace(0.01, 0.5, 7)
    z = (1 - t[:, None] * np.exp(1j * psi[None, :])).ravel()
    assert np.all(W.h(z) == 0)


@pytest.mark.slow
def test_wolf_H_is_holomorphic(wolf):
    # contour integrals of H vanish where h alone is far from holomorphic
    W, _ = wolf
    p = W.params
    t = 2 * np.pi * np.arange(256) / 256
    for r, s in [(0.98, 2 * p.theta + p.beta), (0.95, 2 * p.theta + 0.5 * p.beta)]:
        c = r * np.exp(-1j * s) + 0.01 * np.exp(1j * t)
        dz = 0.01j * np.exp(1j * t) * (2 * np.pi / t.size)
        Hv, hv = W.H(c), W.h(c)
        defect_H = abs(np.sum(Hv * dz)) / (2 * np.pi * 0.01 * np.max(np.abs(Hv)))
        defect_h = abs(np.sum(hv * dz)) / (2 * np.pi * 0.01 * np.max(np.abs(hv)))
        assert defect_h > 0.1
        assert defect_H <= 1e-2 * defect_h


@pytest.mark.slow
def test_wolf_boundary_trace_of_w(wolf):
    W, _ = wolf
    p = W.params
    lo, hi = 2 * p.theta, 2 * p.theta + 4 * p.beta / 3
    s = np.linspace(0.6, 2 * np.pi - 0.6, 120)
    far = (s < lo - 0.15) | (s > hi + 0.15)
    w = np.asarray(W.w((1 - 1e-5) * np.exp(-1j * s)))
    assert np.max(np.abs(w[far])) <= 1e-3
    # on the arc where the cutoff is live but K + i eps (1+z)/(1-z) < 0, Im h
    # has a nonzero boundary trace and w follows it
    sd = np.linspace(lo, hi, 9)[1:-1]
    trace = np.imag(W.h_boundary(-sd))
    wd = np.asarray(W.w((1 - 1e-6) * np.exp(-1j * sd)))
    assert np.max(np.abs(trace)) > 1e-2
    assert np.max(np.abs(wd - trace)) <= 0.3 * np.max(np.abs(trace))


@pytest.mark.slow
def test_wolf_exemplar_registry_is_cached():
    a = E.resolve("wolf")
    b = E.resolve("wolf")
    assert a is b
    assert a.claimed_regularity == "harmonic"
