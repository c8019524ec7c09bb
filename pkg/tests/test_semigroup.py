import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hblab import semigroup as S
from hblab.errors import (EvolutionOverflowError, HorizonError, SingularSolveError,
                          SpectrumHitError)

JORDAN = [[0.0, 1.0], [0.0, 0.0]]


def _basis(k, n):
    x = np.zeros(n)
    x[k - 1] = 1.0
    return x


# -- rules and models ---------------------------------------------------------

def test_parse_rule_examples():
    assert np.allclose(S.parse_rule("-1/k + i*k", 3), [-1 + 1j, -0.5 + 2j, -1 / 3 + 3j])
    assert np.allclose(S.parse_rule("k**-2", 2), [1.0, 0.25])
    assert np.allclose(S.parse_rule("-2", 4), -2.0)


@pytest.mark.parametrize("expr", ["__import__('os')", "k**0.5", "abs(k)", "k.real", "k ++", "1/(k-1)"])
def test_parse_rule_rejects(expr):
    with pytest.raises(ValueError):
        S.parse_rule(expr, 5)


def test_diagonal_model_validation():
    with pytest.raises(ValueError):
        S.OperatorModel.diagonal([0.5])
    with pytest.raises(ValueError):
        S.OperatorModel.diagonal([1.5], "discrete")
    with pytest.raises(ValueError):
        S.OperatorModel.diagonal([])
    with pytest.raises(ValueError):
        S.OperatorModel.matrix([1.0, 2.0])
    assert S.OperatorModel.diagonal([0.5], check=False).dim == 1


def test_fourier_type():
    with pytest.raises(ValueError):
        S.FourierType(1.0)
    with pytest.raises(ValueError):
        S.FourierType(2.5)
    ft = S.FourierType(2)
    assert ft.q == 2 and ft.weight_exponent == 0.5
    op = S.OperatorModel.diagonal([-1.0])
    with pytest.raises(ValueError):
        S.criterion_probe(op, [1.0], 1, [0.0])


# -- resolvent and evolution --------------------------------------------------

def test_resolvent_examples():
    op = S.OperatorModel.diagonal([1j])
    assert S.resolvent_apply(op, 2.0, [1.0])[0] == pytest.approx((2 + 1j) / 5)
    jordan = S.OperatorModel.matrix(JORDAN)
    lam = 2.0
    y = S.resolvent_apply(jordan, lam, [0.0, 1.0])
    assert np.allclose(y, [1 / lam ** 2, 1 / lam])
    with pytest.raises(SpectrumHitError) as info:
        S.resolvent_apply(op, 1j, [1.0])
    assert list(info.value.indices) == [1]
    with pytest.raises(SingularSolveError):
        S.resolvent_apply(jordan, 0.0, [0.0, 1.0])
    with pytest.raises(ValueError):
        S.resolvent_apply(op, 2.0, [1.0, 2.0])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.floats(0.1, 3.0), st.floats(0.1, 3.0),
       st.floats(-3, 3), st.floats(-3, 3))
def test_resolvent_identity(seed, a, b, s, t):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    A = A - (np.max(np.linalg.eigvals(A).real) + 1.0) * np.eye(4)
    op = S.OperatorModel.matrix(A)
    x = rng.normal(size=4)
    lam, mu = a + 1j * s, b + 1j * t
    lhs = S.resolvent_apply(op, lam, x) - S.resolvent_apply(op, mu, x)
    rhs = (mu - lam) * S.resolvent_apply(op, lam, S.resolvent_apply(op, mu, x))
    assert np.linalg.norm(lhs - rhs) <= 1e-9 * max(1.0, np.linalg.norm(lhs))


def test_evolve_examples():
    op = S.OperatorModel.diagonal([-1.0])
    assert S.evolve(op, 1.0, [1.0])[0] == pytest.approx(np.exp(-1))
    jordan = S.OperatorModel.matrix(JORDAN)
    assert np.allclose(S.evolve(jordan, 3.0, [0.0, 1.0]), [3.0, 1.0])
    disc = S.OperatorModel.matrix(JORDAN, "discrete")
    assert np.allclose(S.evolve(disc, 2, [1.0, 1.0]), 0.0)
    with pytest.raises(ValueError):
        S.evolve(op, -1.0, [1.0])
    with pytest.raises(ValueError):
        S.evolve(S.OperatorModel.diagonal([0.5], "discrete"), 1.5, [1.0])
    with pytest.raises(EvolutionOverflowError):
        S.evolve(S.OperatorModel.matrix([[800.0]]), 1.0, [1.0])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.floats(0.0, 2.0), st.floats(0.0, 2.0))
def test_semigroup_law(seed, s, t):
    rng = np.random.default_rng(seed)
    op = S.OperatorModel.matrix(rng.normal(size=(3, 3)) / 2)
    x = rng.normal(size=3)
    one = S.evolve(op, s + t, x)
    two = S.evolve(op, s, S.evolve(op, t, x))
    assert np.linalg.norm(one - two) <= 1e-10 * max(1.0, np.linalg.norm(one))


def test_bounded_check():
    rep = S.bounded_check(S.OperatorModel.from_rule("i*k", 50), [0, 1, 10, 100])
    assert rep.bounded and rep.exact and rep.sup == pytest.approx(1.0)
    grow = S.bounded_check(S.OperatorModel.matrix(JORDAN), [0, 1, 10, 100, 1000])
    assert not grow.bounded and grow.growth_flag and not grow.exact
    assert grow.trend_slope == pytest.approx(1.0, abs=0.05)
    nil = S.bounded_check(S.OperatorModel.matrix(JORDAN, "discrete"), [0, 1, 2, 10, 100])
    assert nil.bounded
    with pytest.raises(ValueError):
        S.bounded_check(S.OperatorModel.matrix(JORDAN), [])


def test_stability_probe():
    damped = S.OperatorModel.from_rule("-1/k + i*k", 50)
    st_ = S.stability_probe(damped, 1.0 / np.arange(1, 51), [0, 1, 10, 100, 1000])
    assert st_.trend == "decaying"
    flat = S.stability_probe(S.OperatorModel.from_rule("i*k", 50), _basis(3, 50), [0, 10, 100])
    assert flat.trend == "flat"
    with pytest.raises(ValueError):
        S.stability_probe(S.OperatorModel.matrix(JORDAN), [0.0, 1.0], [0, 1, 10, 100, 1000])
    grow = S.stability_probe(S.OperatorModel.matrix(JORDAN), [0.0, 1.0], [0, 1, 10],
                             require_bounded=False)
    assert grow.trend == "growing"


# -- criterion ------------------------------------------------------------------

def test_criterion_values_closed_form():
    # R(alpha) x = x / (alpha + 1) for A = -1, so the weighted value is alpha^(1/2)/(alpha + 1)
    op = S.OperatorModel.diagonal([-1.0])
    rep = S.criterion_probe(op, [1.0], 2, [0.0])
    a = np.asarray(rep.rows[0].approach)
    assert np.allclose(rep.rows[0].values, np.sqrt(a) / (a + 1), rtol=1e-14)
    assert rep.member and rep.rows[0].slope == pytest.approx(0.5, abs=1e-3)


def test_criterion_witness_for_unitary_mode():
    op = S.OperatorModel.from_rule("i*k", 20)
    rep = S.criterion_probe(op, _basis(4, 20), S.FourierType(2), [4.0, 1.0])
    assert not rep.rows[0].decayed and rep.rows[1].decayed
    assert rep.witnesses == (4 + 0j,)
    zero = S.criterion_probe(op, np.zeros(20), 2, [1.0])
    assert zero.member


def test_criterion_discrete_mode():
    op = S.OperatorModel.diagonal([1.0, -1.0], "discrete")
    rep = S.criterion_probe(op, [0.0, 1.0], 2, [1.0, -1.0])
    assert rep.rows[0].decayed and not rep.rows[1].decayed
    with pytest.raises(ValueError):
        S.criterion_probe(op, [0.0, 1.0], 2, [0.5])
    with pytest.raises(ValueError):
        S.criterion_probe(op, [0.0, 1.0], 2, [1.0], approach=[0.1, 0.2, 0.05])


def test_fractional_resolve_examples():
    op = S.OperatorModel.diagonal([-1.0, 2j], check=False)
    y = S.fractional_resolve(op, 0.0, 0.5, [1.0, 0.0])
    assert y[0] == pytest.approx(1.0) and y[1] == 0
    with pytest.raises(SpectrumHitError):
        S.fractional_resolve(op, 2.0, 0.5, [0.0, 1.0])
    with pytest.raises(ValueError):
        S.fractional_resolve(op, 0.0, 0.0, [1.0, 0.0])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.floats(-5, 5))
def test_fractional_power_one_is_resolvent(seed, beta):
    rng = np.random.default_rng(seed)
    lam = -rng.uniform(0.1, 2, 6) + 1j * rng.normal(size=6)
    op = S.OperatorModel.diagonal(lam)
    x = rng.normal(size=6)
    # (i beta - A)^-1 x = R(i beta, A) x
    assert np.allclose(S.fractional_resolve(op, beta, 1.0, x),
                       S.resolvent_apply(op, 1j * beta, x), rtol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.floats(-5, 5))
def test_fractional_half_twice_is_one(seed, beta):
    rng = np.random.default_rng(seed)
    lam = -rng.uniform(0.0, 2, 6) + 1j * rng.normal(size=6)
    op = S.OperatorModel.diagonal(lam)
    x = rng.normal(size=6)
    half = S.fractional_resolve(op, beta, 0.5, S.fractional_resolve(op, beta, 0.5, x))
    one = S.fractional_resolve(op, beta, 1.0, x)
    assert np.allclose(half, one, rtol=1e-12, atol=0)


# -- Carleman transform ---------------------------------------------------------

def test_carleman_examples():
    F = S.TrajectoryModel.from_diagonal([2j], [1.0])
    for lam in (1.0, -1.0, 0.5 + 3j):
        res = S.carleman_transform(F, lam)
        assert abs(res.value[0] - 1 / (lam - 2j)) <= 1e-8
        assert res.tail_bound <= 1e-10 * (1 + 1e-9)
    with pytest.raises(ValueError):
        S.carleman_transform(F, 1j)
    with pytest.raises(HorizonError):
        S.carleman_transform(F, 1.0, horizon=1.0)
    with pytest.raises(ValueError):
        S.TrajectoryModel.from_diagonal([1.0], [1.0])


def test_carleman_zero_trajectory_and_identity():
    Z = S.TrajectoryModel.zero(2)
    assert np.all(S.carleman_transform(Z, 1.0).value == 0)
    op = S.OperatorModel.diagonal([1j, -2j])
    F = S.TrajectoryModel.from_diagonal([1j, -2j], [1.0, 0.5])
    rep = S.carleman_identity_check(op, F, 1.5, 1.5)
    assert rep.ok and rep.residual <= 1e-8
    with pytest.raises(ValueError):
        S.carleman_identity_check(op, F, -1.0, 2.0)


@settings(max_examples=5, deadline=None)
@given(st.floats(-3, 3), st.floats(0.5, 2.0))
def test_singular_set_nonempty_for_nonzero_orbit(omega, c):
    F = S.TrajectoryModel.from_diagonal([1j * omega], [c])
    taus = omega + np.array([-1.0, 0.0, 1.0])
    vals = S.singular_set_probe(F, taus, sigma=0.05, tol=1e-6)
    # at tau = omega both sides equal sigma / sigma times |x0|
    assert np.allclose(vals[:, 1], c, rtol=1e-5)
    assert np.all(vals[:, [0, 2]] < 0.1 * c)
    assert np.all(S.singular_set_probe(S.TrajectoryModel.zero(), taus) == 0)
