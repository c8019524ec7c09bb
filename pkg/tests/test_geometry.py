import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hblab.errors import DomainError
from hblab.geometry import (GridSpec, Region, SectorSpec, disc_to_quadrant, in_sector,
                            quadrant_to_disc, sample_grid, stolz_cross_section, strip_exp_map,
                            upper_cross_section)


def test_in_sector_examples():
    assert in_sector(1j, SectorSpec.upper(0.0, np.pi / 4))
    assert in_sector(0.5, SectorSpec.stolz(0.0, np.pi / 4))
    z = 0.99 * np.exp(0.3j)
    expected = abs(np.angle(1 - z)) <= np.pi / 2 - 0.4 * np.pi
    assert in_sector(z, SectorSpec.stolz(0.0, 0.4 * np.pi)) == expected


def test_upper_sector_is_open():
    theta = np.pi / 4
    assert not in_sector(0.1 * np.exp(1j * theta), SectorSpec.upper(0.0, theta))
    assert not in_sector(0.0, SectorSpec.upper(0.0, theta))


def test_sector_rejects_bad_theta():
    with pytest.raises(ValueError):
        SectorSpec.stolz(0.0, 0.0)
    with pytest.raises(ValueError):
        SectorSpec.upper(0.0, np.pi / 2)


def test_cross_sections_lie_in_their_sectors():
    s = SectorSpec.stolz(0.7, 0.3)
    pts = stolz_cross_section(0.7, 0.3, 0.05)
    assert np.allclose(np.abs(pts - np.exp(0.7j)), 0.05)
    # the two end directions lie on the closed edge, up to round-off
    assert np.all(in_sector(pts[1:-1], s))
    pts = upper_cross_section(0.2, 0.3, 0.05)
    assert np.all(in_sector(pts, SectorSpec.upper(0.2, 0.3)))


@settings(max_examples=50, deadline=None)
@given(st.floats(0.05, 1.4), st.floats(0.05, 1.4), st.integers(0, 2 ** 31 - 1))
def test_stolz_membership_monotone_in_theta(t1, t2, seed):
    t1, t2 = min(t1, t2), max(t1, t2)
    rng = np.random.default_rng(seed)
    z = np.sqrt(rng.uniform(0, 1, 200)) * np.exp(2j * np.pi * rng.uniform(0, 1, 200))
    phi = rng.uniform(-np.pi, np.pi)
    inner = in_sector(z, SectorSpec.stolz(phi, t2))
    outer = in_sector(z, SectorSpec.stolz(phi, t1))
    assert np.all(outer[inner])


def test_strip_exp_map_examples():
    assert strip_exp_map(0.0, 0.0) == pytest.approx(1.0)
    assert strip_exp_map(1j, 0.0) == pytest.approx(np.exp(-2 * np.pi), rel=1e-12)
    assert abs(np.exp(-2 * np.pi) - 0.00186744) < 1e-8


@settings(max_examples=30, deadline=None)
@given(st.floats(-2, 2), st.floats(-1, 1), st.floats(0.01, 0.039), st.floats(0, 1))
def test_strip_exp_map_locally_injective(x0, y0, h, theta):
    x, y = np.meshgrid(x0 + h * np.arange(10), y0 + h * np.arange(10))
    w = strip_exp_map(x + 1j * y, theta).ravel()
    d = np.abs(w[:, None] - w[None, :])
    np.fill_diagonal(d, np.inf)
    assert np.min(d) > 0


def test_quadrant_to_disc_examples():
    assert abs(quadrant_to_disc(np.exp(1j * np.pi / 4))) < 1e-15
    assert abs(quadrant_to_disc(2.0)) == pytest.approx(1.0)
    assert abs(quadrant_to_disc(3j)) == pytest.approx(1.0)
    assert quadrant_to_disc(2.0).imag < 0 < quadrant_to_disc(3j).imag
    with pytest.raises(DomainError):
        quadrant_to_disc(-1.0 + 1j)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 1e3), st.floats(1e-3, np.pi / 2 - 1e-3))
def test_quadrant_round_trip(r, a):
    z = r * np.exp(1j * a)
    w = quadrant_to_disc(z)
    assert abs(w) < 1
    assert abs(disc_to_quadrant(w) - z) <= 1e-10 * max(1.0, abs(z)) ** 2


def test_regions_contain():
    assert Region.unit_disc().contains(0.5j)
    assert not Region.unit_disc().contains(1.0)
    rect = Region.upper_rectangle()
    assert rect.contains(0.5 + 0.5j) and not rect.contains(0.5 - 0.5j)
    assert Region.quadrant().contains(1 + 1j) and not Region.quadrant().contains(-1 + 1j)
    assert not Region.punctured_disc(1.0).contains(0.0)


def test_sample_grid_examples():
    pts = sample_grid(Region.unit_disc(), GridSpec([0.5], 8))
    assert len(pts) == 8
    assert np.allclose(np.abs(pts), 0.5)
    ang = np.sort(np.mod(np.angle(pts), 2 * np.pi))
    assert np.allclose(np.diff(ang), np.pi / 4)

    pts = sample_grid(Region.upper_rectangle(), GridSpec([0.1], 16))
    assert len(pts) == 16 and np.allclose(np.imag(pts), 0.1)
    assert sample_grid(Region.upper_rectangle(), GridSpec([0.1], 16)) == pts
    assert sample_grid(Region.unit_disc(), GridSpec([0.3, 0.6], 16, seed=3)) == \
        sample_grid(Region.unit_disc(), GridSpec([0.3, 0.6], 16, seed=3))


def test_sample_grid_rejects_boundary_levels():
    with pytest.raises(DomainError):
        sample_grid(Region.unit_disc(), GridSpec([1.0], 8))
    with pytest.raises(ValueError):
        GridSpec([0.5, 0.3, 0.6], 8)
    with pytest.raises(ValueError):
        GridSpec([0.5], 4)
