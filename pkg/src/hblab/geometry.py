"""Regions, sector predicates, sampling grids and the explicit conformal maps."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "Region",
    "SectorSpec",
    "GridSpec",
    "in_sector",
    "strip_exp_map",
    "quadrant_to_disc",
    "disc_to_quadrant",
    "sample_grid",
    "stolz_cross_section",
    "upper_cross_section",
]

_REGION_KINDS = ("unit_disc", "rectangle", "quadrant", "finite_sector", "punctured_disc")


@dataclass(frozen=True)
class Region:
    """A planar domain used by the analyzers.

    Use the named constructors (:meth:`unit_disc`, :meth:`rectangle`, ...)
    rather than the raw initializer.

    ``finite_sector`` is ``{|arg z| < theta, |z| < rho}`` when ``symmetric``
    is true and ``{0 < arg z < theta, |z| < rho}`` otherwise, so the quarter
    disc ``{0 < arg z < pi/2, |z| < rho}`` is ``finite_sector(pi/2, rho,
    symmetric=False)``.
    """

    kind: str
    x_lo: float = 0.0
    x_hi: float = 0.0
    y_lo: float = 0.0
    y_hi: float = 0.0
    theta: float = 0.0
    rho: float = 0.0
    symmetric: bool = True

    def __post_init__(self):
        if self.kind not in _REGION_KINDS:
            raise ValueError(f"unknown region kind {self.kind!r}")
        if self.kind == "rectangle":
            if not (self.x_lo < self.x_hi and self.y_lo < self.y_hi):
                raise ValueError("rectangle bounds must satisfy x_lo < x_hi, y_lo < y_hi")
        if self.kind == "finite_sector":
            if not (0.0 < self.theta < np.pi):
                raise ValueError("finite_sector requires 0 < theta < pi")
            if not self.rho > 0.0:
                raise ValueError("finite_sector requires rho > 0")
        if self.kind == "punctured_disc" and not self.rho > 0.0:
            raise ValueError("punctured_disc requires rho > 0")

    @classmethod
    def unit_disc(cls):
        return cls("unit_disc")

    @classmethod
    def rectangle(cls, x_lo, x_hi, y_lo, y_hi):
        return cls("rectangle", x_lo=float(x_lo), x_hi=float(x_hi),
                   y_lo=float(y_lo), y_hi=float(y_hi))

    @classmethod
    def upper_rectangle(cls):
        """The rectangle ``(-1, 1) x (0, 1)`` whose bottom edge is the distinguished interval."""
        return cls.rectangle(-1.0, 1.0, 0.0, 1.0)

    @classmethod
    def square(cls):
        """The square ``(-1, 1) x (-1, 1)`` used for analytic continuation across the reals."""
        return cls.rectangle(-1.0, 1.0, -1.0, 1.0)

    @classmethod
    def quadrant(cls):
        return cls("quadrant")

    @classmethod
    def finite_sector(cls, theta, rho, symmetric=True):
        return cls("finite_sector", theta=float(theta), rho=float(rho), symmetric=bool(symmetric))

    @classmethod
    def punctured_disc(cls, rho):
        return cls("punctured_disc", rho=float(rho))

    def contains(self, z):
        """Open-set membership, vectorized over ``z``."""
        z = np.asarray(z, dtype=complex)
        if self.kind == "unit_disc":
            out = np.abs(z) < 1.0
        elif self.kind == "rectangle":
            out = ((z.real > self.x_lo) & (z.real < self.x_hi)
                   & (z.imag > self.y_lo) & (z.imag < self.y_hi))
        elif self.kind == "quadrant":
            out = (z.real > 0.0) & (z.imag > 0.0)
        elif self.kind == "finite_sector":
            arg = np.angle(z)
            if self.symmetric:
                ang = np.abs(arg) < self.theta
            else:
                ang = (arg > 0.0) & (arg < self.theta)
            out = ang & (np.abs(z) < self.rho) & (z != 0)
        else:
            r = np.abs(z)
            out = (r > 0.0) & (r < self.rho)
        return bool(out) if out.ndim == 0 else out

    def to_dict(self):
        d = {"kind": self.kind}
        if self.kind == "rectangle":
            d.update(x_lo=self.x_lo, x_hi=self.x_hi, y_lo=self.y_lo, y_hi=self.y_hi)
        elif self.kind == "finite_sector":
            d.update(theta=self.theta, rho=self.rho, symmetric=self.symmetric)
        elif self.kind == "punctured_disc":
            d.update(rho=self.rho)
        return d


@dataclass(frozen=True)
class SectorSpec:
    """Approach sector with vertex on the boundary.

    ``stolz``: ``Omega_theta(phi) = {z in D : |arg(1 - e^{-i phi} z)| <= pi/2 - theta}``
    (closed inequality). ``upper``: ``alpha + Sigma_theta`` with
    ``theta < arg(z - alpha) < pi - theta`` (strict).
    """

    kind: str
    theta: float
    phi: float = 0.0
    alpha: float = 0.0

    def __post_init__(self):
        if self.kind not in ("stolz", "upper"):
            raise ValueError(f"unknown sector kind {self.kind!r}")
        if not (0.0 < self.theta < np.pi / 2):
            raise ValueError("sector theta must lie in (0, pi/2)")

    @classmethod
    def stolz(cls, phi, theta):
        return cls("stolz", theta=float(theta), phi=float(phi))

    @classmethod
    def upper(cls, alpha, theta):
        return cls("upper", theta=float(theta), alpha=float(alpha))

    @property
    def vertex(self) -> complex:
        if self.kind == "stolz":
            return complex(np.exp(1j * self.phi))
        return complex(self.alpha)

    @property
    def half_opening(self) -> float:
        return np.pi / 2 - self.theta


@dataclass(frozen=True)
class GridSpec:
    """Sampling recipe: a strictly monotone level schedule, ``n`` points per level."""

    schedule: tuple
    n: int
    seed: Optional[int] = None

    def __post_init__(self):
        sched = tuple(float(s) for s in self.schedule)
        object.__setattr__(self, "schedule", sched)
        if self.n < 8:
            raise ValueError("GridSpec requires n >= 8")
        if len(sched) > 1:
            d = np.diff(sched)
            if not (np.all(d > 0) or np.all(d < 0)):
                raise ValueError("schedule must be strictly monotone")


def in_sector(z, s: SectorSpec):
    """Membership of ``z`` in the approach sector ``s`` (vectorized)."""
    z = np.asarray(z, dtype=complex)
    if s.kind == "stolz":
        w = 1.0 - np.exp(-1j * s.phi) * z
        out = (np.abs(z) < 1.0) & (np.abs(np.angle(w)) <= np.pi / 2 - s.theta)
    else:
        w = z - s.alpha
        arg = np.angle(w)
        out = (w != 0) & (arg > s.theta) & (arg < np.pi - s.theta)
    return bool(out) if out.ndim == 0 else out


def strip_exp_map(z, theta):
    """``exp(2 pi i (z + theta))``; wraps the strip rectangle around an annulus."""
    return np.exp(2j * np.pi * (np.asarray(z, dtype=complex) + theta))


def quadrant_to_disc(z, *, atol=1e-12):
    """Conformal map of the open quadrant onto the unit disc, ``(z^2 - i)/(z^2 + i)``.

    ``e^{i pi/4}`` goes to 0, the positive real axis to the lower half of the
    circle and the positive imaginary axis to the upper half.

    Raises
    ------
    DomainError
        If any point lies outside the closed quadrant.
    """
    z = np.asarray(z, dtype=complex)
    if np.any((z.real < -atol) | (z.imag < -atol)):
        raise DomainError("quadrant_to_disc: point outside the closed quadrant")
    z2 = z * z
    out = (z2 - 1j) / (z2 + 1j)
    return complex(out) if out.ndim == 0 else out


def disc_to_quadrant(w):
    """Inverse of :func:`quadrant_to_disc`; ``w = 1`` is sent to infinity."""
    w = np.asarray(w, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        z2 = 1j * (1.0 + w) / (1.0 - w)
    z = np.sqrt(z2)
    # of the two roots, the quadrant one has Re z + Im z >= 0; testing the sign
    # of Im z alone misplaces points on the real edge after round-off
    z = np.where(z.real + z.imag < 0, -z, z)
    return complex(z) if z.ndim == 0 else z


def sample_grid(region: Region, g: GridSpec):
    """Deterministic sample points, strictly interior, one ring/line per schedule level.

    Schedule levels are radii for discs, sectors and the quadrant, and
    imaginary parts for rectangles. With ``g.seed`` set, each level gets a
    seeded angular (or horizontal) offset smaller than half a grid spacing.
    """
    if len(g.schedule) == 0:
        raise ValueError("sample_grid: empty schedule")
    rng = np.random.default_rng(g.seed) if g.seed is not None else None
    k = np.arange(g.n)
    out = []
    for level in g.schedule:
        jitter = 0.0 if rng is None else rng.uniform(-0.25, 0.25)
        if region.kind in ("unit_disc", "punctured_disc"):
            bound = 1.0 if region.kind == "unit_disc" else region.rho
            if not (0.0 < level < bound) and not (region.kind == "unit_disc" and level == 0.0):
                raise DomainError(f"radius {level} not interior to {region.kind}")
            ang = 2 * np.pi * (k + jitter) / g.n
            pts = level * np.exp(1j * ang)
        elif region.kind == "rectangle":
            if not (region.y_lo < level < region.y_hi):
                raise DomainError(f"level Im z = {level} not interior to rectangle")
            width = region.x_hi - region.x_lo
            x = region.x_lo + width * (k + 0.5 + jitter) / g.n
            pts = x + 1j * level
        elif region.kind == "quadrant":
            if not level > 0.0:
                raise DomainError("quadrant radii must be positive")
            ang = (np.pi / 2) * (k + 0.5 + jitter) / g.n
            pts = level * np.exp(1j * ang)
        else:
            if not (0.0 < level < region.rho):
                raise DomainError(f"radius {level} not interior to sector")
            if region.symmetric:
                ang = -region.theta + 2 * region.theta * (k + 0.5 + jitter) / g.n
            else:
                ang = region.theta * (k + 0.5 + jitter) / g.n
            pts = level * np.exp(1j * ang)
        out.append(pts)
    return [complex(p) for p in np.concatenate(out)]


def stolz_cross_section(phi, theta, d, n=32):
    """Points of ``Omega_theta(phi)`` at distance ``d`` from the vertex ``e^{i phi}``.

    The ``n`` directions span the closed sector opening ``|psi| <= pi/2 - theta``.
    """
    psi = np.linspace(-(np.pi / 2 - theta), np.pi / 2 - theta, n)
    return np.exp(1j * phi) * (1.0 - d * np.exp(1j * psi))


def upper_cross_section(alpha, theta, d, n=32):
    """Points of ``alpha + Sigma_theta`` at distance ``d``; directions strictly inside."""
    k = np.arange(n)
    psi = theta + (np.pi - 2 * theta) * (k + 0.5) / n
    return alpha + d * np.exp(1j * psi)
