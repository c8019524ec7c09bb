"""Poisson kernels and integrals, rectangle Dirichlet solutions, the Cauchy
area transform and Laurent-type coefficient extraction around an isolated
singularity.

Conventions
-----------
* The disc kernel defaults to the *half* normalization
  ``P(r, phi) = (1 - r^2) / (2 (1 - 2 r cos phi + r^2))`` so that
  ``dP/dphi = -sum n r^n sin(n phi)``. Pass ``half=False`` for the standard
  kernel whose angular mean is 1.
* The half-plane kernel is ``beta / (pi (alpha^2 + beta^2))``; its integral
  over every horizontal line is 1.
* ``cauchy_area_transform`` returns ``(1/2pi) * int F(zeta)/(z - zeta) dm2``.
  With ``dbar = (d/dx + i d/dy)/2`` this satisfies ``dbar T = F / 2``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np
from scipy import fft as sp_fft
from scipy import integrate

from .errors import (
    AliasingError,
    ConditioningError,
    DomainError,
    QuadratureError,
    TruncationError,
)
from .geometry import Region, disc_to_quadrant, quadrant_to_disc

__all__ = [
    "BoundaryFunction",
    "ExpansionCoefficients",
    "AreaRule",
    "poisson_kernel",
    "disc_poisson_kernel",
    "halfplane_poisson_kernel",
    "poisson_integral_disc",
    "poisson_extension",
    "boundary_rule",
    "poisson_integral_quadrant",
    "dirichlet_rectangle",
    "rectangle_harmonic_measure",
    "cauchy_area_transform",
    "singularity_expansion",
]

TWO_PI = 2.0 * np.pi


# ---------------------------------------------------------------------------
# kernels


def disc_poisson_kernel(r, phi, half=True):
    r = np.asarray(r, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if np.any((r < 0) | (r >= 1)):
        raise DomainError("disc Poisson kernel needs 0 <= r < 1")
    # 1 - 2 r cos phi + r^2 written to avoid cancellation near phi = 0, r = 1
    denom = (1.0 - r) ** 2 + 4.0 * r * np.sin(phi / 2) ** 2
    val = (1.0 - r) * (1.0 + r) / denom
    return 0.5 * val if half else val


def halfplane_poisson_kernel(z):
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise DomainError("half-plane Poisson kernel needs Im z > 0")
    return z.imag / (np.pi * (z.real ** 2 + z.imag ** 2))


def poisson_kernel(domain, point, *, half=True):
    """Poisson kernel of the disc (peaked at ``xi = 1``) or the upper half-plane.

    Parameters
    ----------
    domain : {'disc', 'halfplane'}
    point : complex or (r, phi) pair
        For the disc, ``r e^{i phi}`` (either form); for the half-plane,
        ``alpha + i beta``.
    half : bool
        Disc only: use the half normalization (default) or the standard one.
    """
    if domain == "disc":
        if isinstance(point, tuple):
            r, phi = point
        else:
            p = np.asarray(point, dtype=complex)
            r, phi = np.abs(p), np.angle(p)
        out = disc_poisson_kernel(r, phi, half=half)
    elif domain == "halfplane":
        out = halfplane_poisson_kernel(point)
    else:
        raise ValueError(f"unknown domain {domain!r}")
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# boundary data


@dataclass(frozen=True)
class BoundaryFunction:
    """Boundary data as a vectorized function of the complex boundary point.

    ``singular`` lists ``(c, beta_c)`` pairs: boundary points where the data
    may blow up like ``|xi - c|^{-beta_c}``. A zero exponent marks a
    bounded discontinuity that should still be used as a breakpoint.
    """

    func: Callable
    singular: tuple = ()
    name: str = "h"

    def __post_init__(self):
        sing = tuple((complex(c), float(b)) for c, b in self.singular)
        for _, b in sing:
            if b < 0:
                raise ValueError("declared blow-up exponents must be >= 0")
        object.__setattr__(self, "singular", sing)

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=complex)
        out = np.asarray(self.func(xi))
        if out.shape != xi.shape:
            out = np.broadcast_to(out, xi.shape).copy()
        return out

    @classmethod
    def constant(cls, c):
        return cls(lambda xi: np.full(np.shape(xi), float(c)), name=f"const({c})")


def _check_exponents(singular, opening_of):
    for c, b in singular:
        alpha = opening_of(c)
        if alpha * b >= 1.0:
            raise DomainError(
                f"boundary singularity at {c} with exponent {b} is not integrable "
                f"against harmonic measure (corner parameter {alpha})"
            )


def _quad_panel(fn, a, b, tol, limit):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(fn, a, b, epsabs=tol, epsrel=0.0, limit=limit)
        except integrate.IntegrationWarning as exc:
            val, err = integrate.quad(fn, a, b, epsabs=tol, epsrel=0.0, limit=4 * limit)
            if err > 100 * tol:
                raise QuadratureError(f"panel [{a}, {b}] failed: {exc}") from exc
    return val, err


def _integrate_periodic(g, breaks, singular_angles, tol, limit=200, max_levels=12):
    """Integrate a real function of the angle over one period.

    ``breaks`` are sorted angles in ``[t0, t0 + 2pi]`` including both ends.
    Panels that touch a singular angle are split geometrically toward it;
    the last panel uses an algebraic-weight rule for the declared
    ``|t - c|^{-beta}`` behaviour.
    """
    total = 0.0
    err_total = 0.0
    n_panels = len(breaks) - 1
    panel_tol = tol / max(n_panels, 1)
    sing = dict()
    for c, b in singular_angles:
        sing.setdefault(round(c, 14), max(b, sing.get(round(c, 14), 0.0)))
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b - a <= 0:
            continue
        left = sing.get(round(a, 14))
        right = sing.get(round(b, 14))
        if not left and not right:
            v, e = _quad_panel(g, a, b, panel_tol, limit)
            total += v
            err_total += e
            continue
        # split at the midpoint, then grade each half toward its singular end
        mid = 0.5 * (a + b)
        for end, other, beta in ((a, mid, left), (b, mid, right)):
            lo, hi = (end, other) if end < other else (other, end)
            if not beta:
                v, e = _quad_panel(g, lo, hi, panel_tol, limit)
                total += v
                err_total += e
                continue
            length = abs(other - end)
            direction = 1.0 if other > end else -1.0
            delta = length
            for _ in range(max_levels):
                inner = 0.5 * delta
                p, q = sorted((end + direction * inner, end + direction * delta))
                v, e = _quad_panel(g, p, q, panel_tol, limit)
                total += v
                err_total += e
                delta = inner
            # innermost panel: the declared |t - c|^{-beta} factor is treated
            # exactly by the algebraic-weight rule
            def smooth(t, end=end, beta=beta):
                gap = abs(t - end)
                if gap == 0.0:
                    gap = 1e-300
                    t = end + direction * gap
                return g(t) * gap ** beta
            p, q = sorted((end, end + direction * delta))
            wvar = (-beta, 0.0) if direction > 0 else (0.0, -beta)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                v, e = integrate.quad(smooth, p, q, weight="alg", wvar=wvar,
                                      epsabs=panel_tol, epsrel=0.0, limit=limit)
            if not np.isfinite(v) or e > 100 * panel_tol:
                raise QuadratureError(f"singular end panel near {end} failed (err {e:.3g})")
            total += v
            err_total += e
    return total, err_total


def _disc_breaks(z, singular):
    r = abs(z)
    t_peak = np.angle(z) if r > 0 else 0.0
    t0 = t_peak - np.pi
    pts = {t0, t0 + TWO_PI}
    width = 1.0 - r
    if r > 0.5:
        for k in (1.0, 4.0, 16.0, 64.0):
            for s in (-1.0, 1.0):
                t = t_peak + s * k * width
                if t0 < t < t0 + TWO_PI:
                    pts.add(t)
        pts.add(t_peak)
    sing_angles = []
    for c, b in singular:
        t = np.angle(c)
        t = t0 + np.mod(t - t0, TWO_PI)
        if np.isclose(t, t0 + TWO_PI):
            t = t0 + TWO_PI
        pts.add(t)
        sing_angles.append((t, b))
        if np.isclose(t, t0) or np.isclose(t, t0 + TWO_PI):
            sing_angles.append((t0, b))
            sing_angles.append((t0 + TWO_PI, b))
    breaks = sorted(pts)
    # drop near-duplicates
    clean = [breaks[0]]
    for t in breaks[1:]:
        if t - clean[-1] > 1e-13:
            clean.append(t)
        else:
            clean[-1] = t if any(abs(t - s) < 1e-12 for s, _ in sing_angles) else clean[-1]
    return clean, sing_angles


def poisson_integral_disc(h, z, *, tol=1e-9, limit=200):
    """Harmonic extension of boundary data into the unit disc.

    Evaluates ``(1/2pi) int h(xi) (1 - |z|^2)/|z - xi|^2 |dxi|`` by adaptive
    Gauss-Kronrod quadrature on panels broken at the kernel peak and at every
    declared singular point; panels ending at a singular point are graded
    geometrically toward it.

    Parameters
    ----------
    h : BoundaryFunction or callable
        Function of the boundary point ``xi = e^{it}``.
    z : complex or array of complex, ``|z| < 1``
    tol : float
        Absolute tolerance for the whole integral.

    Raises
    ------
    DomainError
        ``|z| >= 1`` or a non-integrable declared singularity.
    QuadratureError
        Tolerance not reached within the subdivision budget.
    """
    if not isinstance(h, BoundaryFunction):
        h = BoundaryFunction(h)
    _check_exponents(h.singular, lambda c: 1.0)
    zs = np.asarray(z, dtype=complex)
    if np.any(np.abs(zs) >= 1):
        raise DomainError("poisson_integral_disc needs |z| < 1")
    out = np.empty(zs.shape, dtype=complex)
    is_complex = False
    for idx, zz in np.ndenumerate(zs):
        val, cplx = _poisson_disc_scalar(h, complex(zz), tol, limit)
        out[idx] = val
        is_complex = is_complex or cplx
    if not is_complex:
        out = out.real
    return out.item() if out.ndim == 0 else out


def _poisson_disc_scalar(h, z, tol, limit):
    breaks, sing_angles = _disc_breaks(z, h.singular)
    r2 = abs(z) ** 2

    def kernel(t):
        xi = np.exp(1j * t)
        return (1.0 - r2) / abs(z - xi) ** 2 / TWO_PI

    probe = h(np.exp(1j * np.array([breaks[0] + 0.37])))
    cplx = np.iscomplexobj(probe) and np.any(np.imag(h(np.exp(1j * np.linspace(0, TWO_PI, 17)[:-1]))) != 0)

    def real_part(t):
        return float(np.real(h(np.exp(1j * t)))) * kernel(t)

    re, _ = _integrate_periodic(real_part, breaks, sing_angles, tol, limit)
    if not cplx:
        return complex(re), False

    def imag_part(t):
        return float(np.imag(h(np.exp(1j * t)))) * kernel(t)

    im, _ = _integrate_periodic(imag_part, breaks, sing_angles, tol, limit)
    return complex(re, im), True


def boundary_rule(n_panels=256, order=16, graded_at=(), levels=30, ratio=0.5):
    """Composite Gauss-Legendre rule on ``[-pi, pi)``, optionally graded.

    Returns angles and weights; the weights integrate ``dt`` (not ``dt/2pi``).
    ``graded_at`` lists angles toward which panels are refined geometrically
    (``levels`` panels per side, each ``ratio`` times the previous).
    """
    x, w = np.polynomial.legendre.leggauss(order)
    edges = set(np.linspace(-np.pi, np.pi, n_panels + 1).tolist())
    base = TWO_PI / n_panels
    for c in graded_at:
        c = float(np.mod(c + np.pi, TWO_PI) - np.pi)
        edges.add(c)
        d = base
        for _ in range(levels):
            d *= ratio
            for s in (-1.0, 1.0):
                t = c + s * d
                if -np.pi < t < np.pi:
                    edges.add(t)
    e = np.array(sorted(edges))
    a, b = e[:-1], e[1:]
    half = 0.5 * (b - a)
    nodes = (0.5 * (a + b))[:, None] + half[:, None] * x[None, :]
    weights = half[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()


def poisson_extension(values, angles, weights, z, half=False, panel_order=None):
    """Harmonic extension from tabulated boundary values on a fixed rule.

    ``values`` are samples of the data at ``e^{i angles}`` and ``weights``
    integrate ``dt``. Without ``panel_order`` the kernel is summed directly,
    which requires the rule to resolve the kernel width ``1 - |z|`` near
    ``z / |z|``.

    With ``panel_order`` (the rule must then come from :func:`boundary_rule`
    with that order), the data is interpolated on each Gauss-Legendre panel
    and the local part ``b(s) + b'(s) sin(t - s)`` at ``s = arg z`` is
    removed before summation. Its extension is known exactly (``b(s)`` plus
    zero), so the sum only sees a remainder that vanishes to second order at
    ``s``. This keeps the extension accurate all the way to the circle.
    """
    z = np.asarray(z, dtype=complex)
    xi = np.exp(1j * np.asarray(angles))
    flat = z.reshape(-1)
    out = np.empty(flat.shape, dtype=np.result_type(values, float))
    scale = 0.5 if half else 1.0
    if panel_order is not None:
        b0, b1 = _panel_interpolant(values, angles, panel_order, np.angle(flat))
    chunk = max(1, 2_000_000 // max(len(xi), 1))
    for s in range(0, flat.size, chunk):
        zz = flat[s:s + chunk, None]
        ker = (1.0 - np.abs(zz) ** 2) / np.abs(zz - xi[None, :]) ** 2
        if panel_order is None:
            out[s:s + chunk] = ker @ (weights * values) / TWO_PI
        else:
            sig = np.angle(zz)
            local = b0[s:s + chunk, None] + b1[s:s + chunk, None] * np.sin(angles[None, :] - sig)
            rem = (values[None, :] - local) * weights[None, :]
            out[s:s + chunk] = b0[s:s + chunk] + np.sum(ker * rem, axis=1) / TWO_PI
    out = scale * out.reshape(z.shape)
    return out.item() if out.ndim == 0 else out


def _panel_interpolant(values, angles, order, sigma):
    """Value and derivative at ``sigma`` of the panelwise Legendre interpolant."""
    values = np.asarray(values)
    t = np.asarray(angles, dtype=float).reshape(-1, order)
    x, w = np.polynomial.legendre.leggauss(order)
    centre = t.mean(axis=1)
    halfw = (t[:, -1] - t[:, 0]) / (x[-1] - x[0])
    V = np.polynomial.legendre.legvander(x, order - 1)
    norm = (2.0 * np.arange(order) + 1.0) / 2.0
    coef = (values.reshape(-1, order) * w[None, :]) @ V * norm[None, :]
    lo = centre - halfw
    k = np.clip(np.searchsorted(lo, sigma, side="right") - 1, 0, t.shape[0] - 1)
    xs = np.clip((sigma - centre[k]) / halfw[k], -1.0, 1.0)
    Vs = np.polynomial.legendre.legvander(xs, order - 1)
    b0 = np.sum(Vs * coef[k], axis=1)
    dcoef = np.array([np.polynomial.legendre.legder(c) for c in coef])
    Vd = np.polynomial.legendre.legvander(xs, order - 2)
    b1 = np.sum(Vd * dcoef[k], axis=1) / halfw[k]
    return b0, b1


# ---------------------------------------------------------------------------
# quadrant


def _quadrant_pullback_singular(singular):
    pulled = [(1.0 + 0j, 0.0), (-1.0 + 0j, 0.0)]
    for c, b in singular:
        if abs(c) < 1e-14:
            pulled.append((-1.0 + 0j, b / 2.0))
        else:
            pulled.append((complex(quadrant_to_disc(c)), b))
    return tuple(pulled)


def poisson_integral_quadrant(h, z, *, tol=1e-9, limit=200):
    """Dirichlet solution on the quadrant ``{0 < arg z < pi/2}``.

    The data is pulled back to the circle through :func:`quadrant_to_disc`
    and integrated with :func:`poisson_integral_disc`. A singularity of
    exponent ``b`` at the corner ``0`` (opening ``pi/2``) becomes one of
    exponent ``b/2`` at ``-1``, so corner exponents below 2 are admissible.
    """
    if not isinstance(h, BoundaryFunction):
        h = BoundaryFunction(h)
    _check_exponents(h.singular, lambda c: 0.5 if abs(c) < 1e-14 else 1.0)
    zs = np.asarray(z, dtype=complex)
    if np.any((zs.real <= 0) | (zs.imag <= 0)):
        raise DomainError("poisson_integral_quadrant needs an interior point")

    def pulled(xi):
        xi = np.asarray(xi, dtype=complex)
        out = np.zeros(xi.shape, dtype=complex)
        finite = np.abs(xi - 1.0) > 1e-15
        q = disc_to_quadrant(np.where(finite, xi, 0.0))
        vals = np.asarray(h(np.asarray(q)), dtype=complex)
        out[finite] = np.broadcast_to(vals, xi.shape)[finite]
        return out if np.any(out.imag != 0) else out.real

    hb = BoundaryFunction(pulled, singular=_quadrant_pullback_singular(h.singular), name=h.name)
    w = quadrant_to_disc(zs)
    return poisson_integral_disc(hb, w, tol=tol, limit=limit)


# ---------------------------------------------------------------------------
# rectangle

_SIDES = ("bottom", "top", "left", "right")


def _sinh_ratio(p, q):
    """sinh(p)/sinh(q) for 0 <= p <= q, without overflow."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return np.exp(p - q) * (-np.expm1(-2.0 * p)) / (-np.expm1(-2.0 * q))


def _side_geometry(region, side):
    a = region.x_hi - region.x_lo
    b = region.y_hi - region.y_lo
    if side in ("bottom", "top"):
        length, across = a, b
        y = region.y_lo if side == "bottom" else region.y_hi
        param = lambda s: region.x_lo + s + 1j * y
    else:
        length, across = b, a
        x = region.x_lo if side == "left" else region.x_hi
        param = lambda s: x + 1j * (region.y_lo + s)
    return length, across, param


def _side_coefficients(data, length, param, terms):
    n = np.arange(1, terms + 1)
    if np.isscalar(data) or (isinstance(data, np.ndarray) and data.ndim == 0):
        c = float(data) if not np.iscomplexobj(data) else complex(data)
        odd = (n % 2 == 1)
        coeff = np.where(odd, 4.0 / (n * np.pi), 0.0) * c
        return coeff, abs(c)
    m = max(64 * terms, 1 << 16)
    s = (np.arange(m) + 0.5) * length / m
    vals = np.asarray(data(param(s)))
    if np.iscomplexobj(vals):
        re = sp_fft.dst(vals.real, type=2)[:terms] / m
        im = sp_fft.dst(vals.imag, type=2)[:terms] / m
        coeff = re + 1j * im
    else:
        coeff = sp_fft.dst(vals, type=2)[:terms] / m
    return coeff, float(np.mean(np.abs(vals)))


def _tail_bound(cbound, d, length, across, terms):
    q = np.exp(-np.pi * d / length)
    denom = (1.0 - q) * (-np.expm1(-2.0 * np.pi * across / length))
    return 2.0 * cbound * q ** (terms + 1) / denom


def _auto_terms(cbound, d, length, across, tol, cap=1 << 15):
    if cbound == 0:
        return 16
    q = np.exp(-np.pi * d / length)
    denom = (1.0 - q) * (-np.expm1(-2.0 * np.pi * across / length))
    need = np.log(tol * denom / (2.0 * cbound)) / np.log(q) - 1.0
    return int(min(max(16, np.ceil(need)), cap))


def dirichlet_rectangle(h, z, region=None, *, terms=64, tol=1e-8):
    """Dirichlet solution on a rectangle by four separated sine series.

    Parameters
    ----------
    h : mapping or BoundaryFunction
        Either ``{'bottom'|'top'|'left'|'right': float or callable}`` (a
        missing side means zero data) or a single function of the boundary
        point used on all four sides.
    z : complex or array
        Interior evaluation point(s).
    region : Region, default ``(-1, 1) x (0, 1)``
    terms : int or None
        Sine modes per side (``>= 16``); ``None`` picks the smallest count
        whose tail bound meets ``tol``.
    tol : float
        Maximum admissible tail bound.

    Raises
    ------
    TruncationError
        The tail bound at some evaluation point exceeds ``tol``.
    """
    region = region or Region.upper_rectangle()
    if region.kind != "rectangle":
        raise DomainError("dirichlet_rectangle needs a rectangle region")
    if terms is not None and terms < 16:
        raise ValueError("terms must be >= 16")
    if isinstance(h, Mapping):
        data = {s: h.get(s, 0.0) for s in _SIDES}
        unknown = set(h) - set(_SIDES)
        if unknown:
            raise ValueError(f"unknown rectangle sides {sorted(unknown)}")
    else:
        data = {s: h for s in _SIDES}
    zs = np.asarray(z, dtype=complex)
    if not np.all(region.contains(zs)):
        raise DomainError("dirichlet_rectangle needs interior points")
    x = zs.real - region.x_lo
    y = zs.imag - region.y_lo
    a = region.x_hi - region.x_lo
    b = region.y_hi - region.y_lo
    # (tangential coordinate, distance to the side, distance from the opposite side)
    local = {
        "bottom": (x, y, b - y),
        "top": (x, b - y, y),
        "left": (y, x, a - x),
        "right": (y, a - x, x),
    }
    total = np.zeros(zs.shape, dtype=complex)
    for side in _SIDES:
        d_side = data[side]
        if np.isscalar(d_side) and d_side == 0:
            continue
        length, across, param = _side_geometry(region, side)
        s, dist, opp = local[side]
        cb_probe = abs(d_side) if np.isscalar(d_side) else None
        if cb_probe is None:
            _, cb_probe = _side_coefficients(d_side, length, param, 16)
        dmin = float(np.min(dist))
        n_terms = terms if terms is not None else _auto_terms(2 * cb_probe, dmin, length, across, tol)
        coeff, cbound = _side_coefficients(d_side, length, param, n_terms)
        tail = _tail_bound(max(2 * cbound, np.max(np.abs(coeff))), dmin, length, across, n_terms)
        if tail > tol:
            raise TruncationError(
                f"{side} series tail bound {tail:.3g} exceeds tol {tol:.3g} with {n_terms} terms"
            )
        n = np.arange(1, n_terms + 1)
        k = n * np.pi / length
        flat_s = np.ravel(s)[:, None]
        flat_opp = np.ravel(opp)[:, None]
        ratio = _sinh_ratio(k[None, :] * flat_opp, np.full((1, n_terms), 1.0) * k[None, :] * across)
        contrib = (np.sin(k[None, :] * flat_s) * ratio) @ coeff
        total += contrib.reshape(zs.shape)
    if np.all(total.imag == 0):
        total = total.real
    return total.item() if total.ndim == 0 else total


def rectangle_harmonic_measure(region, z, side, *, terms=None, tol=1e-10):
    """Harmonic measure of one side of a rectangle seen from ``z``."""
    if side not in _SIDES:
        raise ValueError(f"unknown side {side!r}")
    return dirichlet_rectangle({side: 1.0}, z, region, terms=terms, tol=tol)


# ---------------------------------------------------------------------------
# Cauchy area transform


def _smoothstep(x):
    x = np.clip(x, 0.0, 1.0)
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0)


@dataclass(frozen=True)
class AreaRule:
    """2D quadrature rule over a bounded domain.

    ``nodes``/``weights`` integrate ``dm2`` over the domain; ``indicator``
    tests domain membership for the polar refinement ring; ``refine_radius``
    maps an evaluation point to the ring radius (it must exceed a few local
    node spacings so the far-field sum resolves the cutoff).
    """

    nodes: np.ndarray
    weights: np.ndarray
    indicator: Callable
    refine_radius: Callable
    ring_nodes: tuple = (24, 48)

    @classmethod
    def disc(cls, radius=1.0, center=0.0, n_r=128, n_phi=128, ring=(24, 48)):
        """Polar tensor rule: Gauss-Legendre in ``r``, trapezoid in the angle."""
        x, w = np.polynomial.legendre.leggauss(n_r)
        r = 0.5 * radius * (x + 1.0)
        wr = 0.5 * radius * w * r
        phi = TWO_PI * (np.arange(n_phi) + 0.5) / n_phi
        nodes = center + (r[:, None] * np.exp(1j * phi[None, :]))
        weights = wr[:, None] * np.full(n_phi, TWO_PI / n_phi)[None, :]
        rho = 4.0 * max(radius / n_r * 2.0, TWO_PI * radius / n_phi)
        return cls(
            nodes=nodes.ravel(),
            weights=weights.ravel(),
            indicator=lambda zeta: np.abs(zeta - center) < radius,
            refine_radius=lambda z: rho,
            ring_nodes=ring,
        )


def _polar_ring(z, rho, F, indicator, n_r, n_phi):
    x, w = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * rho * (x + 1.0)
    wr = 0.5 * rho * w
    phi = TWO_PI * np.arange(n_phi) / n_phi
    e = np.exp(1j * phi)
    zeta = z + r[:, None] * e[None, :]
    inside = indicator(zeta)
    vals = np.zeros(zeta.shape, dtype=complex)
    if np.any(inside):
        vals[inside] = F(zeta[inside])
    cut = 1.0 - _smoothstep((r / rho - 0.25) / 0.75)
    # F/(z - zeta) * r dr dphi = -F e^{-i phi} dr dphi
    integrand = -vals * np.conj(e)[None, :] * cut[:, None]
    return np.sum(wr[:, None] * integrand) * (TWO_PI / n_phi)


def cauchy_area_transform(F, z, rule: AreaRule, *, node_values=None):
    """``(1/2pi) * int_D F(zeta) / (z - zeta) dm2(zeta)``.

    The integrand is split with a smooth radial cutoff around ``z``: the
    outer part is summed on the tensor rule, the inner part is integrated in
    polar coordinates centred at ``z`` where the ``1/|z - zeta|`` factor is
    cancelled by the Jacobian.

    Parameters
    ----------
    F : callable
        Vectorized density on the domain.
    z : complex or array of complex
    rule : AreaRule
    node_values : array, optional
        Precomputed ``F(rule.nodes)``.
    """
    zs = np.asarray(z, dtype=complex)
    fv = F(rule.nodes) if node_values is None else node_values
    fv = np.asarray(fv, dtype=complex)
    wf = rule.weights * fv
    mask = wf != 0
    nodes = rule.nodes[mask]
    wf = wf[mask]
    out = np.empty(zs.shape, dtype=complex)
    n_r, n_phi = rule.ring_nodes
    for idx, zz in np.ndenumerate(zs):
        zz = complex(zz)
        rho = float(rule.refine_radius(zz))
        diff = zz - nodes
        dist = np.abs(diff)
        near = dist < rho
        with np.errstate(divide="ignore", invalid="ignore"):
            weight = 1.0 - _smoothstep((dist / rho - 0.25) / 0.75)
            term = np.where(dist > 0, wf * (1.0 - weight) / diff, 0.0)
        acc = np.sum(term)
        if np.any(near):
            acc += _polar_ring(zz, rho, F, rule.indicator, n_r, n_phi)
        out[idx] = acc / TWO_PI
    return out.item() if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# isolated singularity expansion


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Coefficients of ``a log r + sum_{-m<=n<=-1} (a_n r^n cos n phi + b_n r^n sin n phi) + w0``.

    ``a_neg[k-1]`` and ``b_neg[k-1]`` hold ``a_{-k}`` and ``b_{-k}``.
    ``remainder_bound`` is the sampled sup of ``|w0|`` on the inner circle.
    """

    a: float
    a_neg: np.ndarray
    b_neg: np.ndarray
    remainder_bound: float
    constant: float = 0.0

    def __post_init__(self):
        vals = np.concatenate([[self.a, self.remainder_bound], self.a_neg, self.b_neg])
        if not np.all(np.isfinite(vals)):
            raise ValueError("expansion coefficients must be finite")

    def singular_part(self, z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        phi = np.angle(z)
        out = self.a * np.log(r)
        for k in range(1, len(self.a_neg) + 1):
            out = out + r ** (-k) * (self.a_neg[k - 1] * np.cos(-k * phi)
                                     + self.b_neg[k - 1] * np.sin(-k * phi))
        return out


def singularity_expansion(u, rho1, rho2, m, *, n_angles=None):
    """Extract the log and negative-power coefficients of a harmonic function
    around an isolated singularity at 0.

    ``u`` is sampled on ``|z| = rho1`` and ``|z| = rho2``; each angular
    frequency ``k <= m`` gives a 2x2 system in the ``r^k`` and ``r^-k``
    coefficients (``1`` and ``log r`` for ``k = 0``).

    Raises
    ------
    ConditioningError
        ``rho1 / rho2 > 0.95``.
    AliasingError
        Fewer than ``4 m`` angular samples.
    """
    if not (0 < rho1 < rho2):
        raise ValueError("need 0 < rho1 < rho2")
    if m < 1:
        raise ValueError("m must be >= 1")
    if rho1 / rho2 > 0.95:
        raise ConditioningError(f"rho1/rho2 = {rho1 / rho2:.3f} > 0.95; circles too close")
    n = n_angles if n_angles is not None else max(64, 8 * m)
    if n < 4 * m:
        raise AliasingError(f"{n} angular samples cannot resolve {m} modes (need >= {4 * m})")
    phi = TWO_PI * np.arange(n) / n

    def modes(r):
        vals = np.real(np.asarray(u(r * np.exp(1j * phi))))
        c = np.fft.rfft(vals) / n
        cos_c = 2.0 * c.real
        sin_c = -2.0 * c.imag
        cos_c[0] = c[0].real
        return cos_c, sin_c

    c1, s1 = modes(rho1)
    c2, s2 = modes(rho2)
    m0 = np.array([[1.0, np.log(rho1)], [1.0, np.log(rho2)]])
    const, a_log = np.linalg.solve(m0, [c1[0], c2[0]])
    a_neg = np.zeros(m)
    b_neg = np.zeros(m)
    for k in range(1, m + 1):
        mk = np.array([[rho1 ** k, rho1 ** (-k)], [rho2 ** k, rho2 ** (-k)]])
        if np.linalg.cond(mk) > 1e12:
            raise ConditioningError(f"frequency {k} system is ill-conditioned")
        _, a_neg[k - 1] = np.linalg.solve(mk, [c1[k], c2[k]])
        # sin(-k phi) = -sin(k phi)
        _, bk = np.linalg.solve(mk, [s1[k], s2[k]])
        b_neg[k - 1] = -bk
    z1 = rho1 * np.exp(1j * phi)
    coeffs = ExpansionCoefficients(a=float(a_log), a_neg=a_neg, b_neg=b_neg,
                                   remainder_bound=0.0, constant=float(const))
    w0 = np.real(np.asarray(u(z1))) - coeffs.singular_part(z1)
    return ExpansionCoefficients(a=float(a_log), a_neg=a_neg, b_neg=b_neg,
                                 remainder_bound=float(np.max(np.abs(w0))),
                                 constant=float(const))
