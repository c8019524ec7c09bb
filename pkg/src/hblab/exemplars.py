"""Explicit test functions: the derivative-of-Poisson-kernel counterexample,
the exponential-growth construction sharp for the Stolz-limit theorem, a
catalog of functions analytic off the real axis, and synthetic fields.

Every exemplar is addressable by name through :func:`resolve`.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .fields import HarmonicField
from .geometry import Region
from .potential import AreaRule, boundary_rule, cauchy_area_transform, poisson_extension

__all__ = [
    "u0_eval",
    "u0_field",
    "power_field",
    "catalog_eval",
    "catalog_field",
    "sector_field",
    "rect_field",
    "WolfParams",
    "WolfField",
    "wolf_choose_K",
    "wolf_assemble",
    "wolf_plateau_arc",
    "resolve",
    "list_exemplars",
]


# ---------------------------------------------------------------------------
# the counterexample u0 = dP/dphi


def u0_eval(r, phi, mode="closed", N=200):
    """Angular derivative of the half-normalized disc Poisson kernel.

    Parameters
    ----------
    r, phi : array_like
        Polar coordinates, ``0 <= r < 1``.
    mode : {'closed', 'series'}
        ``closed`` gives ``-r (1 - r^2) sin(phi) / (1 - 2 r cos(phi) + r^2)^2``;
        ``series`` gives the partial sum ``-sum_{n=1}^{N} n r^n sin(n phi)``.
    N : int
        Series truncation, at least 16.

    Returns
    -------
    float or ndarray
    """
    r = np.asarray(r, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if np.any((r < 0) | (r >= 1)):
        raise DomainError("u0 is defined for 0 <= r < 1")
    if mode == "closed":
        denom = (1.0 - r) ** 2 + 4.0 * r * np.sin(phi / 2) ** 2
        out = -r * (1.0 - r) * (1.0 + r) * np.sin(phi) / denom ** 2
    elif mode == "series":
        if N < 16:
            raise ValueError("series mode needs N >= 16")
        r_b, phi_b = np.broadcast_arrays(r, phi)
        out = np.zeros(r_b.shape)
        # Horner-free direct sum; N is small and the terms are bounded
        rn = np.ones(r_b.shape)
        for n in range(1, N + 1):
            rn = rn * r_b
            out -= n * rn * np.sin(n * phi_b)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return float(out) if out.ndim == 0 else out


def _u0_tail(N, r_max):
    # sum_{n>N} n r^n = r^{N+1} ((N+1) - N r) / (1 - r)^2
    return r_max ** (N + 1) * ((N + 1) - N * r_max) / (1.0 - r_max) ** 2


def u0_field(mode="closed", N=200, r_max=0.99):
    """:func:`u0_eval` wrapped as a harmonic field on the unit disc.

    For ``mode='series'`` the declared tail bound is valid on ``|z| <= r_max``.
    """
    def func(z):
        z = np.asarray(z, dtype=complex)
        return u0_eval(np.abs(z), np.angle(z), mode=mode, N=N)

    if mode == "series":
        return HarmonicField(func, Region.unit_disc(), metadata="series", name="u0",
                             truncation=N, tail_bound=_u0_tail(N, r_max),
                             declared={"r_max": r_max})
    return HarmonicField(func, Region.unit_disc(), name="u0")


def power_field(m):
    """Synthetic radial field ``(1 - |z|)^{-m}`` with planted growth exponent ``m``."""
    m = float(m)
    return HarmonicField(lambda z: (1.0 - np.abs(z)) ** (-m), Region.unit_disc(),
                         claimed_regularity="subharmonic_nonneg", name=f"power({m:g})",
                         declared={"planted_exponent": m})


# ---------------------------------------------------------------------------
# catalog of functions analytic off the real axis in (-1, 1) x (-1, 1)

_CATALOG = ("rational_pole", "boundary_jump", "principal_log", "principal_log_cut_inside")


def catalog_eval(name, z):
    """Evaluate a catalog function.

    ``rational_pole`` is ``1/(z - 2)``; ``boundary_jump`` is 1 above the real
    axis and 0 below; ``principal_log`` is ``Log(z + 1.5)`` whose cut misses
    the square; ``principal_log_cut_inside`` is ``Log z`` whose cut crosses
    the real segment of the square.

    Raises
    ------
    DomainError
        On a branch cut or, for ``boundary_jump``, on the real axis.
    """
    z = np.asarray(z, dtype=complex)
    if name == "rational_pole":
        if np.any(z == 2):
            raise DomainError("rational_pole evaluated at its pole")
        out = 1.0 / (z - 2.0)
    elif name == "boundary_jump":
        if np.any(z.imag == 0):
            raise DomainError("boundary_jump is undefined on the real axis")
        out = np.where(z.imag > 0, 1.0 + 0j, 0.0 + 0j)
    elif name == "principal_log":
        w = z + 1.5
        if np.any((w.imag == 0) & (w.real <= 0)):
            raise DomainError("principal_log evaluated on its cut")
        out = np.log(w)
    elif name == "principal_log_cut_inside":
        if np.any((z.imag == 0) & (z.real <= 0)):
            raise DomainError("Log z evaluated on its cut")
        out = np.log(z)
    else:
        raise KeyError(f"unknown catalog entry {name!r}")
    return complex(out) if out.ndim == 0 else out


_CATALOG_REAL = {
    "rational_pole": lambda x: 1.0 / (np.asarray(x, dtype=float) - 2.0),
    "principal_log": lambda x: np.log(np.asarray(x, dtype=float) + 1.5),
}


def catalog_field(name):
    if name not in _CATALOG:
        raise KeyError(f"unknown catalog entry {name!r}")
    return HarmonicField(
        lambda z: catalog_eval(name, z),
        Region.square(),
        claimed_regularity="analytic_off_reals",
        name=f"catalog:{name}",
        closed_form=_CATALOG_REAL.get(name),
    )


# ---------------------------------------------------------------------------
# sector fields for the Phragmen-Lindelof auditor


def sector_field(name, theta=np.pi / 2, rho=1.0, symmetric=False):
    """Harmonic fields on a finite sector.

    ``inv_sqrt`` is ``Re z^{-1/2}``, ``inv`` is ``Re(1/z)`` and ``one`` is the
    constant 1 (all principal branches).
    """
    region = Region.finite_sector(theta, rho, symmetric=symmetric)
    if name == "inv_sqrt":
        func = lambda z: np.real(np.asarray(z, dtype=complex) ** -0.5)
    elif name == "inv":
        func = lambda z: np.real(1.0 / np.asarray(z, dtype=complex))
    elif name == "one":
        func = lambda z: np.ones(np.shape(z))
    else:
        raise KeyError(f"unknown sector field {name!r}")
    return HarmonicField(func, region, name=f"sector:{name}")


def rect_field(name):
    """Fields on the upper rectangle ``(-1, 1) x (0, 1)``.

    ``height`` is ``Im z`` (harmonic, vanishing linearly on the real
    segment) and ``one`` is the constant 1.
    """
    region = Region.upper_rectangle()
    if name == "height":
        func = lambda z: np.imag(np.asarray(z, dtype=complex))
    elif name == "one":
        func = lambda z: np.ones(np.shape(z))
    else:
        raise KeyError(f"unknown rectangle field {name!r}")
    return HarmonicField(func, region, name=f"rect:{name}")


# ---------------------------------------------------------------------------
# exponential-growth construction


def _smoothstep(x):
    x = np.clip(x, 0.0, 1.0)
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0)


def _one_minus(z):
    """``1 - z`` without cancellation near ``z = 1``:
    ``(1 - r) - 2 i r sin(s/2) e^{i s/2}`` for ``z = r e^{i s}``."""
    r = np.abs(z)
    s = np.angle(z)
    return (1.0 - r) - 2j * r * np.sin(s / 2) * np.exp(0.5j * s)


def _smoothstep_prime(x):
    inside = (x > 0) & (x < 1)
    x = np.clip(x, 0.0, 1.0)
    return np.where(inside, 30.0 * x * x * (1.0 - x) ** 2, 0.0)


@dataclass(frozen=True)
class WolfParams:
    """Parameters of the construction.

    Attributes
    ----------
    theta : float
        Stolz opening, in ``(0, pi/2)``; the growth rate is ``pi/(2 theta)``.
    beta : float
        Width parameter of the cutoff transition, ``0 < beta < theta/4``.
    epsilon : float
        Outer coefficient of the growth.
    A : int
        Even exponent of the ``((1 - z)/(1 + z))^A`` factor, ``>= 4``.
    K : float, optional
        Real shift; :func:`wolf_choose_K` fills it in.
    band_width : float, optional
        Radial extent of the domain beyond the unit circle along the cutoff
        band; defaults to ``beta / 10``.
    n_s, n_psi : int
        Log-radial and angular node counts of the band quadrature.
    t_min : float
        Distance to 1 below which the band density is treated as zero.
    ring : tuple of int
        Polar refinement nodes (radial, angular).
    ring_scale : float
        Refinement radius in units of the local log-radial spacing.
    boundary_panels, boundary_order : int
        Boundary rule used for the harmonic correction ``v``.
    """

    theta: float = 0.3 * np.pi
    beta: float = 0.05
    epsilon: float = 1.0
    A: int = 6
    K: Optional[float] = None
    band_width: Optional[float] = None
    n_s: int = 768
    n_psi: int = 16
    t_min: float = 1e-2
    ring: tuple = (64, 320)
    ring_scale: float = 8.0
    boundary_panels: int = 256
    boundary_order: int = 16

    def __post_init__(self):
        if not (0.0 < self.theta < np.pi / 2):
            raise ValueError("theta must lie in (0, pi/2)")
        if not (0.0 < self.beta < self.theta / 4):
            raise ValueError("beta must satisfy 0 < beta < theta/4")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if int(self.A) != self.A or self.A % 2 or self.A < 4:
            raise ValueError("A must be an even integer >= 4")
        if self.band_width is None:
            object.__setattr__(self, "band_width", self.beta / 10.0)
        object.__setattr__(self, "ring", tuple(self.ring))

    @property
    def a(self):
        return np.pi / (2.0 * self.theta)

    @property
    def psi_lo(self):
        return np.pi / 2 - self.theta - 2.0 * self.beta / 3.0

    @property
    def psi_hi(self):
        return np.pi / 2 - self.theta - self.beta / 3.0

    def with_K(self, K):
        d = {f: getattr(self, f) for f in self.__dataclass_fields__}
        d["K"] = float(K)
        return WolfParams(**d)

    def to_dict(self):
        d = {f: getattr(self, f) for f in self.__dataclass_fields__}
        d["ring"] = list(self.ring)
        return d


def wolf_choose_K(params: WolfParams):
    """Real shift ``K`` that places ``K + i eps (1+z)/(1-z)`` on ``e^{i theta} R_+``
    along the ray ``arg(1 - z) = pi/2 - theta``.

    The map ``z -> i eps (1+z)/(1-z)`` sends the ray to a straight line; two
    samples give its direction and offset and a third verifies the fit.

    Raises
    ------
    DomainError
        The sampled line direction deviates from ``e^{i theta}`` by more than
        1e-6 (up to sign).
    """
    th, eps = params.theta, params.epsilon
    psi = np.pi / 2 - th
    t_exit = 2.0 * np.cos(psi)
    ts = np.array([0.2, 0.5, 0.35]) * t_exit
    z = 1.0 - ts * np.exp(1j * psi)
    q = 1j * eps * (1.0 + z) / (1.0 - z)
    rot = np.exp(1j * th)
    if eps > 0:
        d = (q[1] - q[0]) / abs(q[1] - q[0])
        if min(abs(d - rot), abs(d + rot)) > 1e-6:
            raise DomainError(f"sampled ray image has direction {d}, not e^(i theta)")
    # Im(e^{-i theta}(q + K)) = 0
    K = float(np.imag(np.conj(rot) * q[0]) / np.sin(th))
    resid = abs(np.imag(np.conj(rot) * (q[2] + K)))
    scale = max(1.0, abs(q[2]))
    if resid > 1e-8 * scale:
        raise DomainError(f"K verification residual {resid:.3g} at the third sample")
    return K


@dataclass
class WolfField:
    """Evaluators and diagnostics of the assembled construction.

    ``w = v + Im H`` with ``H = h - h1``; ``v`` is the harmonic extension of
    the boundary values of ``Im h1``.
    """

    params: WolfParams
    f: Callable
    g: Callable
    h: Callable
    h_boundary: Callable
    F: Callable
    h1: Callable
    H: Callable
    v: Callable
    w: Callable
    diagnostics: dict = field(default_factory=dict)

    def as_field(self):
        return HarmonicField(self.w, Region.unit_disc(), metadata="composite",
                             claimed_regularity="harmonic", name="wolf",
                             declared={"params": self.params.to_dict()})


def _band_rule(p: WolfParams):
    R = 1.0 + p.band_width
    xp, wp = np.polynomial.legendre.leggauss(p.n_psi)
    half_psi = 0.5 * (p.psi_hi - p.psi_lo)
    psi = 0.5 * (p.psi_hi + p.psi_lo) + half_psi * xp
    wpsi = half_psi * wp
    order = 8
    n_pan = max(1, p.n_s // order)
    xs, ws = np.polynomial.legendre.leggauss(order)
    nodes, weights = [], []
    for ps, wps in zip(psi, wpsi):
        c = np.cos(ps)
        t_max = c + np.sqrt(c * c + R * R - 1.0)
        s_edges = np.linspace(np.log(p.t_min), np.log(t_max), n_pan + 1)
        a, b = s_edges[:-1], s_edges[1:]
        hs = 0.5 * (b - a)
        s = (0.5 * (a + b))[:, None] + hs[:, None] * xs[None, :]
        wsn = (hs[:, None] * ws[None, :]).ravel()
        t = np.exp(s.ravel())
        nodes.append(1.0 - t * np.exp(1j * ps))
        # dm2 = t^2 ds dpsi
        weights.append(t * t * wsn * wps)
    ds = (np.log(2.0) - np.log(p.t_min)) / n_pan / order * 2.0
    return np.concatenate(nodes), np.concatenate(weights), ds


def wolf_assemble(params: WolfParams) -> WolfField:
    """Build ``f, g, h, h1, H, v, w`` for the given parameters.

    ``h1`` is the Cauchy area transform of ``(d/dx + i d/dy) h`` over the
    cutoff band, which makes ``h - h1`` holomorphic in the disc. The band
    density is evaluated analytically as ``f`` times the gradient of the
    cutoff.
    """
    p = params if params.K is not None else params.with_K(wolf_choose_K(params))
    a, A, eps, K = p.a, int(p.A), p.epsilon, p.K
    R = 1.0 + p.band_width

    def psi_of(z):
        return np.angle(_one_minus(z))

    def g(z):
        z = np.asarray(z, dtype=complex)
        return _smoothstep((psi_of(z) - p.psi_lo) / (p.psi_hi - p.psi_lo))

    psi_delta = np.pi / 2 - p.theta - p.beta

    def f_parts(om, op):
        """``f`` from ``om = 1 - z`` and ``op = 1 + z``."""
        out = np.zeros(om.shape, dtype=complex)
        live = (np.angle(om) > psi_delta) & (om != 0)
        if not np.any(live):
            return out
        om, op = om[live], op[live]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            W = K + 1j * eps * op / om
            # branch with arg W in (-pi/2, 3pi/2]: W stays in the upper
            # half-plane on the disc, so the power is analytic there
            ang = np.angle(W)
            ang = np.where(ang <= -np.pi / 2, ang + 2.0 * np.pi, ang)
            Wa = np.abs(W) ** a * np.exp(1j * a * ang)
            # A is even, so the branch of the logarithm does not matter
            out[live] = np.exp(A * np.log(om / op) + Wa)
        return out

    def f(z):
        """Zero off ``{arg(1 - z) > pi/2 - theta - beta}``; one exponential on it."""
        z = np.asarray(z, dtype=complex)
        return f_parts(_one_minus(z), 1.0 + z)

    def h(z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        gz = g(z)
        live = (gz > 0) & (z != 1.0)
        if np.any(live):
            with np.errstate(invalid="ignore", over="ignore"):
                out[live] = f(z[live]) * gz[live]
        return out

    def h_boundary(sigma):
        """Boundary values ``h(e^{i sigma})`` computed from the angle itself.

        On the circle ``(1 + z)/(1 - z) = i cot(sigma/2)`` is exactly
        imaginary; evaluating through a rounded ``z`` would perturb the phase
        by a relative amount proportional to ``|W|^a``. Where
        ``W = K - eps cot(sigma/2)`` is nonnegative, ``h`` is real and is
        evaluated in real arithmetic as
        ``(-1)^(A/2) exp(A log|tan(sigma/2)| + W^a) g``.
        """
        sigma = np.asarray(sigma, dtype=float)
        half = np.exp(0.5j * sigma)
        om = -2j * np.sin(sigma / 2) * half
        op = 2.0 * np.cos(sigma / 2) * half
        gz = _smoothstep((np.angle(om) - p.psi_lo) / (p.psi_hi - p.psi_lo))
        out = np.zeros(sigma.shape, dtype=complex)
        live = gz > 0
        if not np.any(live):
            return out
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            t = np.tan(sigma / 2)
            Wr = K - eps / t
            real_branch = live & (Wr >= 0) & (t != 0)
            sign = -1.0 if (A // 2) % 2 else 1.0
            out[real_branch] = sign * np.exp(A * np.log(np.abs(t[real_branch]))
                                             + Wr[real_branch] ** a) * gz[real_branch]
            rest = live & ~real_branch
            if np.any(rest):
                out[rest] = f_parts(om[rest], op[rest]) * gz[rest]
        return out

    def F(z):
        """``(d/dx + i d/dy) h = -i f g~'(psi) / conj(1 - z)``, twice the standard dbar."""
        z = np.asarray(z, dtype=complex)
        x = (psi_of(z) - p.psi_lo) / (p.psi_hi - p.psi_lo)
        gp = _smoothstep_prime(x) / (p.psi_hi - p.psi_lo)
        out = np.zeros(z.shape, dtype=complex)
        live = gp != 0
        if np.any(live):
            zl = z[live]
            out[live] = -1j * f(zl) * gp[live] / np.conj(_one_minus(zl))
        return out

    nodes, weights, ds = _band_rule(p)
    fv = F(nodes)
    keep = np.abs(fv * weights) > 0
    rule = AreaRule(
        nodes=nodes[keep],
        weights=weights[keep],
        indicator=lambda zeta: _band_indicator(zeta, p, R),
        refine_radius=lambda z: p.ring_scale * ds * max(abs(1.0 - z), p.t_min),
        ring_nodes=p.ring,
    )
    fv = fv[keep]

    def h1(z):
        return cauchy_area_transform(F, z, rule, node_values=fv)

    # boundary data of Im h1 on a rule graded toward 1 and the band crossings
    sig_lo = np.pi + 2.0 * p.psi_lo - 2.0 * np.pi
    sig_hi = np.pi + 2.0 * p.psi_hi - 2.0 * np.pi
    tau, wtau = boundary_rule(p.boundary_panels, p.boundary_order,
                              graded_at=(0.0, sig_lo, sig_hi), levels=24)
    bvals = np.imag(h1(np.exp(1j * tau)))

    def H(z):
        return h(z) - h1(z)

    def v(z):
        z = np.asarray(z, dtype=complex)
        out = np.empty(z.shape)
        inside = np.abs(z) < 1.0
        if np.any(inside):
            out[inside] = poisson_extension(bvals, tau, wtau, z[inside],
                                            panel_order=p.boundary_order)
        if np.any(~inside):
            # boundary values are continuous; the extension attains them
            out[~inside] = np.imag(h1(z[~inside]))
        return out.item() if out.ndim == 0 else out

    def w(z):
        z = np.asarray(z, dtype=complex)
        out = np.asarray(v(z)) + np.imag(H(z))
        return out.item() if np.ndim(out) == 0 else out

    # regime check: the growth of h must stand out from quadrature noise
    probe = {}
    for r in (0.8, 0.95):
        zc = r * np.exp(1j * np.linspace(-np.pi, np.pi, 8192, endpoint=False))
        with np.errstate(over="ignore", invalid="ignore"):
            probe[r] = float(np.log(np.nanmax(np.abs(h(zc))) + 1e-300))
    if probe[0.95] - probe[0.8] < 5.0:
        warnings.warn(
            "growth of the construction does not separate from noise on r in [0.8, 0.95]; "
            "increase epsilon or decrease A", RuntimeWarning, stacklevel=2)

    diagnostics = {
        "log_max_h": probe,
        "K": K,
        "K_closed_form": -eps / np.tan(p.theta),
        "band_nodes": int(rule.nodes.size),
        "boundary_nodes": int(tau.size),
        "boundary_im_h1_max": float(np.max(np.abs(bvals))),
    }
    return WolfField(params=p, f=f, g=g, h=h, h_boundary=h_boundary, F=F, h1=h1, H=H, v=v, w=w,
                     diagnostics=diagnostics)


def _band_indicator(zeta, p, R):
    ps = np.angle(_one_minus(zeta))
    return (ps >= p.psi_lo) & (ps <= p.psi_hi) & (np.abs(zeta) < R)


def wolf_plateau_arc(params: WolfParams, n=512, s_max=None):
    """Angles ``sigma = -s`` of the circle points ``e^{-i s}`` where the cutoff is 1.

    With ``s_max=None`` the full plateau ``arg(1 - z) >= pi/2 - theta - beta/3``
    is covered (``0 < s <= 2 theta + 2 beta/3``). Feed the result to
    ``WolfField.h_boundary``.
    """
    if s_max is None:
        s_max = 2.0 * params.theta + 2.0 * params.beta / 3.0
    s = np.linspace(0.0, s_max, n + 1)[1:]
    return -s


# ---------------------------------------------------------------------------
# registry

_WOLF_CACHE: dict = {}


def _wolf_field(**kw):
    key = tuple(sorted(kw.items()))
    if key not in _WOLF_CACHE:
        _WOLF_CACHE[key] = wolf_assemble(WolfParams(**kw)).as_field()
    return _WOLF_CACHE[key]


_REGISTRY = {
    "u0": lambda **kw: u0_field(**kw),
    "wolf": _wolf_field,
    "zero": lambda **kw: HarmonicField.constant(0.0, name="zero", **kw),
    "one": lambda **kw: HarmonicField.constant(1.0, name="one", **kw),
    "power": lambda m=2.0: power_field(m),
}
for _name in _CATALOG:
    _REGISTRY[f"catalog:{_name}"] = (lambda nm: (lambda: catalog_field(nm)))(_name)
for _name in ("height", "one"):
    _REGISTRY[f"rect:{_name}"] = (lambda nm: (lambda: rect_field(nm)))(_name)
for _name in ("inv_sqrt", "inv", "one"):
    _REGISTRY[f"sector:{_name}"] = (lambda nm: (lambda **kw: sector_field(nm, **kw)))(_name)


def list_exemplars():
    return sorted(_REGISTRY)


def resolve(name, **params):
    """Look up an exemplar by name and build it with keyword parameters."""
    try:
        maker = _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown exemplar {name!r}; known: {', '.join(list_exemplars())}") from None
    return maker(**params)
