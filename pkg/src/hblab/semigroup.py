"""Finite models of operator semigroups and the resolvent stability criterion.

Operators are diagonal sequences (truncated at ``N``) or dense matrices, in
one of two modes: ``continuous`` (a generator ``A`` and its semigroup
``T(t) = e^{tA}``) or ``discrete`` (an operator ``T`` and its powers).

The criterion probe tabulates ``alpha^{(p-1)/p} ||R(alpha + i beta, A) x||``
as ``alpha -> 0`` (or ``(r-1)^{(p-1)/p} ||R(r xi, T) x||`` as ``r -> 1``) and
fits the log-log slope; the Carleman transform and the resolvent identity
for complete trajectories are evaluated by adaptive quadrature with an
explicit tail bound.
"""
from __future__ import annotations

import ast
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate, linalg

from ._parallel import ordered_map
from .boundary import tail_slope
from .errors import (EvolutionOverflowError, HorizonError, SingularSolveError,
                     SpectrumHitError)

__all__ = [
    "OperatorModel",
    "FourierType",
    "CriterionRow",
    "CriterionReport",
    "BoundedReport",
    "StabilityReport",
    "TrajectoryModel",
    "CarlemanResult",
    "IdentityReport",
    "parse_rule",
    "resolvent_apply",
    "evolve",
    "bounded_check",
    "stability_probe",
    "criterion_probe",
    "fractional_resolve",
    "carleman_transform",
    "carleman_identity_check",
    "singular_set_probe",
    "DEFAULT_ALPHAS",
]

DEFAULT_ALPHAS = tuple((10.0 ** -np.linspace(2.0, 8.0, 13)).tolist())

_MODES = ("continuous", "discrete")


# ---------------------------------------------------------------------------
# rule grammar for diagonal entries

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)
_ALLOWED_UNARY = (ast.UAdd, ast.USub)


def _compile_rule(expr):
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse rule {expr!r}: {exc.msg}") from None

    def check(node):
        if isinstance(node, ast.Expression):
            return check(node.body)
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, _ALLOWED_UNARY):
                    exp = exp.operand
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ValueError("exponents in rules must be integer literals")
            check(node.left)
            check(node.right)
            return
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, _ALLOWED_UNARY):
            return check(node.operand)
        if isinstance(node, ast.Constant) and type(node.value) in (int, float):
            return
        if isinstance(node, ast.Name) and node.id in ("k", "i"):
            return
        raise ValueError(f"disallowed element in rule {expr!r}: {ast.dump(node)[:40]}")

    check(tree)
    return compile(tree, "<rule>", "eval")


def parse_rule(expr, N):
    """Evaluate a rule for ``lambda_k``, ``k = 1..N``.

    The grammar allows numbers, the index ``k``, the imaginary unit ``i``,
    parentheses, ``+ - * /`` and ``**`` with integer literal exponents, so
    rules are rational functions of ``k`` and ``i k``, e.g. ``-1/k + i*k``.

    Raises
    ------
    ValueError
        Disallowed syntax, or a non-finite entry.
    """
    code = _compile_rule(expr)
    k = np.arange(1, int(N) + 1, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = eval(code, {"__builtins__": {}}, {"k": k, "i": 1j})
    vals = np.broadcast_to(np.asarray(vals, dtype=complex), k.shape).copy()
    if not np.all(np.isfinite(vals)):
        raise ValueError(f"rule {expr!r} produced non-finite entries")
    return vals


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class OperatorModel:
    """A diagonal or dense operator model.

    Use :meth:`diagonal`, :meth:`from_rule` or :meth:`matrix`. For diagonal
    models in continuous mode, ``Re lambda_k <= 0`` is enforced (bounded
    semigroup); in discrete mode ``|mu_k| <= 1`` (power bounded). Pass
    ``check=False`` to build a model outside these classes, e.g. to study
    unbounded growth. Matrix models are never assumed bounded; use
    :func:`bounded_check`.
    """

    kind: str
    mode: str
    lam: Optional[np.ndarray] = None
    A: Optional[np.ndarray] = None
    name: str = "operator"

    def __post_init__(self):
        if self.kind not in ("diagonal", "matrix"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.mode not in _MODES:
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def diagonal(cls, lam, mode="continuous", *, check=True, name="diagonal"):
        lam = np.asarray(lam, dtype=complex).ravel()
        if lam.size == 0:
            raise ValueError("diagonal model needs at least one entry")
        if check:
            if mode == "continuous" and np.any(lam.real > 0):
                k = int(np.argmax(lam.real))
                raise ValueError(f"Re lambda_{k + 1} > 0: the semigroup is not bounded")
            if mode == "discrete" and np.any(np.abs(lam) > 1.0):
                k = int(np.argmax(np.abs(lam)))
                raise ValueError(f"|mu_{k + 1}| > 1: the operator is not power bounded")
        lam.setflags(write=False)
        return cls("diagonal", mode, lam=lam, name=name)

    @classmethod
    def from_rule(cls, expr, N=200, mode="continuous", *, check=True):
        return cls.diagonal(parse_rule(expr, N), mode, check=check, name=expr)

    @classmethod
    def matrix(cls, A, mode="continuous", name="matrix"):
        A = np.array(A, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("matrix model needs a square array")
        A.setflags(write=False)
        return cls("matrix", mode, A=A, name=name)

    @property
    def dim(self):
        return self.lam.size if self.kind == "diagonal" else self.A.shape[0]

    def adjoint(self):
        if self.kind == "diagonal":
            return OperatorModel.diagonal(np.conj(self.lam), self.mode, check=False,
                                          name=f"{self.name}*")
        return OperatorModel.matrix(self.A.conj().T, self.mode, name=f"{self.name}*")

    def to_dict(self):
        d = {"kind": self.kind, "mode": self.mode, "name": self.name, "dim": self.dim}
        return d


@dataclass(frozen=True)
class FourierType:
    """Fourier type exponent ``p`` in ``(1, 2]`` and its conjugate ``q``."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if p == 1.0:
            raise ValueError("Fourier type p = 1 is not meaningful for the criterion")
        if not (1.0 < p <= 2.0):
            raise ValueError("Fourier type p must lie in (1, 2]")
        object.__setattr__(self, "p", p)

    @property
    def q(self):
        return self.p / (self.p - 1.0)

    @property
    def weight_exponent(self):
        """``(p - 1)/p``."""
        return (self.p - 1.0) / self.p


def _vec(op, x):
    x = np.asarray(x, dtype=complex).ravel()
    if x.size != op.dim:
        raise ValueError(f"vector of length {x.size} does not match dimension {op.dim}")
    return x


# ---------------------------------------------------------------------------
# resolvent and evolution


def resolvent_apply(op: OperatorModel, lam, x):
    """``R(lam) x = (lam - A)^{-1} x``.

    Raises
    ------
    SpectrumHitError
        ``lam`` equals a diagonal entry (the offending indices are attached).
    SingularSolveError
        The dense solve fails or its residual exceeds ``1e-10 ||x||``.
    """
    x = _vec(op, x)
    lam = complex(lam)
    if op.kind == "diagonal":
        gap = lam - op.lam
        hit = np.abs(gap) <= 1e-14 * max(1.0, abs(lam))
        if np.any(hit):
            idx = np.flatnonzero(hit)
            raise SpectrumHitError(f"lambda = {lam} hits the spectrum at k = {idx + 1}",
                                   indices=idx + 1)
        return x / gap
    M = lam * np.eye(op.dim) - op.A
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", linalg.LinAlgWarning)
            lu = linalg.lu_factor(M, check_finite=True)
            y = linalg.lu_solve(lu, x)
    except (linalg.LinAlgError, linalg.LinAlgWarning, ValueError) as exc:
        raise SingularSolveError(f"resolvent solve failed at lambda = {lam}: {exc}") from exc
    res = np.linalg.norm(M @ y - x)
    if not np.isfinite(res) or res > 1e-10 * max(np.linalg.norm(x), 1e-300):
        if np.linalg.norm(x) > 0:
            raise SingularSolveError(f"resolvent residual {res:.3g} exceeds 1e-10 ||x||")
    return y


def _expm(op, t):
    A = op.A
    ev = np.linalg.eigvals(A)
    if t * float(np.max(ev.real)) > 700.0:
        raise EvolutionOverflowError(f"exp(tA) overflows at t = {t}")
    E = linalg.expm(t * A)
    if not np.all(np.isfinite(E)):
        raise EvolutionOverflowError(f"exp(tA) overflows at t = {t}")
    return E


def evolve(op: OperatorModel, time, x):
    """Orbit ``T(t) x`` (continuous mode) or ``T^n x`` (discrete mode).

    Matrix exponentials use scaling and squaring with Pade approximation;
    matrix powers use repeated squaring.

    Raises
    ------
    EvolutionOverflowError
    """
    x = _vec(op, x)
    if op.mode == "continuous":
        t = float(time)
        if t < 0:
            raise ValueError("continuous evolution needs t >= 0")
        if t == 0:
            return x.copy()
        if op.kind == "diagonal":
            return np.exp(op.lam * t) * x
        return _expm(op, t) @ x
    n = int(time)
    if n != time or n < 0:
        raise ValueError("discrete evolution needs an integer n >= 0")
    if n == 0:
        return x.copy()
    if op.kind == "diagonal":
        return op.lam ** n * x
    with np.errstate(over="raise", invalid="raise"):
        try:
            P = np.linalg.matrix_power(op.A, n)
        except FloatingPointError as exc:
            raise EvolutionOverflowError(f"T^{n} overflows") from exc
    return P @ x


def _operator_norm(op, time):
    if op.kind == "diagonal":
        if op.mode == "continuous":
            return float(np.max(np.exp(op.lam.real * float(time))))
        return float(np.max(np.abs(op.lam) ** int(time)))
    if op.mode == "continuous":
        E = np.eye(op.dim) if time == 0 else _expm(op, float(time))
    else:
        E = np.linalg.matrix_power(op.A, int(time))
    return float(np.linalg.norm(E, 2))


@dataclass(frozen=True)
class BoundedReport:
    """Operator norms along a schedule; ``exact`` when decided from the spectrum."""

    bounded: bool
    sup: float
    schedule: tuple
    norms: tuple
    trend_slope: float
    growth_flag: bool
    exact: bool

    def to_dict(self):
        return {"bounded": self.bounded, "sup": self.sup, "schedule": list(self.schedule),
                "norms": list(self.norms), "trend_slope": self.trend_slope,
                "growth_flag": self.growth_flag, "exact": self.exact}


def bounded_check(op: OperatorModel, schedule, *, slope_tol=0.1):
    """Boundedness of ``T(t)`` (or ``T^n``) along a schedule.

    Diagonal models are decided exactly from the entries (``max Re lambda_k
    <= 0`` or ``max |mu_k| <= 1``). Matrix models report the largest
    singular value per schedule point and flag growth when the log-log tail
    slope of the norms exceeds ``slope_tol``.
    """
    sched = np.asarray(schedule, dtype=float)
    if sched.size == 0:
        raise ValueError("bounded_check needs a nonempty schedule")
    norms = np.array([_operator_norm(op, t) for t in sched])
    pos = sched > 0
    slope = 0.0
    if np.count_nonzero(pos) >= 2 and np.all(norms[pos] > 0):
        slope, _ = tail_slope(np.log(sched[pos]), np.log(norms[pos]))
    flag = bool(slope > slope_tol)
    if op.kind == "diagonal":
        if op.mode == "continuous":
            bounded = bool(np.max(op.lam.real) <= 0)
        else:
            bounded = bool(np.max(np.abs(op.lam)) <= 1)
        exact = True
    else:
        bounded = not flag
        exact = False
    return BoundedReport(bounded=bounded, sup=float(np.max(norms)), schedule=tuple(sched.tolist()),
                         norms=tuple(norms.tolist()), trend_slope=float(slope),
                         growth_flag=flag, exact=exact)


@dataclass(frozen=True)
class StabilityReport:
    """Orbit norms ``||T(t) x||`` along a schedule and their trend."""

    schedule: tuple
    norms: tuple
    initial: float
    final: float
    trend: str

    def to_dict(self):
        return {"schedule": list(self.schedule), "norms": list(self.norms),
                "initial": self.initial, "final": self.final, "trend": self.trend}


def stability_probe(op: OperatorModel, x, schedule, *, decay_ratio=0.1, rtol=1e-9,
                    require_bounded=True):
    """Track ``||T(t) x||`` and classify it as ``decaying``, ``flat`` or ``growing``.

    ``decaying`` means the final norm is at most ``decay_ratio`` times the
    norm of ``x``; ``growing`` means it exceeds ``(1 + rtol) ||x||``.

    Raises
    ------
    ValueError
        ``require_bounded`` is set and :func:`bounded_check` fails.
    """
    sched = np.asarray(schedule, dtype=float)
    if require_bounded and not bounded_check(op, sched).bounded:
        raise ValueError("stability_probe needs a bounded model (pass require_bounded=False)")
    x = _vec(op, x)
    x0 = float(np.linalg.norm(x))
    norms = np.array([np.linalg.norm(evolve(op, t if op.mode == "continuous" else int(t), x))
                      for t in sched])
    final = float(norms[-1])
    if final <= decay_ratio * x0 and x0 > 0:
        trend = "decaying"
    elif final > (1.0 + rtol) * x0:
        trend = "growing"
    else:
        trend = "flat"
    return StabilityReport(schedule=tuple(sched.tolist()), norms=tuple(norms.tolist()),
                           initial=x0, final=final, trend=trend)


# ---------------------------------------------------------------------------
# criterion


@dataclass(frozen=True)
class CriterionRow:
    """Weighted resolvent norms at one frequency as the approach parameter shrinks.

    ``slope`` is the log-log slope of the values against the approach
    parameter (positive means decay toward the axis or circle), fitted on the
    last half of the schedule.
    """

    frequency: complex
    approach: tuple
    values: tuple
    slope: float
    decayed: bool

    def to_dict(self):
        f = self.frequency
        return {"frequency": [f.real, f.imag] if isinstance(f, complex) else f,
                "approach": list(self.approach), "values": list(self.values),
                "slope": self.slope, "decayed": self.decayed}


@dataclass(frozen=True)
class CriterionReport:
    """All rows of a criterion probe; ``member`` when every row decays."""

    rows: tuple
    p: float
    mode: str
    member: bool
    witnesses: tuple
    dim: int

    def to_dict(self):
        return {"p": self.p, "mode": self.mode, "member": self.member, "dim": self.dim,
                "witnesses": [[w.real, w.imag] if isinstance(w, complex) else w
                              for w in self.witnesses],
                "rows": [r.to_dict() for r in self.rows]}


def criterion_probe(op: OperatorModel, x, ft, frequencies, approach=DEFAULT_ALPHAS):
    """Tabulate the resolvent criterion for the vector ``x``.

    Parameters
    ----------
    ft : FourierType or float
        Fourier type; ``p = 1`` is rejected.
    frequencies : sequence
        Real ``beta`` (continuous mode) or unimodular ``xi`` (discrete mode).
    approach : sequence of float
        Decreasing ``alpha > 0``; in discrete mode ``r = 1 + alpha``.

    Returns
    -------
    CriterionReport
        A row decays when its last value is at most ``1e-2`` times its first
        and its slope exceeds 0.1. A row of zeros counts as decayed.
    """
    ft = ft if isinstance(ft, FourierType) else FourierType(ft)
    x = _vec(op, x)
    alphas = np.asarray(approach, dtype=float)
    if alphas.size < 3 or not (np.all(alphas > 0) and np.all(np.diff(alphas) < 0)):
        raise ValueError("approach schedule must be positive, decreasing, length >= 3")
    w = ft.weight_exponent

    def row(freq):
        vals = []
        for a in alphas:
            if op.mode == "continuous":
                lam = a + 1j * float(np.real(freq))
            else:
                xi = complex(freq)
                if abs(abs(xi) - 1.0) > 1e-12:
                    raise ValueError("discrete frequencies must lie on the unit circle")
                lam = (1.0 + a) * xi
            vals.append(a ** w * float(np.linalg.norm(resolvent_apply(op, lam, x))))
        vals = np.asarray(vals)
        if np.all(vals == 0):
            return CriterionRow(complex(freq), tuple(alphas.tolist()), tuple(vals.tolist()),
                                float("inf"), True)
        slope, _ = tail_slope(np.log(alphas), np.log(vals))
        decayed = bool(vals[-1] <= 1e-2 * vals[0] and slope > 0.1)
        return CriterionRow(complex(freq), tuple(alphas.tolist()), tuple(vals.tolist()),
                            float(slope), decayed)

    rows = tuple(ordered_map(row, list(frequencies)))
    witnesses = tuple(r.frequency for r in rows if not r.decayed)
    return CriterionReport(rows=rows, p=ft.p, mode=op.mode, member=not witnesses,
                           witnesses=witnesses, dim=op.dim)


def fractional_resolve(op: OperatorModel, freq, gamma, x):
    """Preimage of ``x`` under ``(i beta - A)^gamma`` (or ``(xi - T)^gamma``).

    Principal branch, argument in ``(-pi, pi]``. The result witnesses
    ``x`` in the range of the fractional power for the truncated model only.

    Raises
    ------
    SpectrumHitError
        The spectral point coincides with an entry at an index where
        ``x_k != 0``.
    """
    if op.kind != "diagonal":
        raise ValueError("fractional_resolve needs a diagonal model")
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    x = _vec(op, x)
    point = 1j * float(np.real(freq)) if op.mode == "continuous" else complex(freq)
    base = point - op.lam
    hit = (np.abs(base) <= 1e-14 * max(1.0, abs(point))) & (x != 0)
    if np.any(hit):
        idx = np.flatnonzero(hit)
        raise SpectrumHitError(f"spectral point {point} hits entries k = {idx + 1}",
                               indices=idx + 1)
    out = np.zeros_like(x)
    live = x != 0
    out[live] = x[live] / base[live] ** gamma
    return out


# ---------------------------------------------------------------------------
# complete trajectories and the Carleman transform


@dataclass(frozen=True)
class TrajectoryModel:
    """A bounded vector function of ``t`` in ``R`` with a declared bound."""

    func: Callable
    bound: float
    dim: int = 1
    name: str = "trajectory"

    def __call__(self, t):
        return np.asarray(self.func(float(t)), dtype=complex).reshape(self.dim)

    @classmethod
    def from_diagonal(cls, lam, x0):
        """``F(t) = e^{t lam} x0``; requires ``Re lam = 0`` so ``F`` is a complete trajectory."""
        lam = np.asarray(lam, dtype=complex).ravel()
        x0 = np.asarray(x0, dtype=complex).ravel()
        if np.any(lam.real != 0):
            raise ValueError("complete trajectories need Re lambda_k = 0")
        if lam.size != x0.size:
            raise ValueError("lam and x0 must have the same length")
        return cls(lambda t: np.exp(lam * t) * x0, float(np.linalg.norm(x0)), lam.size,
                   name="diagonal orbit")

    @classmethod
    def zero(cls, dim=1):
        return cls(lambda t: np.zeros(dim, dtype=complex), 0.0, dim, name="zero")


@dataclass(frozen=True)
class CarlemanResult:
    """Transform value with quadrature error estimate plus tail bound."""

    value: np.ndarray
    error: float
    horizon: float
    tail_bound: float


def carleman_transform(F: TrajectoryModel, lam, *, tol=1e-10, horizon=None, limit=2000):
    """Carleman transform of a bounded trajectory.

    ``int_0^inf e^{-lam t} F(t) dt`` for ``Re lam > 0`` and
    ``-int_{-inf}^0 e^{-lam t} F(t) dt`` for ``Re lam < 0``, truncated at the
    horizon ``H`` where ``bound e^{-|Re lam| H} / |Re lam| <= tol``.

    Raises
    ------
    ValueError
        ``lam`` lies on the imaginary axis.
    HorizonError
        An explicit ``horizon`` leaves a tail above ``tol``.
    """
    lam = complex(lam)
    s = lam.real
    if s == 0:
        raise ValueError("the Carleman transform is not defined on the imaginary axis")
    a = abs(s)
    if F.bound == 0:
        return CarlemanResult(np.zeros(F.dim, dtype=complex), 0.0, 0.0, 0.0)
    need = max(0.0, np.log(F.bound / (a * tol)) / a)
    H = need if horizon is None else float(horizon)
    tail = F.bound * np.exp(-a * H) / a
    if tail > tol * (1.0 + 1e-12):
        raise HorizonError(f"horizon {H:g} leaves tail {tail:.3g} above tol {tol:g}")
    sign = 1.0 if s > 0 else -1.0

    def integrand(t):
        tt = sign * t
        v = np.exp(-lam * tt) * F(tt)
        return np.concatenate([v.real, v.imag])

    # panels resolve the oscillation of the kernel
    n_pan = int(max(1, np.ceil(H * (1.0 + abs(lam.imag)) / 2.0)))
    edges = np.linspace(0.0, H, n_pan + 1)
    total = np.zeros(2 * F.dim)
    err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, e = integrate.quad_vec(integrand, lo, hi, epsabs=tol / (10 * n_pan), epsrel=1e-13,
                                    limit=limit)
        total += val
        err += float(e)
    value = total[:F.dim] + 1j * total[F.dim:]
    value = value if s > 0 else -value
    return CarlemanResult(value, err + tail, H, tail)


@dataclass(frozen=True)
class IdentityReport:
    """Residual of the resolvent identity for the Carleman transform."""

    residual: float
    tolerance: float
    ok: bool
    lam: complex
    mu: complex

    def to_dict(self):
        return {"residual": self.residual, "tolerance": self.tolerance, "ok": self.ok,
                "lam": [self.lam.real, self.lam.imag], "mu": [self.mu.real, self.mu.imag]}


def carleman_identity_check(op_adj: OperatorModel, F: TrajectoryModel, lam, mu, *, tol=1e-10):
    """Residual ``||F^(mu) - R(lam, A*) F(0) - (lam - mu) R(lam, A*) F^(mu)||``.

    ``op_adj`` is the adjoint generator ``A*`` and ``F`` a complete
    trajectory of its semigroup. ``lam`` needs ``Re lam > 0`` and ``mu``
    must lie off the imaginary axis.
    """
    lam, mu = complex(lam), complex(mu)
    if not lam.real > 0:
        raise ValueError("the identity needs Re lambda > 0")
    res_mu = carleman_transform(F, mu, tol=tol)
    F0 = F(0.0)
    R0 = resolvent_apply(op_adj, lam, F0)
    R1 = resolvent_apply(op_adj, lam, res_mu.value)
    resid = float(np.linalg.norm(res_mu.value - R0 - (lam - mu) * R1))
    # the quadrature error propagates through I + (lam - mu) R(lam)
    amp = 1.0 + abs(lam - mu) * float(np.max(1.0 / np.abs(lam - _spectrum(op_adj))))
    tolerance = amp * res_mu.error + 1e-12 * max(1.0, float(np.linalg.norm(R0)))
    return IdentityReport(residual=resid, tolerance=float(tolerance), ok=bool(resid <= tolerance),
                          lam=lam, mu=mu)


def _spectrum(op):
    return op.lam if op.kind == "diagonal" else np.linalg.eigvals(op.A)


def singular_set_probe(F: TrajectoryModel, taus, sigma=1e-2, *, tol=1e-10):
    """``sigma ||F^(sigma + i tau)||`` over a frequency grid on both sides of ``i R``.

    For a nonzero bounded trajectory this stays bounded away from zero near
    its frequencies as ``sigma -> 0``; for ``F = 0`` it vanishes identically.
    Returns an array of shape ``(2, len(taus))`` (right side, left side).
    """
    out = np.zeros((2, len(taus)))
    for j, tau in enumerate(taus):
        for side, sgn in enumerate((1.0, -1.0)):
            lam = sgn * sigma + 1j * tau
            out[side, j] = sigma * float(np.linalg.norm(carleman_transform(F, lam, tol=tol).value))
    return out
