"""Theorem-level auditors.

Each auditor turns the hypotheses of a uniqueness or extension theorem into
sampled checks built from the boundary analyzers, runs a sampled check of
the conclusion, and assembles an :class:`AuditVerdict`. The verdict is
``CONTRADICTION`` only when every measured hypothesis passes while the
conclusion fails, a state that would falsify the theorem or expose a bug.

Finite sampling cannot settle statements quantified over every boundary
point or every ``epsilon > 0``. Every verdict therefore records the grid
density it used, and properties that cannot be measured at all (lower
semicontinuity of a majorant, irrationality of ``theta / pi``) are carried
as ``declared`` records that never count as passes.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Any, Optional

import numpy as np

from ._parallel import ordered_map
from .boundary import (GrowthFit, LimitEstimate, directional_limit, growth_fit,
                       l1_bound_profile, sup_profile, tail_slope)
from .errors import (DomainError, HypothesisViolation, NonFiniteSampleError,
                     NonPositiveSupError, RegularityMismatch)
from .fields import HarmonicField
from .geometry import Region, SectorSpec

__all__ = [
    "AuditConfig",
    "HypothesisRecord",
    "ConclusionRecord",
    "AuditVerdict",
    "classify_limit",
    "audit_classical",
    "audit_factorized",
    "audit_phragmen",
    "audit_edge_of_wedge",
]

PASS, FAIL, INDET = "pass", "fail", "indeterminate"
SUPPORTED, DECLARED = "indeterminate-supported", "declared"


# ---------------------------------------------------------------------------
# configuration


def _geometric(start, stop, num):
    return tuple(np.geomspace(start, stop, num).tolist())


@dataclass(frozen=True)
class AuditConfig:
    """Sampling schedules and tolerances shared by the auditors.

    Parameters
    ----------
    n_boundary : int
        Number of boundary grid points (angles ``2 pi j / n`` on the circle,
        interior abscissae of ``(-1, 1)`` on the rectangle).
    radial_schedule : tuple
        Radii for radial limits.
    sector_schedule : tuple
        Distances to the vertex for Stolz and upper-sector limits.
    vertical_schedule : tuple
        Heights for vertical limits on the rectangle.
    limit_tol : float
        A limit passes when the schedule has converged to within this
        tolerance and the extrapolated limit is at most this large.
    growth_slope : float
        A limit fails as divergent when ``log |values|`` grows against
        ``log(1/d)`` with a slope above this value.
    margin : float
        Margin for the ``o``-type growth classifications.
    circle_schedule, hline_schedule : tuple
        Levels for the sup-profile growth fits.
    wolf_schedule : tuple
        Radii for the exp-power fit in the exponential-growth audit.
    eps0 : float
        Largest value of the ``epsilon`` schedule ``0.8^k eps0``, ``k = 0..6``.
    conclusion_tol : float
        ``u = 0`` passes when ``sup |u| <= conclusion_tol (1 + scale)``.
    majorant_rtol : float
        Relative slack in the pointwise check ``|u| <= f g``.
    bound_slope : float
        A sampled bound counts as finite when the shell maxima grow against
        ``log(1/|z|)`` with a tail slope at most this large.
    refine_rtol : float
        Relative change allowed when the angular grid of a bound is doubled.
    n_grid : int
        Points per circle, line or ray family in the pointwise checks.
    """

    n_boundary: int = 16
    radial_schedule: tuple = tuple((1.0 - 2.0 ** -np.arange(4, 25)).tolist())
    sector_schedule: tuple = _geometric(0.1, 1e-5, 11)
    vertical_schedule: tuple = _geometric(0.1, 1e-7, 13)
    limit_tol: float = 1e-3
    growth_slope: float = 0.1
    margin: float = 0.1
    circle_schedule: tuple = tuple((1.0 - np.geomspace(0.1, 1e-3, 12)).tolist())
    hline_schedule: tuple = _geometric(0.1, 1e-3, 12)
    wolf_schedule: tuple = tuple((1.0 - np.geomspace(0.2, 0.02, 8)).tolist())
    eps0: float = 1.0
    conclusion_tol: float = 1e-6
    majorant_rtol: float = 1e-9
    bound_slope: float = 0.05
    refine_rtol: float = 1e-3
    n_grid: int = 256
    n_shells: int = 40

    @classmethod
    def coerce(cls, cfg):
        if cfg is None:
            return cls()
        if isinstance(cfg, cls):
            return cfg
        data = dict(cfg)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown audit settings: {sorted(unknown)}")
        for key, val in data.items():
            if isinstance(val, list):
                data[key] = tuple(val)
        return cls(**data)

    def loosened(self, factor=2.0):
        """Every tolerance relaxed by ``factor`` (the margin shrinks by it)."""
        return replace(self, limit_tol=self.limit_tol * factor,
                       growth_slope=self.growth_slope * factor,
                       margin=self.margin / factor,
                       conclusion_tol=self.conclusion_tol * factor,
                       majorant_rtol=self.majorant_rtol * factor,
                       bound_slope=self.bound_slope * factor,
                       refine_rtol=self.refine_rtol * factor)

    def to_dict(self):
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(self).items()}


# ---------------------------------------------------------------------------
# verdict records


def _serialize(obj):
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): _serialize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_serialize(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


@dataclass(frozen=True)
class HypothesisRecord:
    """One hypothesis check.

    ``status`` is ``'pass'``, ``'fail'``, ``'indeterminate'``,
    ``'indeterminate-supported'`` (consistent with the hypothesis but not
    verifiable from finite samples) or ``'declared'`` (carried as metadata,
    never measured).
    """

    name: str
    status: str
    evidence: Any = None
    witness: Optional[complex] = None
    detail: dict = field(default_factory=dict)

    @property
    def measured(self):
        return self.status != DECLARED

    def to_dict(self):
        return {"name": self.name, "status": self.status, "evidence": _serialize(self.evidence),
                "witness": _serialize(self.witness), "detail": _serialize(self.detail)}


@dataclass(frozen=True)
class ConclusionRecord:
    """The sampled conclusion check; ``passed`` is None when undecided."""

    checked: bool
    passed: Optional[bool]
    evidence: Any = None
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return {"checked": self.checked, "passed": self.passed,
                "evidence": _serialize(self.evidence), "detail": _serialize(self.detail)}


def _consistency(hypotheses, conclusion):
    measured = [h for h in hypotheses if h.measured]
    any_fail = any(h.status == FAIL for h in measured)
    all_pass = bool(measured) and all(h.status == PASS for h in measured)
    if conclusion.checked and conclusion.passed is False:
        if all_pass:
            return "CONTRADICTION"
        if any_fail:
            return "sharpness_witness"
    return "consistent"


@dataclass(frozen=True)
class AuditVerdict:
    """Structured outcome of an audit.

    ``consistency`` is derived from the records: ``CONTRADICTION`` when all
    measured hypotheses pass and the conclusion fails, ``sharpness_witness``
    when some hypothesis fails and the conclusion fails, ``consistent``
    otherwise.
    """

    theorem: str
    hypotheses: tuple
    conclusion: ConclusionRecord
    subject: str = ""
    notes: tuple = ()
    extras: dict = field(default_factory=dict)

    @property
    def consistency(self):
        return _consistency(self.hypotheses, self.conclusion)

    def hypothesis(self, name):
        """Record with this exact name, or the single record whose name starts with it."""
        for h in self.hypotheses:
            if h.name == name:
                return h
        hits = [h for h in self.hypotheses if h.name.startswith(name)]
        if len(hits) == 1:
            return hits[0]
        raise KeyError(name)

    @property
    def pattern(self):
        return {h.name: h.status for h in self.hypotheses}

    @property
    def all_passed(self):
        measured = [h for h in self.hypotheses if h.measured]
        return bool(measured) and all(h.status == PASS for h in measured)

    def to_dict(self):
        return {"theorem": self.theorem, "subject": self.subject,
                "consistency": self.consistency,
                "hypotheses": [h.to_dict() for h in self.hypotheses],
                "conclusion": self.conclusion.to_dict(), "notes": list(self.notes),
                "extras": _serialize(self.extras)}


# ---------------------------------------------------------------------------
# shared classifiers


def classify_limit(est: LimitEstimate, cfg: AuditConfig):
    """Classify a limit estimate as the statement ``lim = 0``.

    ``pass`` when the schedule converged and the limit is within
    ``limit_tol`` of zero; ``fail`` when the values grow toward the boundary
    or converge to a value farther than ``limit_tol`` from zero;
    ``indeterminate`` otherwise.
    """
    vals = np.abs(np.asarray(est.values, dtype=float))
    d = np.asarray(est.distances, dtype=float)
    if est.converged and abs(est.limit) <= cfg.limit_tol:
        return PASS
    if est.converged and abs(est.limit) > cfg.limit_tol:
        return FAIL
    if np.all(vals > 0):
        slope, _ = tail_slope(np.log(1.0 / d), np.log(vals))
        if slope > cfg.growth_slope and vals[-1] > cfg.limit_tol:
            return FAIL
    return INDET


def _limits_record(name, u, bases, approach_of, schedule, cfg, *, base_label):
    """Run ``directional_limit`` at every base point and merge the statuses."""

    def one(b):
        try:
            est = directional_limit(u, b, approach_of(b), schedule, tol=cfg.limit_tol)
        except NonFiniteSampleError as exc:
            return b, None, INDET, str(exc)
        return b, est, classify_limit(est, cfg), ""

    results = ordered_map(one, bases)
    statuses = [r[2] for r in results]
    if FAIL in statuses:
        status = FAIL
    elif all(s == PASS for s in statuses):
        status = PASS
    else:
        status = INDET
    failed = [r[0] for r in results if r[2] == FAIL]
    witness = None
    if failed:
        b0 = failed[0]
        witness = complex(np.exp(1j * b0)) if base_label == "phi" else complex(b0)
    per_point = [{base_label: float(r[0]), "status": r[2],
                  "limit": None if r[1] is None else r[1].limit,
                  "converged": None if r[1] is None else r[1].converged,
                  **({"error": r[3]} if r[3] else {})} for r in results]
    detail = {"grid_points": len(bases), "grid": [float(b) for b in bases],
              "per_point": per_point,
              "note": "checked on a finite boundary grid only"}
    evidence = [{"base": float(r[0]), "estimate": r[1]} for r in results if r[1] is not None]
    return HypothesisRecord(name, status, evidence=evidence,
                            witness=witness, detail=detail)


def _sups(u, schedule, kind, n, x_range=(-1.0, 1.0)):
    return [sup_profile(u, kind, lev, max(n, 64), x_range=x_range) for lev in schedule]


def _growth(u, schedule, domain, cfg, kind="power", **kw):
    """``growth_fit`` that treats an identically vanishing field as bounded."""
    try:
        return growth_fit(u, schedule, kind, domain=domain, n=cfg.n_grid, **kw), None
    except NonPositiveSupError:
        kind_sup = "circle" if domain == "circle" else "hline"
        sups = _sups(u, schedule, kind_sup, cfg.n_grid)
        return None, sups


def _power_growth_record(name, u, schedule, domain, bound, cfg, *, strict, label):
    """Power growth against ``bound``; ``strict`` subtracts the margin (``o``-type)."""
    fit, sups = _growth(u, schedule, domain, cfg)
    limit = bound - cfg.margin if strict else bound + cfg.margin
    if fit is None:
        status = PASS if all(s == 0 for s in sups) else INDET
        return HypothesisRecord(name, status, evidence={"sups": sups},
                                detail={"bound": bound, "threshold": limit, "statement": label})
    status = PASS if fit.exponent <= limit else FAIL
    return HypothesisRecord(name, status, evidence=fit,
                            detail={"fitted_exponent": fit.exponent, "bound": bound,
                                    "threshold": limit, "margin": cfg.margin,
                                    "statement": label})


def _disc_interior(n_r=19, n_phi=64):
    radii = np.linspace(0.05, 0.95, n_r)
    ang = 2.0 * np.pi * np.arange(n_phi) / n_phi
    return (radii[:, None] * np.exp(1j * ang)[None, :]).ravel()


def _rect_interior(n=41):
    a = np.linspace(-0.95, 0.95, n)
    b = np.linspace(0.05, 0.95, n)
    return (a[None, :] + 1j * b[:, None]).ravel()


def _vanishing_conclusion(u, pts, cfg):
    vals = np.abs(np.asarray(u(pts)))
    if not np.all(np.isfinite(vals)):
        return ConclusionRecord(True, None, detail={"reason": "non-finite sample"})
    scale = float(getattr(u, "declared", {}).get("scale", 0.0)) if hasattr(u, "declared") else 0.0
    thresh = cfg.conclusion_tol * (1.0 + scale)
    sup = float(np.max(vals))
    return ConclusionRecord(True, bool(sup <= thresh), evidence=sup,
                            detail={"statement": "u = 0", "sup_abs": sup, "threshold": thresh,
                                    "grid_points": int(pts.size),
                                    "witness": _serialize(complex(pts[int(np.argmax(vals))]))})


def _boundary_angles(cfg):
    return tuple((2.0 * np.pi * np.arange(cfg.n_boundary) / cfg.n_boundary).tolist())


def _boundary_abscissae(cfg):
    n = cfg.n_boundary
    return tuple(np.linspace(-1.0, 1.0, n + 2)[1:-1].tolist())


def _abs_field(u):
    return lambda z: np.abs(np.asarray(u(z)))


def _check_nonneg(u, pts, what):
    vals = np.asarray(u(pts))
    if np.iscomplexobj(vals):
        raise HypothesisViolation(f"{what}: a subharmonic field must be real")
    if np.any(vals < 0):
        raise HypothesisViolation(f"{what}: nonnegativity violated",
                                  witness=complex(pts[int(np.argmin(vals))]))


# ---------------------------------------------------------------------------
# classical disc theorems


_CLASSICAL = {
    "dahlberg": "Dahlberg uniqueness theorem",
    "berman_cohn": "Berman-Cohn sectorial uniqueness theorem",
    "wolf": "Wolf exponential-growth uniqueness theorem",
}


def audit_classical(u: HarmonicField, theorem, theta=None, cfg=None) -> AuditVerdict:
    """Audit a classical uniqueness theorem on the unit disc.

    Parameters
    ----------
    u : HarmonicField
        A field on the unit disc. For ``dahlberg`` and ``berman_cohn`` it is
        either nonnegative subharmonic or harmonic (then ``|u|`` is audited,
        which is nonnegative subharmonic). ``wolf`` requires a harmonic field.
    theorem : {'dahlberg', 'berman_cohn', 'wolf'}
    theta : float
        Stolz opening parameter, required for ``berman_cohn`` and ``wolf``.
    cfg : AuditConfig or dict, optional

    Returns
    -------
    AuditVerdict
        Hypotheses ``(i)`` (boundary limits on the grid) and ``(ii)``
        (growth); the conclusion is ``sup |u| <= conclusion_tol (1 + scale)``
        on an interior polar grid.

    Raises
    ------
    RegularityMismatch
    HypothesisViolation
        A field claimed nonnegative takes a negative value.
    """
    cfg = AuditConfig.coerce(cfg)
    if theorem not in _CLASSICAL:
        raise ValueError(f"unknown theorem {theorem!r}")
    if u.region.kind != "unit_disc":
        raise DomainError("audit_classical needs a field on the unit disc")
    reg = u.claimed_regularity
    if theorem == "wolf" and reg != "harmonic":
        raise RegularityMismatch("the exponential-growth theorem needs a harmonic field")
    if reg == "analytic_off_reals":
        raise RegularityMismatch(f"{theorem} needs a subharmonic or harmonic field")
    if theorem != "dahlberg":
        if theta is None or not (0.0 < theta < np.pi / 2):
            raise ValueError("theta in (0, pi/2) is required")
    interior = _disc_interior()
    if reg == "subharmonic_nonneg":
        _check_nonneg(u, interior, theorem)
    target = _abs_field(u)
    angles = _boundary_angles(cfg)
    notes = []
    if reg == "harmonic" and theorem != "wolf":
        notes.append("harmonic field audited through |u|, which is nonnegative subharmonic")

    if theorem == "dahlberg":
        h1 = _limits_record("(i) radial limits vanish", target, angles, lambda b: "radial",
                            cfg.radial_schedule, cfg, base_label="phi")
        h2 = _power_growth_record("(ii) M_r = o((1-r)^-2)", target, cfg.circle_schedule,
                                  "circle", 2.0, cfg, strict=True,
                                  label="fitted exponent <= 2 - margin")
        hyps = (h1, h2)
    else:
        h1 = _limits_record("(i) Stolz limits vanish", target, angles,
                            lambda b: SectorSpec.stolz(b, theta), cfg.sector_schedule, cfg,
                            base_label="phi")
        if theorem == "berman_cohn":
            h2 = _power_growth_record("(ii) M_r = o((1-r)^-pi/theta)", target,
                                      cfg.circle_schedule, "circle", np.pi / theta, cfg,
                                      strict=True, label="fitted exponent <= pi/theta - margin")
        else:
            h2 = _wolf_growth_record(target, theta, cfg)
        hyps = (h1, h2)
    concl = _vanishing_conclusion(u, interior, cfg)
    return AuditVerdict(theorem=theorem, hypotheses=hyps, conclusion=concl, subject=u.name,
                        notes=tuple(notes),
                        extras={"theta": theta, "config": cfg.to_dict()})


def _wolf_growth_record(u, theta, cfg):
    kappa0 = np.pi / (2.0 * theta)
    eps = [cfg.eps0 * 0.8 ** k for k in range(7)]
    name = "(ii) M_r = O(exp(eps (1-r)^-pi/(2 theta))) for every eps"
    fit, sups = _growth(u, cfg.wolf_schedule, "circle", cfg, kind="exp_power",
                        inner_exponent=kappa0)
    if fit is None:
        status = PASS if all(s == 0 for s in sups) else INDET
        return HypothesisRecord(name, status, evidence={"sups": sups},
                                detail={"inner_exponent": kappa0, "eps_schedule": eps})
    B = fit.coefficient
    exceeded = [e for e in eps if B > e]
    status = FAIL if exceeded else SUPPORTED
    return HypothesisRecord(name, status, evidence=fit,
                            detail={"inner_exponent": kappa0, "coefficient": B,
                                    "profiled_exponent": fit.exponent, "eps_schedule": eps,
                                    "violated_eps": exceeded,
                                    "note": "a finite eps schedule can support but never verify"})


# ---------------------------------------------------------------------------
# factorized majorant theorems


def _pointwise_majorant(u, f, g, pts, cfg):
    uv = np.abs(np.asarray(u(pts)))
    fv = np.real(np.asarray(f(pts)))
    gv = np.real(np.asarray(g(pts)))
    if np.any(fv < 0) or np.any(gv < 0):
        bad = pts[int(np.argmin(np.minimum(fv, gv)))]
        return HypothesisRecord("(1)(i) |u| <= f g", FAIL, witness=complex(bad),
                                detail={"reason": "majorant factor negative"})
    bound = fv * gv
    viol = uv > bound * (1.0 + cfg.majorant_rtol) + 1e-300
    if np.any(viol):
        k = int(np.argmax(np.where(viol, uv - bound, -np.inf)))
        return HypothesisRecord("(1)(i) |u| <= f g", FAIL, witness=complex(pts[k]),
                                evidence={"excess": float(uv[k] - bound[k])},
                                detail={"grid_points": int(pts.size)})
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(bound > 0, uv / bound, 0.0)
    return HypothesisRecord("(1)(i) |u| <= f g", PASS, evidence=float(np.max(ratio)),
                            detail={"grid_points": int(pts.size), "max_ratio": float(np.max(ratio))})


def _region_ok(fld, kind):
    reg = getattr(fld, "region", None)
    return reg is None or reg.kind == kind


def audit_factorized(u: HarmonicField, f: HarmonicField, g: HarmonicField, region="disc",
                     theta=np.pi / 4, m=0.0, cfg=None) -> AuditVerdict:
    """Audit the factorized-majorant uniqueness theorems.

    Parameters
    ----------
    u, f, g : HarmonicField
        The field and the two majorant factors, all on the same region.
    region : {'disc', 'rectangle'}
        ``disc`` checks on circles and Stolz sectors; ``rectangle`` uses the
        upper rectangle ``(-1, 1) x (0, 1)`` with horizontal lines and upper
        sectors ``alpha + Sigma_theta``.
    theta : float
        Sector parameter in ``(0, pi/2)``.
    m : float
        Growth exponent in hypothesis (2). For nonnegative subharmonic fields
        it must also satisfy ``m <= pi/theta - margin``.

    Returns
    -------
    AuditVerdict
        Hypotheses ``(1)(i)``, ``(1)(ii)``, ``(1)(iii)`` and ``(2)`` plus a
        declared record for lower semicontinuity of ``f``. On the disc the
        conclusion is ``u = 0`` on an interior grid; on the rectangle it is
        the vanishing of vertical limits on the boundary grid of ``(-1, 1)``.

    Raises
    ------
    DomainError
        Region mismatch.
    HypothesisViolation
        Nonnegativity violation for a subharmonic field.
    """
    cfg = AuditConfig.coerce(cfg)
    if region not in ("disc", "rectangle"):
        raise ValueError(f"unknown region {region!r}")
    kind = "unit_disc" if region == "disc" else "rectangle"
    for name, fld in (("u", u), ("f", f), ("g", g)):
        if not _region_ok(fld, kind):
            raise DomainError(f"{name} is not defined on the {region} region")
    if not (0.0 < theta < np.pi / 2):
        raise ValueError("theta must lie in (0, pi/2)")
    if m < 0:
        raise ValueError("m must be nonnegative")
    subharmonic = u.claimed_regularity == "subharmonic_nonneg"
    if region == "disc":
        radii = np.asarray(cfg.circle_schedule)
        ang = 2.0 * np.pi * np.arange(cfg.n_grid) / cfg.n_grid
        pts = (radii[:, None] * np.exp(1j * ang)[None, :]).ravel()
        interior = _disc_interior()
    else:
        betas = np.asarray(cfg.hline_schedule)
        xs = np.linspace(-1.0, 1.0, cfg.n_grid + 2)[1:-1]
        pts = (xs[None, :] + 1j * betas[:, None]).ravel()
        interior = _rect_interior()
    if subharmonic:
        _check_nonneg(u, np.concatenate([pts, interior]), "audit_factorized")

    hyps = [HypothesisRecord("f lower semicontinuous", DECLARED,
                             detail={"declared": f.declared.get("lower_semicontinuous", True)})]
    hyps.append(_pointwise_majorant(u, f, g, pts, cfg))
    if region == "disc":
        hyps.append(_limits_record("(1)(ii) f -> 0 in Stolz sectors", _abs_field(f),
                                   _boundary_angles(cfg), lambda b: SectorSpec.stolz(b, theta),
                                   cfg.sector_schedule, cfg, base_label="phi"))
    else:
        hyps.append(_limits_record("(1)(ii) f -> 0 in upper sectors", _abs_field(f),
                                   _boundary_abscissae(cfg),
                                   lambda b: SectorSpec.upper(b, theta),
                                   cfg.sector_schedule, cfg, base_label="alpha"))
    hyps.append(_l1_record(g, region, cfg))
    domain = "circle" if region == "disc" else "hline"
    sched = cfg.circle_schedule if region == "disc" else cfg.hline_schedule
    growth = _power_growth_record(f"(2) growth O(delta^-{m:g})", _abs_field(u), sched, domain,
                                  float(m), cfg, strict=False,
                                  label="fitted exponent <= m + margin")
    if subharmonic and m > np.pi / theta - cfg.margin:
        growth = replace(growth, status=FAIL,
                         detail={**growth.detail, "reason": "m must be below pi/theta - margin"})
    hyps.append(growth)

    if region == "disc":
        concl = _vanishing_conclusion(u, interior, cfg)
    else:
        concl = _interval_conclusion(u, cfg)
    return AuditVerdict(theorem=f"factorized_{region}_{'subharmonic' if subharmonic else 'harmonic'}",
                        hypotheses=tuple(hyps), conclusion=concl, subject=u.name,
                        extras={"theta": theta, "m": m, "config": cfg.to_dict()})


def _l1_record(g, region, cfg):
    name = "(1)(iii) sup of L1 norms of g finite"
    if region == "disc":
        prof = l1_bound_profile(g, "circle", cfg.circle_schedule, n=cfg.n_grid)
    else:
        prof = l1_bound_profile(g, "hline", cfg.hline_schedule, n=cfg.n_grid)
    status = FAIL if (prof.divergent or prof.unbounded_trend) else PASS
    return HypothesisRecord(name, status, evidence=prof,
                            detail={"sup": prof.sup, "slope": prof.slope,
                                    "divergent": prof.divergent,
                                    "unbounded_trend": prof.unbounded_trend})


def _interval_conclusion(u, cfg):
    rec = _limits_record("conclusion", _abs_field(u), _boundary_abscissae(cfg),
                         lambda b: "vertical", cfg.vertical_schedule, cfg, base_label="alpha")
    passed = {PASS: True, FAIL: False}.get(rec.status)
    return ConclusionRecord(True, passed, evidence=rec.evidence,
                            detail={"statement": "u extends continuously by 0 to (-1, 1)",
                                    **rec.detail})


# ---------------------------------------------------------------------------
# Phragmen-Lindelof


def _shell_bound(u, weight, angles, rho, cfg, n_shells=None):
    """Sampled ``sup weight(z) |u(z)|`` over dyadic shells ``|z| = rho 2^-k``.

    The bound counts as finite when the tail slope of the log shell maxima
    against ``log(1/|z|)`` is at most ``bound_slope`` and doubling the
    angular density moves the overall sup by at most ``refine_rtol``.
    """
    n_shells = n_shells or cfg.n_shells
    radii = rho * 2.0 ** -np.arange(n_shells + 1)
    radii[0] = rho * (1.0 - 1e-9)

    def shell_max(ang):
        z = radii[:, None] * np.exp(1j * np.asarray(ang))[None, :]
        vals = np.abs(np.asarray(u(z))) * weight(z)
        if not np.all(np.isfinite(vals)):
            k = int(np.flatnonzero(~np.isfinite(vals.ravel()))[0])
            return None, complex(z.ravel()[k])
        return vals, z

    vals, z = shell_max(angles)
    if vals is None:
        return {"finite": False, "sup": np.inf, "witness": z, "slope": np.inf}
    per_shell = vals.max(axis=1)
    sup = float(per_shell.max())
    fine = np.sort(np.concatenate([angles, 0.5 * (np.asarray(angles)[1:] + np.asarray(angles)[:-1])]))
    vals2, _ = shell_max(fine)
    sup2 = np.inf if vals2 is None else float(vals2.max())
    k = np.unravel_index(int(np.argmax(vals)), vals.shape)
    witness = complex(z[k])
    if sup == 0:
        return {"finite": True, "sup": 0.0, "sup_refined": sup2, "slope": 0.0, "witness": witness}
    pos = per_shell > 0
    slope = 0.0
    if np.count_nonzero(pos) >= 3:
        slope, _ = tail_slope(np.log(1.0 / radii[pos]), np.log(per_shell[pos]))
    stable = abs(sup2 - sup) <= cfg.refine_rtol * sup
    finite = bool(slope <= cfg.bound_slope and stable)
    # witness on failure: largest value on the innermost shell
    if not finite:
        j = int(np.argmax(vals[-1]))
        witness = complex(z[-1, j])
    return {"finite": finite, "sup": sup, "sup_refined": sup2, "slope": float(slope),
            "witness": witness, "shells": len(radii)}


def _bound_record(name, res):
    status = PASS if res["finite"] else FAIL
    return HypothesisRecord(name, status, evidence=res["sup"],
                            witness=None if res["finite"] else res["witness"],
                            detail={k: v for k, v in res.items() if k != "witness"})


def audit_phragmen(u: HarmonicField, l, theta, m, cfg=None, *,
                   variant="quarter_disc") -> AuditVerdict:
    """Audit a Phragmen-Lindelof principle on a finite sector.

    Parameters
    ----------
    u : HarmonicField
        A field on a finite sector region.
    l, m : float
        Boundary and interior growth exponents.
    theta : float
        ``variant='sector'``: half-opening of ``{|arg z| < theta}``; the field
        must be nonnegative subharmonic and ``0 <= l <= m < pi/(2 theta)``.
        ``variant='quarter_disc'``: the interior ray angle in ``(0, pi/2)`` of the
        quarter disc ``{0 < arg z < pi/2}``; the field is harmonic and
        ``0 <= l < 2``.
    variant : {'quarter_disc', 'sector'}

    Returns
    -------
    AuditVerdict
        Ray bounds, the interior bound (``|z|^m |u|`` for ``sector``,
        ``|Im z|^m |u|`` for ``quarter_disc``) and the conclusion
        ``sup |z|^l |u| < infinity``, each judged by dyadic shells toward the
        vertex. For ``quarter_disc`` the irrationality of ``theta/pi`` is declared
        and the auditor reports ``min |cos n theta|, |sin n theta|`` over
        ``1 <= n <= max(1, ceil(m))``.

    Raises
    ------
    ValueError
        Exponent-ordering error.
    """
    cfg = AuditConfig.coerce(cfg)
    reg = u.region
    if reg.kind != "finite_sector":
        raise DomainError("audit_phragmen needs a field on a finite sector")
    rho = reg.rho
    n = cfg.n_grid
    hyps = []
    if variant == "sector":
        if not (0.0 <= l <= m < np.pi / (2.0 * theta)):
            raise ValueError("need 0 <= l <= m < pi/(2 theta)")
        if not reg.symmetric or not np.isclose(reg.theta, theta):
            raise DomainError("the sector variant needs the symmetric sector |arg z| < theta")
        interior = (np.arange(n) + 0.5) / n * 2.0 * theta - theta
        rays = np.array([-theta, theta])
        pts = np.linspace(0.05, 0.95, 19)[:, None] * rho * np.exp(1j * interior)[None, :]
        _check_nonneg(u, pts.ravel(), "audit_phragmen")
        hyps.append(HypothesisRecord("lower semicontinuous extension", DECLARED))
        hyps.append(_bound_record(f"rays |arg z| = theta: |z|^{l:g} u bounded",
                                  _shell_bound(u, lambda z: np.abs(z) ** l, rays, rho, cfg)))
        hyps.append(_bound_record(f"interior: |z|^{m:g} u bounded",
                                  _shell_bound(u, lambda z: np.abs(z) ** m, interior, rho, cfg)))
        extras = {}
    elif variant == "quarter_disc":
        if not (0.0 <= l < 2.0) or m < 0:
            raise ValueError("need 0 <= l < 2 and m >= 0")
        if not (0.0 < theta < np.pi / 2):
            raise ValueError("theta must lie in (0, pi/2)")
        if reg.symmetric or not np.isclose(reg.theta, np.pi / 2):
            raise DomainError("the quarter_disc variant needs the quarter disc 0 < arg z < pi/2")
        interior = (np.arange(n) + 0.5) / n * (np.pi / 2)
        rays = np.array([0.0, theta, np.pi / 2])
        nmax = max(1, int(np.ceil(m)))
        ks = np.arange(1, nmax + 1)
        sep = float(min(np.min(np.abs(np.cos(ks * theta))), np.min(np.abs(np.sin(ks * theta)))))
        hyps.append(HypothesisRecord("continuous extension to the closed sector", DECLARED))
        hyps.append(HypothesisRecord("theta/pi irrational", DECLARED,
                                     detail={"theta": float(theta), "n_max": nmax,
                                             "min_abs_cos_sin": sep}))
        hyps.append(_bound_record(f"rays arg z in {{0, theta, pi/2}}: |z|^{l:g} |u| bounded",
                                  _shell_bound(u, lambda z: np.abs(z) ** l, rays, rho, cfg)))
        hyps.append(_bound_record(f"interior: |Im z|^{m:g} |u| bounded",
                                  _shell_bound(u, lambda z: np.abs(z.imag) ** m, interior, rho,
                                               cfg)))
        extras = {"trig_separation": sep}
    else:
        raise ValueError(f"unknown variant {variant!r}")
    all_angles = np.concatenate([interior, rays])
    res = _shell_bound(u, lambda z: np.abs(z) ** l, all_angles, rho, cfg)
    concl = ConclusionRecord(True, bool(res["finite"]), evidence=res["sup"],
                             detail={"statement": f"sup |z|^{l:g} |u| finite",
                                     **{k: _serialize(v) for k, v in res.items()}})
    return AuditVerdict(theorem=f"phragmen_{variant}", hypotheses=tuple(hyps), conclusion=concl,
                        subject=u.name,
                        extras={"l": l, "m": m, "theta": theta, **extras,
                                "config": cfg.to_dict()})


# ---------------------------------------------------------------------------
# edge of the wedge


def _jump_field(u):
    def jump(z):
        z = np.asarray(z, dtype=complex)
        try:
            up = np.asarray(u(z))
            lo = np.asarray(u(np.conj(z)))
        except (DomainError, ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"symmetric-point evaluation failed: {exc}") from exc
        out = up - lo
        if not np.all(np.isfinite(out)):
            raise DomainError("symmetric-point evaluation returned non-finite values")
        return out
    return HarmonicField(jump, Region.upper_rectangle(), claimed_regularity="harmonic",
                         name=f"jump[{u.name}]")


def audit_edge_of_wedge(u: HarmonicField, f=None, g=None, theta=np.pi / 4, m=0.0,
                        cfg=None) -> AuditVerdict:
    """Audit analytic continuation across ``(-1, 1)`` from a factorized jump bound.

    The jump ``J(z) = u(z) - u(conj z) = 2 U(z)`` on the upper rectangle is
    passed to the rectangle factorized audit. Its hypothesis ``(2)`` is the
    growth condition ``sup_alpha |u(alpha + i beta) - u(alpha - i beta)| =
    O(beta^-m)`` and its conclusion is ``U -> 0`` on the interval. When every
    measured hypothesis passes and ``u`` carries a closed form on the reals,
    the continuation (the mean of the upper and lower limits) is evaluated
    on 101 interior points and compared with it.

    Parameters
    ----------
    u : HarmonicField
        Analytic off the real axis on the square ``(-1, 1) x (-1, 1)``.
    f, g : HarmonicField, optional
        Majorant factors on the upper rectangle. Defaults: ``f = |J|`` (the
        jump profile) and ``g = 1``.

    Returns
    -------
    AuditVerdict
        ``extras['continuation']`` holds the samples and the mismatch when
        computed.

    Raises
    ------
    RegularityMismatch
        ``u`` is not declared analytic off the reals.
    DomainError
        Symmetric-point evaluation failure.
    """
    cfg = AuditConfig.coerce(cfg)
    if u.claimed_regularity != "analytic_off_reals":
        raise RegularityMismatch("audit_edge_of_wedge needs a field analytic off the reals")
    J = _jump_field(u)
    rect = Region.upper_rectangle()
    if f is None:
        f = HarmonicField(lambda z: np.abs(J(z)), rect, name="jump profile",
                          claimed_regularity="subharmonic_nonneg")
    if g is None:
        g = HarmonicField.constant(1.0, region=rect, name="one")
    verdict = audit_factorized(J, f, g, "rectangle", theta, m, cfg)
    cfg = AuditConfig.coerce(cfg)
    extras = dict(verdict.extras)
    notes = ["the jump u(z) - u(conj z) = 2U is audited; every check is invariant under the factor 2"]
    if verdict.all_passed and u.closed_form is not None:
        extras["continuation"] = _continuation(u, cfg)
    else:
        extras["continuation"] = None
    return AuditVerdict(theorem="edge_of_wedge", hypotheses=verdict.hypotheses,
                        conclusion=verdict.conclusion, subject=u.name, notes=tuple(notes),
                        extras=extras)


def _continuation(u, cfg, n=101):
    alpha = np.linspace(-1.0, 1.0, n + 2)[1:-1]
    betas = 1e-4 * 2.0 ** -np.arange(8)
    means = np.array([0.5 * (np.asarray(u(alpha + 1j * b)) + np.asarray(u(alpha - 1j * b)))
                      for b in betas])
    q = betas[-1] / betas[-2]
    cont = (means[-1] - q * means[-2]) / (1.0 - q)
    ref = np.asarray(u.closed_form(alpha))
    err = np.abs(cont - ref)
    mismatch = float(np.max(err))
    return {"alpha": alpha.tolist(), "real": np.real(cont).tolist(),
            "imag": np.imag(cont).tolist(), "mismatch": mismatch,
            "witness": float(alpha[int(np.argmax(err))])}
