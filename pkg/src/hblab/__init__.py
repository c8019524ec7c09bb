"""Numerical laboratory for the boundary behaviour of harmonic functions.

Modules
-------
geometry
    Regions, approach sectors, sampling grids and explicit conformal maps.
potential
    Poisson kernels and integrals, harmonic measure of rectangles, the
    Cauchy area transform and Laurent-type singularity expansions.
exemplars
    The sharpness counterexamples, the exponential-growth construction and
    a catalog of test functions.
boundary
    Directional limits, sup profiles, growth fits and related analyzers.
audits
    Hypothesis and conclusion checklists for the uniqueness theorems.
semigroup
    Finite operator models, the resolvent stability criterion and the
    Carleman transform.
cli
    Configuration-driven experiment runner.
"""
from importlib.metadata import PackageNotFoundError, version as _version

try:
    __version__ = _version("artifact")
except PackageNotFoundError:  # pragma: no cover - source tree without install
    __version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .fields import HarmonicField
from .geometry import Region, SectorSpec, GridSpec
from .audits import (AuditConfig, AuditVerdict, audit_classical, audit_edge_of_wedge,
                     audit_factorized, audit_phragmen)
from .boundary import (directional_limit, domar_transfer_check, growth_fit, l1_bound_profile,
                       mean_value_check, sup_profile)
from .exemplars import resolve, list_exemplars, u0_eval, u0_field, WolfParams, wolf_assemble
from .semigroup import (OperatorModel, FourierType, TrajectoryModel, bounded_check,
                        carleman_identity_check, carleman_transform, criterion_probe, evolve,
                        fractional_resolve, resolvent_apply, stability_probe)

__all__ = [
    "__version__",
    "HarmonicField", "Region", "SectorSpec", "GridSpec",
    "AuditConfig", "AuditVerdict", "audit_classical", "audit_edge_of_wedge",
    "audit_factorized", "audit_phragmen",
    "directional_limit", "domar_transfer_check", "growth_fit", "l1_bound_profile",
    "mean_value_check", "sup_profile",
    "resolve", "list_exemplars", "u0_eval", "u0_field", "WolfParams", "wolf_assemble",
    "OperatorModel", "FourierType", "TrajectoryModel", "bounded_check",
    "carleman_identity_check", "carleman_transform", "criterion_probe", "evolve",
    "fractional_resolve", "resolvent_apply", "stability_probe",
]
