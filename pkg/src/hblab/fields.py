"""The evaluatable field type consumed by every analyzer and auditor."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .geometry import Region

__all__ = ["HarmonicField"]

_METADATA = ("closed_form", "series", "composite")
_REGULARITY = ("harmonic", "subharmonic_nonneg", "analytic_off_reals")


@dataclass(frozen=True)
class HarmonicField:
    """A scalar (or complex) field on a region.

    Parameters
    ----------
    func : callable
        Vectorized map from a complex array to values of the same shape.
    region : Region
    metadata : {'closed_form', 'series', 'composite'}
    claimed_regularity : {'harmonic', 'subharmonic_nonneg', 'analytic_off_reals'}
    name : str
    truncation : int, optional
        Number of series terms; required (and ``>= 16``) for series metadata.
    tail_bound : float, optional
        Declared bound on the neglected series tail.
    closed_form : callable, optional
        Reference values valid on the distinguished boundary (used to compare
        analytic continuations).
    declared : dict
        Properties that cannot be measured from samples (e.g. lower
        semicontinuity) and are carried as metadata only.
    """

    func: Callable
    region: Region
    metadata: str = "closed_form"
    claimed_regularity: str = "harmonic"
    name: str = "field"
    truncation: Optional[int] = None
    tail_bound: Optional[float] = None
    closed_form: Optional[Callable] = None
    declared: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.metadata not in _METADATA:
            raise ValueError(f"unknown metadata {self.metadata!r}")
        if self.claimed_regularity not in _REGULARITY:
            raise ValueError(f"unknown regularity {self.claimed_regularity!r}")
        if self.metadata == "series":
            if self.truncation is None or self.truncation < 16:
                raise ValueError("series fields need truncation N >= 16")
            if self.tail_bound is None or not np.isfinite(self.tail_bound):
                raise ValueError("series fields need a finite tail bound")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.asarray(self.func(z))
        if out.shape != z.shape:
            out = np.broadcast_to(out, z.shape).copy()
        return out

    def scaled(self, c):
        """Return ``c * self`` with the same metadata."""
        f = self.func
        cf = self.closed_form
        return HarmonicField(
            func=lambda z: c * f(z),
            region=self.region,
            metadata=self.metadata,
            claimed_regularity=self.claimed_regularity,
            name=f"{c}*{self.name}",
            truncation=self.truncation,
            tail_bound=None if self.tail_bound is None else abs(c) * self.tail_bound,
            closed_form=None if cf is None else (lambda x: c * cf(x)),
            declared=dict(self.declared),
        )

    @classmethod
    def constant(cls, c, region=None, name=None, regularity="harmonic"):
        region = region or Region.unit_disc()
        value = c
        return cls(
            func=lambda z: np.full(np.shape(z), value, dtype=complex if np.iscomplexobj(value) else float),
            region=region,
            name=name or f"const({c})",
            claimed_regularity=regularity,
            closed_form=lambda x: np.full(np.shape(x), value, dtype=complex if np.iscomplexobj(value) else float),
        )
