import numpy as np
import pytest

from hblab import audits as A
from hblab import exemplars as E
from hblab.config import resolve_field
from hblab.errors import DomainError, HypothesisViolation, RegularityMismatch
from hblab.fields import HarmonicField
from hblab.geometry import Region

Q = np.pi / 4


def _abs_u0():
    return resolve_field({"exemplar": "u0", "abs": True})


# -- classical ----------------------------------------------------------------

def test_zero_field_dahlberg_consistent():
    v = A.audit_classical(E.resolve("zero"), "dahlberg")
    assert v.consistency == "consistent"
    assert v.all_passed and v.conclusion.passed


def test_u0_berman_cohn_fails_stolz_limits():
    v = A.audit_classical(E.u0_field(), "berman_cohn", Q)
    assert v.consistency == "sharpness_witness"
    assert v.hypothesis("(i)").status == "fail"
    assert v.hypothesis("(ii)").status == "pass"
    assert v.conclusion.passed is False


def test_classical_argument_errors():
    with pytest.raises(ValueError):
        A.audit_classical(E.u0_field(), "riemann")
    with pytest.raises(ValueError):
        A.audit_classical(E.u0_field(), "berman_cohn")
    with pytest.raises(ValueError):
        A.audit_classical(E.u0_field(), "berman_cohn", np.pi)
    with pytest.raises(RegularityMismatch):
        A.audit_classical(E.resolve("power", m=1.0), "wolf", Q)
    with pytest.raises(DomainError):
        A.audit_classical(E.resolve("rect:height"), "dahlberg")


def test_negative_subharmonic_field_rejected():
    neg = HarmonicField(lambda z: -np.ones(np.shape(z)), Region.unit_disc(),
                        claimed_regularity="subharmonic_nonneg", name="minus-one")
    with pytest.raises(HypothesisViolation):
        A.audit_classical(neg, "dahlberg")


# -- factorized ---------------------------------------------------------------

def test_factorized_u0_fails_l1_bound():
    v = A.audit_factorized(E.u0_field(), E.resolve("one"), _abs_u0(), "disc", Q, 2.0)
    assert v.hypothesis("(1)(i)").status == "pass"
    assert v.hypothesis("(1)(iii)").status == "fail"
    assert v.hypothesis("f lower").status == "declared"
    assert v.consistency == "sharpness_witness"


def test_factorized_zero_field_with_unit_majorant():
    # f = 1 does not tend to zero, yet the conclusion holds trivially
    one = E.resolve("one")
    v = A.audit_factorized(E.resolve("zero"), one, one, "disc", Q, 0.0)
    assert v.hypothesis("(1)(ii)").status == "fail"
    assert v.conclusion.passed
    assert v.consistency == "consistent"


def test_factorized_rectangle_height():
    v = A.audit_factorized(E.resolve("rect:height"), E.resolve("rect:height"),
                           E.resolve("rect:one"), "rectangle", Q, 0.0)
    assert v.consistency == "consistent"
    assert v.all_passed and v.conclusion.passed


def test_factorized_region_mismatch():
    with pytest.raises(DomainError):
        A.audit_factorized(E.resolve("rect:height"), E.resolve("one"), E.resolve("one"), "disc")


# -- phragmen and edge of wedge -----------------------------------------------

def test_phragmen_inv_sqrt_consistent():
    v = A.audit_phragmen(E.resolve("sector:inv_sqrt"), 0.5, 1.0, 0.5)
    assert v.consistency == "consistent" and v.conclusion.passed


def test_edge_of_wedge_zero_continuation():
    zero = HarmonicField(lambda z: np.zeros(np.shape(z), complex), Region.square(),
                         claimed_regularity="analytic_off_reals", name="zero-square",
                         closed_form=lambda z: np.zeros(np.shape(z), complex))
    v = A.audit_edge_of_wedge(zero)
    cont = v.extras["continuation"]
    assert cont is not None
    assert np.max(np.abs(cont["real"])) == 0 and np.max(np.abs(cont["imag"])) == 0


# -- metamorphic --------------------------------------------------------------

CASES = [
    ("dahlberg-u0", lambda u: A.audit_classical(u, "dahlberg"), E.u0_field),
    ("berman-cohn-u0", lambda u: A.audit_classical(u, "berman_cohn", Q), E.u0_field),
    ("dahlberg-zero", lambda u: A.audit_classical(u, "dahlberg"), lambda: E.resolve("zero")),
]


@pytest.mark.parametrize("c", [0.1, 1.0, 10.0])
@pytest.mark.parametrize("name,run,make", CASES, ids=[c[0] for c in CASES])
def test_verdict_invariant_under_scaling(name, run, make, c):
    base = run(make())
    scaled = run(make().scaled(c))
    assert scaled.pattern == base.pattern
    assert scaled.consistency == base.consistency


@pytest.mark.parametrize("name,run,make", CASES, ids=[c[0] for c in CASES])
def test_loosening_never_turns_pass_into_fail(name, run, make):
    u = make()
    strict = run(u).pattern
    cfg = A.AuditConfig().loosened(2.0)
    if "berman" in name:
        loose = A.audit_classical(u, "berman_cohn", Q, cfg).pattern
    else:
        loose = A.audit_classical(u, "dahlberg", cfg=cfg).pattern
    for key, status in strict.items():
        if status == "pass":
            assert loose[key] == "pass"


def test_no_contradiction_across_catalog():
    one = E.resolve("one")
    verdicts = [
        A.audit_classical(E.resolve("zero"), "dahlberg"),
        A.audit_classical(E.u0_field(), "dahlberg"),
        A.audit_classical(E.u0_field(), "berman_cohn", Q),
        A.audit_classical(E.resolve("power", m=1.0), "dahlberg"),
        A.audit_factorized(E.u0_field(), one, _abs_u0(), "disc", Q, 2.0),
        A.audit_phragmen(E.resolve("sector:inv"), 0.5, 1.0, 1.0),
    ]
    for name in ("rational_pole", "principal_log", "boundary_jump"):
        verdicts.append(A.audit_edge_of_wedge(E.resolve(f"catalog:{name}")))
    assert all(v.consistency != "CONTRADICTION" for v in verdicts)


# -- configuration ------------------------------------------------------------

def test_audit_config_coerce():
    cfg = A.AuditConfig.coerce({"limit_tol": 1e-4, "radial_schedule": [0.9, 0.99, 0.999]})
    assert cfg.limit_tol == 1e-4 and cfg.radial_schedule == (0.9, 0.99, 0.999)
    with pytest.raises(ValueError):
        A.AuditConfig.coerce({"nope": 1})
    loose = A.AuditConfig().loosened(2.0)
    assert loose.margin == pytest.approx(0.05) and loose.limit_tol == pytest.approx(2e-3)


def test_verdict_lookup_and_serialization():
    v = A.audit_classical(E.resolve("zero"), "dahlberg")
    with pytest.raises(KeyError):
        v.hypothesis("(")
    d = v.to_dict()
    assert d["consistency"] == "consistent" and len(d["hypotheses"]) == 2
