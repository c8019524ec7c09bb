"""Experiment configuration: schema ``hb-lab/1`` in YAML.

A configuration names an experiment, an optional default subject, a seed
and a list of tasks::

    schema: hb-lab/1
    id: dahlberg-u0
    seed: 0
    subject: u0
    tasks:
      - type: audit_classical
        theorem: dahlberg
      - type: growth_fit
        schedule: [0.9, 0.95, 0.98, 0.99, 0.995, 0.999]
    output: {dir: out, format: json}

Subjects are exemplar names (``u0``, ``wolf``, ``catalog:rational_pole``,
...), mappings ``{exemplar: NAME, params: {...}, abs: BOOL, scale: C}``, or
operators ``{operator: NAME | {...}, N: 200, mode: continuous}``. Operator
mappings take ``kind: diagonal`` with either ``rule`` (an expression in
``k`` and ``i``, see :func:`hblab.semigroup.parse_rule`) or ``entries``
(a list of numbers or ``[re, im]`` pairs), or ``kind: matrix`` with
row-major ``entries`` of numbers or ``[re, im]`` pairs.

Vectors (``x``, ``x0``) are ``{basis: k}`` (1-based), ``{harmonic: s}``
(``x_k = k^-s``), ``{random: true}`` (complex Gaussian from the seed),
``zero``, or an explicit list.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
import yaml

from .errors import ConfigError
from .exemplars import list_exemplars, resolve
from .fields import HarmonicField
from .semigroup import OperatorModel, parse_rule

__all__ = [
    "SCHEMA",
    "TASK_TYPES",
    "OPERATORS",
    "ExperimentConfig",
    "load_config",
    "dump_config",
    "resolve_subject",
    "resolve_field",
    "resolve_operator",
    "resolve_vector",
]

SCHEMA = "hb-lab/1"

OPERATORS = {
    "damped": {"kind": "diagonal", "rule": "-1/k + i*k"},
    "unitary": {"kind": "diagonal", "rule": "i*k"},
    "contraction": {"kind": "diagonal", "rule": "(k/(k+1))*(1+2*i*k)/(1-2*i*k)",
                    "mode": "discrete"},
    "rotation": {"kind": "diagonal", "rule": "(1+2*i*k)/(1-2*i*k)", "mode": "discrete"},
    "jordan": {"kind": "matrix", "entries": [[0, 1], [0, 0]]},
}

# task type -> (required keys, optional keys, subject kind)
TASK_TYPES = {
    "audit_classical": ({"theorem"}, {"theta", "cfg"}, "field"),
    "audit_factorized": ({"f", "g"}, {"region", "theta", "m", "cfg"}, "field"),
    "audit_phragmen": ({"l", "theta", "m"}, {"variant", "cfg"}, "field"),
    "audit_edge_of_wedge": (set(), {"f", "g", "theta", "m", "cfg"}, "field"),
    "growth_fit": ({"schedule"}, {"kind", "domain", "n", "inner_exponent"}, "field"),
    "directional_limit": ({"bases", "schedule"}, {"approach", "tol"}, "field"),
    "l1_bound_profile": ({"schedule"}, {"kind", "n"}, "field"),
    "bounded_check": ({"schedule"}, set(), "operator"),
    "stability_probe": ({"x", "schedule"}, set(), "operator"),
    "criterion_probe": ({"x", "frequencies"}, {"p", "approach"}, "operator"),
    "fractional_resolve": ({"x", "frequencies", "gamma"}, set(), "operator"),
    "carleman_transform": ({"x0", "lam"}, {"tol"}, "operator"),
    "carleman_identity": ({"x0", "lam", "mu"}, {"tol"}, "operator"),
}

_AUDIT_THEOREMS = ("dahlberg", "berman_cohn", "wolf")


@dataclass
class ExperimentConfig:
    """Parsed configuration; ``to_dict``/``from_dict`` round-trip exactly."""

    id: str
    tasks: list
    subject: Any = None
    seed: int = 0
    description: str = ""
    output: dict = field(default_factory=lambda: {"dir": "out", "format": "json"})
    schema: str = SCHEMA

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("configuration must be a mapping")
        data = copy.deepcopy(data)
        schema = data.pop("schema", None)
        if schema != SCHEMA:
            raise ConfigError(f"unsupported schema {schema!r}; expected {SCHEMA!r}")
        known = {"id", "tasks", "subject", "seed", "description", "output"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
        if "id" not in data or not isinstance(data["id"], str):
            raise ConfigError("configuration needs a string 'id'")
        tasks = data.get("tasks", [])
        if tasks is None:
            tasks = []
        if not isinstance(tasks, list):
            raise ConfigError("'tasks' must be a list")
        seed = data.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ConfigError("'seed' must be an integer")
        output = data.get("output") or {"dir": "out", "format": "json"}
        cfg = cls(id=data["id"], tasks=tasks, subject=data.get("subject"), seed=seed,
                  description=data.get("description", ""), output=dict(output))
        cfg.validate()
        return cfg

    def to_dict(self):
        d = {"schema": self.schema, "id": self.id}
        if self.description:
            d["description"] = self.description
        d["seed"] = self.seed
        if self.subject is not None:
            d["subject"] = copy.deepcopy(self.subject)
        d["tasks"] = copy.deepcopy(self.tasks)
        d["output"] = dict(self.output)
        return d

    def __eq__(self, other):
        return isinstance(other, ExperimentConfig) and self.to_dict() == other.to_dict()

    # -- validation -------------------------------------------------------

    def validate(self):
        """Check structure, names and parameter ranges without building subjects.

        Raises
        ------
        ConfigError
        """
        fmt = self.output.get("format", "json")
        if fmt not in ("json", "csv"):
            raise ConfigError(f"output format must be json or csv, not {fmt!r}")
        for i, task in enumerate(self.tasks):
            where = f"task {i}"
            if not isinstance(task, dict) or "type" not in task:
                raise ConfigError(f"{where}: each task needs a 'type'")
            ttype = task["type"]
            if ttype not in TASK_TYPES:
                raise ConfigError(f"{where}: unknown task type {ttype!r}")
            required, optional, subject_kind = TASK_TYPES[ttype]
            keys = set(task) - {"type", "subject", "name"}
            missing = required - keys
            if missing:
                raise ConfigError(f"{where} ({ttype}): missing {sorted(missing)}")
            extra = keys - required - optional
            if extra:
                raise ConfigError(f"{where} ({ttype}): unknown keys {sorted(extra)}")
            subject = task.get("subject", self.subject)
            if subject is None:
                raise ConfigError(f"{where} ({ttype}): no subject given")
            _check_subject(subject, subject_kind, where)
            _check_params(task, where)


def _check_subject(spec, kind, where):
    if kind == "field":
        _check_field_ref(spec, where)
        return
    if not (isinstance(spec, dict) and "operator" in spec):
        raise ConfigError(f"{where}: this task needs an operator subject")
    op = spec["operator"]
    if isinstance(op, str):
        if op not in OPERATORS:
            raise ConfigError(f"{where}: unknown operator {op!r}; known: {sorted(OPERATORS)}")
        op = OPERATORS[op]
    if not isinstance(op, dict) or op.get("kind") not in ("diagonal", "matrix"):
        raise ConfigError(f"{where}: operator needs kind diagonal or matrix")
    if op["kind"] == "diagonal" and "rule" in op:
        try:
            parse_rule(op["rule"], 1)
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None
    N = spec.get("N", 200)
    if not isinstance(N, int) or N < 1:
        raise ConfigError(f"{where}: truncation N must be a positive integer")
    if spec.get("mode", op.get("mode", "continuous")) not in ("continuous", "discrete"):
        raise ConfigError(f"{where}: mode must be continuous or discrete")


def _check_field_ref(spec, where):
    if isinstance(spec, str):
        name = spec
    elif isinstance(spec, dict) and "exemplar" in spec:
        name = spec["exemplar"]
        extra = set(spec) - {"exemplar", "params", "abs", "scale"}
        if extra:
            raise ConfigError(f"{where}: unknown field keys {sorted(extra)}")
    else:
        raise ConfigError(f"{where}: field subjects are names or {{exemplar: ...}} mappings")
    if name not in list_exemplars():
        raise ConfigError(f"{where}: unknown exemplar {name!r}")


def _check_params(task, where):
    t = task["type"]
    theta = task.get("theta")
    if theta is not None:
        if not isinstance(theta, (int, float)) or not (0.0 < theta < np.pi):
            raise ConfigError(f"{where}: theta out of range")
    if t == "audit_classical":
        if task["theorem"] not in _AUDIT_THEOREMS:
            raise ConfigError(f"{where}: unknown theorem {task['theorem']!r}")
        if task["theorem"] != "dahlberg" and not (theta is not None and theta < np.pi / 2):
            raise ConfigError(f"{where}: theta in (0, pi/2) is required")
    if t == "audit_factorized":
        if task.get("region", "disc") not in ("disc", "rectangle"):
            raise ConfigError(f"{where}: region must be disc or rectangle")
        _check_field_ref(task["f"], where)
        _check_field_ref(task["g"], where)
    if t == "audit_edge_of_wedge":
        for key in ("f", "g"):
            if key in task:
                _check_field_ref(task[key], where)
    if t in ("audit_factorized", "audit_phragmen", "audit_edge_of_wedge"):
        m = task.get("m", 0.0)
        if not isinstance(m, (int, float)) or m < 0:
            raise ConfigError(f"{where}: m must be a nonnegative number")
    if t == "audit_phragmen" and task.get("variant", "quarter_disc") not in ("quarter_disc", "sector"):
        raise ConfigError(f"{where}: variant must be quarter_disc or sector")
    if t == "criterion_probe":
        p = task.get("p", 2)
        if not isinstance(p, (int, float)) or not (1.0 < p <= 2.0):
            raise ConfigError(f"{where}: Fourier type p must lie in (1, 2]")
    if t == "fractional_resolve":
        g = task["gamma"]
        if not isinstance(g, (int, float)) or isinstance(g, bool) or not g > 0:
            raise ConfigError(f"{where}: gamma must be a positive number")
    for key in ("schedule", "approach", "frequencies", "bases"):
        val = task.get(key)
        if key == "approach" and t == "directional_limit":
            continue
        if val is not None and (not isinstance(val, list) or not val):
            raise ConfigError(f"{where}: {key} must be a nonempty list")


# ---------------------------------------------------------------------------
# loading and dumping


def load_config(source):
    """Parse a configuration from a path or YAML text.

    Raises
    ------
    ConfigError
        Unreadable file, invalid YAML or schema violations.
    """
    text = source
    if not (isinstance(source, str) and "\n" in source):
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read configuration: {exc}") from None
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML: {exc}") from None
    return ExperimentConfig.from_dict(data)


def dump_config(cfg: ExperimentConfig):
    """YAML text for ``cfg``; ``load_config(dump_config(cfg)) == cfg``."""
    return yaml.safe_dump(cfg.to_dict(), sort_keys=False, default_flow_style=None)


# ---------------------------------------------------------------------------
# resolution


def _complex_list(vals):
    out = []
    for v in vals:
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise ConfigError("complex entries are [re, im] pairs")
            out.append(complex(float(v[0]), float(v[1])))
        else:
            out.append(complex(v))
    return np.asarray(out, dtype=complex)


def resolve_field(spec) -> HarmonicField:
    """Build a field from a name or an ``{exemplar: ...}`` mapping."""
    if isinstance(spec, str):
        name, params, use_abs, scale = spec, {}, False, None
    else:
        name = spec["exemplar"]
        params = dict(spec.get("params") or {})
        use_abs = bool(spec.get("abs", False))
        scale = spec.get("scale")
    try:
        fld = resolve(name, **params)
    except KeyError as exc:
        raise ConfigError(str(exc)) from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad parameters for {name!r}: {exc}") from None
    if scale is not None:
        fld = fld.scaled(float(scale))
    if use_abs:
        f = fld.func
        fld = HarmonicField(lambda z: np.abs(f(z)), fld.region, metadata=fld.metadata,
                            claimed_regularity="subharmonic_nonneg", name=f"|{fld.name}|")
    return fld


def resolve_operator(spec) -> OperatorModel:
    """Build an operator model from an ``{operator: ...}`` mapping."""
    if not isinstance(spec, dict) or "operator" not in spec:
        raise ConfigError("operator subjects are {operator: ...} mappings")
    op = spec["operator"]
    name = op if isinstance(op, str) else op.get("name", "operator")
    if isinstance(op, str):
        if op not in OPERATORS:
            raise ConfigError(f"unknown operator {op!r}; known: {sorted(OPERATORS)}")
        op = OPERATORS[op]
    N = int(spec.get("N", 200))
    mode = spec.get("mode", op.get("mode", "continuous"))
    check = bool(op.get("check", True))
    try:
        if op["kind"] == "diagonal":
            if "rule" in op:
                lam = parse_rule(op["rule"], N)
            else:
                lam = _complex_list(op["entries"])
            return OperatorModel.diagonal(lam, mode, check=check, name=name)
        rows = [_complex_list(r) for r in op["entries"]]
        return OperatorModel.matrix(np.array(rows), mode, name=name)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"cannot build operator {name!r}: {exc}") from None


def resolve_subject(spec, kind):
    return resolve_field(spec) if kind == "field" else resolve_operator(spec)


def resolve_vector(spec, dim, rng):
    """Vector of length ``dim`` from a vector spec."""
    if isinstance(spec, str):
        if spec == "zero":
            return np.zeros(dim, dtype=complex)
        raise ConfigError(f"unknown vector spec {spec!r}")
    if isinstance(spec, dict):
        if "basis" in spec:
            k = int(spec["basis"])
            if not 1 <= k <= dim:
                raise ConfigError(f"basis index {k} outside 1..{dim}")
            x = np.zeros(dim, dtype=complex)
            x[k - 1] = 1.0
            return x
        if "harmonic" in spec:
            return (np.arange(1, dim + 1, dtype=float) ** -float(spec["harmonic"])).astype(complex)
        if spec.get("random"):
            return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        raise ConfigError(f"unknown vector spec {spec!r}")
    x = _complex_list(spec)
    if x.size != dim:
        raise ConfigError(f"vector of length {x.size} does not match dimension {dim}")
    return x
