"""Command-line experiment runner.

``hblab run CONFIG [--out DIR] [--format json|csv] [--seed N]`` executes the
tasks of a configuration and writes a report; ``hblab --list`` prints the
exemplar and operator catalog.

Exit codes: 0 on success (sharpness witnesses included), 1 when any audit
returns ``CONTRADICTION``, 2 on usage or configuration errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from typing import Optional

import numpy as np

from . import __version__
from .audits import (audit_classical, audit_edge_of_wedge, audit_factorized,
                     audit_phragmen)
from .boundary import directional_limit, growth_fit, l1_bound_profile
from .config import (OPERATORS, SCHEMA, TASK_TYPES, ExperimentConfig, load_config,
                     resolve_field, resolve_subject, resolve_vector)
from .errors import ConfigError, HBLabError
from .exemplars import list_exemplars
from .geometry import SectorSpec
from .semigroup import (DEFAULT_ALPHAS, TrajectoryModel, bounded_check,
                        carleman_identity_check, carleman_transform, criterion_probe,
                        fractional_resolve, stability_probe)

__all__ = ["run_experiment", "emit_report", "main", "TABLES"]

EXIT_OK, EXIT_CONTRADICTION, EXIT_CONFIG = 0, 1, 2

TABLES = {
    "growth_fit": ["r", "M_r", "log(1/(1-r))", "log M_r", "task", "domain"],
    "criterion": ["beta", "alpha", "value", "slope", "task", "decayed"],
    "limits": ["task", "base", "distance", "value", "limit", "converged"],
    "verdicts": ["task", "theorem", "subject", "hypothesis", "status", "consistency"],
}


def _jsonable(obj):
    if hasattr(obj, "to_dict"):
        return _jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return _jsonable(obj.item())
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


# ---------------------------------------------------------------------------
# task runners


def _approach(spec):
    if spec in (None, "radial"):
        return "radial"
    if spec == "vertical":
        return "vertical"
    if isinstance(spec, dict) and "stolz" in spec:
        return lambda b: SectorSpec.stolz(b, float(spec["stolz"]))
    if isinstance(spec, dict) and "upper" in spec:
        return lambda b: SectorSpec.upper(b, float(spec["upper"]))
    raise ConfigError(f"unknown approach {spec!r}")


def _run_task(task, subject, rng):
    t = task["type"]
    if t == "audit_classical":
        return audit_classical(subject, task["theorem"], task.get("theta"), task.get("cfg"))
    if t == "audit_factorized":
        return audit_factorized(subject, resolve_field(task["f"]), resolve_field(task["g"]),
                                task.get("region", "disc"), task.get("theta", np.pi / 4),
                                task.get("m", 0.0), task.get("cfg"))
    if t == "audit_phragmen":
        return audit_phragmen(subject, task["l"], task["theta"], task["m"], task.get("cfg"),
                              variant=task.get("variant", "quarter_disc"))
    if t == "audit_edge_of_wedge":
        f = resolve_field(task["f"]) if "f" in task else None
        g = resolve_field(task["g"]) if "g" in task else None
        return audit_edge_of_wedge(subject, f, g, task.get("theta", np.pi / 4),
                                   task.get("m", 0.0), task.get("cfg"))
    if t == "growth_fit":
        return growth_fit(subject, task["schedule"], task.get("kind", "power"),
                          domain=task.get("domain", "circle"), n=task.get("n", 256),
                          inner_exponent=task.get("inner_exponent"))
    if t == "directional_limit":
        ap = _approach(task.get("approach"))
        out = []
        for b in task["bases"]:
            a = ap(b) if callable(ap) else ap
            out.append({"base": b, "estimate": directional_limit(
                subject, b, a, task["schedule"], tol=task.get("tol", 1e-4))})
        return out
    if t == "l1_bound_profile":
        return l1_bound_profile(subject, task.get("kind", "circle"), task["schedule"],
                                n=task.get("n", 256))
    if t == "bounded_check":
        return bounded_check(subject, task["schedule"])
    if t == "stability_probe":
        x = resolve_vector(task["x"], subject.dim, rng)
        return stability_probe(subject, x, task["schedule"])
    if t == "criterion_probe":
        x = resolve_vector(task["x"], subject.dim, rng)
        freqs = task["frequencies"]
        if subject.mode == "discrete":
            freqs = [complex(np.exp(1j * float(a))) for a in freqs]
        return criterion_probe(subject, x, task.get("p", 2), freqs,
                               task.get("approach", list(DEFAULT_ALPHAS)))
    if t == "fractional_resolve":
        x = resolve_vector(task["x"], subject.dim, rng)
        out = []
        for freq in task["frequencies"]:
            point = complex(np.exp(1j * float(freq))) if subject.mode == "discrete" else freq
            y = fractional_resolve(subject, point, float(task["gamma"]), x)
            out.append({"frequency": freq, "label": "range witness (truncated)",
                        "dim": subject.dim, "preimage_norm": float(np.linalg.norm(y))})
        return out
    if t == "carleman_transform":
        x0 = resolve_vector(task["x0"], subject.dim, rng)
        F = TrajectoryModel.from_diagonal(subject.lam, x0)
        out = []
        for lam in task["lam"]:
            lam_c = complex(*lam) if isinstance(lam, list) else complex(lam)
            res = carleman_transform(F, lam_c, tol=task.get("tol", 1e-10))
            out.append({"lam": lam_c, "value": res.value, "error": res.error,
                        "horizon": res.horizon})
        return out
    if t == "carleman_identity":
        x0 = resolve_vector(task["x0"], subject.dim, rng)
        F = TrajectoryModel.from_diagonal(subject.lam, x0)
        lam = complex(*task["lam"]) if isinstance(task["lam"], list) else complex(task["lam"])
        mu = complex(*task["mu"]) if isinstance(task["mu"], list) else complex(task["mu"])
        return carleman_identity_check(subject, F, lam, mu, tol=task.get("tol", 1e-10))
    raise ConfigError(f"unknown task type {t!r}")


def _task_status(payload):
    if hasattr(payload, "consistency"):
        return payload.consistency
    return "ok"


def run_experiment(config, *, seed: Optional[int] = None):
    """Execute every task of a configuration and return the report envelope.

    Parameters
    ----------
    config : ExperimentConfig, dict, or path
    seed : int, optional
        Overrides the configured seed.

    Returns
    -------
    dict
        ``schema``, ``tool_version``, ``config`` (full echo), ``duration_s``,
        ``status`` (``ok``, ``contradiction`` or ``error``) and ``results``
        (one record per task). Everything except ``duration_s`` is a
        deterministic function of the configuration.

    Raises
    ------
    ConfigError
        The configuration is invalid or references unknown names.
    """
    if isinstance(config, dict):
        config = ExperimentConfig.from_dict(config)
    elif not isinstance(config, ExperimentConfig):
        config = load_config(config)
    if seed is not None:
        config.seed = int(seed)
    rng = np.random.default_rng(config.seed)
    start = time.perf_counter()
    results = []
    for i, task in enumerate(config.tasks):
        kind = TASK_TYPES[task["type"]][2]
        name = task.get("name", f"{i}:{task['type']}")
        subject = resolve_subject(task.get("subject", config.subject), kind)
        try:
            payload = _run_task(task, subject, rng)
            status = _task_status(payload)
            record = {"task": name, "type": task["type"], "status": status,
                      "payload": _jsonable(payload)}
        except ConfigError:
            raise
        except (HBLabError, ValueError) as exc:
            record = {"task": name, "type": task["type"], "status": "error",
                      "error": f"{type(exc).__name__}: {exc}"}
        results.append(record)
    statuses = [r["status"] for r in results]
    overall = ("contradiction" if "CONTRADICTION" in statuses
               else "error" if "error" in statuses else "ok")
    return {"schema": SCHEMA, "tool_version": __version__, "config": config.to_dict(),
            "duration_s": time.perf_counter() - start, "status": overall,
            "results": results}


def payload_bytes(envelope):
    """Canonical JSON of the deterministic part of an envelope."""
    body = {k: v for k, v in envelope.items() if k != "duration_s"}
    return json.dumps(body, sort_keys=True).encode()


# ---------------------------------------------------------------------------
# reports


def _table_rows(envelope):
    rows = {k: [] for k in TABLES}
    for res in envelope["results"]:
        payload = res.get("payload")
        if payload is None:
            continue
        task = res["task"]
        t = res["type"]
        if t == "growth_fit" or (isinstance(payload, dict) and payload.get("kind") in
                                 ("power", "exp_power") and "sups" in payload):
            _growth_rows(rows, payload, task)
        if t == "criterion_probe":
            for row in payload["rows"]:
                freq = row["frequency"]
                beta = freq[1] if isinstance(freq, list) else freq
                if payload["mode"] == "discrete":
                    beta = math.atan2(freq[1], freq[0])
                for a, v in zip(row["approach"], row["values"]):
                    rows["criterion"].append([beta, a, v, row["slope"], task, row["decayed"]])
        if t == "directional_limit":
            _limit_rows(rows, payload, task)
        if t.startswith("audit_"):
            for h in payload["hypotheses"]:
                rows["verdicts"].append([task, payload["theorem"], payload["subject"], h["name"],
                                         h["status"], payload["consistency"]])
                ev = h.get("evidence")
                if isinstance(ev, dict) and "sups" in ev and "schedule" in ev:
                    _growth_rows(rows, ev, f"{task}/{h['name']}")
                if isinstance(ev, list):
                    _limit_rows(rows, ev, f"{task}/{h['name']}")
            concl = payload["conclusion"]
            rows["verdicts"].append([task, payload["theorem"], payload["subject"], "conclusion",
                                     {True: "pass", False: "fail"}.get(concl["passed"],
                                                                       "indeterminate"),
                                     payload["consistency"]])
    return rows


def _limit_rows(rows, items, task):
    for item in items:
        if not (isinstance(item, dict) and "estimate" in item):
            continue
        est = item["estimate"]
        for d, v in zip(est["schedule"], est["values"]):
            rows["limits"].append([task, item["base"], d, v, est["limit"], est["converged"]])


def _growth_rows(rows, fit, task):
    domain = fit.get("domain", "circle")
    for lev, sup in zip(fit["schedule"], fit["sups"]):
        delta = 1.0 - lev if domain == "circle" else lev
        rows["growth_fit"].append([lev, sup, math.log(1.0 / delta),
                                   math.log(sup) if sup > 0 else "-inf", task, domain])


def emit_report(envelope, out_dir, fmt="json"):
    """Write the envelope as ``report.json`` or as CSV tables.

    CSV output always writes ``growth_fit.csv``, ``criterion.csv``,
    ``limits.csv`` and ``verdicts.csv`` (header-only when empty). In growth
    tables from line fits the ``r`` column holds the height and the log
    column ``log(1/height)``.

    Returns
    -------
    list of str
        Paths written.
    """
    os.makedirs(out_dir, exist_ok=True)
    if fmt == "json":
        path = os.path.join(out_dir, "report.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(envelope, fh, indent=2, sort_keys=True)
        return [path]
    if fmt != "csv":
        raise ConfigError(f"unknown format {fmt!r}")
    rows = _table_rows(envelope)
    paths = []
    for name, header in TABLES.items():
        path = os.path.join(out_dir, f"{name}.csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows[name])
        paths.append(path)
    return paths


# ---------------------------------------------------------------------------
# entry point


def _catalog_text():
    lines = ["exemplars:"]
    lines += [f"  {n}" for n in list_exemplars()]
    lines.append("operators:")
    for n, spec in OPERATORS.items():
        desc = spec.get("rule") or spec.get("entries")
        lines.append(f"  {n}: {spec['kind']} {desc} ({spec.get('mode', 'continuous')})")
    lines.append("task types:")
    lines += [f"  {n}" for n in TASK_TYPES]
    return "\n".join(lines)


def _parser():
    p = argparse.ArgumentParser(prog="hblab", description=__doc__.splitlines()[0])
    p.add_argument("--list", action="store_true", help="print the exemplar and operator catalog")
    p.add_argument("--version", action="version", version=f"hblab {__version__}")
    sub = p.add_subparsers(dest="command")
    run = sub.add_parser("run", help="run an experiment configuration")
    run.add_argument("config", help="path to a YAML configuration")
    run.add_argument("--out", default=None, help="output directory")
    run.add_argument("--format", choices=("json", "csv"), default=None)
    run.add_argument("--seed", type=int, default=None, help="override the configured seed")
    return p


def main(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    if args.list:
        print(_catalog_text())
        return EXIT_OK
    if args.command != "run":
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = load_config(args.config)
        env = run_experiment(cfg, seed=args.seed)
        out = args.out or cfg.output.get("dir", "out")
        fmt = args.format or cfg.output.get("format", "json")
        paths = emit_report(env, out, fmt)
    except ConfigError as exc:
        print(f"hblab: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for res in env["results"]:
        print(f"{res['task']}: {res['status']}")
    for path in paths:
        print(f"wrote {path}")
    if env["status"] == "contradiction":
        print("hblab: an audit returned CONTRADICTION", file=sys.stderr)
        return EXIT_CONTRADICTION
    if env["status"] == "error":
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
