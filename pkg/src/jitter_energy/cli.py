"""``jitter-energy`` batch runner.

    jitter-energy <command> --config <path> [--out <path>] [--jobs N]

The config is a single JSON document (``schemas/config.schema.json``).
Exit status: 0 all pass, 1 some bound failed, 2 config or input error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .bounds import (
    FAIL,
    HYPOTHESIS_NOT_MET,
    PASS,
    bound_constants,
    corollary_equivalence,
    g_curve,
    h_curve,
    lemma2_pointwise,
    lemma2_scan,
    scan_nodes,
)
from .campaigns import lemma_pointwise_campaign
from .core import FRAME_CONSTANT, SampleSequence, min_plus_separation
from .energy import QuadratureError, energy_closed_form, energy_quadrature
from .jitter import JitterSpec, admissible_scaled_grid, derive_seed, generate_grid, rng_from_seed
from .reports import (
    CURVE_FIELDS,
    SWEEP_FIELDS,
    csv_text,
    dumps,
    jsonl_text,
    make_row,
    sibling,
    write_atomic,
)

COMMANDS = ("energy", "verify-bounds", "sweep-gamma", "lemma-scan", "monte-carlo")
JOBS_ENV = "JITTER_ENERGY_JOBS"

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NONCONVERGED = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


def load_schema(name: str = "config.schema.json") -> dict:
    return json.loads(resources.files("jitter_energy").joinpath("schemas", name).read_text())


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    jitter: JitterSpec | None = None
    coefficients: dict | None = None
    trials: int = 1
    seed: int = 0
    gamma_grid: tuple = ()
    gamma_target: float | None = None
    tolerance: float | None = None
    oracle_every: int = 0
    grid_step: float = 1e-4
    pointwise_samples: int = 10_000
    serialize_grids: int = 10
    output_path: str | None = None
    raw: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentConfig:
        try:
            jsonschema.validate(data, load_schema())
        except jsonschema.ValidationError as exc:
            path = "/".join(str(p) for p in exc.absolute_path)
            raise ConfigError(f"{path or '<root>'}: {exc.message}") from None
        kwargs = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        if "jitter" in data:
            try:
                kwargs["jitter"] = JitterSpec.from_json(data["jitter"])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"jitter: {exc}") from None
        if "gamma_grid" in data:
            kwargs["gamma_grid"] = tuple(float(g) for g in data["gamma_grid"])
        cfg = cls(**kwargs, raw=data)
        coeffs = cfg.coefficients or {}
        if cfg.jitter and coeffs.get("kind") == "explicit" and len(coeffs["values"]) != cfg.jitter.length:
            raise ConfigError("coefficients/values: length differs from jitter/length")
        return cfg

    @classmethod
    def load(cls, path) -> ExperimentConfig:
        try:
            data = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)


# --- trial construction ----------------------------------------------------------


def _as_complex(v) -> complex:
    return complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)


def trial_coefficients(cfg: ExperimentConfig, trial: int) -> SampleSequence:
    spec = cfg.coefficients
    length = cfg.jitter.length
    if spec["kind"] == "explicit":
        return SampleSequence([_as_complex(v) for v in spec["values"]])
    if spec["kind"] == "constant":
        return SampleSequence(np.full(length, _as_complex(spec["value"])))
    rng = rng_from_seed(spec["seed"], trial)
    a = rng.normal(size=length) + 1j * rng.normal(size=length)
    # ``norm`` is the Euclidean norm of the coefficient vector
    return SampleSequence(a * (spec.get("norm", 1.0) / np.linalg.norm(a)))


def trial_spec(cfg: ExperimentConfig, trial: int) -> JitterSpec:
    spec = cfg.jitter
    if spec.kind in ("uniform", "gaussian"):
        return spec.with_seed(derive_seed(spec.seed, trial))
    return spec


def trial_grid(cfg: ExperimentConfig, trial: int, gamma_target: float | None = None):
    spec = trial_spec(cfg, trial)
    target = gamma_target if gamma_target is not None else cfg.gamma_target
    return admissible_scaled_grid(spec, target) if target is not None else generate_grid(spec)


def _finite(x):
    return x if math.isfinite(x) else None


def _base_row(command, trial, check, seq, grid, rep):
    gamma = min_plus_separation(grid)
    c1, c2 = bound_constants(gamma)
    return dict(
        command=command, trial=trial, check=check, R=len(seq), gamma=_finite(gamma),
        scaled=grid.scaled, coefficient_norm=rep.coefficient_norm,
        energy_closed_form=rep.closed_form, parseval_residual=rep.parseval_residual, c1=c1, c2=c2,
    )


# --- per-trial workers (top level so they pickle) -------------------------------


def _energy_trial(cfg: ExperimentConfig, trial: int) -> list[dict]:
    seq, grid = trial_coefficients(cfg, trial), trial_grid(cfg, trial)
    if cfg.tolerance is None:
        rep = energy_closed_form(seq, grid)
        return [make_row(**_base_row("energy", trial, "energy", seq, grid, rep), status=PASS)]
    rep = energy_quadrature(seq, grid, cfg.tolerance)
    lhs = abs(rep.closed_form - rep.oracle.value)
    rhs = rep.oracle.tail_bound + rep.oracle.quadrature_tolerance
    return [make_row(
        **_base_row("energy", trial, "energy", seq, grid, rep),
        energy_oracle=rep.oracle.value, oracle_tail_bound=rep.oracle.tail_bound,
        oracle_quadrature_tolerance=rep.oracle.quadrature_tolerance,
        lhs=lhs, rhs=rhs, slack=rhs - lhs, status=PASS if lhs <= rhs else FAIL,
    )]


def _verify_trial(cfg: ExperimentConfig, trial: int) -> list[dict]:
    seq, grid = trial_coefficients(cfg, trial), trial_grid(cfg, trial)
    oracle = None
    if cfg.tolerance is not None and cfg.oracle_every and trial % cfg.oracle_every == 0:
        rep = energy_quadrature(seq, grid, cfg.tolerance)
        oracle = rep.oracle
    else:
        rep = energy_closed_form(seq, grid)
    rows = []
    for res in corollary_equivalence(seq, grid, rep.closed_form):
        status = res.status
        extra = {}
        if oracle is not None:
            extra = dict(energy_oracle=oracle.value, oracle_tail_bound=oracle.tail_bound,
                         oracle_quadrature_tolerance=oracle.quadrature_tolerance)
            if status == PASS and not rep.oracle_agrees():
                status = FAIL
        rows.append(make_row(**_base_row("verify-bounds", trial, res.name, seq, grid, rep), **extra,
                             lhs=res.lhs, rhs=res.rhs, slack=res.slack, status=status))
    return rows


def _sweep_trial(cfg: ExperimentConfig, gamma: float, trial: int) -> float:
    seq = trial_coefficients(cfg, trial)
    grid = trial_grid(cfg, trial, gamma_target=gamma)
    rep = energy_closed_form(seq, grid)
    return rep.closed_form / rep.coefficient_norm


def _monte_carlo_trial(cfg: ExperimentConfig, trial: int) -> dict:
    seq, grid = trial_coefficients(cfg, trial), trial_grid(cfg, trial)
    rep = energy_closed_form(seq, grid)
    out = {
        "trial": trial,
        "R": len(seq),
        "gamma": _finite(min_plus_separation(grid)),
        "coefficient_norm": rep.coefficient_norm,
        "parseval_residual": rep.parseval_residual,
        "residual_ratio": rep.parseval_residual / rep.coefficient_norm,
    }
    if trial < cfg.serialize_grids:
        out["grid"] = grid.to_json()
        out["coefficients"] = seq.to_json()
    return out


def _map(fn, items, jobs):
    items = list(items)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [fn(i) for i in items]


# --- commands ------------------------------------------------------------------


@dataclass
class RunResult:
    files: dict
    exit_code: int
    summary: dict


def _status_counts(rows) -> dict:
    counts = {PASS: 0, FAIL: 0, HYPOTHESIS_NOT_MET: 0}
    for r in rows:
        counts[r["status"]] += 1
    return counts


def run_energy(cfg: ExperimentConfig, out: Path, jobs: int = 1) -> RunResult:
    rows = [r for chunk in _map(partial(_energy_trial, cfg), range(cfg.trials), jobs) for r in chunk]
    counts = _status_counts(rows)
    return RunResult({out: jsonl_text(rows)}, EXIT_FAIL if counts[FAIL] else EXIT_OK, counts)


def run_verify_bounds(cfg: ExperimentConfig, out: Path, jobs: int = 1) -> RunResult:
    rows = [r for chunk in _map(partial(_verify_trial, cfg), range(cfg.trials), jobs) for r in chunk]
    counts = _status_counts(rows)
    return RunResult({out: jsonl_text(rows)}, EXIT_FAIL if counts[FAIL] else EXIT_OK, counts)


def run_sweep_gamma(cfg: ExperimentConfig, out: Path, jobs: int = 1) -> RunResult:
    rows = []
    for gamma in cfg.gamma_grid:
        ratios = np.array(_map(partial(_sweep_trial, cfg, gamma), range(cfg.trials), jobs))
        c1, c2 = bound_constants(gamma)
        lo, hi = float(ratios.min()), float(ratios.max())
        if gamma <= FRAME_CONSTANT:
            status = HYPOTHESIS_NOT_MET
        else:
            tol = 1e-9 * max(1.0, c2)
            status = PASS if (lo >= c1 - tol and hi <= c2 + tol) else FAIL
        rows.append(dict(gamma=gamma, c1=c1, observed_min=lo, observed_max=hi, c2=c2,
                         trials=cfg.trials, status=status))
    counts = _status_counts(rows)
    return RunResult({out: csv_text(SWEEP_FIELDS, rows)}, EXIT_FAIL if counts[FAIL] else EXIT_OK, counts)


def run_lemma_scan(cfg: ExperimentConfig, out: Path, jobs: int = 1) -> RunResult:
    theta = scan_nodes(cfg.grid_step)
    curves = [dict(theta=t, g=g, h=h) for t, g, h in zip(theta, g_curve(theta), h_curve(theta))]
    checks = lemma2_scan(cfg.grid_step)
    lhs1, rhs1, _, _ = lemma2_pointwise(0.5)
    pointwise = lemma_pointwise_campaign(cfg.pointwise_samples, master_seed=cfg.seed) \
        if cfg.pointwise_samples else None
    summary = {
        "grid_step": cfg.grid_step,
        "rows": len(curves),
        "checks": [
            {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "slack": c.slack, "status": c.status}
            for c in checks
        ],
        "midpoint_equality": {"lhs": lhs1, "rhs": rhs1, "gap": abs(lhs1 - rhs1),
                              "status": PASS if abs(lhs1 - rhs1) <= 1e-12 else FAIL},
        "pointwise": None if pointwise is None else {
            "samples": pointwise.instances, "violations": pointwise.violations,
            "worst_ratio": pointwise.worst_ratio,
            "status": PASS if pointwise.passed else FAIL,
        },
    }
    statuses = [c["status"] for c in summary["checks"]] + [summary["midpoint_equality"]["status"]]
    if pointwise is not None:
        statuses.append(summary["pointwise"]["status"])
    files = {out: csv_text(CURVE_FIELDS, curves), sibling(out, "summary.json"): dumps(summary) + "\n"}
    return RunResult(files, EXIT_FAIL if FAIL in statuses else EXIT_OK, {"checks": statuses})


def run_monte_carlo(cfg: ExperimentConfig, out: Path, jobs: int = 1) -> RunResult:
    trials = _map(partial(_monte_carlo_trial, cfg), range(cfg.trials), jobs)
    ratios = np.array([t["residual_ratio"] for t in trials])
    probs = (0.0, 0.05, 0.25, 0.5, 0.75, 0.95, 1.0)
    summary = {
        "trials": cfg.trials,
        "jitter": cfg.jitter.to_json(),
        "mean": float(np.mean(ratios)),
        "variance": float(np.var(ratios, ddof=1)) if ratios.size > 1 else 0.0,
        "quantiles": {format(p, "g"): float(q) for p, q in zip(probs, np.quantile(ratios, probs))},
    }
    files = {out: dumps(summary) + "\n", sibling(out, "trials.jsonl"): jsonl_text(trials)}
    return RunResult(files, EXIT_OK, summary)


RUNNERS = {
    "energy": run_energy,
    "verify-bounds": run_verify_bounds,
    "sweep-gamma": run_sweep_gamma,
    "lemma-scan": run_lemma_scan,
    "monte-carlo": run_monte_carlo,
}


def run(cfg: ExperimentConfig, out, jobs: int = 1) -> RunResult:
    return RUNNERS[cfg.command](cfg, Path(out), jobs)


# --- entry point ---------------------------------------------------------------


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(dumps({"error": kind, "message": message, "exit_code": code}) + "\n")
    return code


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jitter-energy", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", required=True, help="experiment config (JSON)")
    p.add_argument("--out", help="output path; overrides output_path in the config")
    p.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    try:
        cfg = ExperimentConfig.load(args.config)
        if cfg.command != args.command:
            raise ConfigError(f"config command {cfg.command!r} does not match {args.command!r}")
        out = args.out or cfg.output_path
        if not out:
            raise ConfigError("no output path: set output_path or pass --out")
        result = run(cfg, out, max(1, jobs))
    except ConfigError as exc:
        return _error("config", str(exc), EXIT_CONFIG)
    except QuadratureError as exc:
        return _error("non-convergence", str(exc), EXIT_NONCONVERGED)
    except ValueError as exc:
        return _error("input", str(exc), EXIT_CONFIG)
    write_atomic(result.files)
    sys.stdout.write(dumps({"command": cfg.command, "exit_code": result.exit_code,
                            "summary": result.summary}) + "\n")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
