"""Randomised verification campaigns.

Each campaign draws instance ``i`` from a Philox stream keyed by
``(master_seed, i)``, so results do not depend on how instances are spread
over worker processes. Results are merged by instance index.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .bounds import (
    BilinearFormInput,
    corollary_equivalence,
    hilbert_form,
    lemma_pointwise_arrays,
    mv_bound_check,
    skew_hermitian_check,
)
from .core import FRAME_CONSTANT, SampleSequence, SamplingGrid, sinc
from .energy import energy_closed_form, energy_quadrature, sinc_product_integral
from .jitter import JitterSpec, admissible_scaled_grid, rng_from_seed


@dataclass
class CampaignSummary:
    name: str
    instances: int
    violations: int
    worst_ratio: float
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"{verdict} {self.name}: {self.instances} instances, {self.violations} violations, "
                f"worst ratio {self.worst_ratio:.6g}, {self.elapsed:.2f}s")


def random_complex(rng, size) -> np.ndarray:
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def _run(name, instance_fn, master_seed, count, jobs=1, **kwargs):
    """Evaluate ``instance_fn(master_seed, i)`` for i < count; each returns (ratio, violated)."""
    start = time.perf_counter()
    fn = partial(instance_fn, master_seed, **kwargs)
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, range(count), chunksize=max(1, count // (8 * jobs))))
    else:
        results = [fn(i) for i in range(count)]
    ratios = np.array([r[0] for r in results], dtype=float)
    violations = int(sum(bool(r[1]) for r in results))
    worst = float(np.max(ratios)) if ratios.size else 0.0
    return CampaignSummary(name, count, violations, worst, time.perf_counter() - start)


# --- instance generators -----------------------------------------------------


def _parseval_instance(master, i, max_len=64):
    rng = rng_from_seed(master, i)
    r = int(rng.integers(1, max_len + 1))
    start = int(rng.integers(-1000, 1000))
    seq = SampleSequence(random_complex(rng, r))
    grid = SamplingGrid.integer(r, start=start)
    rep = energy_closed_form(seq, grid)
    err = abs(rep.closed_form - rep.coefficient_norm)
    allowed = 1e-12 * rep.coefficient_norm
    return err / allowed, err > allowed


def _oracle_instance(master, i, max_len=12, tolerance=1e-6):
    rng = rng_from_seed(master, i)
    r = int(rng.integers(1, max_len + 1))
    seq = SampleSequence(random_complex(rng, r))
    lam = np.arange(1, r + 1) + rng.uniform(-0.45, 0.45, r)
    rep = energy_quadrature(seq, SamplingGrid(lam), tolerance)
    err = abs(rep.closed_form - rep.oracle.value)
    allowed = rep.oracle.tail_bound + tolerance
    return err / allowed, err > allowed


def _inner_product_instance(master, i, tolerance=1e-6):
    rng = rng_from_seed(master, i)
    lam = float(rng.uniform(-50.0, 50.0))
    nu = lam + float(rng.uniform(-10.0, 10.0))
    value, _ = sinc_product_integral(lam, nu, tolerance)
    err = abs(value - float(sinc(lam - nu)))
    return err / tolerance, err > tolerance


def _hilbert_instance(master, i, max_len=32):
    rng = rng_from_seed(master, i)
    r = int(rng.integers(1, max_len + 1))
    idx = rng.choice(np.arange(-200, 201), size=r, replace=False)
    res = hilbert_form(SampleSequence(random_complex(rng, r)), idx)
    return res.lhs / res.rhs, res.failed


def _draw_bilinear(rng, max_len, min_delta):
    while True:
        r = int(rng.integers(1, max_len + 1))
        x = rng.random(r)
        y = rng.random(r)
        try:
            inp = BilinearFormInput(SampleSequence(random_complex(rng, r)), x, y)
        except ValueError:
            continue
        if inp.delta >= min_delta:
            return inp


def _mv_instance(master, i, max_len=8, min_delta=0.05):
    rng = rng_from_seed(master, i)
    res = mv_bound_check(_draw_bilinear(rng, max_len, min_delta))
    return res.lhs / res.rhs, res.failed


def _skew_instance(master, i, max_len=8):
    rng = rng_from_seed(master, i)
    while True:
        r = int(rng.integers(1, max_len + 1))
        y = rng.random(r)
        try:
            res = skew_hermitian_check(SampleSequence(random_complex(rng, r)), y)
        except ValueError:
            continue
        return res.lhs / res.rhs, res.failed


def random_scaled_instance(rng, max_len=10, gamma_range=(1.1, 20.0)):
    """Random coefficients on a jittered grid dilated to a random separation."""
    r = int(rng.integers(1, max_len + 1))
    gamma = float(rng.uniform(*gamma_range))
    spec = JitterSpec("uniform", r, amplitude=float(rng.uniform(0.0, 0.45)),
                      seed=int(rng.integers(0, 2 ** 63)))
    grid = admissible_scaled_grid(spec, gamma)
    return SampleSequence(random_complex(rng, r)), grid


def _theorem_instance(master, i, max_len=10, gamma_range=(1.1, 20.0), oracle_every=100, tolerance=1e-6):
    rng = rng_from_seed(master, i)
    seq, grid = random_scaled_instance(rng, max_len, gamma_range)
    lower, upper = corollary_equivalence(seq, grid)
    violated = lower.failed or upper.failed
    norm = seq.norm_squared
    # ratio of the Gram deviation to the certified half-width C/gamma
    half_width = upper.rhs - norm
    ratio = abs(upper.lhs - norm) / half_width if half_width > 0 else 0.0
    if oracle_every and i % oracle_every == 0:
        rep = energy_quadrature(seq, grid, tolerance)
        slack = rep.oracle.tail_bound + rep.oracle.quadrature_tolerance
        e = rep.oracle.value
        violated = violated or not rep.oracle_agrees()
        violated = violated or e + slack < lower.lhs * (1 - 1e-9) or e - slack > upper.rhs * (1 + 1e-9)
    return ratio, violated


# --- public campaigns ----------------------------------------------------------


def parseval_campaign(count=1000, master_seed=1, jobs=1, max_len=64):
    return _run("parseval", _parseval_instance, master_seed, count, jobs, max_len=max_len)


def oracle_campaign(count=200, master_seed=2, jobs=1, max_len=12, tolerance=1e-6):
    return _run("oracle_equivalence", _oracle_instance, master_seed, count, jobs,
                max_len=max_len, tolerance=tolerance)


def inner_product_campaign(count=500, master_seed=3, jobs=1, tolerance=1e-6):
    return _run("inner_product", _inner_product_instance, master_seed, count, jobs, tolerance=tolerance)


def hilbert_campaign(count=10_000, master_seed=5, jobs=1, max_len=32):
    return _run("hilbert", _hilbert_instance, master_seed, count, jobs, max_len=max_len)


def mv_campaign(count=10_000, master_seed=6, jobs=1, max_len=8, min_delta=0.05):
    return _run("mv_bound", _mv_instance, master_seed, count, jobs, max_len=max_len, min_delta=min_delta)


def skew_campaign(count=1000, master_seed=7, jobs=1, max_len=8):
    return _run("skew_hermitian", _skew_instance, master_seed, count, jobs, max_len=max_len)


def theorem_campaign(count=10_000, master_seed=8, jobs=1, max_len=10, gamma_range=(1.1, 20.0),
                     oracle_every=100, tolerance=1e-6):
    """Lower, upper and two-sided bounds on dilated jittered grids.

    Every ``oracle_every``-th instance is also integrated numerically and the
    bounds are re-checked against the oracle energy widened by its error budget.
    """
    summary = _run("theorem_corollary", _theorem_instance, master_seed, count, jobs, max_len=max_len,
                   gamma_range=gamma_range, oracle_every=oracle_every, tolerance=tolerance)
    summary.extra["oracle_checked"] = len(range(0, count, oracle_every)) if oracle_every else 0
    summary.extra["frame_constant"] = FRAME_CONSTANT
    return summary


def lemma_pointwise_campaign(count=1_000_000, master_seed=4, min_distance=1e-4):
    """Both pointwise inequalities at random x with ||x|| >= min_distance."""
    start = time.perf_counter()
    rng = rng_from_seed(master_seed)
    k = rng.integers(-1000, 1000, count)
    frac = rng.uniform(min_distance, 1.0 - min_distance, count)
    x = k + frac
    lhs1, rhs1, lhs2, rhs2 = lemma_pointwise_arrays(x)
    bad1 = rhs1 - lhs1 < -1e-9 * rhs1
    bad2 = rhs2 - lhs2 < -1e-9 * rhs2
    worst = float(max(np.max(lhs1 / rhs1), np.max(lhs2 / rhs2)))
    return CampaignSummary("lemma_pointwise", count, int(bad1.sum() + bad2.sum()), worst,
                           time.perf_counter() - start)


__all__ = [
    "CampaignSummary",
    "hilbert_campaign",
    "inner_product_campaign",
    "lemma_pointwise_campaign",
    "mv_campaign",
    "oracle_campaign",
    "parseval_campaign",
    "random_complex",
    "random_scaled_instance",
    "skew_campaign",
    "theorem_campaign",
]
