"""Jittered sampling grids lambda_n = n + eps_n.

Random jitter is drawn from numpy's Philox generator, a counter-based
4x64-bit generator whose stream depends only on the seed, so a
:class:`JitterSpec` reproduces the same grid on every platform.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .core import SamplingGrid, min_plus_separation

KINDS = ("none", "uniform", "gaussian", "sinusoidal")
GAUSSIAN_CLIP = 0.499
_MAX_RESAMPLE_ROUNDS = 10_000
# relative slack when comparing a separation against a requirement
SPACING_RTOL = 1e-12


def rng_from_seed(*words: int) -> np.random.Generator:
    """Philox generator keyed by one or more non-negative integers."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(w) for w in words])))


def derive_seed(master: int, index: int) -> int:
    """Independent 64-bit seed for item ``index`` of a campaign."""
    return int(np.random.SeedSequence([int(master), int(index)]).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class JitterSpec:
    kind: str = "none"
    length: int = 1
    amplitude: float = 0.0
    frequency: float = 0.0
    phase: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown jitter kind {self.kind!r}; expected one of {KINDS}")
        if int(self.length) != self.length or self.length < 1:
            raise ValueError("length must be a positive integer")
        if not (math.isfinite(self.amplitude) and self.amplitude >= 0):
            raise ValueError("amplitude must be finite and non-negative")
        if self.kind in ("uniform", "sinusoidal") and self.amplitude >= 0.5:
            raise ValueError(f"{self.kind} jitter amplitude must be below 1/2")
        if not (math.isfinite(self.frequency) and math.isfinite(self.phase)):
            raise ValueError("frequency and phase must be finite")
        if not (0 <= int(self.seed) < 2 ** 64):
            raise ValueError("seed must be a 64-bit unsigned integer")

    def with_seed(self, seed: int) -> JitterSpec:
        return JitterSpec(self.kind, self.length, self.amplitude, self.frequency, self.phase, seed)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> JitterSpec:
        return cls(**data)


def _gaussian_jitter(spec: JitterSpec, rng) -> tuple[np.ndarray, int]:
    eps = rng.normal(0.0, spec.amplitude, spec.length)
    resampled = 0
    for _ in range(_MAX_RESAMPLE_ROUNDS):
        bad = np.abs(eps) >= GAUSSIAN_CLIP
        if not bad.any():
            return eps, resampled
        resampled += int(bad.sum())
        eps[bad] = rng.normal(0.0, spec.amplitude, int(bad.sum()))
    raise ValueError(f"gaussian amplitude {spec.amplitude} too large to truncate at {GAUSSIAN_CLIP}")


def generate_grid(spec: JitterSpec) -> SamplingGrid:
    n = np.arange(1, spec.length + 1, dtype=float)
    resampled = 0
    if spec.kind == "none":
        eps = np.zeros(spec.length)
    elif spec.kind == "uniform":
        eps = rng_from_seed(spec.seed).uniform(-spec.amplitude, spec.amplitude, spec.length)
    elif spec.kind == "gaussian":
        eps, resampled = _gaussian_jitter(spec, rng_from_seed(spec.seed))
    else:
        eps = spec.amplitude * np.sin(2.0 * np.pi * spec.frequency * n + spec.phase)
    return SamplingGrid(n + eps, jitter=eps, resampled=resampled)


def validate_spacing(grid: SamplingGrid, gamma_required: float) -> bool:
    """True iff the grid's least gap reaches ``gamma_required``.

    A relative slack of 1e-12 absorbs rounding in the instants themselves, so
    {1.2, 2, 2.8} passes a requirement of 0.8.
    """
    if gamma_required <= 0:
        raise ValueError("gamma_required must be positive")
    return min_plus_separation(grid) >= gamma_required * (1.0 - SPACING_RTOL)


def admissible_scaled_grid(spec: JitterSpec, gamma_target: float) -> SamplingGrid:
    """Generate per ``spec`` and dilate so the least gap equals ``gamma_target``."""
    if not (gamma_target > 0 and math.isfinite(gamma_target)):
        raise ValueError("gamma_target must be positive and finite")
    base = generate_grid(spec)
    gamma = min_plus_separation(base)
    if math.isinf(gamma):
        return SamplingGrid(base.instants, jitter=base.jitter, scaled=True, resampled=base.resampled)
    if gamma < 1e-9:
        raise ValueError(f"generated grid is degenerate (gap {gamma:.3g})")
    scale = gamma_target / gamma
    bump = 2.0 ** -52
    while True:
        grid = SamplingGrid(base.instants * scale, scaled=True, resampled=base.resampled)
        # rounding can leave the gap a few ulps short of the target
        if min_plus_separation(grid) >= gamma_target:
            return grid
        scale *= 1.0 + bump
        bump *= 2.0
