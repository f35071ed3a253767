"""Sample sequences, sampling grids and the sinc kernel.

All times are in units of the sampling period (``Ts = 1``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# instants closer than this are treated as duplicates
DUPLICATE_TOL = 1e-12
# below this |alpha| sinc is evaluated by its Taylor polynomial
_SINC_TAYLOR_CUTOFF = 1e-6


def frame_constant() -> float:
    """sqrt(1/3 + pi^2/12), the separation threshold and bound constant (~1.07508)."""
    return math.sqrt(1.0 / 3.0 + math.pi ** 2 / 12.0)


FRAME_CONSTANT = frame_constant()


def _check_finite(x, name):
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} must be finite")


def sin_pi(x):
    """sin(pi*x) with exact zeros at the integers.

    The argument is reduced to ``x = k + r`` with ``|r| <= 1/2`` (exact in
    floating point) before the multiplication by pi.
    """
    x = np.asarray(x, dtype=float)
    k = np.round(x)
    r = x - k
    sign = np.where(np.fmod(k, 2.0) == 0.0, 1.0, -1.0)
    return sign * np.sin(np.pi * r)


def cos_pi(x):
    x = np.asarray(x, dtype=float)
    k = np.round(x)
    r = x - k
    sign = np.where(np.fmod(k, 2.0) == 0.0, 1.0, -1.0)
    return sign * np.cos(np.pi * r)


def sinc(alpha):
    """Vectorised normalised sinc, sin(pi a)/(pi a) with sinc(0) = 1.

    No finiteness check; see :func:`sinc_eval` for the validated scalar entry.
    """
    alpha = np.asarray(alpha, dtype=float)
    small = np.abs(alpha) < _SINC_TAYLOR_CUTOFF
    pa = np.pi * alpha
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = sin_pi(alpha) / pa
    u = pa * pa
    taylor = 1.0 - u / 6.0 + u * u / 120.0
    out = np.where(small, taylor, direct)
    return out if out.ndim else float(out)


def sinc_eval(alpha: float) -> float:
    if not math.isfinite(alpha):
        raise ValueError("sinc argument must be finite")
    return float(sinc(alpha))


def sinc_inner_product(lam: float, nu: float) -> float:
    """Exact value of the integral of sinc(t - lam) * sinc(t - nu) over the real line."""
    if not (math.isfinite(lam) and math.isfinite(nu)):
        raise ValueError("instants must be finite")
    return float(sinc(lam - nu))


def nearest_integer_distance(x):
    """Vectorised ||x||; returns values in [0, 1/2]."""
    x = np.asarray(x, dtype=float)
    out = np.abs(x - np.round(x))
    return out if out.ndim else float(out)


def distance_to_nearest_integer(x: float) -> float:
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    return float(nearest_integer_distance(x))


@dataclass(frozen=True)
class SampleSequence:
    """Complex amplitudes a_1..a_R."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex).ravel()
        if v.size < 1:
            raise ValueError("a sample sequence needs at least one value")
        _check_finite(v, "sample values")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    @property
    def norm_squared(self) -> float:
        """Sum of |a_n|^2 (pairwise summation)."""
        return float(np.sum(self.values.real ** 2 + self.values.imag ** 2))

    @property
    def abs_sum(self) -> float:
        return float(np.sum(np.abs(self.values)))

    def scaled(self, c: complex) -> SampleSequence:
        return SampleSequence(c * self.values)

    def to_json(self) -> list:
        return [[float(z.real), float(z.imag)] for z in self.values]

    @classmethod
    def from_json(cls, data) -> SampleSequence:
        out = []
        for item in data:
            if isinstance(item, (list, tuple)):
                re, im = item
                out.append(complex(re, im))
            else:
                out.append(complex(item))
        return cls(np.array(out))


@dataclass(frozen=True)
class SamplingGrid:
    """Sampling instants lambda_n = n + eps_n, stored in insertion order.

    ``scaled`` marks grids that were dilated to reach a target separation and
    so no longer have the literal ``n + eps_n`` form. ``resampled`` counts
    rejected Gaussian jitter draws.
    """

    instants: np.ndarray
    jitter: np.ndarray | None = None
    scaled: bool = False
    resampled: int = 0
    separation: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lam = np.array(self.instants, dtype=float).ravel()
        if lam.size < 1:
            raise ValueError("a sampling grid needs at least one instant")
        _check_finite(lam, "instants")
        lam.setflags(write=False)
        object.__setattr__(self, "instants", lam)
        if self.jitter is not None:
            eps = np.array(self.jitter, dtype=float).ravel()
            if eps.size != lam.size:
                raise ValueError("jitter and instants differ in length")
            eps.setflags(write=False)
            object.__setattr__(self, "jitter", eps)
        gamma = _min_gap(lam)
        if gamma < DUPLICATE_TOL:
            raise ValueError(f"duplicate sampling instants (gap {gamma:.3g})")
        object.__setattr__(self, "separation", gamma)

    def __len__(self):
        return self.instants.size

    @classmethod
    def from_jitter(cls, jitter) -> SamplingGrid:
        eps = np.asarray(jitter, dtype=float).ravel()
        n = np.arange(1, eps.size + 1, dtype=float)
        return cls(n + eps, jitter=eps)

    @classmethod
    def integer(cls, length: int, start: int = 1) -> SamplingGrid:
        lam = np.arange(start, start + length, dtype=float)
        return cls(lam, jitter=lam - np.arange(1, length + 1))

    def sorted(self) -> SamplingGrid:
        order = np.argsort(self.instants, kind="stable")
        jit = None if self.jitter is None else self.jitter[order]
        return SamplingGrid(self.instants[order], jitter=jit, scaled=self.scaled, resampled=self.resampled)

    def dilated(self, s: float) -> SamplingGrid:
        return SamplingGrid(s * self.instants, scaled=True, resampled=self.resampled)

    def shifted(self, c: float) -> SamplingGrid:
        return SamplingGrid(self.instants + c, scaled=self.scaled, resampled=self.resampled)

    def to_json(self) -> dict:
        return {
            "instants": [float(v) for v in self.instants],
            "jitter": None if self.jitter is None else [float(v) for v in self.jitter],
            "scaled": self.scaled,
        }

    @classmethod
    def from_json(cls, data) -> SamplingGrid:
        if isinstance(data, dict):
            return cls(data["instants"], jitter=data.get("jitter"), scaled=bool(data.get("scaled", False)))
        return cls(data)


def _min_gap(lam: np.ndarray) -> float:
    if lam.size < 2:
        return math.inf
    return float(np.min(np.diff(np.sort(lam))))


def min_plus_separation(grid: SamplingGrid) -> float:
    """Least positive gap |lambda_n - lambda_m| over distinct pairs.

    A single-instant grid has no pairs and returns ``math.inf``.
    """
    return grid.separation


def signal_eval(seq: SampleSequence, grid: SamplingGrid, t):
    """f(t) = sum_n a_n sinc(t - lambda_n); ``t`` may be a scalar or an array."""
    if len(seq) != len(grid):
        raise ValueError(f"length mismatch: {len(seq)} coefficients, {len(grid)} instants")
    t_arr = np.asarray(t, dtype=float)
    _check_finite(t_arr, "t")
    kernel = sinc(t_arr[..., None] - grid.instants)
    out = kernel @ seq.values
    return complex(out) if out.ndim == 0 else out
