"""Zero-mean i.i.d. innovation samplers with controllable tail index.

All families are generated as magnitude * sign from a single Philox
counter-based stream per (seed, stream) pair: the magnitude uniforms (or
normals) are drawn first, then the sign uniforms, so samples are
bit-reproducible for a fixed numpy version. Symmetry about zero is exact by
construction.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

FAMILIES = ("gaussian", "student_t", "symmetric_pareto")


@dataclass(frozen=True)
class InnovationSpec:
    family: str
    df_or_alpha: float = float("nan")
    scale: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(f"unknown family {self.family!r}")
        if self.family != "gaussian" and not self.df_or_alpha > 0:
            raise ConfigurationError(
                f"{self.family} requires a positive tail parameter, got {self.df_or_alpha}")
        if self.scale <= 0:
            raise ConfigurationError(f"scale must be positive, got {self.scale}")

    @property
    def symmetric(self):
        return True


def tail_coefficient(spec):
    """Tail index: +inf for exponential tails, the defining parameter otherwise."""
    if spec.family == "gaussian":
        return math.inf
    return spec.df_or_alpha


def _rng(seed, stream):
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(stream)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample(spec, count, seed, stream=0, flip_signs=False):
    """Draw `count` i.i.d. innovations, deterministic in (spec, count, seed, stream)."""
    if count < 1:
        raise ConfigurationError(f"count must be >= 1, got {count}")
    rng = _rng(seed, stream)
    if spec.family == "gaussian":
        mag = np.abs(rng.standard_normal(count)) * spec.scale
    elif spec.family == "student_t":
        mag = np.abs(rng.standard_t(spec.df_or_alpha, size=count)) * spec.scale
    else:  # symmetric_pareto: P(|X| > x) = (x/scale)^(-alpha) for x >= scale
        u = rng.random(count)
        mag = spec.scale * u ** (-1.0 / spec.df_or_alpha)
    signs = np.where(rng.random(count) < 0.5, 1.0, -1.0)
    if flip_signs:
        signs = -signs
    return mag * signs


def family_variance(spec):
    """Closed-form variance where it exists."""
    if spec.family == "gaussian":
        return spec.scale ** 2
    a = spec.df_or_alpha
    if a <= 2:
        return math.inf
    if spec.family == "student_t":
        return spec.scale ** 2 * a / (a - 2)
    return spec.scale ** 2 * a / (a - 2)


def empirical_tail_check(samples, q, grid):
    """max over grid x of x^q * empirical P(|X| > x); a sampler sanity probe."""
    if len(grid) == 0:
        raise ConfigurationError("grid must be non-empty")
    grid = np.asarray(grid, dtype=np.float64)
    if np.any(grid <= 0):
        raise ConfigurationError("grid values must be positive")
    if q < 0:
        raise ConfigurationError(f"q must be >= 0, got {q}")
    samples = np.asarray(samples)
    if samples.size == 0:
        raise ConfigurationError("samples must be non-empty")
    absx = np.sort(np.abs(samples))
    n = absx.size
    exceed = n - np.searchsorted(absx, grid, side="right")
    return float(np.max(grid ** q * exceed / n))


def spec_to_config(spec):
    """Flat key-value block used by config files."""
    cfg = {"family": spec.family, "scale": spec.scale}
    if spec.family != "gaussian":
        cfg["alpha"] = spec.df_or_alpha
    return cfg


def spec_from_config(cfg):
    return InnovationSpec(
        family=cfg["family"],
        df_or_alpha=float(cfg.get("alpha", float("nan"))),
        scale=float(cfg.get("scale", 1.0)),
    )
