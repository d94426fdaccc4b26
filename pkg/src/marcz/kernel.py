"""Power-law coefficient families, the three-branch normalization function,
and numeric verification of the kernel cross-sum bounds."""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import ConfigurationError, DegeneratePairError, DomainError, OutOfWindowError


@dataclass(frozen=True)
class CoefficientSpec:
    """Symmetric coefficient family c_l = scale * |l|^(-sigma), c_0 = center_value."""

    sigma: float
    scale: float = 1.0
    center_value: float = 1.0
    window: int = 2 ** 14

    def __post_init__(self):
        if not 0.5 < self.sigma <= 1.0:
            raise ConfigurationError(f"sigma must lie in (0.5, 1.0], got {self.sigma}")
        if self.scale <= 0:
            raise ConfigurationError(f"scale must be positive, got {self.scale}")
        if self.window < 1:
            raise ConfigurationError(f"window must be >= 1, got {self.window}")


def coefficient(spec, l):
    """Evaluate c_l. Raises OutOfWindowError beyond the truncation window."""
    if abs(l) > spec.window:
        raise OutOfWindowError(f"|l|={abs(l)} exceeds window {spec.window}")
    if l == 0:
        return spec.center_value
    return spec.scale * abs(l) ** -spec.sigma


def coefficient_array(spec, half_width=None):
    """Dense coefficient vector for l = -M..M (M defaults to spec.window)."""
    M = spec.window if half_width is None else half_width
    if M > spec.window:
        raise OutOfWindowError(f"half_width {M} exceeds window {spec.window}")
    l = np.arange(-M, M + 1, dtype=np.float64)
    with np.errstate(divide="ignore"):
        c = spec.scale * np.abs(l) ** -spec.sigma
    c[M] = spec.center_value
    return c


@dataclass(frozen=True)
class LPolyParams:
    n: int
    beta: float

    def __post_init__(self):
        if self.n < 1:
            raise ConfigurationError(f"n must be >= 1, got {self.n}")


def l_poly(params, x):
    """Three-branch normalization: power below the critical beta, log at it,
    constant above."""
    if x < 0:
        raise DomainError(f"x must be nonnegative, got {x}")
    crit = (params.n + 1) / (2 * params.n)
    if params.beta < crit:
        return x ** (params.n * (1 - 2 * params.beta) + 1)
    if params.beta == crit:
        return math.log(x + 1)
    return 1.0


def _power_table(gamma, max_index):
    m = np.arange(max_index + 1, dtype=np.float64)
    with np.errstate(divide="ignore"):
        t = m ** -gamma
    t[0] = 0.0  # index 0 is never referenced by a valid term
    return t


def kernel_cross_sum(j, k, gamma_left, gamma_right, radius):
    """Exact finite sum over l in [-radius, radius] \\ {j, k} of
    |j-l|^(-gamma_left) * |k-l|^(-gamma_right)."""
    if j == k:
        raise DegeneratePairError(f"j and k must differ, got j=k={j}")
    if gamma_left <= 0.5 or gamma_right <= 0.5:
        raise DomainError("both exponents must exceed 1/2")
    if radius < 2 * abs(j - k):
        raise DomainError(f"radius {radius} must be >= 2*|j-k| = {2 * abs(j - k)}")
    hi = radius + max(abs(j), abs(k))
    pw_left = _power_table(gamma_left, hi)
    pw_right = _power_table(gamma_right, hi)
    if k == 0 and j > 0:
        return float(_backend.cross_sum_lag(j, pw_left, pw_right, radius))
    return float(_backend.cross_sum_gather(j, k, pw_left, pw_right, radius))


@dataclass
class BoundReport:
    """Per-lag comparison of the kernel cross sum against its analytic bound."""

    gamma: float
    mixed: bool
    lags: np.ndarray
    sums: np.ndarray
    bounds: np.ndarray
    ratios: np.ndarray = field(init=False)

    def __post_init__(self):
        self.ratios = self.sums / self.bounds

    @property
    def max_ratio(self):
        return float(np.max(self.ratios))

    @property
    def spread(self):
        return float(np.max(self.ratios) / np.min(self.ratios))

    def to_tsv(self, path):
        with open(path, "w") as fh:
            fh.write("lag\tsum\tbound\tratio\n")
            for lag, s, b, r in zip(self.lags, self.sums, self.bounds, self.ratios):
                fh.write(f"{lag}\t{s:.12g}\t{b:.12g}\t{r:.12g}\n")


def _lemma_bound(gamma, d):
    if gamma < 1.0:
        return d ** (1.0 - 2.0 * gamma)
    if gamma == 1.0:
        return math.log(d + 1.0) / d
    return d ** -gamma


def verify_kernel_bound(gamma, lag_max, radius, mixed=False):
    """Ratio report of the cross sum against the matching analytic envelope.

    With mixed=False the (gamma, gamma) sum is compared against the
    three-branch bound; with mixed=True the (gamma, 2*gamma) sum is compared
    against d^(-gamma) (valid for gamma < 1).
    """
    if gamma <= 0.5:
        raise DomainError("gamma must exceed 1/2")
    if mixed and gamma >= 1.0:
        raise DomainError("mixed bound requires gamma in (1/2, 1)")
    if lag_max < 2:
        raise DomainError("lag_max must be >= 2")
    gl, gr = (gamma, 2.0 * gamma) if mixed else (gamma, gamma)
    hi = radius + lag_max
    pw_left = _power_table(gl, hi)
    pw_right = _power_table(gr, hi)
    lags = np.arange(2, lag_max + 1)
    sums = np.empty(lags.size)
    bounds = np.empty(lags.size)
    for i, d in enumerate(lags):
        sums[i] = _backend.cross_sum_lag(int(d), pw_left, pw_right, radius)
        bounds[i] = d ** -gamma if mixed else _lemma_bound(gamma, int(d))
    return BoundReport(gamma=gamma, mixed=mixed, lags=lags, sums=sums, bounds=bounds)
