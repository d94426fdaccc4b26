"""Numeric verification suites: kernel-sum bounds, Monte Carlo strong-law
behaviour, and tensor degeneracy. Shared between the CLI and the acceptance
tests."""

import math
from dataclasses import dataclass, field

import numpy as np

from .innovations import InnovationSpec, sample
from .kernel import CoefficientSpec, coefficient_array, verify_kernel_bound
from .linproc import ProcessConfig, simulate_paths, simulate_tensor_paths
from .statistic import marcinkiewicz_trace


@dataclass
class CheckRow:
    name: str
    value: float
    limit: float
    comparison: str  # "<" or ">"
    passed: bool


@dataclass
class SuiteResult:
    suite: str
    rows: list = field(default_factory=list)
    reports: dict = field(default_factory=dict)

    def check(self, name, value, limit, comparison):
        passed = value < limit if comparison == "<" else value > limit
        self.rows.append(CheckRow(name, float(value), float(limit), comparison, passed))
        return passed

    @property
    def passed(self):
        return all(r.passed for r in self.rows)

    def to_tsv(self, path):
        with open(path, "w") as fh:
            fh.write("check\tvalue\tlimit\tcomparison\tpassed\n")
            for r in self.rows:
                fh.write(f"{r.name}\t{r.value:.12g}\t{r.limit:.12g}\t"
                         f"{r.comparison}\t{'pass' if r.passed else 'FAIL'}\n")


def kernel_suite(radius=10 ** 6, lag_max=1000, gammas=(0.6, 0.75, 1.0, 1.5),
                 mixed_gamma=0.75, spread_limit=10.0):
    """Ratio-spread checks for the same-exponent and mixed-exponent kernel
    cross-sum bounds."""
    result = SuiteResult(suite="kernel")
    for g in gammas:
        report = verify_kernel_bound(g, lag_max, radius)
        result.reports[f"gamma_{g:g}"] = report
        result.check(f"spread gamma={g:g}", report.spread, spread_limit, "<")
    report = verify_kernel_bound(mixed_gamma, lag_max, radius, mixed=True)
    result.reports[f"mixed_gamma_{mixed_gamma:g}"] = report
    result.check(f"spread mixed gamma={mixed_gamma:g}", report.spread,
                 spread_limit, "<")
    return result


def _theory_ratio(x, mean_abs, p, idx_lo, idx_hi):
    tr = marcinkiewicz_trace(x, 1, 1.0 / p, mu=0.0, m=mean_abs)
    return tr.f[idx_hi] / tr.f[idx_lo]


def lrd_ratio_medians(sigma=0.8, window=2 ** 14, n=2 ** 16, reps=32, seed=0,
                      p_values=(1.2, 1.8), compare_at=2 ** 12):
    """Median over replications of f(n)/f(compare_at) for the known-mean
    trace of a gaussian LRD process, per requested p."""
    spec = CoefficientSpec(sigma=sigma, window=window)
    innov = InnovationSpec(family="gaussian")
    kern = coefficient_array(spec)
    mean_abs = math.sqrt(2.0 * np.sum(kern ** 2) / math.pi)
    cfg = ProcessConfig(s=1, coeffs=(spec,), innov=innov, sharing="shared",
                        length=n, window=window)
    ratios = {p: [] for p in p_values}
    for r in range(reps):
        ens = simulate_paths(cfg, seed * 100003 + r)
        for p in p_values:
            ratios[p].append(_theory_ratio(ens.x[0], mean_abs, p,
                                           compare_at - 1, n - 1))
    return {p: float(np.median(v)) for p, v in ratios.items()}


def ht_ratio_medians(alpha=1.5, n=2 ** 16, reps=32, seed=0,
                     p_values=(1.3, 1.8), compare_at=2 ** 12):
    """Same diagnostic for i.i.d. symmetric Pareto innovations (degenerate
    linear process: only c_0 = 1)."""
    innov = InnovationSpec(family="symmetric_pareto", df_or_alpha=alpha)
    mean_abs = alpha / (alpha - 1.0) * innov.scale
    ratios = {p: [] for p in p_values}
    for r in range(reps):
        x = sample(innov, n, seed * 100003 + r)
        for p in p_values:
            ratios[p].append(_theory_ratio(x, mean_abs, p, compare_at - 1, n - 1))
    return {p: float(np.median(v)) for p, v in ratios.items()}


def mslln_suite(seed=1, reps=32, n=2 ** 16):
    """Monte Carlo pattern checks: the normalized sums shrink inside the rate
    bound and stay up outside it."""
    result = SuiteResult(suite="mslln")
    lrd = lrd_ratio_medians(seed=seed, reps=reps, n=n)
    result.check("lrd sigma=0.8 median ratio p=1.2", lrd[1.2], 0.5, "<")
    result.check("lrd sigma=0.8 median ratio p=1.8", lrd[1.8], 0.7, ">")
    ht = ht_ratio_medians(seed=seed, reps=reps, n=n)
    result.check("ht alpha=1.5 ordering p=1.3 vs p=1.8", ht[1.3], ht[1.8], "<")
    result.check("ht alpha=1.5 median ratio p=1.3", ht[1.3], 1.0, "<")
    result.check("ht alpha=1.5 median ratio p=1.8", ht[1.8], 0.7, ">")
    return result


def tensor_suite(n=2 ** 10, window=2 ** 10, seed=0, tol=1e-12):
    """Scalar-degeneracy check: the tensor pipeline at m = d_out = 1, s = 2
    reproduces the scalar product pipeline."""
    result = SuiteResult(suite="tensor")
    sigma = 0.8
    innov = InnovationSpec(family="gaussian")
    tens = simulate_tensor_paths(m=1, d_out=1, s=2, sigma=sigma, innov=innov,
                                 n=n, seed=seed, window=window)
    spec = CoefficientSpec(sigma=sigma, window=window)
    cfg = ProcessConfig(s=2, coeffs=(spec, spec), innov=innov,
                        sharing="independent", length=n, window=window)
    ens = simulate_paths(cfg, seed)
    diff = np.max(np.abs(tens.tensors[:, 0] - ens.d))
    scale = max(1.0, float(np.max(np.abs(ens.d))))
    result.check("scalar degeneracy max relative diff", diff / scale, tol, "<")
    return result
