"""Simulation of two-sided linear processes, their s-fold products, and the
tensor-product variant."""

import json
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve

from . import _backend
from .errors import ConfigurationError, DomainError, SizeError
from .innovations import InnovationSpec, sample, tail_coefficient
from .kernel import CoefficientSpec, coefficient_array

DEFAULT_WINDOW = 2 ** 14
TENSOR_ENTRY_CAP = 10 ** 6


@dataclass(frozen=True)
class ProcessConfig:
    s: int
    coeffs: tuple
    innov: InnovationSpec
    sharing: str = "shared"
    length: int = 2601
    window: int = DEFAULT_WINDOW

    def __post_init__(self):
        if self.s < 1:
            raise ConfigurationError(f"s must be >= 1, got {self.s}")
        if len(self.coeffs) != self.s:
            raise ConfigurationError(
                f"need {self.s} coefficient specs, got {len(self.coeffs)}")
        if self.sharing not in ("shared", "independent"):
            raise ConfigurationError(f"unknown sharing mode {self.sharing!r}")
        if self.length < 1:
            raise ConfigurationError(f"length must be >= 1, got {self.length}")
        if self.window < 1:
            raise ConfigurationError(f"window must be >= 1, got {self.window}")
        for c in self.coeffs:
            if c.window < self.window:
                raise ConfigurationError(
                    "coefficient window smaller than the simulation window")

    def moment_warnings(self):
        """Regularity check: the product rate bound needs E|xi|^(s v 2) finite."""
        need = max(self.s, 2)
        out = []
        if tail_coefficient(self.innov) <= need:
            out.append(
                f"innovation tail index {tail_coefficient(self.innov):g} <= s v 2 = {need}; "
                "moment condition for the product rate violated (stress-test regime)")
        return out


@dataclass
class PathEnsemble:
    x: np.ndarray          # s x n component paths
    d: np.ndarray          # length-n products
    config: ProcessConfig
    seed: int
    truncation_bound: float
    warnings: list = field(default_factory=list)


def truncation_error_bound(spec, M, innov_variance):
    """L2 tail bound on the discarded coefficients:
    var * scale^2 * 2 * M^(1-2*sigma) / (2*sigma - 1)."""
    if spec.sigma <= 0.5:
        raise DomainError("series diverges for sigma <= 0.5")
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    if innov_variance <= 0:
        raise DomainError("innovation variance must be positive")
    return innov_variance * spec.scale ** 2 * 2.0 * M ** (1.0 - 2.0 * spec.sigma) / (
        2.0 * spec.sigma - 1.0)


def _component_innovations(config, seed, r, count):
    stream = 0 if config.sharing == "shared" else r
    return sample(config.innov, count, seed, stream=stream)


def simulate_paths(config, seed, method="fft", innovation_override=None):
    """Simulate the s component paths by truncated convolution.

    Innovations cover indices 1-M .. n+M in one stream per component, so
    overlapping windows share values exactly. `innovation_override` replaces
    the sampler with a callable (r, count) -> vector for testing.
    """
    n, M = config.length, config.window
    count = n + 2 * M
    x = np.empty((config.s, n))
    for r in range(config.s):
        if innovation_override is not None:
            xi = np.asarray(innovation_override(r, count), dtype=np.float64)
        else:
            xi = _component_innovations(config, seed, r, count)
        kern = coefficient_array(config.coeffs[r], half_width=M)
        if method == "fft":
            x[r] = fftconvolve(xi, kern, mode="valid")
        elif method == "direct":
            x[r] = _backend.direct_conv_valid(xi, kern)
        else:
            raise ConfigurationError(f"unknown method {method!r}")
    var = 1.0  # bound reported per unit innovation variance
    bound = max(truncation_error_bound(c, M, var) for c in config.coeffs)
    ens = PathEnsemble(
        x=x, d=np.prod(x, axis=0), config=config, seed=seed,
        truncation_bound=bound, warnings=config.moment_warnings())
    for w in ens.warnings:
        warnings.warn(w, stacklevel=2)
    return ens


def products(ensemble):
    """Pointwise product over components, d_k = prod_r x_k^(r)."""
    return np.prod(ensemble.x, axis=0)


def ensemble_to_tsv(ensemble, path):
    s, n = ensemble.x.shape
    with open(path, "w") as fh:
        cols = ["k"] + [f"x_{r + 1}" for r in range(s)] + ["d"]
        fh.write("\t".join(cols) + "\n")
        for k in range(n):
            vals = [str(k + 1)] + [f"{ensemble.x[r, k]:.17g}" for r in range(s)]
            vals.append(f"{ensemble.d[k]:.17g}")
            fh.write("\t".join(vals) + "\n")


def ensemble_to_binary(ensemble, bin_path, sidecar_path):
    """Little-endian float64 block (x rows then d) with a JSON sidecar."""
    block = np.vstack([ensemble.x, ensemble.d[None, :]]).astype("<f8")
    block.tofile(bin_path)
    cfg = ensemble.config
    sidecar = {
        "s": cfg.s,
        "length": cfg.length,
        "window": cfg.window,
        "sharing": cfg.sharing,
        "sigmas": [c.sigma for c in cfg.coeffs],
        "scales": [c.scale for c in cfg.coeffs],
        "center_values": [c.center_value for c in cfg.coeffs],
        "innovation": {"family": cfg.innov.family, "scale": cfg.innov.scale,
                       "alpha": None if cfg.innov.family == "gaussian" else cfg.innov.df_or_alpha},
        "seed": ensemble.seed,
        "truncation_bound": ensemble.truncation_bound,
        "layout": {"rows": cfg.s + 1, "cols": cfg.length, "order": "x_1..x_s,d",
                   "dtype": "<f8"},
    }
    with open(sidecar_path, "w") as fh:
        json.dump(sidecar, fh, indent=2)


@dataclass
class TensorEnsemble:
    tensors: np.ndarray          # n x d_out**s flattened tensor products
    norm_traces: dict            # p -> length-n normalized partial-sum norms
    seed: int


def _pattern_matrix(d_out, m):
    # fixed unit-Frobenius-norm template
    return np.ones((d_out, m)) / np.sqrt(d_out * m)


def simulate_tensor_paths(m, d_out, s, sigma, innov, n, seed, p_grid=(1.2,),
                          window=DEFAULT_WINDOW, scale=1.0,
                          memory_cap=TENSOR_ENTRY_CAP):
    """Tensor products of vector linear processes with matrix coefficients
    C_l = scale * |l|^(-sigma) * P, P a fixed unit-Frobenius pattern.

    Returns the flattened tensor sequence and, per requested p, the trace
    k^(-1/p) * ||sum_{j<=k} (T_j - mean(T))||_F. The scalar case
    m = d_out = 1 reproduces the scalar pipeline exactly.
    """
    if d_out ** s > memory_cap:
        raise SizeError(f"d_out^s = {d_out ** s} exceeds cap {memory_cap}")
    sigmas = np.broadcast_to(np.asarray(sigma, dtype=np.float64), (s,))
    P = _pattern_matrix(d_out, m)
    count = n + 2 * window
    comps = np.empty((s, n, d_out))
    for r in range(s):
        flat = sample(innov, m * count, seed, stream=r)
        xi = flat.reshape(m, count)
        spec = CoefficientSpec(sigma=float(sigmas[r]), scale=scale, window=window)
        kern = coefficient_array(spec)
        z = np.empty((m, n))
        for i in range(m):
            z[i] = fftconvolve(xi[i], kern, mode="valid")
        comps[r] = z.T @ P.T
    tensors = comps[0]
    for r in range(1, s):
        tensors = np.einsum("ki,kj->kij", tensors.reshape(n, -1), comps[r]).reshape(n, -1)
    centered = tensors - tensors.mean(axis=0, keepdims=True)
    csum = np.cumsum(centered, axis=0)
    norms = np.linalg.norm(csum, axis=1)
    k = np.arange(1, n + 1, dtype=np.float64)
    traces = {p: norms * k ** (-1.0 / p) for p in p_grid}
    return TensorEnsemble(tensors=tensors, norm_traces=traces, seed=seed)
