"""Running means, the normalized partial-sum trace f(n), and the
convergence/divergence verdict rule."""

import json
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import ConfigurationError, LengthError

DEFAULT_S_LIST = (1, 2, 3)
DEFAULT_EXPONENTS = (0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
PAPER_LENGTH = 2601


@dataclass(frozen=True)
class RunningMeanConfig:
    epsilon: float = 0.005
    rho: float = 0.005
    start: int = 601

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ConfigurationError(f"epsilon must be in (0,1), got {self.epsilon}")
        if not 0.0 < self.rho < 1.0:
            raise ConfigurationError(f"rho must be in (0,1), got {self.rho}")
        if self.start < 1:
            raise ConfigurationError(f"start must be >= 1, got {self.start}")


def ewma(series, epsilon):
    """Exponential moving average seeded at the first observation."""
    series = np.ascontiguousarray(series, dtype=np.float64)
    if series.size == 0:
        raise LengthError("series must be non-empty")
    return _backend.ewma_kernel(series, epsilon)


def decaying_avg(series):
    """Running arithmetic mean via the recursion
    a_t = (1 - 1/t) a_{t-1} + (1/t) x_t."""
    series = np.ascontiguousarray(series, dtype=np.float64)
    if series.size == 0:
        raise LengthError("series must be non-empty")
    return _backend.running_mean_kernel(series)


@dataclass
class MarcTrace:
    s: int
    exponent: float
    f: np.ndarray
    mu_trace: np.ndarray
    m_trace: np.ndarray

    def to_csv(self, path):
        with open(path, "w") as fh:
            fh.write("k,f\n")
            for k, v in enumerate(self.f, start=1):
                fh.write(f"{k},{v:.17g}\n")


def marcinkiewicz_trace(x, s, exponent, cfg=RunningMeanConfig(), mu=None, m=None):
    """f(k) = k^(-exponent) * |sum_{j<=k} (|x_j - mu_j|^s - m_j)|.

    By default mu and m are the running exponential means of the published
    procedure. Passing scalar mu/m switches to constant (known-mean)
    centering, which is what the rate theory is stated for.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    if not 0.0 < exponent <= 1.0:
        raise ConfigurationError(f"exponent must be in (0,1], got {exponent}")
    if s < 1:
        raise ConfigurationError(f"s must be >= 1, got {s}")
    if mu is None:
        mu_trace = ewma(x, cfg.epsilon)
    else:
        mu_trace = np.full(x.size, float(mu))
    residual = np.abs(x - mu_trace) ** s
    if m is None:
        m_trace = ewma(residual, cfg.rho)
    else:
        m_trace = np.full(x.size, float(m))
    k = np.arange(1, x.size + 1, dtype=np.float64)
    f = np.abs(np.cumsum(residual - m_trace)) / k ** exponent
    return MarcTrace(s=s, exponent=exponent, f=f, mu_trace=mu_trace, m_trace=m_trace)


@dataclass
class Verdict:
    outcome: str
    mean_whole: float = float("nan")
    mean_half: float = float("nan")
    mean_quarter: float = float("nan")
    ratios: tuple = (float("nan"), float("nan"))

    @property
    def letter(self):
        return "C" if self.outcome == "Converges" else "D"


def convergence_verdict(trace, cfg=RunningMeanConfig(), offsets=(1000, 1500),
                        thresholds=(1.2, 1.05)):
    """Two-stage trailing-average rule: diverges unless the whole-window
    average exceeds 1.2x the last-half average and that exceeds 1.05x the
    last-quarter average."""
    f = trace.f
    need = cfg.start + offsets[1] + 1
    if f.size < need:
        raise LengthError(f"trace length {f.size} < required {need}")
    mean_whole = decaying_avg(f[cfg.start - 1:])[-1]
    mean_half = decaying_avg(f[cfg.start - 1 + offsets[0]:])[-1]
    mean_quarter = decaying_avg(f[cfg.start - 1 + offsets[1]:])[-1]
    if mean_whole < thresholds[0] * mean_half:
        outcome = "Diverges"
    elif mean_half < thresholds[1] * mean_quarter:
        outcome = "Diverges"
    else:
        outcome = "Converges"
    ratios = (
        mean_whole / mean_half if mean_half != 0 else float("inf"),
        mean_half / mean_quarter if mean_quarter != 0 else float("inf"),
    )
    return Verdict(outcome=outcome, mean_whole=mean_whole, mean_half=mean_half,
                   mean_quarter=mean_quarter, ratios=ratios)


@dataclass
class VerdictTable:
    label: str
    s_list: tuple
    exponent_list: tuple
    cells: dict = field(default_factory=dict)  # (s, exponent) -> Verdict

    def outcome(self, s, e):
        return self.cells[(s, e)].letter

    def row(self, s):
        return [self.outcome(s, e) for e in self.exponent_list]

    def to_tsv(self, path=None):
        lines = ["label\ts\t" + "\t".join(f"{e:g}" for e in self.exponent_list)]
        for s in self.s_list:
            lines.append(f"{self.label}\t{s}\t" + "\t".join(self.row(s)))
        text = "\n".join(lines) + "\n"
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text

    def to_json(self):
        return json.dumps({
            "label": self.label,
            "s_list": list(self.s_list),
            "exponents": list(self.exponent_list),
            "cells": [
                {"s": s, "exponent": e, "outcome": v.outcome,
                 "mean_whole": v.mean_whole, "mean_half": v.mean_half,
                 "mean_quarter": v.mean_quarter, "ratios": list(v.ratios)}
                for (s, e), v in sorted(self.cells.items())
            ],
        }, indent=2)


def tables_from_tsv(path):
    """Parse one or more verdict tables from the TSV layout written above."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    header = lines[0].split("\t")
    if header[:2] != ["label", "s"]:
        raise ConfigurationError("verdict table must start with 'label\\ts' columns")
    exponents = tuple(float(v) for v in header[2:])
    grouped = {}
    order = []
    for ln in lines[1:]:
        parts = ln.split("\t")
        label, s = parts[0], int(parts[1])
        letters = parts[2:]
        if len(letters) != len(exponents):
            raise ConfigurationError(f"row for {label} s={s} has wrong cell count")
        if label not in grouped:
            grouped[label] = {}
            order.append(label)
        grouped[label][s] = letters
    out = []
    for label in order:
        rows = grouped[label]
        table = VerdictTable(label=label, s_list=tuple(sorted(rows)),
                             exponent_list=exponents)
        for s, letters in rows.items():
            for e, letter in zip(exponents, letters):
                outcome = "Converges" if letter.upper() == "C" else "Diverges"
                table.cells[(s, e)] = Verdict(outcome=outcome)
        out.append(table)
    return out


def _scaled_cfg_offsets(cfg, offsets, n, proportional):
    if not proportional or n == PAPER_LENGTH:
        return cfg, offsets
    factor = n / PAPER_LENGTH
    start = max(1, int(round(cfg.start * factor)))
    scaled = tuple(int(round(o * factor)) for o in offsets)
    return RunningMeanConfig(epsilon=cfg.epsilon, rho=cfg.rho, start=start), scaled


def verdict_table(x, s_list=DEFAULT_S_LIST, exponent_list=DEFAULT_EXPONENTS,
                  cfg=RunningMeanConfig(), label="", proportional=False,
                  offsets=(1000, 1500), collect_traces=False):
    """Grid of verdicts over powers s and exponents 1/p."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    cfg, offsets = _scaled_cfg_offsets(cfg, offsets, x.size, proportional)
    table = VerdictTable(label=label, s_list=tuple(s_list),
                         exponent_list=tuple(exponent_list))
    traces = {}
    for s in s_list:
        for e in exponent_list:
            tr = marcinkiewicz_trace(x, s, e, cfg)
            table.cells[(s, e)] = convergence_verdict(tr, cfg, offsets)
            if collect_traces:
                traces[(s, e)] = tr
    if collect_traces:
        return table, traces
    return table
