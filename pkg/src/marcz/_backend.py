"""Hot numeric kernels with numba acceleration and a pure-numpy fallback.

Set the environment variable ``MARCZ_NO_NUMBA=1`` to force the numpy path
(useful for debugging and for the backend benchmark). The active path is
exposed via ``backend_name()``.
"""

import os

import numpy as np
from scipy.signal import lfilter

_DISABLE = os.environ.get("MARCZ_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")

if not _DISABLE:
    try:
        from numba import njit
        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _HAVE_NUMBA = False
else:
    _HAVE_NUMBA = False


def backend_name():
    return "numba" if _HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numpy fallbacks
# ---------------------------------------------------------------------------

def _ewma_np(x, eps):
    # IIR filter y[t] = (1-eps)*y[t-1] + eps*x[t], seeded so y[0] = x[0].
    zi = np.array([(1.0 - eps) * x[0]])
    y, _ = lfilter([eps], [1.0, -(1.0 - eps)], x, zi=zi)
    return y


def _running_mean_np(x):
    return np.cumsum(x) / np.arange(1, x.size + 1, dtype=np.float64)


def _direct_conv_valid_np(xi, kern):
    return np.convolve(xi, kern, mode="valid")


def _cross_sum_gather_np(j, k, pw_left, pw_right, radius):
    l = np.arange(-radius, radius + 1, dtype=np.int64)
    mask = (l != j) & (l != k)
    lm = l[mask]
    return float(np.dot(pw_left[np.abs(j - lm)], pw_right[np.abs(k - lm)]))


def _cross_sum_lag_np(d, pw_left, pw_right, radius):
    # Sum over l in [-radius, radius] \ {0, d} of pw_left[|d-l|] * pw_right[|l|]
    # for d >= 1, split into l < 0, 0 < l < d, l > d.
    s = np.dot(pw_left[d + 1:d + radius + 1], pw_right[1:radius + 1])
    if d > 1:
        s += np.dot(pw_left[1:d][::-1], pw_right[1:d])
    s += np.dot(pw_left[1:radius - d + 1], pw_right[d + 1:radius + 1])
    return float(s)


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True)
    def _ewma_nb(x, eps):
        out = np.empty_like(x)
        out[0] = x[0]
        for t in range(1, x.size):
            out[t] = (1.0 - eps) * out[t - 1] + eps * x[t]
        return out

    @njit(cache=True)
    def _running_mean_nb(x):
        out = np.empty_like(x)
        acc = 0.0
        for t in range(x.size):
            acc += x[t]
            out[t] = acc / (t + 1)
        return out

    @njit(cache=True)
    def _direct_conv_valid_nb(xi, kern):
        m = kern.size
        n = xi.size - m + 1
        out = np.empty(n)
        for i in range(n):
            acc = 0.0
            for q in range(m):
                acc += kern[m - 1 - q] * xi[i + q]
            out[i] = acc
        return out

    @njit(cache=True)
    def _cross_sum_gather_nb(j, k, pw_left, pw_right, radius):
        acc = 0.0
        for l in range(-radius, radius + 1):
            if l == j or l == k:
                continue
            acc += pw_left[abs(j - l)] * pw_right[abs(k - l)]
        return acc

    @njit(cache=True)
    def _cross_sum_lag_nb(d, pw_left, pw_right, radius):
        acc = 0.0
        for m in range(1, radius + 1):
            acc += pw_left[d + m] * pw_right[m]
        for m in range(1, d):
            acc += pw_left[d - m] * pw_right[m]
        for m in range(d + 1, radius + 1):
            acc += pw_left[m - d] * pw_right[m]
        return acc

    ewma_kernel = _ewma_nb
    running_mean_kernel = _running_mean_nb
    direct_conv_valid = _direct_conv_valid_nb
    cross_sum_gather = _cross_sum_gather_nb
    cross_sum_lag = _cross_sum_lag_nb
else:
    ewma_kernel = _ewma_np
    running_mean_kernel = _running_mean_np
    direct_conv_valid = _direct_conv_valid_np
    cross_sum_gather = _cross_sum_gather_np
    cross_sum_lag = _cross_sum_lag_np
