import subprocess
import sys

import numpy as np
import pytest

from marcz import _backend


needs_numba = pytest.mark.skipif(_backend.backend_name() != "numba",
                                 reason="numba backend not active")


@needs_numba
class TestNumbaMatchesNumpy:
    def test_ewma(self):
        rng = np.random.default_rng(0)
        x = rng.standard_normal(5000)
        assert np.allclose(_backend._ewma_nb(x, 0.005),
                           _backend._ewma_np(x, 0.005), atol=1e-12)

    def test_running_mean(self):
        rng = np.random.default_rng(1)
        x = rng.standard_normal(5000)
        assert np.allclose(_backend._running_mean_nb(x),
                           _backend._running_mean_np(x), atol=1e-10)

    def test_direct_conv(self):
        rng = np.random.default_rng(2)
        xi = rng.standard_normal(600)
        kern = rng.standard_normal(101)
        assert np.allclose(_backend._direct_conv_valid_nb(xi, kern),
                           _backend._direct_conv_valid_np(xi, kern), atol=1e-10)

    def test_cross_sum_gather(self):
        with np.errstate(divide="ignore"):
            pw = np.arange(300, dtype=np.float64) ** -0.75
        pw[0] = 0.0
        a = _backend._cross_sum_gather_nb(5, -3, pw, pw, 100)
        b = _backend._cross_sum_gather_np(5, -3, pw, pw, 100)
        assert a == pytest.approx(b, rel=1e-12)

    def test_cross_sum_lag(self):
        with np.errstate(divide="ignore"):
            pw = np.arange(300, dtype=np.float64) ** -0.75
        pw[0] = 0.0
        for d in (1, 2, 7, 50):
            a = _backend._cross_sum_lag_nb(d, pw, pw, 200)
            b = _backend._cross_sum_lag_np(d, pw, pw, 200)
            assert a == pytest.approx(b, rel=1e-12)

    def test_lag_equals_gather(self):
        with np.errstate(divide="ignore"):
            pw = np.arange(500, dtype=np.float64) ** -0.6
        pw[0] = 0.0
        for d in (2, 9, 30):
            a = _backend._cross_sum_lag_np(d, pw, pw, 400)
            b = _backend._cross_sum_gather_np(d, 0, pw, pw, 400)
            assert a == pytest.approx(b, rel=1e-12)


def test_env_flag_forces_numpy():
    code = ("import marcz; import sys; "
            "sys.exit(0 if marcz.backend_name() == 'numpy' else 1)")
    proc = subprocess.run([sys.executable, "-c", code],
                          env={"MARCZ_NO_NUMBA": "1", "PATH": "/usr/bin:/bin"},
                          capture_output=True)
    assert proc.returncode == 0, proc.stderr.decode()


def test_fallback_statistic_agrees():
    # the public ewma must give the same answer on either backend
    code = ("import numpy as np; from marcz import ewma; "
            "x = np.sin(np.arange(2000.0)); "
            "print(repr(float(ewma(x, 0.005)[-1])))")
    proc = subprocess.run([sys.executable, "-c", code],
                          env={"MARCZ_NO_NUMBA": "1", "PATH": "/usr/bin:/bin"},
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    from marcz import ewma
    here = float(ewma(np.sin(np.arange(2000.0)), 0.005)[-1])
    assert float(proc.stdout.strip()) == pytest.approx(here, abs=1e-12)
