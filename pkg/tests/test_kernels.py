import os
import subprocess
import sys

import numpy as np
import pytest

from fatpart import kernels
from fatpart.kernels import _numpy
from fatpart.partitions import Partition, partitions_of
from fatpart.symfun import PowerSums, SchurEvaluator

_numba = pytest.importorskip("fatpart.kernels._numba")


@pytest.fixture
def rng():
    return np.random.default_rng(11)


def _stack(rng, S, n):
    return rng.normal(size=(S, n, n)) + 1j * rng.normal(size=(S, n, n))


def test_power_sums_agree(rng):
    mats = _stack(rng, 50, 3)
    a, b = _numpy.power_sums(mats, 6), _numba.power_sums(mats, 6)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(a[:, 1], np.trace(mats @ mats, axis1=1, axis2=2))


def test_complete_h_and_jacobi_trudi_agree(rng):
    p = rng.normal(size=(40, 8)) + 1j * rng.normal(size=(40, 8))
    ha, hb = _numpy.complete_h(p, 8), _numba.complete_h(p, 8)
    np.testing.assert_allclose(ha, hb, rtol=1e-12, atol=1e-12)
    for lam in partitions_of(6):
        parts = np.asarray(lam.parts, dtype=np.int64)
        np.testing.assert_allclose(_numpy.jacobi_trudi(ha, parts), _numba.jacobi_trudi(hb, parts),
                                   rtol=1e-9, atol=1e-9)


def test_schur_batch_matches_scalar_path(rng):
    p = rng.normal(size=(5, 6))
    lams = [Partition((2, 1)), Partition((3, 3)), Partition(()), Partition((1, 1, 1, 1))]
    got = kernels.schur_batch(p, lams)
    for s in range(5):
        ev = SchurEvaluator(PowerSums(tuple(p[s])))
        for c, lam in enumerate(lams):
            assert abs(got[s, c] - ev(lam)) < 1e-9


def test_sp_density_agree(rng):
    theta = rng.uniform(-0.2, np.pi + 0.2, size=(100, 3))
    a, b = _numpy.sp_log_density(theta), _numba.sp_log_density(theta)
    assert np.array_equal(np.isinf(a), np.isinf(b))
    finite = np.isfinite(a)
    np.testing.assert_allclose(a[finite], b[finite], rtol=1e-12)


def test_metropolis_agree(rng):
    theta0 = np.array([0.5, 1.5, 2.5])
    normals = rng.normal(size=(500, 3))
    uniforms = rng.uniform(size=500)
    sa, acc_a = _numpy.metropolis_sp(theta0, normals, uniforms, 0.3, 5)
    sb, acc_b = _numba.metropolis_sp(theta0, normals, uniforms, 0.3, 5)
    assert acc_a == acc_b
    np.testing.assert_allclose(sa, sb, rtol=1e-12)


def test_env_flag_selects_numpy():
    env = dict(os.environ, FATPART_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", "from fatpart import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
