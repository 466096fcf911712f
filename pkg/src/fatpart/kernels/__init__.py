"""Hot numeric kernels with a numba path and a pure-numpy fallback.

``FATPART_NUMBA=0`` forces the numpy implementations; otherwise numba is used when
importable. Both paths take and return the same array shapes.
"""

import os

import numpy as np

from . import _numpy

try:
    from . import _numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("FATPART_NUMBA", "1") != "0"

_impl = _numba if USE_NUMBA else _numpy

BACKEND = "numba" if USE_NUMBA else "numpy"


def power_sums(mats, K):
    return _impl.power_sums(np.ascontiguousarray(mats, dtype=np.complex128), int(K))


def complete_h(p, K):
    return _impl.complete_h(np.ascontiguousarray(p, dtype=np.complex128), int(K))


def jacobi_trudi(h, parts):
    return _impl.jacobi_trudi(np.ascontiguousarray(h, dtype=np.complex128), np.asarray(parts, dtype=np.int64))


def sp_log_density(theta):
    return _impl.sp_log_density(np.ascontiguousarray(np.atleast_2d(theta), dtype=np.float64))


def metropolis_sp(theta0, normals, uniforms, step, thin):
    return _impl.metropolis_sp(
        np.ascontiguousarray(theta0, dtype=np.float64),
        np.ascontiguousarray(normals, dtype=np.float64),
        np.ascontiguousarray(uniforms, dtype=np.float64),
        float(step),
        int(thin),
    )


def schur_batch(p, lambdas):
    """``s_lam`` for each partition in ``lambdas`` at each row of power sums ``p``.

    Returns ``(S, len(lambdas))`` complex.
    """
    p = np.asarray(p, dtype=np.complex128)
    K = max((lam.weight for lam in lambdas), default=0)
    if K > p.shape[1]:
        raise ValueError(f"need power sums to degree {K}, have {p.shape[1]}")
    h = complete_h(p, K)
    out = np.empty((p.shape[0], len(lambdas)), dtype=np.complex128)
    for c, lam in enumerate(lambdas):
        out[:, c] = jacobi_trudi(h, lam.parts)
    return out
