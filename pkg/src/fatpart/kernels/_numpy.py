"""Pure-numpy reference kernels. Same signatures and arithmetic order as ``_numba``."""

import numpy as np


def power_sums(mats, K):
    """``tr(M^m)`` for m = 1..K over a stack ``(S, n, n)``; returns ``(S, K)`` complex."""
    mats = np.asarray(mats, dtype=np.complex128)
    S = mats.shape[0]
    out = np.empty((S, K), dtype=np.complex128)
    P = mats.copy()
    for m in range(K):
        if m:
            P = np.matmul(P, mats)
        out[:, m] = np.trace(P, axis1=1, axis2=2)
    return out


def complete_h(p, K):
    """Complete homogeneous ``h_0..h_K`` from power sums ``p`` of shape ``(S, >=K)``."""
    p = np.asarray(p, dtype=np.complex128)
    S = p.shape[0]
    h = np.zeros((S, K + 1), dtype=np.complex128)
    h[:, 0] = 1.0
    for m in range(1, K + 1):
        acc = np.zeros(S, dtype=np.complex128)
        for k in range(1, m + 1):
            acc += p[:, k - 1] * h[:, m - k]
        h[:, m] = acc / m
    return h


def jacobi_trudi(h, parts):
    """``det[h_{lam_i - i + j}]`` per row of ``h``."""
    h = np.asarray(h, dtype=np.complex128)
    n = len(parts)
    S = h.shape[0]
    if n == 0:
        return np.ones(S, dtype=np.complex128)
    mat = np.zeros((S, n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            k = parts[i] - i + j
            if k >= 0:
                mat[:, i, j] = h[:, k]
    return np.linalg.det(mat)


def sp_log_density(theta):
    """Unnormalized log of ``prod_{i<j}(cos t_i - cos t_j)^2 prod sin^2 t_i`` on ``[0, pi]^k``."""
    theta = np.atleast_2d(np.asarray(theta, dtype=np.float64))
    c = np.cos(theta)
    with np.errstate(divide="ignore"):
        out = 2.0 * np.log(np.abs(np.sin(theta))).sum(axis=1)
        k = theta.shape[1]
        for i in range(k):
            for j in range(i + 1, k):
                out += 2.0 * np.log(np.abs(c[:, i] - c[:, j]))
    outside = ((theta < 0.0) | (theta > np.pi)).any(axis=1)
    out[outside] = -np.inf
    return out


def metropolis_sp(theta0, normals, uniforms, step, thin):
    """Random-walk Metropolis over symplectic eigenangles.

    Returns the states after every ``thin``-th step and the accepted-move count.
    """
    state = np.array(theta0, dtype=np.float64)
    k = state.shape[0]
    logp = sp_log_density(state[None, :])[0]
    nsteps = normals.shape[0]
    out = np.empty((nsteps // thin, k))
    accepted = 0
    for t in range(nsteps):
        prop = state + step * normals[t]
        lp = sp_log_density(prop[None, :])[0]
        if np.log(uniforms[t]) < lp - logp:
            state = prop
            logp = lp
            accepted += 1
        if (t + 1) % thin == 0:
            out[(t + 1) // thin - 1] = state
    return out, accepted
