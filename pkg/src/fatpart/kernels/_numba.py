import numpy as np
from numba import njit

JIT_OPTIONS = {"cache": True, "nogil": True}


@njit(**JIT_OPTIONS)
def power_sums(mats, K):
    S, n, _ = mats.shape
    out = np.empty((S, K), dtype=np.complex128)
    P = np.empty((n, n), dtype=np.complex128)
    Q = np.empty((n, n), dtype=np.complex128)
    for s in range(S):
        M = mats[s]
        for a in range(n):
            for b in range(n):
                P[a, b] = M[a, b]
        for m in range(K):
            if m:
                for a in range(n):
                    for b in range(n):
                        acc = 0j
                        for c in range(n):
                            acc += P[a, c] * M[c, b]
                        Q[a, b] = acc
                for a in range(n):
                    for b in range(n):
                        P[a, b] = Q[a, b]
            tr = 0j
            for a in range(n):
                tr += P[a, a]
            out[s, m] = tr
    return out


@njit(**JIT_OPTIONS)
def complete_h(p, K):
    S = p.shape[0]
    h = np.zeros((S, K + 1), dtype=np.complex128)
    for s in range(S):
        h[s, 0] = 1.0
        for m in range(1, K + 1):
            acc = 0j
            for k in range(1, m + 1):
                acc += p[s, k - 1] * h[s, m - k]
            h[s, m] = acc / m
    return h


@njit(**JIT_OPTIONS)
def jacobi_trudi(h, parts):
    S = h.shape[0]
    n = parts.shape[0]
    out = np.empty(S, dtype=np.complex128)
    A = np.empty((n, n), dtype=np.complex128)
    for s in range(S):
        for i in range(n):
            for j in range(n):
                k = parts[i] - i + j
                A[i, j] = h[s, k] if k >= 0 else 0j
        det = 1.0 + 0j
        # LU with partial pivoting
        for col in range(n):
            piv = col
            best = abs(A[col, col])
            for r in range(col + 1, n):
                v = abs(A[r, col])
                if v > best:
                    best = v
                    piv = r
            if best == 0.0:
                det = 0j
                break
            if piv != col:
                for c in range(n):
                    tmp = A[col, c]
                    A[col, c] = A[piv, c]
                    A[piv, c] = tmp
                det = -det
            d = A[col, col]
            det *= d
            for r in range(col + 1, n):
                f = A[r, col] / d
                if f != 0:
                    for c in range(col + 1, n):
                        A[r, c] -= f * A[col, c]
        out[s] = det
    return out


@njit(**JIT_OPTIONS)
def _log_density_one(theta):
    k = theta.shape[0]
    out = 0.0
    for i in range(k):
        if theta[i] < 0.0 or theta[i] > np.pi:
            return -np.inf
        out += 2.0 * np.log(abs(np.sin(theta[i])))
    for i in range(k):
        ci = np.cos(theta[i])
        for j in range(i + 1, k):
            out += 2.0 * np.log(abs(ci - np.cos(theta[j])))
    return out


@njit(**JIT_OPTIONS)
def sp_log_density(theta):
    S = theta.shape[0]
    out = np.empty(S)
    for s in range(S):
        out[s] = _log_density_one(theta[s])
    return out


@njit(**JIT_OPTIONS)
def metropolis_sp(theta0, normals, uniforms, step, thin):
    k = theta0.shape[0]
    state = theta0.copy()
    prop = np.empty(k)
    logp = _log_density_one(state)
    nsteps = normals.shape[0]
    out = np.empty((nsteps // thin, k))
    accepted = 0
    for t in range(nsteps):
        for i in range(k):
            prop[i] = state[i] + step * normals[t, i]
        lp = _log_density_one(prop)
        if np.log(uniforms[t]) < lp - logp:
            for i in range(k):
                state[i] = prop[i]
            logp = lp
            accepted += 1
        if (t + 1) % thin == 0:
            out[(t + 1) // thin - 1] = state
    return out, accepted
