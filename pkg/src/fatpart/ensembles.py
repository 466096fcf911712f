"""Seeded samplers for the four ensembles, their closed-form Schur averages, and MC means.

Ensembles and their string forms:

=========  ==================  ==========================================
string     matrices            law
=========  ==================  ==========================================
gin:N=n    n x n complex        entries iid, ``E|Z_ab|^2 = 1/n``
orth:N=n   n x n real           Haar on the full group O(n)
sp:k=k     2k x 2k complex      Haar on the compact symplectic group
qgin:N=n   2n x 2n complex      n x n quaternion Ginibre, optional det^L
=========  ==================  ==========================================
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .montecarlo import MIN_SAMPLES, MCEstimate, run_blocks, summarize
from .partitions import Partition, classify, content_pochhammer, fatten, split_fat

ENSEMBLE_KINDS = ("gin", "orth", "sp", "qgin")

REJECTION_MAX_K = 3
METROPOLIS_BURN_IN = 1000
METROPOLIS_THIN = 10
METROPOLIS_TARGET = 0.4


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    size: int
    L: int = 0

    def __post_init__(self):
        if self.kind not in ENSEMBLE_KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.size < 1:
            raise ValueError("ensemble size must be >= 1")
        if self.L < 0:
            raise ValueError("L must be a nonnegative integer")
        if self.L and self.kind != "qgin":
            raise ValueError("the det^L weight applies to qgin only")

    @classmethod
    def parse(cls, text: str) -> "EnsembleSpec":
        m = re.fullmatch(r"\s*(gin|orth|sp|qgin)\s*:\s*(.*?)\s*", text)
        if not m:
            raise ValueError(f"malformed ensemble spec {text!r}")
        kind, body = m.groups()
        fields = {}
        for item in filter(None, (x.strip() for x in body.split(","))):
            key, eq, val = item.partition("=")
            if not eq:
                raise ValueError(f"malformed ensemble spec {text!r}")
            fields[key.strip()] = int(val)
        size_key = "k" if kind == "sp" else "N"
        allowed = {size_key} | ({"L"} if kind == "qgin" else set())
        if size_key not in fields or set(fields) - allowed:
            raise ValueError(f"malformed ensemble spec {text!r}")
        return cls(kind, fields[size_key], fields.get("L", 0))

    def __str__(self) -> str:
        if self.kind == "sp":
            return f"sp:k={self.size}"
        if self.kind == "qgin":
            return f"qgin:N={self.size},L={self.L}"
        return f"{self.kind}:N={self.size}"

    @property
    def matrix_order(self) -> int:
        return 2 * self.size if self.kind in ("sp", "qgin") else self.size


def _dagger(a):
    return np.conj(np.swapaxes(a, -1, -2))


def sample_complex_ginibre(N: int, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    shape = (N, N) if size is None else (size, N, N)
    g = rng.standard_normal(shape + (2,))
    return (g[..., 0] + 1j * g[..., 1]) * np.sqrt(0.5 / N)


def sample_haar_orthogonal(N: int, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    """Haar on O(N): QR of a real Gaussian matrix with the sign of diag(R) folded into Q."""
    shape = (N, N) if size is None else (size, N, N)
    A = rng.standard_normal(shape)
    Q, R = np.linalg.qr(A)
    d = np.sign(np.diagonal(R, axis1=-2, axis2=-1))
    d[d == 0] = 1.0
    return Q * d[..., None, :]


def symplectic_form(k: int) -> np.ndarray:
    return np.kron(np.eye(k), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def sample_haar_symplectic(k: int, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    """Haar on USp(2k) by quaternionic Gram-Schmidt of complex Gaussian vectors.

    Columns come in pairs ``u, Omega conj(u)``; the result satisfies
    ``M^T Omega M = Omega`` and ``M^H M = I`` with ``Omega = symplectic_form(k)``.
    """
    n = 2 * k
    S = 1 if size is None else size
    omega = symplectic_form(k)
    out = np.empty((S, n, n), dtype=np.complex128)
    cols: list[np.ndarray] = []
    for _ in range(k):
        g = rng.standard_normal((S, n, 2))
        v = g[..., 0] + 1j * g[..., 1]
        for b in cols:
            v = v - b * np.sum(np.conj(b) * v, axis=1, keepdims=True)
        v = v / np.linalg.norm(v, axis=1, keepdims=True)
        w = np.conj(v) @ omega
        cols.extend([v, w])
    for c, col in enumerate(cols):
        out[:, :, c] = col
    return out[0] if size is None else out


@lru_cache(maxsize=None)
def _sp_log_envelope(k: int) -> float:
    """Upper bound on the unnormalized eigenangle log-density, by grid search plus polish."""
    if k == 1:
        return 0.0
    grid = np.linspace(0.0, np.pi, 61)[1:-1]
    pts = np.stack(np.meshgrid(*([grid] * k), indexing="ij"), axis=-1).reshape(-1, k)
    vals = kernels.sp_log_density(pts)
    best = pts[int(np.argmax(vals))]
    res = minimize(lambda t: -kernels.sp_log_density(t[None, :])[0], best, method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 20000})
    return float(max(vals.max(), -res.fun)) + np.log(1.01)


def _sp_rejection(k: int, rng: np.random.Generator, n: int):
    if k > REJECTION_MAX_K:
        raise ValueError(f"rejection sampling is only allowed for k <= {REJECTION_MAX_K}")
    log_m = _sp_log_envelope(k)
    got: list[np.ndarray] = []
    have = 0
    proposed = 0
    batch = max(64, 2 * n)
    while have < n:
        theta = rng.uniform(0.0, np.pi, size=(batch, k))
        u = rng.random(batch)
        proposed += batch
        keep = theta[np.log(u) < kernels.sp_log_density(theta) - log_m]
        got.append(keep)
        have += keep.shape[0]
    angles = np.concatenate(got)[:n]
    return angles, {"method": "rejection", "acceptance_rate": have / proposed}


def _sp_metropolis(k: int, rng: np.random.Generator, n: int):
    theta = (np.arange(k) + 0.5) * np.pi / k
    step = 0.5 / np.sqrt(k)
    done = 0
    while done < METROPOLIS_BURN_IN:
        chunk = min(100, METROPOLIS_BURN_IN - done)
        states, acc = kernels.metropolis_sp(theta, rng.standard_normal((chunk, k)), rng.random(chunk), step, chunk)
        theta = states[-1]
        step *= np.exp(acc / chunk - METROPOLIS_TARGET)
        done += chunk
    nsteps = n * METROPOLIS_THIN
    states, acc = kernels.metropolis_sp(theta, rng.standard_normal((nsteps, k)), rng.random(nsteps), step,
                                        METROPOLIS_THIN)
    rate = acc / nsteps
    diag = {
        "method": "metropolis",
        "acceptance_rate": rate,
        "burn_in": METROPOLIS_BURN_IN,
        "thin": METROPOLIS_THIN,
        "step": float(step),
        "tuning_warning": not 0.1 <= rate <= 0.9,
    }
    return states, diag


def sample_symplectic_eigenangles(k: int, rng: np.random.Generator, method: str = "rejection",
                                  size: Optional[int] = None):
    """Eigenangles ``theta_j in [0, pi]`` of a Haar USp(2k) matrix; eigenvalues are ``e^{+-i theta_j}``.

    Returns ``(angles, diagnostics)``; ``angles`` has shape ``(k,)`` or ``(size, k)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 1 if size is None else size
    if method == "rejection":
        angles, diag = _sp_rejection(k, rng, n)
    elif method == "metropolis":
        angles, diag = _sp_metropolis(k, rng, n)
    else:
        raise ValueError(f"unknown method {method!r}")
    return (angles[0] if size is None else angles), diag


def quaternion_variance(N: int) -> Fraction:
    """Variance of each real quaternion component, fixed so that
    ``E[s_(1,1)(M)] = (N - 1) / N``, the closed form at L = 0.

    Wick contraction gives ``E[s_(1,1)(M)] = 4 N sigma^2`` for this construction.
    """
    return Fraction(N - 1, 4 * N * N)


def sample_quaternion_ginibre(N: int, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    """``2N x 2N`` complex realization, block ``(i, j) = sum_a M_ij^(a) sigma_a``.

    With ``sigma_0 = I``, ``sigma_1 = diag(i, -i)``, ``sigma_2 = [[0, 1], [-1, 0]]`` and
    ``sigma_3 = [[0, i], [i, 0]]`` each block is ``[[u, v], [-conj(v), conj(u)]]``.
    """
    S = 1 if size is None else size
    sd = float(np.sqrt(float(quaternion_variance(N))))
    a = rng.standard_normal((S, N, N, 4)) * sd
    u = a[..., 0] + 1j * a[..., 1]
    v = a[..., 2] + 1j * a[..., 3]
    out = np.empty((S, 2 * N, 2 * N), dtype=np.complex128)
    out[:, 0::2, 0::2] = u
    out[:, 0::2, 1::2] = v
    out[:, 1::2, 0::2] = -np.conj(v)
    out[:, 1::2, 1::2] = np.conj(u)
    return out[0] if size is None else out


def sample_ensemble(e: EnsembleSpec, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    if e.kind == "gin":
        return sample_complex_ginibre(e.size, rng, size)
    if e.kind == "orth":
        return sample_haar_orthogonal(e.size, rng, size)
    if e.kind == "sp":
        return sample_haar_symplectic(e.size, rng, size)
    return sample_quaternion_ginibre(e.size, rng, size)


def closed_form_schur_average(e: EnsembleSpec, lam: Partition) -> Fraction:
    """``<s_lam(M)>`` (times ``det^L`` for qgin) in closed form."""
    flags = classify(lam)
    if e.kind == "sp":
        return Fraction(int(flags["is_fat"] and lam.length <= 2 * e.size))
    if e.kind == "orth":
        return Fraction(int(flags["is_even_parts"] and lam.length <= e.size))
    if e.kind == "qgin":
        if not flags["is_fat"]:
            return Fraction(0)
        return Fraction(1, e.size**lam.weight) * content_pochhammer(Fraction(e.size + e.L), lam)
    raise ValueError("complex Ginibre Schur averages have no single-matrix closed form here")


def gaussian_quaternion_moment(N: int, L: int, lam: Partition, variance: Optional[Fraction] = None) -> Fraction:
    """Exact ``E[s_lam(M) det(M)^L]`` for the Gaussian quaternion sampler above.

    Uses ``s_lam det^L = s_{lam + L^(2N)}`` and, for ``lam + L^(2N) = mu ∪ mu``,
    ``(2 sigma^2)^|mu| prod_{(i,j) in mu} (2N - 2i + j + 1)`` (Wick-contraction result).
    """
    if variance is None:
        variance = quaternion_variance(N)
    if lam.length > 2 * N:
        return Fraction(0)
    shifted = Partition(tuple(lam[i] + L for i in range(2 * N)))
    if not classify(shifted)["is_fat"]:
        return Fraction(0)
    mu = split_fat(shifted)
    out = Fraction(2 * variance) ** mu.weight
    for i, j in mu.cells():
        out *= 2 * N - 2 * i + j + 1
    return out


def _angle_power_sums(theta: np.ndarray, K: int) -> np.ndarray:
    m = np.arange(1, K + 1)
    return 2.0 * np.cos(theta[:, :, None] * m).sum(axis=1)


def mc_schur_averages(e: EnsembleSpec, lambdas: Sequence[Partition], samples: int, seed: int,
                      method: Optional[str] = None, threads: Optional[int] = None) -> list[MCEstimate]:
    """MC estimates of ``<s_lam(M) det(M)^L>`` for several partitions on shared draws."""
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples")
    lambdas = list(lambdas)
    K = max((lam.weight for lam in lambdas), default=0)
    if method is None and e.kind == "sp":
        method = "rejection" if e.size <= REJECTION_MAX_K else "metropolis"
    diags: list[dict] = []

    def block(rng, n):
        if e.kind == "sp" and method != "matrix":
            theta, diag = sample_symplectic_eigenangles(e.size, rng, method, size=n)
            diags.append(diag)
            p = _angle_power_sums(theta, max(K, 1))
            return kernels.schur_batch(p, lambdas).real
        mats = sample_ensemble(e, rng, n)
        p = kernels.power_sums(mats, max(K, 1))
        vals = kernels.schur_batch(p, lambdas)
        if e.kind == "qgin" and e.L:
            vals = vals * (np.linalg.det(mats) ** e.L)[:, None]
        return vals if e.kind == "gin" else vals.real

    values = run_blocks(block, samples, seed, threads)
    diagnostics = {}
    if diags:
        diagnostics["method"] = diags[0]["method"]
        # fsum keeps the mean independent of the order threads finish in
        diagnostics["acceptance_rate"] = math.fsum(d["acceptance_rate"] for d in diags) / len(diags)
        if diags[0]["method"] == "metropolis":
            diagnostics["burn_in"] = METROPOLIS_BURN_IN
            diagnostics["thin"] = METROPOLIS_THIN
            diagnostics["tuning_warning"] = any(d["tuning_warning"] for d in diags)
    return [summarize(values[:, c], seed, diagnostics) for c in range(len(lambdas))]


def mc_schur_average(e: EnsembleSpec, lam: Partition, samples: int, seed: int,
                     method: Optional[str] = None, threads: Optional[int] = None) -> MCEstimate:
    return mc_schur_averages(e, [lam], samples, seed, method, threads)[0]
