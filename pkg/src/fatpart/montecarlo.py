"""Deterministic block-parallel Monte-Carlo.

Samples are split into fixed-size blocks; block ``b`` draws from a Philox stream keyed
by ``(seed, b)``. Blocks are computed on any number of threads and concatenated in
block order before a single reduction, so the estimate is bit-identical for every
worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

BLOCK_SIZE = 2048
MIN_SAMPLES = 100


@dataclass
class MCEstimate:
    mean: complex | float
    stderr: float
    samples: int
    seed: int
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.stderr < 0:
            raise ValueError("stderr must be >= 0")

    def agrees_with(self, target, n_sigma: float = 4.0, floor: float = 0.0) -> bool:
        return abs(self.mean - target) <= max(n_sigma * self.stderr, floor) + 1e-12


def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def worker_count(threads: Optional[int] = None) -> int:
    if threads is None:
        env = os.environ.get("FATPART_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(threads))


def run_blocks(
    fn: Callable[[np.random.Generator, int], np.ndarray],
    samples: int,
    seed: int,
    threads: Optional[int] = None,
) -> np.ndarray:
    """Evaluate ``fn(rng, n)`` over fixed blocks and concatenate results along axis 0."""
    if samples < 1:
        raise ValueError("need at least one sample")
    sizes = [BLOCK_SIZE] * (samples // BLOCK_SIZE)
    if samples % BLOCK_SIZE:
        sizes.append(samples % BLOCK_SIZE)

    def work(b):
        return fn(block_rng(seed, b), sizes[b])

    nw = min(worker_count(threads), len(sizes))
    if nw == 1:
        parts = [work(b) for b in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=nw) as pool:
            parts = list(pool.map(work, range(len(sizes))))
    return np.concatenate(parts, axis=0)


def _as_scalar(x):
    x = complex(x)
    return x.real if x.imag == 0.0 else x


def summarize(values: np.ndarray, seed: int, diagnostics: Optional[dict] = None) -> MCEstimate:
    """Mean and standard error of a 1-d sample; complex samples use ``E|v - mean|^2``."""
    values = np.asarray(values)
    n = values.shape[0]
    mean = values.mean()
    if n > 1:
        dev = values - mean
        var = float(np.real(np.mean(dev * np.conj(dev)))) * n / (n - 1)
        stderr = float(np.sqrt(var / n))
    else:
        stderr = 0.0
    return MCEstimate(_as_scalar(mean), stderr, n, seed, dict(diagnostics or {}))
