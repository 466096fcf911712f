"""Discrete symplectic ensemble: fat-partition weights as a lattice gas of paired particles.

A partition ``lam`` with at most ``N`` parts sits at positions
``x_i = lam_i - 2i + 1 + 2N``; neighbouring positions differ by at least 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

import numpy as np

from .partitions import Partition, PartitionConstraints, enumerate_partitions
from .series import SeriesValue, _min_bound, _sum
from .symfun import SchurEvaluator, Specialization

DSE_KINDS = ("borodin", "star")


@dataclass(frozen=True)
class DSEPoint:
    lam: Partition
    N: int

    def __post_init__(self):
        if self.lam.length > self.N:
            raise ValueError(f"{self.lam} has more than N={self.N} parts")

    @property
    def x(self) -> tuple[int, ...]:
        return tuple(self.lam[i] - 2 * (i + 1) + 1 + 2 * self.N for i in range(self.N))

    @classmethod
    def from_positions(cls, x) -> "DSEPoint":
        N = len(x)
        parts = tuple(x[i] + 2 * (i + 1) - 1 - 2 * N for i in range(N))
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"positions {tuple(x)} do not come from a partition")
        return cls(Partition(parts), N)


def dse_weight(lam: Partition, N: int) -> Fraction:
    """``prod_{i<j} (x_i - x_j)^2 ((x_i - x_j)^2 - 1) / prod_i x_i! (x_i - 1)!``, equal to ``s_{lam ∪ lam}(p_inf)``."""
    x = DSEPoint(lam, N).x
    num = 1
    for i in range(N):
        for j in range(i + 1, N):
            d2 = (x[i] - x[j]) ** 2
            num *= d2 * (d2 - 1)
    den = 1
    for xi in x:
        den *= factorial(xi) * factorial(xi - 1)
    return Fraction(num, den)


def _dse_terms(p: Specialization, N: int, cutoff: int, kind: str, p_exp: int):
    if kind not in DSE_KINDS:
        raise ValueError(f"kind must be one of {DSE_KINDS}")
    if N < 1:
        raise ValueError("N must be >= 1")
    spec = p if kind == "borodin" else Specialization.scaled(2 * N, p)
    lb = _min_bound(2 * N, spec.length_bound())
    wb = spec.width_bound()
    fats = enumerate_partitions(PartitionConstraints((0, cutoff), lb, wb, "fat"))
    ev = SchurEvaluator(spec.to_power_sums(max(cutoff, 1)))
    lams, terms = [], []
    for Lam in fats:
        lam = Partition(Lam.parts[::2])
        t = ev(Lam)
        if kind == "star":
            t = t * (Fraction(2 * N) ** Lam.weight * dse_weight(lam, N)) ** (-p_exp)
        lams.append(lam)
        terms.append(t)
    done = lb is not None and wb is not None and cutoff >= lb * wb
    return lams, terms, spec.exact, done


def dse_partition_function(p: Specialization | str, N: int, cutoff: int, kind: str = "borodin",
                           p_exp: int = 1) -> SeriesValue:
    """``borodin``: ``sum s_{lam ∪ lam}(p)``; ``star``: ``sum (s_{lam ∪ lam}(2N p_inf))^-p_exp s_{lam ∪ lam}(2N p)``.

    Both run over ``l(lam) <= N`` with ``|lam ∪ lam| <= cutoff``; ``2N`` is the matrix order.
    """
    if isinstance(p, str):
        p = Specialization.parse(p)
    lams, terms, exact, done = _dse_terms(p, N, cutoff, kind, p_exp)
    return SeriesValue(_sum(terms, exact), cutoff, done, len(lams))


def dse_sample(p: Specialization | str, N: int, cutoff: int, count: int, seed: int, kind: str = "borodin",
               p_exp: int = 1, rng: Optional[np.random.Generator] = None) -> list[Partition]:
    """Exact sampling of ``lam`` with probability proportional to its series term."""
    if isinstance(p, str):
        p = Specialization.parse(p)
    lams, terms, _, _ = _dse_terms(p, N, cutoff, kind, p_exp)
    weights = []
    for lam, t in zip(lams, terms):
        if isinstance(t, complex):
            if t.imag != 0:
                raise ValueError(f"complex weight {t} at {lam}")
            t = t.real
        if t < 0:
            raise ValueError(f"negative weight {t} at {lam}")
        weights.append(float(t))
    w = np.array(weights)
    total = w.sum()
    if total <= 0:
        raise ValueError("all weights vanish")
    cdf = np.cumsum(w) / total
    if rng is None:
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    idx = np.searchsorted(cdf, rng.random(count), side="right")
    idx = np.minimum(idx, len(lams) - 1)
    return [lams[i] for i in idx]


def dse_points(N: int, cutoff: int) -> list[DSEPoint]:
    """Every configuration with ``|lam ∪ lam| <= cutoff``."""
    return [DSEPoint(lam, N) for lam in enumerate_partitions(PartitionConstraints((0, cutoff // 2), N))]


__all__ = ["DSEPoint", "dse_partition_function", "dse_points", "dse_sample", "dse_weight"]
