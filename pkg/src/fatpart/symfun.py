"""Schur functions in power-sum variables, at matrices, and under specializations.

Two numeric regimes, chosen by input type: exact ``Fraction`` arithmetic when every
input is rational, and float/complex otherwise. They are never mixed silently.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Optional, Sequence

import numpy as np

from . import _exact
from ._exact import is_exact_scalar
from .partitions import (
    Partition,
    conjugate,
    dim_symmetric_group,
    partitions_of,
    schur_at_pinfty,
)

DEGREE_CAP = 24
CHARACTER_CAP = 12


def parse_number(text: str):
    """Exact rational when the literal allows it (``"2.5"`` -> 5/2), else complex/float."""
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        z = complex(text.replace("i", "j"))
        return z


def format_number(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return repr(x)


def _all_exact(values) -> bool:
    return all(is_exact_scalar(v) for v in values)


@dataclass(frozen=True)
class PowerSums:
    """Power sums ``p_1..p_K`` (stored 0-based)."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    @property
    def K(self) -> int:
        return len(self.values)

    @property
    def exact(self) -> bool:
        return _all_exact(self.values)

    def __getitem__(self, m: int):
        if not 1 <= m <= self.K:
            raise IndexError(f"p_{m} outside truncation degree {self.K}")
        return self.values[m - 1]

    def __neg__(self) -> "PowerSums":
        return PowerSums(tuple(-v for v in self.values))

    def scale(self, c) -> "PowerSums":
        return PowerSums(tuple(c * v for v in self.values))


SPEC_KINDS = ("explicit", "pinf", "pa", "miwa", "scaled")


@dataclass(frozen=True)
class Specialization:
    kind: str
    a: object = None
    variables: tuple = ()
    sign: int = 1
    factor: object = None
    inner: Optional["Specialization"] = None
    values: tuple = ()

    def __post_init__(self):
        if self.kind not in SPEC_KINDS:
            raise ValueError(f"unknown specialization kind {self.kind!r}")
        if self.kind == "miwa" and self.sign not in (1, -1):
            raise ValueError("Miwa sign must be +1 or -1")

    @classmethod
    def pinf(cls) -> "Specialization":
        return cls("pinf")

    @classmethod
    def p_of_a(cls, a) -> "Specialization":
        return cls("pa", a=a)

    @classmethod
    def miwa(cls, variables: Sequence, sign: int = 1) -> "Specialization":
        return cls("miwa", variables=tuple(variables), sign=sign)

    @classmethod
    def scaled(cls, factor, inner: "Specialization") -> "Specialization":
        return cls("scaled", factor=factor, inner=inner)

    @classmethod
    def explicit(cls, values: Sequence) -> "Specialization":
        return cls("explicit", values=tuple(values))

    @classmethod
    def parse(cls, text: str) -> "Specialization":
        """Parse ``pinf``, ``pa:2.5``, ``miwa:+:0.3,0.7``, ``scale:2:pinf``, ``explicit:1,0,0``."""
        t = text.strip()
        try:
            if t == "pinf":
                return cls.pinf()
            head, _, rest = t.partition(":")
            if head == "pa":
                return cls.p_of_a(parse_number(rest))
            if head == "miwa":
                sgn, _, xs = rest.partition(":")
                if sgn not in ("+", "-"):
                    raise ValueError
                variables = tuple(parse_number(x) for x in xs.split(",")) if xs else ()
                return cls.miwa(variables, 1 if sgn == "+" else -1)
            if head == "scale":
                c, _, inner = rest.partition(":")
                return cls.scaled(parse_number(c), cls.parse(inner))
            if head == "explicit":
                return cls.explicit(tuple(parse_number(x) for x in rest.split(",")))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed specialization {text!r}") from exc
        raise ValueError(f"malformed specialization {text!r}")

    def __str__(self) -> str:
        if self.kind == "pinf":
            return "pinf"
        if self.kind == "pa":
            return f"pa:{format_number(self.a)}"
        if self.kind == "miwa":
            sgn = "+" if self.sign == 1 else "-"
            return f"miwa:{sgn}:" + ",".join(format_number(x) for x in self.variables)
        if self.kind == "scaled":
            return f"scale:{format_number(self.factor)}:{self.inner}"
        return "explicit:" + ",".join(format_number(x) for x in self.values)

    def to_power_sums(self, K: int) -> PowerSums:
        return specialization_to_power_sums(self, K)

    def miwa_count(self) -> Optional[int]:
        """Signed number of Miwa variables this specialization amounts to, if finite.

        ``+m`` means ``p_k = sum of m k-th powers`` (Schur vanishes for length > m);
        ``-m`` means the negated form (Schur vanishes for first part > m).
        """
        if self.kind == "miwa":
            return self.sign * sum(1 for x in self.variables if x != 0)
        if self.kind == "pa":
            a = self.a
            if is_exact_scalar(a) and Fraction(a).denominator == 1:
                return int(a)
            return None
        if self.kind == "scaled":
            inner = self.inner.miwa_count()
            f = self.factor
            if inner is None or not is_exact_scalar(f) or Fraction(f).denominator != 1:
                return None
            return int(f) * inner
        if self.kind == "explicit" and all(v == 0 for v in self.values):
            return 0
        return None

    def length_bound(self) -> Optional[int]:
        m = self.miwa_count()
        return m if m is not None and m >= 0 else None

    def width_bound(self) -> Optional[int]:
        m = self.miwa_count()
        return -m if m is not None and m <= 0 else None

    @property
    def exact(self) -> bool:
        if self.kind == "pinf":
            return True
        if self.kind == "pa":
            return is_exact_scalar(self.a)
        if self.kind == "miwa":
            return _all_exact(self.variables)
        if self.kind == "scaled":
            return is_exact_scalar(self.factor) and self.inner.exact
        return _all_exact(self.values)


def specialization_to_power_sums(s: Specialization, K: int) -> PowerSums:
    if K < 0:
        raise ValueError("K must be >= 0")
    if s.kind == "pinf":
        return PowerSums(tuple(Fraction(int(k == 1)) for k in range(1, K + 1)))
    if s.kind == "pa":
        return PowerSums((s.a,) * K)
    if s.kind == "miwa":
        return PowerSums(tuple(s.sign * sum(x**k for x in s.variables) for k in range(1, K + 1)))
    if s.kind == "scaled":
        return specialization_to_power_sums(s.inner, K).scale(s.factor)
    if K > len(s.values):
        raise ValueError(f"explicit power sums known only to degree {len(s.values)}, need {K}")
    return PowerSums(s.values[:K])


def elementary_schur(p: PowerSums, maxdeg: int) -> list:
    """``h_0..h_maxdeg`` from ``m h_m = sum_k p_k h_{m-k}``."""
    if maxdeg > p.K:
        raise ValueError(f"maxdeg {maxdeg} exceeds truncation degree {p.K}")
    exact = p.exact
    h = [Fraction(1) if exact else 1.0]
    for m in range(1, maxdeg + 1):
        acc = sum(p.values[k - 1] * h[m - k] for k in range(1, m + 1))
        h.append(acc * Fraction(1, m) if exact else acc / m)
    return h


def _jacobi_trudi(h: list, lam: Partition, exact: bool):
    n = lam.length
    if n == 0:
        return Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0

    def entry(i, j):
        k = lam[i] - i + j
        return h[k] if k >= 0 else zero

    if exact:
        return _exact.det([[entry(i, j) for j in range(n)] for i in range(n)])
    return np.linalg.det(np.array([[entry(i, j) for j in range(n)] for i in range(n)]))


class SchurEvaluator:
    """Evaluates many ``s_lam`` at one set of power sums, sharing the ``h`` table."""

    def __init__(self, p: PowerSums):
        self.p = p
        self.exact = p.exact
        self.h = elementary_schur(p, p.K)

    def __call__(self, lam: Partition):
        if lam.weight > self.p.K:
            raise ValueError(f"|lambda|={lam.weight} exceeds truncation degree {self.p.K}")
        return _jacobi_trudi(self.h, lam, self.exact)


def schur_from_power_sums(lam: Partition, p: PowerSums):
    if lam.weight > p.K:
        raise ValueError(f"|lambda|={lam.weight} exceeds truncation degree {p.K}")
    return _jacobi_trudi(elementary_schur(p, lam.weight), lam, p.exact)


def schur_at(lam: Partition, s: Specialization):
    return schur_from_power_sums(lam, s.to_power_sums(lam.weight))


def schur_from_eigenvalues(lam: Partition, xs: Sequence):
    if lam.length > len(xs):
        return 0
    K = lam.weight
    p = PowerSums(tuple(sum(x**k for x in xs) for k in range(1, K + 1)))
    return schur_from_power_sums(lam, p)


def as_matrix(X) -> np.ndarray:
    """Exact object array when every entry is rational, otherwise a numeric array."""
    if isinstance(X, np.ndarray) and X.dtype != object:
        return X
    arr = np.array(X, dtype=object)
    if all(is_exact_scalar(x) for x in arr.flat):
        return _exact.to_fraction_array(arr)
    return np.array(arr.tolist(), dtype=complex)


def matrix_power_sums(X, K: int) -> PowerSums:
    X = as_matrix(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError("expected a square matrix")
    vals = []
    P = X
    for m in range(1, K + 1):
        if m > 1:
            P = P @ X
        vals.append(np.trace(P) if X.dtype == object else complex(np.trace(P)))
    if X.dtype == object:
        vals = [Fraction(v) for v in vals]
    return PowerSums(tuple(vals))


def schur_of_matrix(lam: Partition, X, cap: int = DEGREE_CAP):
    if lam.weight > cap:
        raise ValueError(f"|lambda|={lam.weight} exceeds degree cap {cap}")
    return schur_from_power_sums(lam, matrix_power_sums(X, lam.weight))


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    n = len(lam)
    beta = [lam[i] + (n - 1 - i) for i in range(n)]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for c in beta if nb < c < b)
        new_beta = sorted((bset - {b}) | {nb}, reverse=True)
        new_lam = tuple(x - (n - 1 - i) for i, x in enumerate(new_beta))
        new_lam = tuple(x for x in new_lam if x > 0)
        total += (-1) ** height * _mn(new_lam, rest)
    return total


def mn_character(lam: Partition, mu: Partition, cap: int = CHARACTER_CAP) -> int:
    """Symmetric-group character ``chi_lam(mu)`` by the Murnaghan-Nakayama rule."""
    if lam.weight != mu.weight:
        raise ValueError("weights of lambda and mu must agree")
    if lam.weight > cap:
        raise ValueError(f"|lambda|={lam.weight} exceeds character cap {cap}")
    return _mn(lam.parts, mu.parts)


def z_centralizer(mu: Partition) -> int:
    return prod(k**m * factorial(m) for k, m in Counter(mu.parts).items())


def phi_character(lam: Partition, mu: Partition, cap: int = CHARACTER_CAP) -> Fraction:
    chi = mn_character(lam, mu, cap)
    return Fraction(chi * factorial(lam.weight), z_centralizer(mu) * dim_symmetric_group(lam))


def charmap_schur(lam: Partition, X, cap: int = CHARACTER_CAP):
    """``s_lam(X)`` rebuilt as ``s_lam(p_inf) * sum_mu phi_lam(mu) prod_i tr X^{mu_i}``."""
    p = matrix_power_sums(X, max(lam.weight, 1))
    total = 0
    for mu in partitions_of(lam.weight):
        phi = phi_character(lam, mu, cap)
        if phi:
            total += phi * prod((p[m] for m in mu.parts), start=Fraction(1) if p.exact else 1.0)
    return schur_at_pinfty(lam) * total


def cauchy_littlewood_check(X, p: PowerSums, D: int):
    """Largest per-degree gap between ``exp(sum p_m tr X^m / m)`` and ``sum s_lam(X) s_lam(p)``."""
    if D > p.K:
        raise ValueError(f"D={D} exceeds truncation degree {p.K}")
    px = matrix_power_sums(X, D)
    q = PowerSums(tuple(p[m] * px[m] for m in range(1, D + 1)))
    lhs = elementary_schur(q, D)
    ex = SchurEvaluator(PowerSums(px.values))
    ep = SchurEvaluator(PowerSums(p.values[:D]))
    worst = 0
    for d in range(D + 1):
        rhs = sum((ex(lam) * ep(lam) for lam in partitions_of(d)), start=0)
        worst = max(worst, abs(lhs[d] - rhs))
    return worst

