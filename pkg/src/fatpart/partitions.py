"""Integer partitions: enumeration, conjugation, fat/even classes, content products.

Partitions are immutable and hashable; every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Optional

ENUMERATION_CAP = 40

CLASS_FILTERS = ("all", "fat", "even-parts", "strict")


@dataclass(frozen=True, order=False)
class Partition:
    """Weakly decreasing tuple of positive parts (trailing zeros stripped)."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be nonnegative: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"2,2,1,1"``; ``"-"`` (or an empty string) is the empty partition."""
        text = text.strip()
        if text in ("", "-"):
            return cls(())
        try:
            return cls(tuple(int(t) for t in text.split(",")))
        except ValueError as exc:
            raise ValueError(f"malformed partition {text!r}") from exc

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) if self.parts else "-"

    def __repr__(self) -> str:
        return f"Partition({self.parts})"

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        # 0-based; rows beyond the length read as 0
        return self.parts[i] if 0 <= i < len(self.parts) else 0

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def cells(self) -> Iterator[tuple[int, int]]:
        """Cells ``(i, j)`` with 1-based row ``i`` and column ``j``."""
        for i, row in enumerate(self.parts, start=1):
            for j in range(1, row + 1):
                yield i, j

    def contents(self) -> list[int]:
        return [j - i for i, j in self.cells()]


EMPTY = Partition(())


@dataclass(frozen=True)
class FrobeniusCoords:
    arms: tuple[int, ...]
    legs: tuple[int, ...]

    def __post_init__(self):
        if len(self.arms) != len(self.legs):
            raise ValueError("arms and legs must have equal length")
        for seq in (self.arms, self.legs):
            if any(a <= b for a, b in zip(seq, seq[1:])) or any(a < 0 for a in seq):
                raise ValueError("Frobenius coordinates must be strictly decreasing and >= 0")

    def to_partition(self) -> Partition:
        d = len(self.arms)
        if d == 0:
            return EMPTY
        rows = [self.arms[i] + i + 1 for i in range(d)]
        cols = [self.legs[i] + i + 1 for i in range(d)]
        # below the diagonal square, row r has #{i : cols[i] >= r}
        nrows = cols[0]
        parts = list(rows)
        for r in range(d + 1, nrows + 1):
            parts.append(sum(1 for c in cols if c >= r))
        return Partition(tuple(parts))


@dataclass(frozen=True)
class PartitionConstraints:
    weight_range: tuple[int, int]
    max_length: Optional[int] = None
    max_part: Optional[int] = None
    class_filter: str = "all"
    cap: int = field(default=ENUMERATION_CAP, compare=False)

    def __post_init__(self):
        lo, hi = self.weight_range
        if lo < 0:
            raise ValueError("weight_range lower bound must be >= 0")
        if self.class_filter not in CLASS_FILTERS:
            raise ValueError(f"class_filter must be one of {CLASS_FILTERS}")


def _revlex(n: int, max_part: int, max_length: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    if max_length == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        if first * max_length < n:
            break
        for rest in _revlex(n - first, first, max_length - 1):
            yield (first,) + rest


def enumerate_partitions(c: PartitionConstraints) -> list[Partition]:
    """All partitions satisfying ``c``, graded by weight and reverse-lex within a weight.

    >>> [str(p) for p in enumerate_partitions(PartitionConstraints((4, 4)))]
    ['4', '3,1', '2,2', '2,1,1', '1,1,1,1']
    """
    lo, hi = c.weight_range
    if hi > c.cap:
        raise ValueError(f"weight bound {hi} exceeds enumeration cap {c.cap}")
    max_len = hi if c.max_length is None else c.max_length
    max_part = hi if c.max_part is None else c.max_part
    out: list[Partition] = []
    for w in range(lo, hi + 1):
        if c.class_filter == "fat":
            if w % 2:
                continue
            for mu in _revlex(w // 2, max_part, max_len // 2):
                out.append(fatten(Partition(mu)))
        elif c.class_filter == "even-parts":
            if w % 2:
                continue
            for mu in _revlex(w // 2, max_part // 2, max_len):
                out.append(Partition(tuple(2 * x for x in mu)))
        else:
            for parts in _revlex(w, max_part, max_len):
                lam = Partition(parts)
                if c.class_filter == "strict" and not classify(lam)["is_strict"]:
                    continue
                out.append(lam)
    return out


def partitions_of(n: int) -> list[Partition]:
    return enumerate_partitions(PartitionConstraints((n, n)))


def conjugate(lam: Partition) -> Partition:
    if not lam.parts:
        return EMPTY
    return Partition(tuple(sum(1 for x in lam.parts if x >= j) for j in range(1, lam.parts[0] + 1)))


def classify(lam: Partition) -> dict[str, bool]:
    parts = lam.parts
    # fat: parts pair up as (m1, m1, m2, m2, ...)
    is_fat = len(parts) % 2 == 0 and all(parts[i] == parts[i + 1] for i in range(0, len(parts), 2))
    return {
        "is_fat": is_fat,
        "is_even_parts": all(x % 2 == 0 for x in parts),
        "is_strict": all(a > b for a, b in zip(parts, parts[1:])),
    }


def is_fat(lam: Partition) -> bool:
    return classify(lam)["is_fat"]


def is_even(lam: Partition) -> bool:
    return all(x % 2 == 0 for x in lam.parts)


def fatten(mu: Partition) -> Partition:
    """``mu -> mu ∪ mu``, each part repeated twice."""
    return Partition(tuple(x for x in mu.parts for _ in range(2)))


def split_fat(lam: Partition) -> Partition:
    if not is_fat(lam):
        raise ValueError(f"{lam} is not a fat partition")
    return Partition(lam.parts[::2])


def frobenius(lam: Partition) -> FrobeniusCoords:
    lt = conjugate(lam)
    d = sum(1 for i, x in enumerate(lam.parts, start=1) if x >= i)
    return FrobeniusCoords(
        tuple(lam[i] - i - 1 for i in range(d)),
        tuple(lt[i] - i - 1 for i in range(d)),
    )


def content_pochhammer(a, lam: Partition):
    """Partition Pochhammer symbol ``prod over cells (a + j - i)``.

    The numeric kind of ``a`` is preserved (int/Fraction stay exact).
    """
    out = 1
    for c in lam.contents():
        out = out * (a + c)
    return out


def hook_lengths(lam: Partition) -> list[int]:
    lt = conjugate(lam)
    return [lam[i - 1] - j + lt[j - 1] - i + 1 for i, j in lam.cells()]


def hook_dimension(lam: Partition) -> int:
    return factorial(lam.weight) // prod(hook_lengths(lam))


@lru_cache(maxsize=4096)
def _dim(parts: tuple[int, ...]) -> int:
    n = len(parts)
    d = sum(parts)
    num = factorial(d)
    for i in range(n):
        for j in range(i + 1, n):
            num *= parts[i] - parts[j] - i + j
    den = prod(factorial(parts[i] - (i + 1) + n) for i in range(n))
    q, r = divmod(num, den)
    if r or q != hook_dimension(Partition(parts)):
        raise ArithmeticError(f"dimension formulas disagree for {parts}")
    return q


def dim_symmetric_group(lam: Partition) -> int:
    """Dimension of the S_d irreducible labelled by ``lam`` (product formula, N = length)."""
    return _dim(lam.parts)


def schur_at_pinfty(lam: Partition) -> Fraction:
    """``s_lam(1, 0, 0, ...) = d_lam / |lam|!``; multiply by N**|lam| for ``s_lam(N p_inf)``."""
    return Fraction(dim_symmetric_group(lam), factorial(lam.weight))
