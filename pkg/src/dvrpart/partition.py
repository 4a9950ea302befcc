"""Partitions and the band/weight calculus used by the restriction map.

A partition is stored as a non-increasing tuple of positive integers.  For a
ramification index ``e`` the parts of a partition fall into *bands*: band
``l`` holds the parts ``n`` with ``(l - 1) * e < n <= l * e``.  Everything the
restriction map needs is a function of the length and weight of each band.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError, PartitionParseError

__all__ = [
    "Partition",
    "RestrictionParams",
    "parse_partition",
    "format_partition",
    "conjugate",
    "sub_partition",
    "weight",
    "f_coeff",
    "f_coeff_alt",
    "band_profile",
]

_INT = re.compile(r"[0-9]+")


class Partition(tuple):
    """Non-increasing tuple of positive integers.

    >>> Partition([1, 3, 2])
    Traceback (most recent call last):
        ...
    dvrpart.errors.DomainError: partition parts must be non-increasing: (1, 3, 2)
    >>> Partition((5, 3, 2, 1)).size
    11
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        for a in parts:
            if not isinstance(a, int) or isinstance(a, bool) or a < 1:
                raise DomainError(f"partition parts must be positive integers: {parts!r}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise DomainError(f"partition parts must be non-increasing: {parts!r}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts) -> "Partition":
        # caller guarantees canonical form; skips validation in hot loops
        return tuple.__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Sort arbitrary positive parts into canonical order."""
        return cls(sorted(parts, reverse=True))

    @classmethod
    def from_multiplicities(cls, mults: dict[int, int]) -> "Partition":
        """Build ``(... i^{a_i} ...)`` from a map ``i -> a_i``."""
        parts: list[int] = []
        for i in sorted(mults, reverse=True):
            a = mults[i]
            if a < 0:
                raise DomainError(f"negative multiplicity {a} for part {i}")
            parts.extend([i] * a)
        return cls(parts)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def largest(self) -> int:
        """Largest part, 0 for the empty partition."""
        return self[0] if self else 0

    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self).items()))

    def __add__(self, other):
        # multiset union, which is what a direct sum of modules does to partitions
        return Partition.from_parts(tuple(self) + tuple(other))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return format_partition(self)


@dataclass(frozen=True)
class RestrictionParams:
    """Ramification index ``e`` and residue degree ``d`` of an extension."""

    e: int
    d: int = 1

    def __post_init__(self):
        if self.e < 1 or self.d < 1:
            raise DomainError(f"need e >= 1 and d >= 1, got e={self.e}, d={self.d}")


def parse_partition(text: str) -> Partition:
    """Parse ``"5,3,2,1"`` or exponent notation ``"1^4 2^2 5"``.

    Comma lists may come in any order and are sorted descending.  A lone
    integer is accepted by both grammars.
    """
    text = text.strip()
    if not text:
        return Partition()
    parts: list[int] = []
    if "," in text:
        for token in text.split(","):
            token = token.strip()
            if not _INT.fullmatch(token):
                raise PartitionParseError(token, "expected a positive integer")
            value = int(token)
            if value < 1:
                raise PartitionParseError(token, "parts must be positive")
            parts.append(value)
    else:
        for token in text.split():
            base, sep, exp = token.partition("^")
            if not _INT.fullmatch(base) or (sep and not _INT.fullmatch(exp)):
                raise PartitionParseError(token, "expected 'i' or 'i^a'")
            value = int(base)
            count = int(exp) if sep else 1
            if value < 1:
                raise PartitionParseError(token, "parts must be positive")
            if count < 1:
                raise PartitionParseError(token, "exponent must be positive")
            parts.extend([value] * count)
    return Partition.from_parts(parts)


def format_partition(lam: Partition, style: str = "list") -> str:
    """Render ``lam`` as a descending comma list or ascending exponent groups."""
    if style == "list":
        return ",".join(str(a) for a in lam)
    if style == "exponent":
        groups = []
        for i, a in sorted(Counter(lam).items()):
            groups.append(str(i) if a == 1 else f"{i}^{a}")
        return " ".join(groups)
    raise DomainError(f"unknown partition style {style!r}")


def conjugate(lam: Partition) -> Partition:
    """Return ``(d_1, d_2, ...)`` with ``d_j`` the number of parts ``>= j``."""
    if not lam:
        return Partition()
    d = [0] * lam[0]
    for n in lam:
        for j in range(n):
            d[j] += 1
    return Partition._trusted(d)


def _check_band(e: int, l: int) -> None:
    if e < 1 or l < 1:
        raise DomainError(f"need e >= 1 and l >= 1, got e={e}, l={l}")


def sub_partition(lam: Partition, e: int, l: int) -> Partition:
    """Parts of ``lam`` lying in the half-open band ``((l-1)e, le]``."""
    _check_band(e, l)
    lo, hi = (l - 1) * e, l * e
    return Partition._trusted(n for n in lam if lo < n <= hi)


def weight(lam: Partition, e: int, l: int) -> int:
    """Sum of ``n - (l-1)e`` over the parts of band ``l``."""
    band = sub_partition(lam, e, l)
    shift = (l - 1) * e
    return sum(n - shift for n in band)


def f_coeff_alt(lam: Partition, e: int, i: int) -> int:
    """``f_{e,i}`` expressed through band sizes and lengths only."""
    _check_band(e, i)
    upper = sub_partition(lam, e, i + 1)
    lower = sub_partition(lam, e, i)
    return (len(upper) * (i + 1) * e - len(lower) * (i - 1) * e
            - upper.size + lower.size)


def f_coeff(lam: Partition, e: int, i: int) -> int:
    """Multiplicity of ``o/p^i`` (per unit residue degree) in the restricted module.

    Uses ``len(band_{i+1}) * e - w_{i+1} + w_i``; zero for bands above the
    largest part.
    """
    _check_band(e, i)
    value = len(sub_partition(lam, e, i + 1)) * e - weight(lam, e, i + 1) + weight(lam, e, i)
    assert value == f_coeff_alt(lam, e, i), (lam, e, i)
    return value


def band_profile(lam: Partition, e: int) -> tuple[list[int], list[int]]:
    """Per-band lengths and weights in one pass.

    Returns ``(lengths, weights)`` indexed by band ``l`` (index 0 unused),
    covering bands ``1 .. ceil(n_1 / e) + 1`` so that ``f_{e,l}`` can read
    band ``l + 1`` for every non-empty band.
    """
    if e < 1:
        raise DomainError(f"need e >= 1, got e={e}")
    top = -(-lam.largest // e) if lam else 0
    lengths = [0] * (top + 2)
    weights = [0] * (top + 2)
    for n in lam:
        l = (n - 1) // e + 1
        lengths[l] += 1
        weights[l] += n - (l - 1) * e
    return lengths, weights
