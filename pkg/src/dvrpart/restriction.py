"""Restriction of scalars: O-module invariants to o-module invariants.

For ``M = (+) O/P^{n_i}`` with partition ``lam``, the restricted module is
``(+)_i (o/p^i)^{f_{e,i}(lam) * d}``.  The result is kept as a sparse map
``exponent -> multiplicity`` so large ``d`` stays cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import DomainError
from .partition import Partition, RestrictionParams, band_profile
from .primes import is_prime

__all__ = [
    "InducedDecomposition",
    "restrict",
    "restrict_single",
    "abelian_group_of",
    "cyclotomic_ramification",
]


@dataclass(frozen=True)
class InducedDecomposition:
    """Multiplicities ``a_i`` of the summands ``o/p^i``; zero entries are dropped."""

    multiplicities: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for i, a in sorted(self.multiplicities.items()):
            if i < 1 or a < 0:
                raise DomainError(f"invalid summand o/p^{i} with multiplicity {a}")
            if a:
                clean[i] = a
        object.__setattr__(self, "multiplicities", clean)

    def __hash__(self):
        return hash(tuple(self.multiplicities.items()))

    def __getitem__(self, i: int) -> int:
        return self.multiplicities.get(i, 0)

    def partition(self) -> Partition:
        return Partition.from_multiplicities(self.multiplicities)

    def key(self) -> tuple[int, ...]:
        """Canonical descending vector, used for deduplication."""
        return tuple(self.partition())

    @property
    def length(self) -> int:
        """Composition length ``sum i * a_i``."""
        return sum(i * a for i, a in self.multiplicities.items())

    @property
    def num_summands(self) -> int:
        return sum(self.multiplicities.values())

    @property
    def top_exponent(self) -> int:
        return max(self.multiplicities, default=0)

    def to_json(self) -> dict:
        return {
            "summands": [
                {"exponent": i, "multiplicity": a}
                for i, a in self.multiplicities.items()
            ]
        }


def restrict(lam: Partition, params: RestrictionParams) -> InducedDecomposition:
    """Invariants of ``rho_* M`` for the O-module with partition ``lam``.

    >>> restrict(Partition((5, 3, 2, 1)), RestrictionParams(e=2)).multiplicities
    {1: 4, 2: 2, 3: 1}
    """
    e, d = params.e, params.d
    lengths, weights = band_profile(lam, e)
    mults = {}
    for i in range(1, len(lengths) - 1):
        f = lengths[i + 1] * e - weights[i + 1] + weights[i]
        if f:
            mults[i] = f * d
    return InducedDecomposition(mults)


def restrict_single(n: int, params: RestrictionParams) -> InducedDecomposition:
    """Invariants of ``O/P^n`` as an o-module: write ``n = l*e + r`` with ``0 < r <= e``."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    e, d = params.e, params.d
    l, r = divmod(n - 1, e)
    r += 1
    mults = {l + 1: r * d}
    if l > 0 and r < e:
        mults[l] = (e - r) * d
    return InducedDecomposition(mults)


def cyclotomic_ramification(p: int, m: int) -> int:
    """Ramification index ``(p - 1) p^{m-1}`` of ``Z_p[zeta_{p^m}]`` over ``Z_p``."""
    if not is_prime(p):
        raise DomainError(f"p must be prime, got {p}")
    if m < 1:
        raise DomainError(f"need m >= 1, got {m}")
    return (p - 1) * p ** (m - 1)


def abelian_group_of(lam: Partition, p: int, m: int = 1) -> InducedDecomposition:
    """Abelian invariants of a group ``A`` that is an ``O_m``-module with partition ``lam``.

    The returned multiplicity at ``i`` counts the cyclic summands ``Z/p^i``.
    """
    return restrict(lam, RestrictionParams(e=cyclotomic_ramification(p, m), d=1))
