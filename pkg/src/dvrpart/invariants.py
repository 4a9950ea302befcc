"""Invariants of an extension ``H`` of ``A`` by a cyclic group ``<x>``.

``A`` is a finite abelian p-group on which ``x^{p^{m-1}}`` acts as a splitting
automorphism of order p, so ``A`` is a module over ``O_m = Z_p[X]/(Phi_{p^m}(X+1))``
with partition ``lam``.  Every invariant below is a function of ``lam``, ``p``
and ``m`` alone; no group is ever built here (see :mod:`dvrpart.oracle` for
the explicit checks).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .errors import DomainError, TrivialModuleError
from .partition import Partition, conjugate
from .restriction import cyclotomic_ramification

__all__ = ["ExtensionReport", "extension_report", "lcs_rank"]

H2_RANK_SOURCE = "theoretical value; not computed"


@dataclass(frozen=True)
class ExtensionReport:
    nilpotency_class: int
    exponent_exp: int
    lcs_ranks: tuple[int, ...]
    top_rank: int
    min_generators: int
    power_to_gamma: dict[int, int] = field(hash=False)
    fixed_rank: int
    h2_rank: int

    def to_json(self) -> dict:
        data = asdict(self)
        data["lcs_ranks"] = list(self.lcs_ranks)
        data["power_to_gamma"] = {str(n): j for n, j in self.power_to_gamma.items()}
        data["h2_rank_source"] = H2_RANK_SOURCE
        return data


def lcs_rank(lam: Partition, j: int) -> int:
    """Rank of ``gamma_j(H) / gamma_{j+1}(H)``: the number of parts ``>= j``."""
    if j < 1:
        raise DomainError(f"need j >= 1, got {j}")
    return sum(1 for n in lam if n >= j)


def extension_report(lam: Partition, p: int, m: int = 1) -> ExtensionReport:
    """Collect class, exponent, lower central ranks, d(A) and fixed-point rank."""
    if not lam:
        raise TrivialModuleError("trivial module: the partition is empty")
    e = cyclotomic_ramification(p, m)
    d = conjugate(lam)
    n1 = lam[0]
    exponent_exp = -(-n1 // e)
    return ExtensionReport(
        nilpotency_class=n1,
        exponent_exp=exponent_exp,
        lcs_ranks=tuple(d[1:]),
        top_rank=len(lam),
        min_generators=sum(d[:e]),
        # A^{p^n} = gamma_{n e + 1}(H); listed until A^{p^n} is trivial
        power_to_gamma={n: n * e + 1 for n in range(1, exponent_exp + 1)},
        fixed_rank=len(lam),
        h2_rank=len(lam),
    )
