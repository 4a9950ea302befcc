"""Brute-force module computations over an explicit :class:`EisensteinRing`.

The O-module ``M = (+) O/P^{n_i}`` is presented as the cokernel of
``blockdiag(pi^{n_i})`` on ``O^s``, viewed as ``(Z/p^K)^{e d s}``.  Nothing
here reads the closed formulas from :mod:`dvrpart.restriction`.
"""

from __future__ import annotations

from ..errors import DomainError, PrecisionError, TrivialModuleError
from ..partition import Partition
from .localmatrix import LocalMatrix, local_snf, span_logorder
from .rings import EisensteinRing

__all__ = [
    "default_precision",
    "module_relations",
    "abelian_invariants_oracle",
    "lcs_logorders",
    "power_subgroup_check",
]


def default_precision(lam: Partition, e: int) -> int:
    """Smallest safe ``K``: one guard digit above ``ceil(n_1 / e)``."""
    if not lam:
        raise TrivialModuleError("default precision needs a non-empty partition")
    if e < 1:
        raise DomainError(f"need e >= 1, got {e}")
    return -(-lam[0] // e) + 1


def _require_precision(ring: EisensteinRing, lam: Partition, extra: int = 0) -> None:
    if not lam:
        return
    need = default_precision(lam, ring.e) + extra
    if ring.K < need:
        raise PrecisionError(f"K={ring.K} too small for {lam} (need K >= {need})")


def _pi_power_blocks(ring: EisensteinRing, exponents) -> LocalMatrix:
    cache: dict[int, LocalMatrix] = {}
    blocks = []
    for n in exponents:
        if n not in cache:
            cache[n] = ring.pi_matrix ** n
        blocks.append(cache[n])
    return LocalMatrix.block_diag(blocks, ring.p, ring.K)


def module_relations(ring: EisensteinRing, lam: Partition) -> LocalMatrix:
    """Relation matrix ``blockdiag(pi^{n_1}, pi^{n_2}, ...)`` of ``(+) O/P^{n_i}``."""
    _require_precision(ring, lam)
    return _pi_power_blocks(ring, lam)


def abelian_invariants_oracle(ring: EisensteinRing, lam: Partition) -> Partition:
    """Invariant exponents of ``M`` as a ``Z/p^K``-module, from the Smith form."""
    vals = local_snf(module_relations(ring, lam))
    if any(a == ring.K for a in vals):
        raise PrecisionError(f"Smith form of {lam} hit p^K at K={ring.K}")
    return Partition.from_parts(a for a in vals if a > 0)


def lcs_logorders(ring: EisensteinRing, lam: Partition, j_max: int) -> list[int]:
    """``L(j) = log_p |M * P^j|`` for ``j = 0 .. j_max``.

    ``M * P^j`` is ``(pi^j O^s + R) / R`` for the relation span ``R``, so
    ``L(j)`` is a difference of two span sizes.
    """
    if j_max < 0:
        raise DomainError(f"need j_max >= 0, got {j_max}")
    R = module_relations(ring, lam)
    rank = R.nrows
    base = span_logorder(rank, R)
    out = []
    for j in range(j_max + 1):
        gens = _pi_power_blocks(ring, [j] * len(lam)).hstack(R)
        out.append(span_logorder(rank, gens) - base)
    return out


def _contains(rank: int, big: LocalMatrix, small: LocalMatrix, big_order: int) -> bool:
    # span(small) <= span(big) iff adjoining small does not enlarge the span
    return span_logorder(rank, big.hstack(small)) == big_order


def power_subgroup_check(ring: EisensteinRing, lam: Partition, n: int) -> bool:
    """Whether ``p^n M == M P^{n e}`` as submodules, by mutual containment."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    _require_precision(ring, lam, extra=n)
    R = module_relations(ring, lam)
    rank = R.nrows
    powers = LocalMatrix.identity(rank, ring.p, ring.K).scale(ring.p ** n)
    left = powers.hstack(R)
    right = _pi_power_blocks(ring, [n * ring.e] * len(lam)).hstack(R)
    left_order = span_logorder(rank, left)
    right_order = span_logorder(rank, right)
    return (_contains(rank, left, right, left_order)
            and _contains(rank, right, left, right_order))
