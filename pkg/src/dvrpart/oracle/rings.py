"""Explicit totally ramified extensions ``O = W[X]/(f)`` over truncated p-adics.

``W`` is the Galois ring ``GR(p^K, d) = Z/p^K[Y]/(h)`` with ``h`` irreducible
mod p (``W = Z/p^K`` when ``d = 1``) and ``f`` is Eisenstein of degree ``e``.
``O`` is free of rank ``e*d`` over ``Z/p^K`` on the basis ``y^i x^j``
(index ``i*e + j``), and multiplication by the uniformizer ``x`` is the
matrix ``I_d (x) C_f`` with ``C_f`` the companion matrix of ``f``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from ..errors import DomainError, PrecisionError
from ..primes import is_prime
from .localmatrix import LocalMatrix

__all__ = [
    "EisensteinRing",
    "cyclotomic_eisenstein",
    "check_eisenstein",
    "is_irreducible_mod_p",
    "find_irreducible",
    "companion_matrix",
    "build_ring",
    "MAX_RANK",
]

MAX_RANK = 64


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"p must be prime, got {p}")


def cyclotomic_eisenstein(p: int, m: int = 1) -> list[int]:
    """Integer coefficients (ascending) of ``Phi_{p^m}(X + 1)``.

    Expands ``sum_{i<p} (X+1)^{i p^{m-1}}`` binomially.

    >>> cyclotomic_eisenstein(3)
    [3, 3, 1]
    """
    _require_prime(p)
    if m < 1:
        raise DomainError(f"need m >= 1, got {m}")
    step = p ** (m - 1)
    deg = (p - 1) * step
    coeffs = [0] * (deg + 1)
    for i in range(p):
        k = i * step
        for j in range(k + 1):
            coeffs[j] += comb(k, j)
    return coeffs


def _trim(coeffs: Sequence[int]) -> list[int]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def check_eisenstein(coeffs: Sequence[int], p: int, K: int = 2) -> bool:
    """Eisenstein test for a monic polynomial given by ascending coefficients.

    Coefficients are read mod ``p^K``; ``K >= 2`` is needed to see whether the
    constant term lies in ``p^2``.
    """
    _require_prime(p)
    if K < 2:
        raise PrecisionError(f"Eisenstein criterion needs K >= 2, got {K}")
    mod = p ** K
    c = _trim([a % mod for a in coeffs])
    if len(c) < 2:
        raise DomainError("Eisenstein test needs degree >= 1")
    if c[-1] != 1:
        raise DomainError("Eisenstein test needs a monic polynomial")
    if any(a % p for a in c[:-1]):
        return False
    return c[0] % (p * p) != 0


def _polymod_p(a: list[int], b: list[int], p: int) -> list[int]:
    # remainder of a by monic b over F_p, ascending coefficients
    a = [x % p for x in a]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1]
        if c:
            shift = len(a) - 1 - db
            for i, bi in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    return _trim(a)


def is_irreducible_mod_p(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree ``<= deg/2`` over F_p."""
    c = _trim([a % p for a in coeffs])
    deg = len(c) - 1
    if deg < 1:
        return False
    if c[-1] != 1:
        inv = pow(c[-1], -1, p)
        c = [a * inv % p for a in c]
    for k in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not _polymod_p(c, list(low) + [1], p):
                return False
    return True


def find_irreducible(p: int, d: int) -> list[int]:
    """First monic irreducible degree-``d`` polynomial over F_p in lexicographic order.

    Candidates are ordered by their non-leading coefficients read from
    ``X^{d-1}`` down to the constant term.
    """
    _require_prime(p)
    if d < 1:
        raise DomainError(f"need d >= 1, got {d}")
    if d == 1:
        return [0, 1]
    for high_to_low in itertools.product(range(p), repeat=d):
        cand = list(reversed(high_to_low)) + [1]
        if is_irreducible_mod_p(cand, p):
            return cand
    raise DomainError(f"no irreducible polynomial of degree {d} over F_{p}")


def companion_matrix(coeffs: Sequence[int], p: int, K: int) -> LocalMatrix:
    """Matrix of multiplication by ``X`` on ``1, X, ..., X^{n-1}`` modulo monic ``f``."""
    c = _trim(coeffs)
    n = len(c) - 1
    rows = [[0] * n for _ in range(n)]
    for j in range(n - 1):
        rows[j + 1][j] = 1
    for i in range(n):
        rows[i][n - 1] = -c[i]
    return LocalMatrix.from_rows(rows, p, K, n)


def _poly_at_matrix(coeffs: Sequence[int], M: LocalMatrix) -> LocalMatrix:
    n = M.nrows
    acc = LocalMatrix.zeros(n, n, M.p, M.K)
    for a in reversed(list(coeffs)):
        acc = acc @ M + LocalMatrix.identity(n, M.p, M.K).scale(a)
    return acc


@dataclass(frozen=True)
class EisensteinRing:
    p: int
    K: int
    d: int
    e: int
    base_poly: tuple[int, ...]
    eisenstein_poly: tuple[int, ...]
    pi_matrix: LocalMatrix
    y_matrix: LocalMatrix

    @property
    def rank(self) -> int:
        return self.e * self.d

    @property
    def label(self) -> str:
        terms = "+".join(f"{a}*X^{i}" for i, a in enumerate(self.eisenstein_poly) if a)
        return f"p={self.p},K={self.K},d={self.d},e={self.e},f={terms}"

    def identity(self) -> LocalMatrix:
        return LocalMatrix.identity(self.rank, self.p, self.K)

    def validate(self) -> None:
        """Raise ``DomainError`` unless the structure really is such a ring.

        Checks ``f(pi) = 0``, ``h(y) = 0``, that ``pi`` and ``y`` commute, and that
        ``pi`` is nilpotent of index exactly ``e`` modulo p.
        """
        if not _poly_at_matrix(self.eisenstein_poly, self.pi_matrix).is_zero():
            raise DomainError("f(pi) != 0")
        if not _poly_at_matrix(self.base_poly, self.y_matrix).is_zero():
            raise DomainError("h(y) != 0")
        if self.pi_matrix @ self.y_matrix != self.y_matrix @ self.pi_matrix:
            raise DomainError("pi and y do not commute")
        pi1 = self.pi_matrix.reduce(1)
        if not (pi1 ** self.e).is_zero():
            raise DomainError("pi^e is not divisible by p")
        if self.e > 1 and (pi1 ** (self.e - 1)).is_zero():
            raise DomainError("pi^(e-1) vanishes mod p")


def build_ring(p: int, K: int, *, d: int = 1, e: int | None = None,
               m: int | None = None, poly: Sequence[int] | None = None) -> EisensteinRing:
    """Build and validate an Eisenstein extension of ``GR(p^K, d)``.

    Exactly one construction is used:

    * ``m`` given: ``f = Phi_{p^m}(X+1)``; needs ``d = 1``; ``e`` defaults to
      ``(p-1)p^{m-1}`` and must match it if passed;
    * ``poly`` given: the explicit integer polynomial, which must be Eisenstein;
    * otherwise ``f = X^e - p``.
    """
    _require_prime(p)
    if K < 2:
        raise PrecisionError(f"need K >= 2, got {K}")
    if d < 1:
        raise DomainError(f"need d >= 1, got {d}")
    if m is not None and poly is not None:
        raise DomainError("pass at most one of m and poly")
    if m is not None:
        if d != 1:
            raise DomainError("cyclotomic rings have residue degree 1")
        f = cyclotomic_eisenstein(p, m)
    elif poly is not None:
        f = _trim(poly)
    else:
        if e is None or e < 1:
            raise DomainError("X^e - p construction needs e >= 1")
        f = [-p] + [0] * (e - 1) + [1]
    deg = len(f) - 1
    if e is not None and e != deg:
        raise DomainError(f"e={e} does not match the degree {deg} of f")
    e = deg
    if not check_eisenstein(f, p, K):
        raise DomainError(f"{f} is not Eisenstein at p={p}")
    if e * d > MAX_RANK:
        raise DomainError(f"rank e*d={e * d} exceeds {MAX_RANK}")
    h = find_irreducible(p, d)
    C_f = companion_matrix(f, p, K)
    C_h = companion_matrix(h, p, K)
    pi = LocalMatrix.identity(d, p, K).kron(C_f)
    y = C_h.kron(LocalMatrix.identity(e, p, K))
    ring = EisensteinRing(p, K, d, e, tuple(h), tuple(f), pi, y)
    ring.validate()
    return ring


@lru_cache(maxsize=256)
def cached_ring(p: int, K: int, d: int = 1, e: int | None = None,
                m: int | None = None, poly: tuple[int, ...] | None = None) -> EisensteinRing:
    return build_ring(p, K, d=d, e=e, m=m, poly=poly)
