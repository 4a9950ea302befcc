"""Dense matrices over the chain ring Z/p^K and their Smith form.

Matrices act on column vectors: column ``j`` is the image of basis vector
``j``.  A relation matrix therefore presents the module
``(Z/p^K)^rows / column-span``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import DomainError, PrecisionError

__all__ = ["LocalMatrix", "valuation", "local_snf", "span_logorder"]


def valuation(x: int, p: int, K: int) -> int:
    """p-adic valuation of ``x mod p^K``; zero has valuation ``K``."""
    x %= p ** K
    if x == 0:
        return K
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True, eq=True)
class LocalMatrix:
    entries: tuple[tuple[int, ...], ...]
    p: int
    K: int
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], p: int, K: int,
                  ncols: int | None = None) -> "LocalMatrix":
        if K < 1:
            raise PrecisionError(f"need K >= 1, got {K}")
        mod = p ** K
        entries = tuple(tuple(int(a) % mod for a in row) for row in rows)
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        if any(len(row) != ncols for row in entries):
            raise DomainError("ragged matrix rows")
        return cls(entries, p, K, ncols)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int, K: int) -> "LocalMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], p, K, cols)

    @classmethod
    def identity(cls, n: int, p: int, K: int) -> "LocalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], p, K, n)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def modulus(self) -> int:
        return self.p ** self.K

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def _same_ring(self, other: "LocalMatrix") -> None:
        if (self.p, self.K) != (other.p, other.K):
            raise DomainError("matrices live over different rings")

    def __matmul__(self, other: "LocalMatrix") -> "LocalMatrix":
        self._same_ring(other)
        if self.ncols != other.nrows:
            raise DomainError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.entries)) if other.entries else [()] * other.ncols
        mod = self.modulus
        out = [[sum(a * b for a, b in zip(row, col)) % mod for col in cols]
               for row in self.entries]
        return LocalMatrix(tuple(map(tuple, out)), self.p, self.K, other.ncols)

    def __add__(self, other: "LocalMatrix") -> "LocalMatrix":
        self._same_ring(other)
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} + {other.shape}")
        return LocalMatrix.from_rows(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.p, self.K, self.ncols)

    def scale(self, c: int) -> "LocalMatrix":
        return LocalMatrix.from_rows([[c * a for a in row] for row in self.entries],
                                     self.p, self.K, self.ncols)

    def __pow__(self, n: int) -> "LocalMatrix":
        if self.nrows != self.ncols:
            raise DomainError("power of a non-square matrix")
        if n < 0:
            raise DomainError("negative matrix power")
        result = LocalMatrix.identity(self.nrows, self.p, self.K)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.entries for a in row)

    def reduce(self, K: int) -> "LocalMatrix":
        """Image in ``Z/p^K`` for ``K`` no larger than the current precision."""
        if K > self.K:
            raise PrecisionError(f"cannot lift from K={self.K} to K={K}")
        return LocalMatrix.from_rows(self.entries, self.p, K, self.ncols)

    def hstack(self, *others: "LocalMatrix") -> "LocalMatrix":
        rows = [list(r) for r in self.entries]
        ncols = self.ncols
        for o in others:
            self._same_ring(o)
            if o.nrows != self.nrows:
                raise DomainError("hstack needs equal row counts")
            for r, extra in zip(rows, o.entries):
                r.extend(extra)
            ncols += o.ncols
        return LocalMatrix.from_rows(rows, self.p, self.K, ncols)

    @staticmethod
    def block_diag(blocks: Sequence["LocalMatrix"], p: int, K: int) -> "LocalMatrix":
        nrows = sum(b.nrows for b in blocks)
        ncols = sum(b.ncols for b in blocks)
        rows = [[0] * ncols for _ in range(nrows)]
        r0 = c0 = 0
        for b in blocks:
            if (b.p, b.K) != (p, K):
                raise DomainError("block over a different ring")
            for i, row in enumerate(b.entries):
                rows[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return LocalMatrix.from_rows(rows, p, K, ncols)

    def kron(self, other: "LocalMatrix") -> "LocalMatrix":
        self._same_ring(other)
        rows = []
        for a_row in self.entries:
            for b_row in other.entries:
                rows.append([a * b for a in a_row for b in b_row])
        return LocalMatrix.from_rows(rows, self.p, self.K, self.ncols * other.ncols)


def local_snf(A: LocalMatrix) -> list[int]:
    """Valuations ``a_1 <= a_2 <= ...`` of the Smith form ``diag(p^{a_i})`` of ``A``.

    One valuation per diagonal position (``min(rows, cols)`` of them); entries
    that vanish mod ``p^K`` report ``K``.  Pivots are chosen by minimal
    valuation, ties broken topmost then leftmost.
    """
    p, K = A.p, A.K
    mod = p ** K
    M = A.rows()
    nr, nc = A.nrows, A.ncols
    out: list[int] = []
    for t in range(min(nr, nc)):
        best = K
        bi = bj = -1
        for i in range(t, nr):
            row = M[i]
            for j in range(t, nc):
                if row[j]:
                    v = valuation(row[j], p, K)
                    if v < best:
                        best, bi, bj = v, i, j
                        if v == 0:
                            break
            if best == 0:
                break
        if best == K:
            out.extend([K] * (min(nr, nc) - t))
            break
        M[t], M[bi] = M[bi], M[t]
        if bj != t:
            for row in M:
                row[t], row[bj] = row[bj], row[t]
        pk = p ** best
        # pivot = pk * unit; rescale the row so the pivot is exactly p^best
        unit = M[t][t] // pk
        inv = pow(unit, -1, mod)
        M[t] = [(a * inv) % mod for a in M[t]]
        piv_row = M[t]
        for i in range(t + 1, nr):
            a = M[i][t]
            if a:
                c = a // pk
                row = M[i]
                M[i] = [(x - c * y) % mod for x, y in zip(row, piv_row)]
        for j in range(t + 1, nc):
            a = M[t][j]
            if a:
                c = a // pk
                for row in M:
                    row[j] = (row[j] - c * row[t]) % mod
        out.append(best)
    return out


def span_logorder(ring_rank: int, generators: LocalMatrix) -> int:
    """``log_p`` of the size of the column span of ``generators`` in ``(Z/p^K)^ring_rank``."""
    if generators.nrows != ring_rank:
        raise DomainError(f"generators have {generators.nrows} rows, expected {ring_rank}")
    K = generators.K
    return sum(K - a for a in local_snf(generators))
