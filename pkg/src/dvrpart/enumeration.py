"""Partition generation, p(n), and the image counts ``f_e(n)``.

``f_e(n)`` is the number of distinct o-module types of length ``n`` that arise
by restricting an O-module of length ``n`` (ramification ``e``, ``d = 1``).
Work is sharded by largest part; shard results are merged into a set, so
counts and image lists do not depend on the number of workers.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .errors import DomainError
from .partition import Partition

__all__ = [
    "SequenceRow",
    "partitions_of",
    "partition_count",
    "f_e_count",
    "f_e_table",
    "closed_form_expected",
    "divisibility_probe",
    "format_ratio",
    "ResultCache",
]

RATIO_DIGITS = 6


def _partition_lists(n: int, cap: int) -> Iterator[list[int]]:
    # yields one mutable list, rewritten in place between steps
    q, r = divmod(n, cap)
    parts = [cap] * q + ([r] if r else [])
    while True:
        yield parts
        # strip trailing ones, then lower the last part > 1 and refill greedily
        ones = 0
        while parts and parts[-1] == 1:
            parts.pop()
            ones += 1
        if not parts:
            return
        v = parts.pop() - 1
        q, r = divmod(ones + v + 1, v)
        parts.extend([v] * q)
        if r:
            parts.append(r)


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Yield every partition of ``n`` (parts ``<= max_part``) in descending lex order."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    cap = n if max_part is None else min(max_part, n)
    if n == 0:
        yield Partition()
        return
    if cap < 1:
        return
    for parts in _partition_lists(n, cap):
        yield Partition._trusted(parts)


_P_CACHE = [1]


def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal recurrence, memoised across calls."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    cache = _P_CACHE
    for m in range(len(cache), n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * cache[m - g1]
            g2 = g1 + k
            if g2 <= m:
                total += sign * cache[m - g2]
            k += 1
        cache.append(total)
    return cache[n]


def _image_key(head: int, tail: list[int], e: int) -> tuple[tuple[int, ...], int]:
    """Descending image vector of ``(head, *tail)`` under restriction, and its length.

    Same arithmetic as :func:`dvrpart.restriction.restrict` with ``d = 1``,
    without building intermediate objects.
    """
    top = (head - 1) // e + 1
    lengths = [0] * (top + 2)
    weights = [0] * (top + 2)
    for n in (head, *tail):
        l = (n - 1) // e + 1
        lengths[l] += 1
        weights[l] += n - (l - 1) * e
    out: tuple[int, ...] = ()
    total = 0
    for i in range(top, 0, -1):
        f = lengths[i + 1] * e - weights[i + 1] + weights[i]
        if f:
            out += (i,) * f
            total += i * f
    return out, total


def _shard_images(e: int, n: int, largest: int) -> set[tuple[int, ...]]:
    """Images of all partitions of ``n`` whose largest part is exactly ``largest``."""
    images = set()
    rest = n - largest
    tails = _partition_lists(rest, largest) if rest else iter([[]])
    for tail in tails:
        key, total = _image_key(largest, tail, e)
        if total != n:
            raise AssertionError(f"image of {(largest, *tail)} has length {total}, expected {n}")
        images.add(key)
    return images


def _image_set(e: int, n: int, jobs: int = 1, pool=None) -> set[tuple[int, ...]]:
    if e < 1 or n < 1:
        raise DomainError(f"need e >= 1 and n >= 1, got e={e}, n={n}")
    shards = range(n, 0, -1)
    images: set[tuple[int, ...]] = set()
    if pool is None and jobs <= 1:
        for k in shards:
            images |= _shard_images(e, n, k)
        return images
    if pool is not None:
        for part in pool.map(_shard_images, [e] * n, [n] * n, shards):
            images |= part
        return images
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part in ex.map(_shard_images, [e] * n, [n] * n, shards):
            images |= part
    return images


def f_e_count(e: int, n: int, collect: bool = False, jobs: int = 1):
    """Return ``f_e(n)``, or ``(f_e(n), images)`` when ``collect`` is true.

    ``images`` is sorted in descending lexicographic order, like
    :func:`partitions_of`.
    """
    images = _image_set(e, n, jobs)
    if not collect:
        return len(images)
    ordered = [Partition._trusted(t) for t in sorted(images, reverse=True)]
    return len(images), ordered


def closed_form_expected(e: int, n: int) -> int | None:
    """Known values of ``f_e(n)``: 1 for ``n <= e``, ``n - e + 1`` for ``e < n <= 2e``."""
    if e < 1 or n < 1:
        raise DomainError(f"need e >= 1 and n >= 1, got e={e}, n={n}")
    if n <= e:
        return 1
    if n <= 2 * e:
        return n - e + 1
    return None


def format_ratio(num: int, den: int, digits: int = RATIO_DIGITS) -> str:
    """Exact ``num/den`` rounded half-to-even to ``digits`` decimals."""
    if den <= 0 or num < 0:
        raise DomainError(f"ratio needs num >= 0 and den > 0, got {num}/{den}")
    scale = 10 ** digits
    q, r = divmod(num * scale, den)
    if 2 * r > den or (2 * r == den and q % 2):
        q += 1
    whole, frac = divmod(q, scale)
    return f"{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class SequenceRow:
    n: int
    p_n: int
    f_e_n: int
    ratio: str

    def to_json(self) -> dict:
        return {"n": self.n, "p_n": self.p_n, "f_e_n": self.f_e_n, "ratio": self.ratio}


class ResultCache:
    """JSON file of previously computed ``f_e(n)`` values, keyed by ``"e,n"``.

    Purely an optimisation: a missing or deleted file only costs time.
    """

    def __init__(self, path: str | os.PathLike | None):
        self.path = Path(path) if path is not None else None
        self.entries: dict[str, int] = {}
        self.dirty = False
        if self.path is not None and self.path.exists():
            data = json.loads(self.path.read_text(encoding="utf-8"))
            self.entries = {str(k): int(v) for k, v in data.get("f_e_n", {}).items()}

    def get(self, e: int, n: int) -> int | None:
        return self.entries.get(f"{e},{n}")

    def put(self, e: int, n: int, value: int) -> None:
        key = f"{e},{n}"
        if self.entries.get(key) != value:
            self.entries[key] = value
            self.dirty = True

    def save(self) -> None:
        if self.path is None or not self.dirty:
            return
        payload = {"f_e_n": dict(sorted(self.entries.items()))}
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
        os.replace(tmp, self.path)
        self.dirty = False


def _f_values(e: int, n_max: int, jobs: int, cache: ResultCache | None) -> list[int]:
    values: list[int | None] = []
    for n in range(1, n_max + 1):
        values.append(cache.get(e, n) if cache is not None else None)
    missing = [n for n, v in zip(range(1, n_max + 1), values) if v is None]
    if missing:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for n in missing:
                    values[n - 1] = len(_image_set(e, n, pool=pool))
        else:
            for n in missing:
                values[n - 1] = len(_image_set(e, n))
        if cache is not None:
            for n in missing:
                cache.put(e, n, values[n - 1])
            cache.save()
    return values  # type: ignore[return-value]


def f_e_table(e: int, n_max: int, jobs: int = 1, cache_path=None) -> list[SequenceRow]:
    """Rows ``(n, p(n), f_e(n), f_e(n)/p(n))`` for ``n = 1 .. n_max``."""
    if e < 1 or n_max < 1:
        raise DomainError(f"need e >= 1 and n_max >= 1, got e={e}, n_max={n_max}")
    cache = ResultCache(cache_path) if cache_path is not None else None
    rows = []
    for n, f in enumerate(_f_values(e, n_max, jobs, cache), start=1):
        p_n = partition_count(n)
        rows.append(SequenceRow(n, p_n, f, format_ratio(f, p_n)))
    return rows


@dataclass(frozen=True)
class ProbeRow:
    n: int
    f_e: int
    f_e_prime: int
    difference: int
    ratio: str

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "f_e": self.f_e,
            "f_e_prime": self.f_e_prime,
            "difference": self.difference,
            "ratio": self.ratio,
        }


def divisibility_probe(e: int, e_prime: int, n_max: int, jobs: int = 1,
                       cache_path=None) -> list[ProbeRow]:
    """Tabulate ``f_e`` against ``f_{e'}`` for ``e | e'``.

    ``difference`` is ``f_e(n) - f_{e'}(n)`` and ``ratio`` is ``f_{e'}(n) / f_e(n)``.
    Nothing is asserted about the relationship.
    """
    if e < 1 or e_prime < 1 or n_max < 1:
        raise DomainError("need e, e_prime, n_max >= 1")
    if e_prime % e:
        raise DomainError(f"e={e} does not divide e_prime={e_prime}")
    cache = ResultCache(cache_path) if cache_path is not None else None
    small = _f_values(e, n_max, jobs, cache)
    large = _f_values(e_prime, n_max, jobs, cache)
    return [
        ProbeRow(n, a, b, a - b, format_ratio(b, a))
        for n, a, b in zip(range(1, n_max + 1), small, large)
    ]
