from __future__ import annotations

from math import isqrt


def is_prime(n: int) -> bool:
    # trial division; the primes used here are tiny
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for q in range(3, isqrt(n) + 1, 2):
        if n % q == 0:
            return False
    return True
