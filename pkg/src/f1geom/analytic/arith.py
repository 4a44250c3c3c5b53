"""von Mangoldt function and its strict partial sums psi_0(u) and phi(u)."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return k
        k += 2
    return n


def von_mangoldt(n: int) -> float:
    """log p if n = p^k with k >= 1, else 0."""
    if n < 1:
        raise ValueError("von Mangoldt is defined for n >= 1")
    if n == 1:
        return 0.0
    p = _smallest_prime_factor(n)
    while n % p == 0:
        n //= p
    return math.log(p) if n == 1 else 0.0


@lru_cache(maxsize=8)
def mangoldt_table(limit: int) -> np.ndarray:
    """Lambda(n) for 0 <= n < limit (entries 0 and 1 are zero), via a prime sieve."""
    size = max(limit, 2)
    lam = np.zeros(size)
    sieve = np.ones(size, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(size - 1) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    for p in map(int, np.flatnonzero(sieve)):
        q = p
        while q < size:
            lam[q] = math.log(p)
            q *= p
    lam.setflags(write=False)
    return lam[:limit]


def _strict_bound(u: float) -> int:
    # number of integers n >= 1 with n < u
    return max(0, math.ceil(u) - 1)


def chebyshev_psi(u: float) -> float:
    """psi_0(u) = sum of Lambda(n) over n < u."""
    top = _strict_bound(u)
    if top < 2:
        return 0.0
    return math.fsum(mangoldt_table(top + 1)[2:top + 1])


def phi(u: float) -> float:
    """phi(u) = sum of n Lambda(n) over n < u."""
    top = _strict_bound(u)
    if top < 2:
        return 0.0
    lam = mangoldt_table(top + 1)
    return math.fsum(np.arange(2, top + 1) * lam[2:top + 1])


def phi_array(u: np.ndarray) -> np.ndarray:
    """phi on a sorted or unsorted grid, through one cumulative sum."""
    u = np.asarray(u, dtype=float)
    top = max(2, int(np.ceil(u.max())) if u.size else 2)
    lam = mangoldt_table(top + 1)
    cum = np.cumsum(np.arange(top + 1) * lam)
    idx = np.maximum(np.ceil(u).astype(int) - 1, 0)
    return cum[idx]


def is_prime_power(n: int) -> bool:
    return n >= 2 and von_mangoldt(n) > 0


def prime_powers_upto(limit: float) -> list[int]:
    return [n for n in range(2, int(limit) + 1) if is_prime_power(n)]
