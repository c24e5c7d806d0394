"""Prime sieves, deterministic primality, and integer factorization.

All targets here are desk scale: trial division backed by a smallest prime
factor sieve handles the bulk work, Pollard's rho picks up the occasional
large cofactor, and Miller-Rabin with fixed bases is deterministic for
inputs below 3.3 * 10^24.
"""

from __future__ import annotations

import math
import random

# ---------------------------------------------------------------------------
# sieves


def prime_sieve(limit: int) -> list[int]:
    """All primes <= limit, by a byte sieve on odd numbers."""
    if limit < 2:
        return []
    if limit < 3:
        return [2]
    half = (limit - 1) // 2 + 1
    sieve = bytearray([1]) * half
    sieve[0] = 0
    i = 1
    while (2 * i + 1) ** 2 <= limit:
        if sieve[i]:
            p = 2 * i + 1
            start = (p * p - 1) // 2
            sieve[start::p] = bytearray(len(range(start, half, p)))
        i += 1
    return [2] + [2 * i + 1 for i in range(half) if sieve[i]]


def spf_sieve(limit: int) -> list[int]:
    """Smallest prime factor table for 0..limit (spf[0] = spf[1] = 0)."""
    spf = list(range(limit + 1))
    if limit >= 1:
        spf[1] = 0
    if limit >= 0:
        spf[0] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def factorize_with_spf(n: int, spf: list[int]) -> dict[int, int]:
    """Factor n using a precomputed smallest prime factor table."""
    out: dict[int, int] = {}
    while n > 1:
        p = spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


# ---------------------------------------------------------------------------
# primality

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# factorization

_TRIAL_LIMIT = 10**6


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite n with no factor <= _TRIAL_LIMIT."""
    if n % 2 == 0:
        return 2
    rng = random.Random(0xB3)
    while True:
        c = rng.randrange(1, n)
        x = rng.randrange(2, n)
        y, d = x, 1
        f = lambda v: (v * v + c) % n
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    w = 0
    while d * d <= n and d <= _TRIAL_LIMIT:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += wheel[w]
        w = (w + 1) % 8
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _pollard_rho(m)
        stack.append(f)
        stack.append(m // f)
    return out


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n >= 1."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Write n = g * h^2 with g squarefree; returns (g, h)."""
    g, h = 1, 1
    for p, e in factorize(n).items():
        if e % 2:
            g *= p
        h *= p ** (e // 2)
    return g, h
