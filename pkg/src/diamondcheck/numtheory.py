"""Primality, Jacobi symbols and base-q repunits."""

from __future__ import annotations

import random
from math import isqrt

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
                 67, 71, 73, 79, 83, 89, 97)
# Miller-Rabin with the first 13 prime bases is exact below this bound.
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
PROBABLE_PRIME_BASES = 64


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive n, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge's method A for choosing D, P = 1, Q = (1 - D) / 4.
    if isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    inv2 = (n + 1) // 2
    U, V, Qk = 0, 2, 1  # U_0, V_0, Q^0
    for bit in bin(d)[2:]:
        # double: k -> 2k
        U, V, Qk = U * V % n, (V * V - 2 * Qk) % n, Qk * Qk % n
        if bit == "1":
            # k -> k + 1
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V, Qk = (V * V - 2 * Qk) % n, Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Exact below 3.3e24 (deterministic Miller-Rabin bases).  Above that, a
    "True" means n passed 64 strong-probable-prime rounds with seeded random
    bases plus a strong Lucas test; "False" is always exact.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    if n < DETERMINISTIC_BOUND:
        return all(_strong_probable_prime(n, b) for b in _DETERMINISTIC_BASES)
    if not _strong_probable_prime(n, 2):
        return False
    rng = random.Random(n)
    for _ in range(PROBABLE_PRIME_BASES - 1):
        if not _strong_probable_prime(n, rng.randrange(3, n - 1)):
            return False
    return _strong_lucas_probable_prime(n)


def is_proven_prime(n: int) -> bool:
    """n is prime and the verdict involved no probabilistic step."""
    return n < DETERMINISTIC_BOUND and is_prime(n)


def primes_up_to(limit: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    for p in primes_up_to(isqrt(n)):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
    return True


def repunit(q: int, n: int) -> int:
    """(q^n - 1) / (q - 1), the n-digit repunit in base q."""
    if q < 2 or n < 1:
        raise ValueError(f"repunit needs q >= 2 and n >= 1, got q={q}, n={n}")
    d, r = divmod(q**n - 1, q - 1)
    assert r == 0
    return d
