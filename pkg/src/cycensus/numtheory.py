"""Elementary number theory used by the group constructions and formulas."""

from __future__ import annotations

import math


def is_prime(n: int) -> bool:
    """True when n is a prime number."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def primes_upto(n: int) -> list[int]:
    """All primes <= n, ascending."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}, primes ascending."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return dict(sorted(out.items()))


def divisors(n: int) -> list[int]:
    """Sorted list of positive divisors of n."""
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def divisor_count(n: int) -> int:
    """Number of positive divisors of n."""
    c = 1
    for e in factorize(n).values():
        c *= e + 1
    return c


def euler_phi(n: int) -> int:
    """Euler's totient of n."""
    r = n
    for p in factorize(n):
        r = r // p * (p - 1)
    return r


def multiplicative_order(i: int, q: int) -> int:
    """Least k >= 1 with i**k == 1 mod q; i must be a unit mod q."""
    i %= q
    if math.gcd(i, q) != 1:
        raise ValueError(f"{i} is not a unit modulo {q}")
    k, acc = 1, i
    while acc != 1:
        acc = acc * i % q
        k += 1
    return k


def find_element_of_order(q: int, k: int) -> int | None:
    """Smallest unit i mod prime q with multiplicative order exactly k.

    Returns 1 for k == 1 and None when no such unit exists (for prime q
    that happens exactly when k does not divide q - 1).
    """
    if k == 1:
        return 1
    for i in range(2, q):
        if math.gcd(i, q) == 1 and multiplicative_order(i, q) == k:
            return i
    return None


def inverse_mod(a: int, m: int) -> int:
    """Multiplicative inverse of a modulo m."""
    return pow(a, -1, m)


def geometric_sum_mod(i: int, s: int, n: int, q: int) -> int:
    """Sum of i**(j*s) for j in range(n), reduced mod q."""
    step = pow(i, s, q)
    total, acc = 0, 1
    for _ in range(n):
        total += acc
        acc = acc * step % q
    return total % q


def semidirect_power_exponent(r: int, s: int, n: int, i: int, q: int) -> tuple[int, int]:
    """Exponent pair of the n-th power of a^r b^s when b a b^-1 = a^i mod q.

    The first component is reduced mod q; the second is the raw n*s so the
    caller can reduce by whatever order b actually has.
    """
    return (r * geometric_sum_mod(i, s, n, q) % q, n * s)
