"""Exact integer arithmetic helpers: primality, factorization, Kronecker symbol.

Everything here works on plain Python integers (arbitrary precision); no
floating point is used on any path that feeds discriminant or local-factor
computations.
"""

from __future__ import annotations

import math

from .errors import FactorizationBudgetError

# Trial division gives up once the remaining cofactor exceeds bound**2.
DEFAULT_FACTOR_BOUND = 10**7

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """Sieve of Eratosthenes, inclusive."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start::p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, v in enumerate(sieve) if v]


def factor_integer(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> dict[int, int]:
    """Factor n >= 1 by trial division; {prime: exponent}, sorted by prime.

    Raises FactorizationBudgetError if a composite cofactor survives trial
    division up to `bound` (desk-scale discriminants never hit this).
    """
    if n < 1:
        raise ValueError(f"factor_integer needs n >= 1, got {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        if d > bound:
            raise FactorizationBudgetError(
                f"cofactor {n} exceeds trial-division bound {bound}")
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if n > bound * bound and not is_prime(n):
            raise FactorizationBudgetError(
                f"cofactor {n} exceeds trial-division bound {bound}")
        out[n] = out.get(n, 0) + 1
    return dict(sorted(out.items()))


def prime_power_decomposition(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    fac = factor_integer(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    [(p, e)] = fac.items()
    return p, e


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def kronecker_symbol(d: int, n: int) -> int:
    """Kronecker symbol (d/n) for n >= 1, completely multiplicative in n."""
    if n < 1:
        raise ValueError("kronecker_symbol requires n >= 1")
    if n == 1:
        return 1
    result = 1
    # factor out 2 with the standard supplement (d/2)
    while n % 2 == 0:
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
        n //= 2
    if n == 1:
        return result
    # Jacobi symbol for odd n via reciprocity
    a = d % n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def squarefree_kernel(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> int:
    """Squarefree part of n (same sign as n)."""
    if n == 0:
        raise ValueError("squarefree_kernel(0)")
    sign = -1 if n < 0 else 1
    s = 1
    for p, e in factor_integer(abs(n), bound).items():
        if e % 2:
            s *= p
    return sign * s


def fundamental_discriminant(d: int, bound: int = DEFAULT_FACTOR_BOUND) -> int:
    """Fundamental discriminant of Q(sqrt(d)); d must not be a perfect square."""
    s = squarefree_kernel(d, bound)
    if s == 1:
        raise ValueError(f"{d} is a perfect square, no quadratic field")
    return s if s % 4 == 1 else 4 * s


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, ascending."""
    fac = factor_integer(n)
    out = [1]
    for p, e in fac.items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)
