import math
import random

import pytest
from hypothesis import given, strategies as st

from weilmass.arith import (divisors, factor_integer, fundamental_discriminant,
                            is_prime, is_square, kronecker_symbol,
                            prime_power_decomposition, primes_up_to,
                            squarefree_kernel)
from weilmass.errors import FactorizationBudgetError


def test_primes_up_to():
    assert primes_up_to(20) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert primes_up_to(1) == []


def test_is_prime_small():
    ps = set(primes_up_to(2000))
    for n in range(2000):
        assert is_prime(n) == (n in ps)


def test_factor_integer_examples():
    assert factor_integer(125) == {5: 3}
    assert factor_integer(1) == {}
    assert factor_integer(103680) == {2: 8, 3: 4, 5: 1}


def test_factor_integer_roundtrip():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(1, 10**9)
        fac = factor_integer(n)
        prod = 1
        for p, e in fac.items():
            assert is_prime(p)
            prod *= p**e
        assert prod == n


def test_factor_budget():
    with pytest.raises(FactorizationBudgetError):
        factor_integer((2**61 - 1) * (2**31 - 1), bound=10**5)


def test_kronecker_examples():
    assert kronecker_symbol(5, 11) == 1   # 4^2 = 16 = 5 mod 11
    assert kronecker_symbol(7, 1) == 1
    assert kronecker_symbol(-4, 3) == -1  # 2 is not a square mod 3


def test_kronecker_matches_legendre():
    for p in primes_up_to(60):
        if p == 2:
            continue
        squares = {x * x % p for x in range(1, p)}
        for d in range(-30, 31):
            want = 0 if d % p == 0 else (1 if d % p in squares else -1)
            assert kronecker_symbol(d, p) == want, (d, p)


def test_kronecker_multiplicative():
    rng = random.Random(11)
    for _ in range(1000):
        d = rng.randrange(-500, 500)
        m = rng.randrange(1, 400)
        n = rng.randrange(1, 400)
        assert (kronecker_symbol(d, m * n)
                == kronecker_symbol(d, m) * kronecker_symbol(d, n))


@given(st.integers(-10**6, 10**6), st.integers(1, 10**4), st.integers(1, 10**4))
def test_kronecker_multiplicative_hyp(d, m, n):
    assert (kronecker_symbol(d, m * n)
            == kronecker_symbol(d, m) * kronecker_symbol(d, n))


def test_fundamental_discriminant():
    assert fundamental_discriminant(5) == 5
    assert fundamental_discriminant(8) == 8
    assert fundamental_discriminant(12) == 12    # 12 = 4*3, 3 = 3 mod 4
    assert fundamental_discriminant(-4) == -4
    assert fundamental_discriminant(-8) == -8
    assert fundamental_discriminant(-3) == -3
    assert fundamental_discriminant(45) == 5     # 45 = 9*5
    assert fundamental_discriminant(-12) == -3
    with pytest.raises(ValueError):
        fundamental_discriminant(16)


def test_fundamental_discriminant_is_fundamental():
    for d in range(-200, 201):
        if d == 0 or is_square(d):
            continue
        f = fundamental_discriminant(d)
        # fundamental: 1 mod 4 squarefree, or 4k with k squarefree, k = 2,3 mod 4
        if f % 4 == 1:
            assert abs(squarefree_kernel(f)) == abs(f)
        else:
            assert f % 4 == 0 and (f // 4) % 4 in (2, 3)
        # same square class
        assert is_square(d * f) or is_square(-d * -f) or (d * f > 0 and is_square(d * f))


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


def test_prime_power_decomposition():
    assert prime_power_decomposition(8) == (2, 3)
    assert prime_power_decomposition(61) == (61, 1)
    with pytest.raises(ValueError):
        prime_power_decomposition(12)


def test_is_square():
    sq = {x * x for x in range(50)}
    for n in range(2000):
        assert is_square(n) == (n in sq)
    assert not is_square(-4)
    assert is_square(math.isqrt(10**12) ** 2)
