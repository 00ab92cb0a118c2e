import math
import random

import pytest

from towerlab.ntheory import (factorize, is_perfect_square, is_prime,
                              is_squarefree, kronecker_symbol,
                              legendre_symbol, quartic_symbol,
                              require_squarefree, sieve_primes, xgcd)
from towerlab.errors import NotSquarefree, UndefinedQuarticSymbol


def trial_division_prime(n):
    if n < 2:
        return False
    for f in range(2, math.isqrt(n) + 1):
        if n % f == 0:
            return False
    return True


def test_is_prime_examples():
    assert is_prime(2)
    assert not is_prime(1)
    assert is_prime(7919) == trial_division_prime(7919)
    assert is_prime(7919)


def test_is_prime_agrees_with_trial_division():
    for n in range(1, 3000):
        assert is_prime(n) == trial_division_prime(n), n


def test_is_prime_large():
    # 2^89 - 1 is a Mersenne prime; its neighbours are not
    m = (1 << 89) - 1
    assert is_prime(m)
    assert not is_prime(m - 2)
    assert not is_prime(m * ((1 << 61) - 1))


def test_legendre_examples_against_square_oracle():
    squares_73 = {x * x % 73 for x in range(1, 73)}
    assert legendre_symbol(13, 73) == (1 if 13 in squares_73 else -1) == -1
    assert legendre_symbol(6, 73) == (1 if 6 in squares_73 else -1) == 1
    assert legendre_symbol(1, 7919) == 1
    assert legendre_symbol(73 * 5, 73) == 0


def test_legendre_rejects_even_modulus():
    with pytest.raises(ValueError):
        legendre_symbol(3, 2)


def test_legendre_multiplicative():
    rng = random.Random(101)
    odd_primes = [p for p in sieve_primes(10**4) if p > 2]
    for _ in range(400):
        p = rng.choice(odd_primes)
        a = rng.randrange(1, 10**4)
        b = rng.randrange(1, 10**4)
        if a % p == 0 or b % p == 0:
            continue
        assert (legendre_symbol(a * b, p)
                == legendre_symbol(a, p) * legendre_symbol(b, p))


def test_kronecker_examples():
    assert kronecker_symbol(-8, 3) == 1
    for a in (-17, -1, 0, 5, 38982):
        assert kronecker_symbol(a, 1) == 1
    assert kronecker_symbol(73, 89) == 1


def test_kronecker_matches_legendre_on_odd_primes():
    rng = random.Random(202)
    odd_primes = [p for p in sieve_primes(2000) if p > 2]
    for _ in range(300):
        p = rng.choice(odd_primes)
        a = rng.randrange(-500, 500)
        assert kronecker_symbol(a, p) == legendre_symbol(a, p)


def test_kronecker_multiplicative_in_both_arguments():
    rng = random.Random(303)
    for _ in range(300):
        a = rng.randrange(-60, 60)
        b = rng.randrange(-60, 60)
        n = rng.randrange(1, 60)
        m = rng.randrange(1, 60)
        assert (kronecker_symbol(a * b, n)
                == kronecker_symbol(a, n) * kronecker_symbol(b, n))
        assert (kronecker_symbol(a, n * m)
                == kronecker_symbol(a, n) * kronecker_symbol(a, m))


def test_kronecker_rejects_zero_modulus():
    with pytest.raises(ValueError):
        kronecker_symbol(3, 0)


def test_quartic_examples():
    assert quartic_symbol(6, 73) == -1
    assert quartic_symbol(89, 73) == 1
    for p in (5, 13, 17, 73, 97):
        assert quartic_symbol(16, p) == 1


def test_quartic_matches_fourth_power_solvability():
    # exhaustive over every admissible pair with p < 200
    for p in sieve_primes(200):
        if p % 4 != 1:
            continue
        fourth = {pow(x, 4, p) for x in range(1, p)}
        for a in range(1, p):
            if legendre_symbol(a, p) != 1:
                continue
            assert (quartic_symbol(a, p) == 1) == (a in fourth), (a, p)


def test_quartic_twisted_multiplicativity():
    # (a*b^2 / p)_4 = (a/p)_4 * (b/p)
    rng = random.Random(404)
    ps = [p for p in sieve_primes(500) if p % 4 == 1]
    done = 0
    while done < 200:
        p = rng.choice(ps)
        a = rng.randrange(2, p)
        b = rng.randrange(2, p)
        if a % p == 0 or b % p == 0 or legendre_symbol(a, p) != 1:
            continue
        assert (quartic_symbol(a * b * b, p)
                == quartic_symbol(a, p) * legendre_symbol(b, p))
        done += 1


def test_quartic_rejects_bad_inputs():
    with pytest.raises(UndefinedQuarticSymbol):
        quartic_symbol(2, 7)  # 7 = 3 (mod 4)
    with pytest.raises(UndefinedQuarticSymbol):
        quartic_symbol(13, 73)  # non-residue
    with pytest.raises(UndefinedQuarticSymbol):
        quartic_symbol(3, 15)  # composite modulus


def _newton_isqrt(n):
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 1) // 2)
    while True:
        y = (x + n // x) // 2
        if y >= x:
            return x
        x = y


def test_is_perfect_square_examples():
    assert is_perfect_square(0)
    assert not is_perfect_square(2)
    assert is_perfect_square((10**300 + 1) ** 2)
    assert not is_perfect_square((10**300 + 1) ** 2 - 1)
    assert not is_perfect_square(-4)


def test_isqrt_against_newton_oracle():
    rng = random.Random(512)
    for _ in range(100_000):
        n = rng.getrandbits(512)
        r = _newton_isqrt(n)
        assert r * r <= n < (r + 1) * (r + 1)
        assert is_perfect_square(n) == (r * r == n)
        assert math.isqrt(n) == r


def test_factorize_and_squarefree():
    assert factorize(1) == {}
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert is_squarefree(38982)
    assert not is_squarefree(12)
    with pytest.raises(NotSquarefree):
        require_squarefree(12)
    assert require_squarefree(38982) == {2: 1, 3: 1, 73: 1, 89: 1}


def test_xgcd():
    rng = random.Random(7)
    for _ in range(200):
        a = rng.randrange(-10**6, 10**6)
        b = rng.randrange(-10**6, 10**6)
        g, x, y = xgcd(a, b)
        assert g == math.gcd(a, b)
        assert a * x + b * y == g
