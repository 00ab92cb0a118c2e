"""Arbitrary-precision integer primitives and residue symbols.

Everything here is pure and deterministic; values are plain ints, signs are
+1/-1 (0 only where a symbol genuinely vanishes).
"""

import math

from .errors import NotSquarefree, UndefinedQuarticSymbol

# Deterministic Miller-Rabin witness set for n < 3.3 * 10^24 (covers 2^64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_EXTRA_ROUNDS = 24


def _miller_rabin(n: int, base: int) -> bool:
    if base % n == 0:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test, deterministic for n < 2**64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if not all(_miller_rabin(n, b) for b in _MR_WITNESSES):
        return False
    if n < 1 << 64:
        return True
    # Fixed extra bases keep the test deterministic for a given n.
    base = 41
    for _ in range(_EXTRA_ROUNDS):
        if not _miller_rabin(n, base):
            return False
        base = base * base % n + 1
    return True


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p; 0 iff p divides a."""
    if p <= 2 or p % 2 == 0:
        raise ValueError(f"legendre_symbol needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n), multiplicative in both arguments."""
    if n == 0:
        raise ValueError("kronecker_symbol undefined for n = 0")
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    # factor of 2 in n: (a/2) depends on a mod 8
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    # now n odd >= 1; binary-gcd style Jacobi
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def quartic_symbol(a: int, p: int) -> int:
    """Quartic residue symbol (a/p)_4 = a^((p-1)/4) mod p, reduced to +-1.

    Defined only when p = 1 (mod 4) and a is a quadratic residue mod p;
    computed by modular exponentiation so a may be composite.
    """
    if p % 4 != 1 or not is_prime(p):
        raise UndefinedQuarticSymbol(f"modulus {p} is not a prime = 1 (mod 4)")
    if legendre_symbol(a, p) != 1:
        raise UndefinedQuarticSymbol(f"{a} is not a quadratic residue mod {p}")
    r = pow(a, (p - 1) // 4, p)
    if r == 1:
        return 1
    if r == p - 1:
        return -1
    raise UndefinedQuarticSymbol(f"({a}/{p})_4 not a fourth-root sign")  # unreachable for prime p


def isqrt(n: int) -> int:
    """Exact integer square root (floor) for arbitrary-precision input."""
    return math.isqrt(n)


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def sieve_primes(limit: int) -> list:
    """All primes <= limit by a byte sieve."""
    if limit < 2:
        return []
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : limit + 1 : p] = b"\x00" * ((limit - start) // p + 1)
    return [i for i, v in enumerate(sieve) if v]


def factorize(n: int) -> dict:
    """Prime factorization {p: exponent} by trial division; desk-scale n only."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    incr = (4, 2, 4, 2, 4, 6, 2, 6)  # wheel mod 30
    i = 0
    while f * f <= n:
        if n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        else:
            f += incr[i]
            i = (i + 1) % 8
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    return all(e == 1 for e in factorize(n).values())


def require_squarefree(n: int) -> dict:
    """Factorize n and raise NotSquarefree unless every exponent is 1."""
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        raise NotSquarefree(f"{n} is not squarefree")
    return fac


def xgcd(a: int, b: int):
    """Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
