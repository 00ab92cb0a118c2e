import random

import pytest

from towerlab.errors import NoRepresentation, UndefinedQuarticSymbol
from towerlab.formclass import h2_wide
from towerlab.kaplan import (alpha_symbol, decompose, h2_2pq_is_4,
                             symbol_profile)
from towerlab.ntheory import (is_perfect_square, legendre_symbol,
                              sieve_primes)


def exhaustive_decompose(p, sign):
    """Every (e, d) with 2e^2 + sign*d^2 = p, e ascending."""
    out = []
    e = 1
    while 2 * e * e < 2 * p * p:
        rest = sign * (p - 2 * e * e)
        if rest > 0 and is_perfect_square(rest):
            from math import isqrt
            out.append((e, isqrt(rest)))
        e += 1
        if sign == 1 and 2 * e * e > p:
            break
        if sign == -1 and e > 4 * p:
            break
    return out


def test_decompose_examples():
    k = decompose(73, 3)
    assert (k.gamma, k.e, k.d, k.r, k.s, k.A) == (0, 6, 1, 1, 1, 13)
    assert exhaustive_decompose(73, 1)[0] == (6, 1)

    k = decompose(97, 3)
    assert (k.gamma, k.e, k.d, k.r, k.s, k.A) == (0, 6, 5, 1, 1, 17)

    k = decompose(41, 23)
    assert (k.gamma, k.e, k.d, k.r, k.s, k.A) == (1, 5, 3, 4, 3, 103)
    assert exhaustive_decompose(41, -1)[0] == (5, 3)
    assert exhaustive_decompose(23, -1)[0] == (4, 3)


def test_decompose_round_trip_random():
    rng = random.Random(21)
    p1s = [p for p in sieve_primes(3000) if p % 8 == 1]
    qs = [p for p in sieve_primes(500) if p % 4 == 3]
    for _ in range(150):
        p1, q = rng.choice(p1s), rng.choice(qs)
        k = decompose(p1, q)
        sign = 1 if k.gamma == 0 else -1
        assert 2 * k.e**2 + sign * k.d**2 == p1
        assert 2 * k.r**2 + sign * k.s**2 == q
        assert k.gamma == (0 if q % 8 == 3 else 1)
        assert k.A == k.s * k.d + 2 * k.e * k.r + 2 * k.gamma * (
            k.e * k.s + k.d * k.r)


def test_decompose_rejects_bad_congruences():
    with pytest.raises(NoRepresentation):
        decompose(13, 3)  # 13 = 5 (mod 8)
    with pytest.raises(NoRepresentation):
        decompose(73, 5)  # 5 = 1 (mod 4)


def test_alpha_examples():
    assert alpha_symbol(73, 3) == -1
    assert alpha_symbol(97, 3) == -1
    assert alpha_symbol(41, 23) == 1


def test_alpha_sign_robustness():
    # when (2q/p1) = +1, A and its d-flipped variant multiply to
    # +-2 e^2 q mod p1, so the Legendre value cannot depend on the flip
    rng = random.Random(22)
    p1s = [p for p in sieve_primes(2000) if p % 8 == 1]
    qs = [p for p in sieve_primes(300) if p % 4 == 3]
    done = 0
    while done < 100:
        p1, q = rng.choice(p1s), rng.choice(qs)
        if legendre_symbol(2 * q, p1) != 1:
            continue
        k = decompose(p1, q)
        flipped = -k.s * k.d + 2 * k.e * k.r + 2 * k.gamma * (
            k.e * k.s - k.d * k.r)
        prod = (k.A * flipped) % p1
        target = (2 * k.e * k.e * q) % p1
        assert prod == target or prod == (-2 * k.e * k.e * q) % p1
        assert legendre_symbol(k.A, p1) == legendre_symbol(flipped, p1)
        alpha_symbol(p1, q)  # must not raise ConventionMismatch
        done += 1


def test_h2_criterion_examples():
    assert h2_2pq_is_4(73, 3) is True
    assert h2_2pq_is_4(41, 23) is True
    # alpha = s = +1 forces a larger 2-class number
    assert h2_2pq_is_4(17, 19) is False
    assert h2_wide(2 * 17 * 19) == 8


def test_h2_criterion_guard():
    with pytest.raises(UndefinedQuarticSymbol):
        h2_2pq_is_4(73, 7)  # (7/73) = -1


def test_symbol_profile_examples():
    p = symbol_profile(73, 89, 3)
    assert (p.leg_2p1, p.leg_2p2, p.leg_p1p2, p.leg_qp1, p.leg_qp2) == (
        1, 1, 1, 1, -1)
    assert (p.t1, p.t2, p.s4, p.alpha) == (1, 1, -1, -1)

    p = symbol_profile(5, 13, 7)
    assert (p.leg_2p1, p.leg_2p2, p.leg_qp1, p.leg_qp2) == (-1, -1, -1, -1)
    assert p.t1 is p.t2 is p.s4 is p.alpha is None

    p = symbol_profile(73, 17, 19)
    assert (p.leg_2p1, p.leg_2p2, p.leg_p1p2, p.leg_qp1, p.leg_qp2) == (
        1, 1, -1, 1, 1)
    assert p.t1 is None and p.t2 is None
    assert p.s4 is not None and p.alpha is not None
