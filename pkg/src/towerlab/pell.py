"""Continued-fraction machinery for real quadratic fields.

Fundamental units are carried exactly as (x_num + y_num*sqrt(m))/denom with
denom in {1, 2}; no floating-point approximations appear anywhere.
"""

import math
from dataclasses import dataclass

from .errors import NormMinusOne, PeriodGuardExceeded, UnexpectedSquareClass
from .ntheory import factorize, is_perfect_square, require_squarefree

# Far above any continued-fraction period for m <= 10^8; a tripped guard
# means a bug, not a long period.
PERIOD_GUARD = 10**7


@dataclass(frozen=True)
class FundamentalUnit:
    """Minimal unit > 1 of the maximal order of Q(sqrt(m))."""

    m: int
    x_num: int
    y_num: int
    denom: int
    norm: int

    def __post_init__(self):
        assert self.denom in (1, 2)
        assert self.norm in (1, -1)
        lhs = self.x_num * self.x_num - self.m * self.y_num * self.y_num
        assert lhs == self.norm * self.denom * self.denom, "unit equation violated"


@dataclass(frozen=True)
class SquareClassPair:
    """Squarefree parts of x-1 and x+1 for a Pell solution x."""

    f_minus: int
    f_plus: int

    def members(self):
        return (self.f_minus, self.f_plus)


def _cf_min_unit(m: int):
    """Minimal solution of x^2 - m*y^2 = +-1 via the continued fraction of sqrt(m).

    Returns (x, y, norm). Kicks in the period guard instead of looping forever.
    """
    a0 = math.isqrt(m)
    p_prev, p_cur = 1, a0
    q_prev, q_cur = 0, 1
    # iterate P/Q state: P_{k+1} = a_k Q_k - P_k, Q_{k+1} = (m - P^2)/Q
    P, Q, a = 0, 1, a0
    steps = 0
    while True:
        steps += 1
        if steps > PERIOD_GUARD:
            raise PeriodGuardExceeded(f"period of sqrt({m}) exceeded guard")
        P = a * Q - P
        Q = (m - P * P) // Q
        if Q == 1:
            # period ends; the previous convergent is the minimal solution
            norm = -1 if steps % 2 == 1 else 1
            return p_cur, q_cur, norm
        a = (a0 + P) // Q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev


def _icbrt(n: int) -> int:
    """Floor integer cube root by Newton iteration."""
    if n < 0:
        raise ValueError("negative cube root")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    return x


def _halved_unit(x1: int, y1: int, m: int, norm: int):
    """Half-integral cube root (u + v*sqrt(m))/2 of x1 + y1*sqrt(m), if it exists.

    The unit index of Z[sqrt(m)] in the maximal order divides 3, so the
    fundamental unit is either x1 + y1*sqrt(m) itself or this cube root.
    """
    if m % 4 != 1:
        return None
    # (u + v sqrt(m))/2 cubed has integer part (u^3 - 3*n*u)/2 with n the norm
    target = 2 * x1
    u = _icbrt(target)
    for cand in (u - 1, u, u + 1, u + 2):
        if cand <= 0:
            continue
        if cand**3 - 3 * norm * cand == target:
            den = cand * cand - norm
            if den != 0 and (2 * y1) % den == 0:
                v = 2 * y1 // den
                if v > 0 and cand * cand - m * v * v == 4 * norm:
                    if cand % 2 == 1 and v % 2 == 1:
                        return cand, v
    return None


def fundamental_unit(m: int) -> FundamentalUnit:
    """Fundamental unit of the maximal order of Q(sqrt(m)), m squarefree > 1."""
    if m <= 1:
        raise ValueError("need m > 1")
    require_squarefree(m)
    x1, y1, norm = _cf_min_unit(m)
    half = _halved_unit(x1, y1, m, norm)
    if half is not None:
        u, v = half
        return FundamentalUnit(m=m, x_num=u, y_num=v, denom=2, norm=norm)
    return FundamentalUnit(m=m, x_num=x1, y_num=y1, denom=1, norm=norm)


def pell_xy(m: int):
    """Minimal positive integral solution of x^2 - m*y^2 = 1.

    Raises NormMinusOne when the fundamental unit has norm -1: every caller in
    this package works with m = 2 (mod 4) divisible by a prime = 3 (mod 4),
    where the norm is +1 and the unit is integral.
    """
    eps = fundamental_unit(m)
    if eps.norm == -1:
        raise NormMinusOne(f"fundamental unit of {m} has norm -1")
    if eps.denom == 1:
        return eps.x_num, eps.y_num
    # half-integral unit of norm +1: its cube is the minimal integral solution
    u, v = eps.x_num, eps.y_num
    x = (u**3 + 3 * u * m * v * v) // 8
    y = (3 * u * u * v + m * v**3) // 8
    assert x * x - m * y * y == 1
    return x, y


def squarefree_part(n: int, support) -> int:
    """Squarefree part of n, assuming all repeated prime factors lie in support.

    Strips each support prime and requires the remaining cofactor to be a
    perfect square; anything else means the support assumption is wrong.
    """
    assert n > 0
    f = 1
    rest = n
    for p in sorted(support):
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e % 2 == 1:
            f *= p
    if not is_perfect_square(rest):
        raise UnexpectedSquareClass(
            f"cofactor of {n} outside support {sorted(support)} is not a square"
        )
    return f


def square_class_pair(m: int, support=None) -> SquareClassPair:
    """Squarefree parts of x-1 and x+1 for the minimal x with x^2 - m*y^2 = 1.

    support defaults to the prime divisors of 2m; (x-1)(x+1) = m*y^2 forces
    both squarefree parts to live there.
    """
    x, y = pell_xy(m)
    if support is None:
        support = set(factorize(m)) | {2}
    else:
        support = set(support) | {2}
    f_minus = squarefree_part(x - 1, support)
    f_plus = squarefree_part(x + 1, support)
    # the two parts multiply to m modulo squares
    assert is_perfect_square(m * f_minus * f_plus), "square classes lost factors"
    return SquareClassPair(f_minus=f_minus, f_plus=f_plus)
