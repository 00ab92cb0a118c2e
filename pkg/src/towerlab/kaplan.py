"""Two-square representation data for (p1, q) and the full symbol profile.

p1 = 2e^2 + (-1)^gamma d^2 and q = 2r^2 + (-1)^gamma s^2 with gamma in {0, 1}
fixed by (2/q) = (-1)^(gamma+1); A = sd + 2er + 2*gamma*(es + dr) feeds the
criterion deciding whether the 2-class number of Q(sqrt(2*p1*q)) is exactly 4.
"""

import math
from dataclasses import dataclass

from .errors import ConventionMismatch, NoRepresentation, UndefinedQuarticSymbol
from .ntheory import is_perfect_square, legendre_symbol, quartic_symbol


@dataclass(frozen=True)
class KaplanData:
    gamma: int
    e: int
    d: int
    r: int
    s: int
    A: int

    def __post_init__(self):
        assert self.gamma in (0, 1)
        assert min(self.e, self.d, self.r, self.s) > 0


@dataclass(frozen=True)
class SymbolProfile:
    """The five Legendre symbols of a triple plus the quartic layer.

    t1 = (p1/p2)_4 and t2 = (p2/p1)_4 exist only when (p1/p2) = +1; s4 and
    alpha exist only when p1 = 1 (mod 8) and (q/p1) = +1.
    """

    leg_2p1: int
    leg_2p2: int
    leg_p1p2: int
    leg_qp1: int
    leg_qp2: int
    t1: int | None
    t2: int | None
    s4: int | None
    alpha: int | None


def _represent(n: int, sign: int):
    """Minimal-e solution of 2e^2 + sign*d^2 = n with e, d > 0."""
    if sign == 1:
        e = 1
        while 2 * e * e < n:
            rest = n - 2 * e * e
            if is_perfect_square(rest):
                return e, math.isqrt(rest)
            e += 1
        raise NoRepresentation(f"{n} != 2e^2 + d^2")
    e = math.isqrt((n + 1) // 2)
    if 2 * e * e < n:
        e += 1
    while e <= n:  # far beyond the minimal solution; cannot trip
        rest = 2 * e * e - n
        if rest > 0 and is_perfect_square(rest):
            return e, math.isqrt(rest)
        e += 1
    raise NoRepresentation(f"{n} != 2e^2 - d^2")


def decompose(p1: int, q: int) -> KaplanData:
    """Representation data (gamma, e, d, r, s, A) for p1 = 1 (mod 8), q = 3 (mod 4)."""
    if p1 % 8 != 1:
        raise NoRepresentation(f"p1 = {p1} is not 1 (mod 8)")
    if q % 4 != 3:
        raise NoRepresentation(f"q = {q} is not 3 (mod 4)")
    # (2/q) = (-1)^(gamma+1): q = 3 (mod 8) gives gamma = 0, q = 7 (mod 8) gives 1
    gamma = 0 if q % 8 == 3 else 1
    sign = 1 if gamma == 0 else -1
    e, d = _represent(p1, sign)
    r, s = _represent(q, sign)
    a = s * d + 2 * e * r + 2 * gamma * (e * s + d * r)
    data = KaplanData(gamma=gamma, e=e, d=d, r=r, s=s, A=a)
    assert 2 * e * e + sign * d * d == p1
    assert 2 * r * r + sign * s * s == q
    return data


def alpha_symbol(p1: int, q: int) -> int:
    """(A/p1) for the representation data of (p1, q).

    When (2q/p1) = +1 the value must not depend on the sign choices of d and
    s, because A and its d-flipped variant multiply to +-2*e^2*q mod p1; a
    disagreement means the normalization convention broke down.
    """
    data = decompose(p1, q)
    if math.gcd(data.A, p1) != 1:
        raise NoRepresentation(f"A = {data.A} shares a factor with {p1}")
    value = legendre_symbol(data.A, p1)
    if legendre_symbol(2 * q, p1) == 1:
        flipped = -data.s * data.d + 2 * data.e * data.r + 2 * data.gamma * (
            data.e * data.s - data.d * data.r
        )
        if legendre_symbol(flipped, p1) != value:
            raise ConventionMismatch(
                f"(A/p1) not invariant under the d-sign flip for ({p1}, {q})"
            )
    return value


def symbol_profile(p1: int, p2: int, q: int) -> SymbolProfile:
    """All residue symbols of the triple, quartic fields where defined."""
    leg_2p1 = legendre_symbol(2, p1)
    leg_2p2 = legendre_symbol(2, p2)
    leg_p1p2 = legendre_symbol(p1, p2)
    leg_qp1 = legendre_symbol(q, p1)
    leg_qp2 = legendre_symbol(q, p2)
    t1 = t2 = s4 = alpha = None
    if leg_p1p2 == 1:
        t1 = quartic_symbol(p1, p2)
        t2 = quartic_symbol(p2, p1)
    if p1 % 8 == 1 and leg_qp1 == 1:
        s4 = quartic_symbol(2 * q, p1)
        alpha = alpha_symbol(p1, q)
    return SymbolProfile(
        leg_2p1=leg_2p1,
        leg_2p2=leg_2p2,
        leg_p1p2=leg_p1p2,
        leg_qp1=leg_qp1,
        leg_qp2=leg_qp2,
        t1=t1,
        t2=t2,
        s4=s4,
        alpha=alpha,
    )


def h2_2pq_is_4(p1: int, q: int) -> bool:
    """Whether the 2-class number of Q(sqrt(2*p1*q)) equals 4 (it is always >= 4 here).

    Requires (2/p1) = (q/p1) = +1; true iff alpha = -1 or (2q/p1)_4 = -1.
    """
    if legendre_symbol(2, p1) != 1 or legendre_symbol(q, p1) != 1:
        raise UndefinedQuarticSymbol(
            f"criterion needs (2/{p1}) = ({q}/{p1}) = +1"
        )
    return alpha_symbol(p1, q) == -1 or quartic_symbol(2 * q, p1) == -1
