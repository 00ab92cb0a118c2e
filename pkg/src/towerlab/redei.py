"""Redei matrix over F_2 and the 4-rank of the narrow class group."""

from dataclasses import dataclass

from .errors import RemarkInapplicable
from .ntheory import kronecker_symbol, require_squarefree


@dataclass(frozen=True)
class PrimeDiscriminantList:
    """Prime discriminants multiplying to the field discriminant, positives first."""

    m: int
    entries: tuple

    @property
    def s(self) -> int:
        return sum(1 for e in self.entries if e > 0)

    @property
    def t(self) -> int:
        return sum(1 for e in self.entries if e < 0)

    @property
    def field_discriminant(self) -> int:
        return self.m if self.m % 4 == 1 else 4 * self.m


@dataclass(frozen=True)
class RedeiMatrix:
    m: int
    entries: tuple  # rows over F_2
    rank: int


def prime_discriminants(m: int) -> PrimeDiscriminantList:
    """Factor the discriminant of Q(sqrt(m)) into prime discriminants.

    Odd p | m contributes (-1)^((p-1)/2) * p; the 2-part contributes -4 when
    m = 3 (mod 4), 8 when m = 2 (mod 8) and -8 when m = 6 (mod 8).
    """
    if m <= 1:
        raise ValueError("need m > 1; imaginary fields are out of scope")
    fac = require_squarefree(m)
    entries = []
    for p in fac:
        if p == 2:
            continue
        entries.append(p if p % 4 == 1 else -p)
    if m % 4 == 3:
        entries.append(-4)
    elif m % 8 == 2:
        entries.append(8)
    elif m % 8 == 6:
        entries.append(-8)
    positives = sorted(e for e in entries if e > 0)
    negatives = sorted((e for e in entries if e < 0), key=abs)
    out = PrimeDiscriminantList(m=m, entries=tuple(positives + negatives))
    prod = 1
    for e in out.entries:
        prod *= e
    assert prod == out.field_discriminant, "prime discriminants do not multiply back"
    return out


def _underlying_prime(p_star: int) -> int:
    return 2 if p_star in (-4, 8, -8) else abs(p_star)


def redei_matrix(m: int) -> RedeiMatrix:
    """Matrix over F_2 with (-1)^a_ij = (p*_i / p_j), diagonal from d_k / p*_i."""
    pd = prime_discriminants(m)
    stars = pd.entries
    d_k = pd.field_discriminant
    n = len(stars)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                sym = kronecker_symbol(d_k // stars[i], _underlying_prime(stars[i]))
            else:
                sym = kronecker_symbol(stars[i], _underlying_prime(stars[j]))
            assert sym != 0, "prime discriminants are pairwise coprime"
            row.append(0 if sym == 1 else 1)
        rows.append(tuple(row))
    # fixing the denominator p_j, the numerators multiply up to d_k/p*_j
    # twice over, so every column sums to zero over F_2
    for j in range(n):
        assert sum(rows[i][j] for i in range(n)) % 2 == 0, "column sum must vanish"
    return RedeiMatrix(m=m, entries=tuple(rows), rank=_f2_rank(rows))


def _f2_rank(rows) -> int:
    packed = [int("".join(map(str, row)), 2) if row else 0 for row in rows]
    rank = 0
    for col in range(max((len(r) for r in rows), default=0)):
        bit = 1 << col
        pivot = next((i for i, v in enumerate(packed) if v & bit), None)
        if pivot is None:
            continue
        pv = packed.pop(pivot)
        packed = [v ^ pv if v & bit else v for v in packed]
        rank += 1
    return rank


def four_rank(m: int, wide: bool = False) -> int:
    """4-rank of the narrow class group: s + t - 1 - rank(R).

    With wide=True the same number is returned as the 4-rank of the ordinary
    class group, which needs a prime = 3 (mod 4) dividing m.
    """
    if wide:
        fac = require_squarefree(m)
        if not any(p % 4 == 3 for p in fac):
            raise RemarkInapplicable(f"no prime = 3 (mod 4) divides {m}")
    pd = prime_discriminants(m)
    matrix = redei_matrix(m)
    r = pd.s + pd.t - 1 - matrix.rank
    assert r >= 0
    return r
