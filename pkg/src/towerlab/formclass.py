"""Narrow class groups of real quadratic fields via reduced indefinite forms.

A form (a, b, c) has discriminant D = b^2 - 4ac > 0, D non-square.  Reduced
means 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b; the rho operator
walks each equivalence class through its finite cycle of reduced forms, so
the narrow class number is the number of cycles.  All comparisons against
sqrt(D) are exact integer comparisons.
"""

import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .errors import InvalidDiscriminant, RemarkInapplicable
from .ntheory import factorize, is_perfect_square, require_squarefree, xgcd
from .pell import fundamental_unit


class QuadForm(NamedTuple):
    a: int
    b: int
    c: int

    def discriminant(self):
        return self.b * self.b - 4 * self.a * self.c


# ---------------------------------------------------------------------------
# smallest-prime-factor sieve, grown on demand

_SPF_LOCK = threading.Lock()
_SPF = [0, 1]
_SPF_HARD_CAP = 4_000_000


def _spf_table(limit: int):
    global _SPF
    with _SPF_LOCK:
        if limit < len(_SPF):
            return _SPF
        size = max(limit + 1, 2 * len(_SPF), 1 << 16)
        spf = list(range(size))
        for i in range(2, math.isqrt(size - 1) + 1):
            if spf[i] == i:
                for j in range(i * i, size, i):
                    if spf[j] == j:
                        spf[j] = i
        _SPF = spf
        return _SPF


def _divisors(n: int):
    """All positive divisors of n (n >= 1)."""
    if n < _SPF_HARD_CAP:
        spf = _spf_table(n)
        fac = {}
        while n > 1:
            p = spf[n]
            fac[p] = fac.get(p, 0) + 1
            n //= p
    else:
        fac = factorize(n)
    divs = [1]
    for p, e in fac.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


# ---------------------------------------------------------------------------
# reduction theory

def is_reduced(form: QuadForm, D: int) -> bool:
    a, b, _ = form
    if b <= 0 or b * b >= D:
        return False
    t = 2 * abs(a)
    if (t + b) ** 2 <= D:  # need sqrt(D) - b < 2|a|
        return False
    u = t - b
    return u <= 0 or u * u < D  # need 2|a| < sqrt(D) + b


def rho(form: QuadForm, D: int, s: int | None = None) -> QuadForm:
    """Reduction step (a, b, c) -> (c, r, (r^2 - D) / 4c).

    r = -b (mod 2|c|), placed in (sqrt(D) - 2|c|, sqrt(D)) when |c| < sqrt(D)
    and in (-|c|, |c|] otherwise; iterating lands in a reduced cycle.
    """
    if s is None:
        s = math.isqrt(D)
    a, b, c = form
    ac = abs(c)
    base = (-b) % (2 * ac)
    if c * c > D:
        r = base if base <= ac else base - 2 * ac
    else:
        r = base + 2 * ac * ((s - base) // (2 * ac))
    return QuadForm(c, r, (r * r - D) // (4 * c))


def reduce_form(form: QuadForm, D: int) -> QuadForm:
    s = math.isqrt(D)
    for _ in range(10_000):
        if is_reduced(form, D):
            return form
        form = rho(form, D, s)
    raise AssertionError(f"reduction of {form} did not terminate for D={D}")


def _check_discriminant(D: int):
    if D <= 0 or D % 4 not in (0, 1) or is_perfect_square(D):
        raise InvalidDiscriminant(f"{D} is not a positive non-square discriminant")


def _check_fundamental(D: int):
    _check_discriminant(D)
    if D % 4 == 1:
        fac = factorize(D)
    else:
        m = D // 4
        if m % 4 == 1:
            raise InvalidDiscriminant(f"{D} is not fundamental (D/4 = 1 mod 4)")
        fac = factorize(m)
    if any(e > 1 for e in fac.values()):
        raise InvalidDiscriminant(f"{D} is not a fundamental discriminant")


def enumerate_reduced_forms(D: int):
    """Every reduced form of discriminant D, by divisor search over b."""
    _check_discriminant(D)
    s = math.isqrt(D)
    forms = []
    b = 1 if D % 2 else 2
    while b <= s:
        n = (D - b * b) // 4
        for a in _divisors(n):
            t = 2 * a
            if (t + b) ** 2 <= D:
                continue
            u = t - b
            if u > 0 and u * u >= D:
                continue
            forms.append(QuadForm(a, b, -(n // a)))
            forms.append(QuadForm(-a, b, n // a))
        b += 2
    return forms


def form_cycles(D: int):
    """Reduced forms of discriminant D partitioned into rho-cycles."""
    forms = enumerate_reduced_forms(D)
    s = math.isqrt(D)
    seen = set()
    cycles = []
    for start in forms:
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        g = rho(start, D, s)
        while g != start:
            assert is_reduced(g, D), f"rho left the reduced set at {g}"
            cycle.append(g)
            seen.add(g)
            g = rho(g, D, s)
        cycles.append(cycle)
    assert len(seen) == len(forms)
    return cycles


# ---------------------------------------------------------------------------
# composition

def _transform(form: QuadForm, x: int, y: int, u: int, v: int) -> QuadForm:
    """Right action of the unimodular matrix [[x, u], [y, v]]."""
    a, b, c = form
    a2 = a * x * x + b * x * y + c * y * y
    b2 = 2 * a * x * u + b * (x * v + y * u) + 2 * c * y * v
    c2 = a * u * u + b * u * v + c * v * v
    return QuadForm(a2, b2, c2)


def _coprime_to(form: QuadForm, n: int, D: int) -> QuadForm:
    """Equivalent form whose leading coefficient is coprime to n.

    A primitive form is nonzero mod p at one of (1,0), (0,1), (1,1); gluing
    those choices over the primes of n by CRT always produces a usable
    point, so this terminates for every input.
    """
    a, b, c = form
    n = abs(n)
    if math.gcd(a, n) == 1:
        return form
    x, y, mod = 1, 0, 1
    for p in factorize(n):
        for xp, yp in ((1, 0), (0, 1), (1, 1)):
            if (a * xp * xp + b * xp * yp + c * yp * yp) % p:
                break
        else:
            raise AssertionError(f"{form} is imprimitive at {p}")
        if mod == 1:
            x, y, mod = xp, yp, p
        else:
            inv = pow(mod, -1, p)
            x += mod * (((xp - x) * inv) % p)
            y += mod * (((yp - y) * inv) % p)
            mod *= p
    g = math.gcd(x, y)
    x, y = x // g, y // g
    val = a * x * x + b * x * y + c * y * y
    assert val != 0 and math.gcd(val, n) == 1
    _, s, t = xgcd(x, y)
    # complete (x, y) to the unimodular matrix [[x, -t], [y, s]]
    out = _transform(form, x, y, -t, s)
    assert out.discriminant() == D and out.a == val
    return out


def compose(f1: QuadForm, f2: QuadForm, D: int) -> QuadForm:
    """Gauss composition of two forms of discriminant D, returned reduced."""
    f2 = _coprime_to(f2, f1.a, D)
    a1, b1, _ = f1
    a2, b2, _ = f2
    # B = b1 (mod 2 a1), B = b2 (mod 2 a2); solvable since gcd(a1, a2) = 1
    m2 = abs(a2)
    t = ((b2 - b1) // 2 * pow(a1 % m2, -1, m2)) % m2 if m2 > 1 else 0
    B = b1 + 2 * a1 * t
    A = a1 * a2
    C = (B * B - D) // (4 * A)
    return reduce_form(QuadForm(A, B, C), D)


def principal_form(D: int) -> QuadForm:
    b0 = D % 2
    return reduce_form(QuadForm(1, b0, (b0 * b0 - D) // 4), D)


# ---------------------------------------------------------------------------
# the narrow group

@dataclass
class NarrowClassGroup:
    """Narrow (strict) class group of a fundamental discriminant D > 0."""

    discriminant: int
    cycle_representatives: list
    elementary_divisors: list
    _cycle_of: dict = field(repr=False)
    _identity: int = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.cycle_representatives)

    def class_index(self, form: QuadForm) -> int:
        return self._cycle_of[reduce_form(form, self.discriminant)]

    def compose_classes(self, i: int, j: int) -> int:
        f = compose(self.cycle_representatives[i], self.cycle_representatives[j],
                    self.discriminant)
        return self._cycle_of[f]

    def identity_index(self) -> int:
        return self._identity

    def power_class(self, i: int, n: int) -> int:
        acc, base = self._identity, i
        while n:
            if n & 1:
                acc = self.compose_classes(acc, base)
            base = self.compose_classes(base, base)
            n >>= 1
        return acc

    def two_rank(self) -> int:
        return sum(1 for d in self.elementary_divisors if d % 2 == 0)


def _sylow_invariants(group: NarrowClassGroup, p: int, e_max: int):
    """Invariant factors of the p-Sylow subgroup, from torsion counts."""
    h = group.order
    identity = group.identity_index()
    lambdas = []
    prev_v = 0
    for k in range(1, e_max + 1):
        cnt = sum(1 for i in range(h) if group.power_class(i, p**k) == identity)
        v = 0
        while cnt % p == 0:
            cnt //= p
            v += 1
        assert cnt == 1, "torsion count is not a p-power"
        lambdas.append(v - prev_v)
        prev_v = v
        if v == e_max:
            break
    exps = [sum(1 for lam in lambdas if lam >= j) for j in range(1, lambdas[0] + 1)]
    assert sum(exps) == e_max
    return sorted(p**e for e in exps)


@lru_cache(maxsize=None)
def narrow_class_group(D: int) -> NarrowClassGroup:
    """Cycle representatives and elementary divisors of the narrow group."""
    _check_fundamental(D)
    cycles = form_cycles(D)
    reps = [cycle[0] for cycle in cycles]
    cycle_of = {}
    for i, cycle in enumerate(cycles):
        for f in cycle:
            cycle_of[f] = i
    group = NarrowClassGroup(
        discriminant=D,
        cycle_representatives=reps,
        elementary_divisors=[],
        _cycle_of=cycle_of,
        _identity=cycle_of[principal_form(D)],
    )
    per_prime = [_sylow_invariants(group, p, e) for p, e in factorize(group.order).items()]
    width = max((len(lst) for lst in per_prime), default=0)
    divisors = []
    for t in range(width):
        d = 1
        for lst in per_prime:
            pad = width - len(lst)
            if t >= pad:
                d *= lst[t - pad]
        divisors.append(d)
    group.elementary_divisors = divisors
    for lo, hi in zip(divisors, divisors[1:]):
        assert hi % lo == 0
    assert math.prod(divisors) == group.order
    return group


def _two_part(n: int) -> int:
    return n & -n


def h_plus(m: int) -> int:
    """Narrow class number of Q(sqrt(m)) for squarefree m > 1."""
    require_squarefree(m)
    D = m if m % 4 == 1 else 4 * m
    return len(form_cycles(D))


@lru_cache(maxsize=None)
def h2_wide(m: int) -> int:
    """2-part of the ordinary class number of Q(sqrt(m)).

    The narrow and wide class numbers differ exactly by the norm of the
    fundamental unit: h+ = 2h when the norm is +1, h+ = h when it is -1.
    """
    hp = h_plus(m)
    two = _two_part(hp)
    if fundamental_unit(m).norm == 1:
        assert two > 1, "norm +1 forces an even narrow class number"
        return two // 2
    return two


def narrow_two_sylow(m: int):
    """Elementary divisors of the 2-Sylow subgroup of the narrow group."""
    require_squarefree(m)
    D = m if m % 4 == 1 else 4 * m
    group = narrow_class_group(D)
    return sorted(_two_part(d) for d in group.elementary_divisors if d % 2 == 0)


@lru_cache(maxsize=None)
def cl2_invariants(m: int):
    """Elementary divisors of the wide 2-class group of Q(sqrt(m)).

    Valid only when a prime = 3 (mod 4) divides m: then the narrow 2-Sylow
    splits as Z/2 x (wide 2-Sylow) and dropping one factor of 2 is exact.
    """
    fac = require_squarefree(m)
    if not any(p % 4 == 3 for p in fac):
        raise RemarkInapplicable(f"no prime = 3 (mod 4) divides {m}")
    narrow = narrow_two_sylow(m)
    assert narrow and narrow[0] == 2, "narrow 2-Sylow must contain a Z/2 factor"
    wide = narrow[1:]
    assert math.prod(wide) == h2_wide(m)
    return wide
