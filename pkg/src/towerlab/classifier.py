"""Decision pipeline for k = Q(sqrt(2*p1*p2*q)).

Dispatches a triple to its symbol case, determines the structure type of the
Galois group G of the second Hilbert 2-class field over k, and, when G is
not metacyclic, the cyclicity verdict for the 2-class group of the first
Hilbert 2-class field.  Every verdict carries an evidence record with the
cross-checks that back it.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

from . import formclass, redei, units
from .errors import CriteriaInputMissing, InvalidTriple, NonIntegralClassNumber
from .kaplan import SymbolProfile, symbol_profile
from .ntheory import is_perfect_square, is_prime, legendre_symbol
from .pell import fundamental_unit, pell_xy, square_class_pair
from .units import DeltaResolution, z_condition


class CaseTag(str, Enum):
    TYPE_22 = "TypeTwoTwo"
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    CASE4 = "Case4"
    METACYCLIC = "Metacyclic"
    FOUR_RANK_2 = "FourRankTwo"


class GType(str, Enum):
    ABELIAN = "Abelian"
    MODULAR = "Modular"
    METACYCLIC_NAM = "MetacyclicNonAbelianNonModular"
    NON_METACYCLIC = "NonMetacyclic"
    OUT_OF_SCOPE = "OutOfScope"


class HilbertCl2(str, Enum):
    ORDER_2 = "Order2"
    CYCLIC_NON_ELEMENTARY = "CyclicNonElementary"
    RANK_AT_LEAST_2 = "RankAtLeastTwo"
    OUT_OF_SCOPE = "OutOfScope"


_CASE_NUMBER = {CaseTag.CASE1: 1, CaseTag.CASE3: 3, CaseTag.CASE4: 4}


@dataclass(frozen=True)
class PrimeTriple:
    """Validated (p1, p2, q): p1 = p2 = 1 (mod 4), q = 3 (mod 4), distinct primes."""

    p1: int
    p2: int
    q: int

    def __post_init__(self):
        for p in (self.p1, self.p2):
            if p % 4 != 1 or not is_prime(p):
                raise InvalidTriple(f"{p} is not a prime = 1 (mod 4)")
        if self.q % 4 != 3 or not is_prime(self.q):
            raise InvalidTriple(f"{self.q} is not a prime = 3 (mod 4)")
        if self.p1 == self.p2:
            raise InvalidTriple("p1 and p2 must be distinct")

    @property
    def m(self) -> int:
        return 2 * self.p1 * self.p2 * self.q

    @property
    def d(self) -> int:
        return self.m

    @classmethod
    def normalized(cls, p1: int, p2: int, q: int) -> "PrimeTriple":
        """Swap p1 and p2 so the asymmetric case conditions land on p1.

        Preference order: (2/p1) = +1 when the two symbols differ, then
        (q/p1) = +1 when those differ.
        """
        t = cls(p1=p1, p2=p2, q=q)
        a1, a2 = legendre_symbol(2, p1), legendre_symbol(2, p2)
        if a1 != a2:
            return t if a1 == 1 else cls(p1=p2, p2=p1, q=q)
        u1, u2 = legendre_symbol(q, p1), legendre_symbol(q, p2)
        if u1 != u2:
            return t if u1 == 1 else cls(p1=p2, p2=p1, q=q)
        return t

    @classmethod
    def from_d(cls, d: int) -> "PrimeTriple":
        """Parse d = 2*p1*p2*q; raises InvalidTriple on any other shape."""
        if d <= 0 or d % 2 != 0 or d % 4 == 0:
            raise InvalidTriple(f"{d} is not twice an odd number")
        rest = d // 2
        factors = []
        f = 3
        n = rest
        while f * f <= n:
            if n % f == 0:
                factors.append(f)
                n //= f
                if n % f == 0:
                    raise InvalidTriple(f"{d} is not squarefree")
            else:
                f += 2
        if n > 1:
            factors.append(n)
        if len(factors) != 3:
            raise InvalidTriple(f"{d} does not factor as 2*p1*p2*q")
        ones = sorted(p for p in factors if p % 4 == 1)
        threes = [p for p in factors if p % 4 == 3]
        if len(ones) != 2 or len(threes) != 1:
            raise InvalidTriple(f"{d} has the wrong congruence pattern")
        return cls.normalized(ones[0], ones[1], threes[0])


@dataclass(frozen=True)
class RankProfile:
    r1: int
    r2: int
    r3: int


def case_of(profile: SymbolProfile) -> CaseTag:
    """Symbol-based case dispatch; total over valid triples.

    The profile may come from either role order; the tag itself is
    order-invariant, only the quartic layer cares about normalization.
    """
    a, b = profile.leg_2p1, profile.leg_2p2
    c = profile.leg_p1p2
    u, v = profile.leg_qp1, profile.leg_qp2
    if any(s not in (1, -1) for s in (a, b, c, u, v)):
        raise UnclassifiableProfile(f"symbols must be +-1, got {(a, b, c, u, v)}")
    if (a, b) == (-1, 1) or (a == b and (u, v) == (-1, 1)):
        a, b, u, v = b, a, v, u
    if a == b == c == u == v == 1:
        return CaseTag.FOUR_RANK_2
    if a == b == u == v == -1:
        return CaseTag.METACYCLIC
    if (a, b, c) == (1, 1, 1) and (u, v) == (1, -1):
        return CaseTag.CASE1
    if (a, b, c) == (1, 1, -1) and (u, v) == (1, 1):
        return CaseTag.CASE2
    if (a, b, c) == (1, -1, 1) and u == 1:
        return CaseTag.CASE3 if v == -1 else CaseTag.CASE4
    return CaseTag.TYPE_22


def is_type_22_profile(profile: SymbolProfile) -> bool:
    """Literal type-(2,2) conditions, kept independent of case_of for tests."""
    a, b = profile.leg_2p1, profile.leg_2p2
    c = profile.leg_p1p2
    u, v = profile.leg_qp1, profile.leg_qp2
    not_all_equal = len({a, b, u, v}) > 1
    if c == 1:
        return (a == -1 or u == -1) and (b == -1 or v == -1) and not_all_equal
    return not_all_equal


_KURODA_SUBFIELDS = {
    1: lambda p1, p2, q: (p1, 2 * p2 * q, 2 * p1 * p2 * q),
    2: lambda p1, p2, q: (p2, 2 * p1 * q, 2 * p1 * p2 * q),
    3: lambda p1, p2, q: (2 * q, p1 * p2, 2 * p1 * p2 * q),
}


def kuroda_h2(i: int, q_i: int, p1: int, p2: int, q: int) -> int:
    """2-class number of K_i: (1/4) * q_i * product of the subfield 2-class numbers."""
    assert i in (1, 2, 3) and q_i in (1, 2)
    num = q_i
    for radicand in _KURODA_SUBFIELDS[i](p1, p2, q):
        num *= formclass.h2_wide(radicand)
    if num % 4 != 0:
        raise NonIntegralClassNumber(f"K_{i} class number q={q_i}: {num}/4")
    h2 = num // 4
    if h2 & (h2 - 1):
        raise NonIntegralClassNumber(f"K_{i} 2-class number {h2} is not a 2-power")
    return h2


def cyclicity_from_class_numbers(n: int, n1: int, n2: int, n3: int) -> str:
    """Cyclicity read off the 2-class numbers of k and the three K_i.

    Non-elementary cyclic exactly when one K has 2-class number >= 2n and
    the other two equal n.
    """
    values = (n1, n2, n3)
    for i in range(3):
        rest = [values[j] for j in range(3) if j != i]
        if values[i] >= 2 * n and rest[0] == rest[1] == n:
            return "CyclicNonElementary"
    return "NotNonElementaryCyclic"


def metacyclic_type(profile: SymbolProfile, triple: PrimeTriple) -> GType:
    """Structure type of G assuming the 2-class group of k is (2, 2^n), n >= 2.

    G is metacyclic exactly when all of (q/p1), (q/p2), (2/p1), (2/p2) are
    -1; then (p1/p2) = +1 gives the non-abelian non-modular type, and for
    (p1/p2) = -1 the group is modular or abelian according as
    2*p1*p2*(x+1) is a perfect square or not.
    """
    if not (profile.leg_2p1 == profile.leg_2p2 == profile.leg_qp1
            == profile.leg_qp2 == -1):
        return GType.NON_METACYCLIC
    if profile.leg_p1p2 == 1:
        return GType.METACYCLIC_NAM
    x, _ = pell_xy(triple.m)
    if is_perfect_square(2 * triple.p1 * triple.p2 * (x + 1)):
        return GType.MODULAR
    return GType.ABELIAN


def rank_profile(case: CaseTag, leg_p1p2: int | None = None):
    """Ranks of the 2-class groups of (K1, K2, K3) for the given case."""
    if case == CaseTag.FOUR_RANK_2:
        return RankProfile(3, 3, 3)
    if case in (CaseTag.CASE1, CaseTag.CASE3, CaseTag.CASE4):
        return RankProfile(3, 2, 2)
    if case == CaseTag.CASE2:
        return RankProfile(2, 2, 3)
    if case == CaseTag.METACYCLIC:
        if leg_p1p2 is None:
            raise ValueError("metacyclic rank profile needs (p1/p2)")
        return RankProfile(2, 2, 2) if leg_p1p2 == 1 else RankProfile(1, 1, 2)
    return None


def hilbert_cl2_verdict(case: CaseTag, *, delta: DeltaResolution | None = None,
                        z_pair=None, alpha=None, s4=None, t1=None, t2=None,
                        triple: PrimeTriple | None = None) -> HilbertCl2:
    """Verdict on Cl2 of the first Hilbert 2-class field for cases 1 to 4."""
    if case == CaseTag.CASE2:
        return HilbertCl2.RANK_AT_LEAST_2
    if case not in _CASE_NUMBER:
        raise CriteriaInputMissing(f"no criteria apply to {case.value}")
    if None in (delta, z_pair, alpha, s4, t1, t2, triple):
        raise CriteriaInputMissing(f"{case.value} verdict is missing inputs")
    num = _CASE_NUMBER[case]
    p1, p2, q = triple.p1, triple.p2, triple.q
    z_sq = z_condition(num, delta.kind, z_pair, p1, p2, q)
    quartic_neg = alpha == -1 or s4 == -1

    if num == 1:
        z_fails = z_sq is False
        order2 = z_fails and quartic_neg and t1 != t2
        head_i = z_fails and quartic_neg
        tail_i = t1 == t2 if delta.kind == "1" else t1 == t2 == 1
        head_ii = (z_sq is True) or (alpha == 1 and s4 == 1)
        tail_ii = t1 != t2 if delta.kind == "1" else (t1 == -1 or t2 == -1)
    elif num == 3:
        z_fails = delta.kind != "2p2" and z_sq is False
        order2 = z_fails and quartic_neg and t1 != t2
        head_i = z_fails and quartic_neg
        tail_i = t1 == t2 if delta.kind == "q" else t1 == t2 == 1
        head_ii = delta.kind == "2p2" or (z_sq is True) or (alpha == 1 and s4 == 1)
        tail_ii = t1 != t2 if delta.kind == "q" else (t1 == -1 or t2 == -1)
    else:
        # delta = p2 tests plain z -+ 1, other deltas test delta * (z -+ 1);
        # z_condition already encodes that replacement
        z_fails = z_sq is False
        order2 = z_fails and quartic_neg and t1 != t2
        head_i = z_fails and quartic_neg
        tail_i = t1 == t2 if delta.kind == "2q" else t1 == t2 == 1
        head_ii = (z_sq is True) or (alpha == 1 and s4 == 1)
        tail_ii = t1 != t2 if delta.kind == "2q" else (t1 == -1 or t2 == -1)

    if order2:
        return HilbertCl2.ORDER_2
    if (head_i and tail_i) or (head_ii and tail_ii):
        return HilbertCl2.CYCLIC_NON_ELEMENTARY
    return HilbertCl2.RANK_AT_LEAST_2


@dataclass
class ClassificationVerdict:
    p1: int
    p2: int
    q: int
    d: int
    case: CaseTag
    cl2_k: list
    g_type: GType
    hilbert_cl2: HilbertCl2
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "p1": self.p1,
            "p2": self.p2,
            "q": self.q,
            "case": self.case.value,
            "cl2_k": list(self.cl2_k),
            "g_type": self.g_type.value,
            "hilbert_cl2": self.hilbert_cl2.value,
            "evidence": self.evidence,
        }


def _profile_dict(profile: SymbolProfile) -> dict:
    return {
        "leg_2p1": profile.leg_2p1,
        "leg_2p2": profile.leg_2p2,
        "leg_p1p2": profile.leg_p1p2,
        "leg_qp1": profile.leg_qp1,
        "leg_qp2": profile.leg_qp2,
        "t1": profile.t1,
        "t2": profile.t2,
        "s4": profile.s4,
        "alpha": profile.alpha,
    }


def classify(p1: int, p2: int, q: int) -> ClassificationVerdict:
    """Full pipeline for one triple; never silently patches an inconsistency."""
    triple = PrimeTriple.normalized(p1, p2, q)
    profile = symbol_profile(triple.p1, triple.p2, triple.q)
    case = case_of(profile)
    inconsistencies = []
    checks = {}

    fr = redei.four_rank(triple.m, wide=True)
    expected_fr = {CaseTag.TYPE_22: 0, CaseTag.FOUR_RANK_2: 2}.get(case, 1)
    checks["four_rank_matches_case"] = fr == expected_fr
    if fr != expected_fr:
        inconsistencies.append(f"four_rank={fr} but case={case.value}")

    cl2_k = list(formclass.cl2_invariants(triple.m))
    n = math.prod(cl2_k)
    evidence = {
        "symbols": _profile_dict(profile),
        "four_rank": fr,
        "h2": {"n": n},
        "checks": checks,
        "inconsistencies": inconsistencies,
    }

    if case in (CaseTag.TYPE_22, CaseTag.FOUR_RANK_2):
        g_type = GType.OUT_OF_SCOPE
        hilbert = HilbertCl2.OUT_OF_SCOPE
        evidence["note"] = "criteria assume a 2-class group of type (2, 2^n), n >= 2"
    elif case == CaseTag.METACYCLIC:
        g_type = metacyclic_type(profile, triple)
        hilbert = HilbertCl2.OUT_OF_SCOPE
        if profile.leg_p1p2 == -1:
            x, _ = pell_xy(triple.m)
            evidence["modular_square_test"] = is_perfect_square(
                2 * triple.p1 * triple.p2 * (x + 1))
        evidence["note"] = ("metacyclic G has a cyclic commutator subgroup; "
                            "the non-metacyclic criteria do not apply")
        rp = rank_profile(case, profile.leg_p1p2)
        evidence["rank_cl2_K"] = [rp.r1, rp.r2, rp.r3]
    elif case == CaseTag.CASE2:
        g_type = GType.NON_METACYCLIC
        hilbert = hilbert_cl2_verdict(case)
        rp = rank_profile(case)
        evidence["rank_cl2_K"] = [rp.r1, rp.r2, rp.r3]
    else:
        g_type = GType.NON_METACYCLIC
        num = _CASE_NUMBER[case]
        x_pair = square_class_pair(triple.m)
        delta = units.resolve_delta(num, x_pair, triple.p1, triple.p2, triple.q)
        z_pair = square_class_pair(2 * triple.p1 * triple.q)
        norm_p1p2 = fundamental_unit(triple.p1 * triple.p2).norm
        idx = units.unit_indices(num, delta, z_pair, norm_p1p2,
                                 triple.p1, triple.p2, triple.q)
        n_i = [kuroda_h2(i, qi, triple.p1, triple.p2, triple.q)
               for i, qi in ((1, idx.q1), (2, idx.q2), (3, idx.q3))]
        hilbert = hilbert_cl2_verdict(
            case, delta=delta, z_pair=z_pair, alpha=profile.alpha,
            s4=profile.s4, t1=profile.t1, t2=profile.t2, triple=triple)

        evidence["x_square_classes"] = list(x_pair.members())
        evidence["z_square_classes"] = list(z_pair.members())
        evidence["delta"] = {"kind": delta.kind, "value": delta.value,
                             "sign": delta.sign}
        evidence["norm_p1p2"] = norm_p1p2
        evidence["unit_indices"] = [idx.q1, idx.q2, idx.q3]
        evidence["fsu"] = [list(desc.generators) for desc in idx.fsu]
        evidence["h2"].update({"n1": n_i[0], "n2": n_i[1], "n3": n_i[2]})
        rp = rank_profile(case)
        evidence["rank_cl2_K"] = [rp.r1, rp.r2, rp.r3]

        cyc = cyclicity_from_class_numbers(n, *n_i)
        evidence["class_number_cyclicity"] = cyc
        agree = (hilbert == HilbertCl2.CYCLIC_NON_ELEMENTARY) == (
            cyc == "CyclicNonElementary")
        checks["criteria_match_class_numbers"] = agree
        if not agree:
            inconsistencies.append(
                f"criteria verdict {hilbert.value} vs class-number test {cyc}")

        if hilbert == HilbertCl2.ORDER_2:
            flat = n_i[0] == n_i[1] == n_i[2] == n
            checks["order2_forces_equal_class_numbers"] = flat
            if not flat:
                inconsistencies.append("order-2 verdict with unequal h2(K_i)")
            two_roots = sum(1 for qi in (idx.q1, idx.q2, idx.q3) if qi == 2) >= 2
            checks["order2_unit_index_pattern"] = two_roots
            if not two_roots:
                inconsistencies.append("order-2 verdict needs two unit indices = 2")

        if profile.t1 is not None:
            ok = units.scholz_norm_check(
                profile.t1, profile.t2, norm_p1p2,
                formclass.h2_wide(triple.p1 * triple.p2))
            checks["quartic_norm_consistency"] = ok
            if not ok:
                inconsistencies.append("quartic symbols inconsistent with unit norm")

    return ClassificationVerdict(
        p1=triple.p1, p2=triple.p2, q=triple.q, d=triple.d,
        case=case, cl2_k=cl2_k, g_type=g_type, hilbert_cl2=hilbert,
        evidence=evidence,
    )


def classify_d(d: int) -> ClassificationVerdict:
    t = PrimeTriple.from_d(d)
    return classify(t.p1, t.p2, t.q)
