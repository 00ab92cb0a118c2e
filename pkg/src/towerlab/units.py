"""Fundamental systems of units of the three biquadratic extensions.

K1 = Q(sqrt(p1), sqrt(2*p2*q)), K2 = Q(sqrt(p2), sqrt(2*p1*q)) and
K3 = Q(sqrt(2q), sqrt(p1*p2)).  The FSUs are symbolic: the unit index q_i of
K_i is 2 exactly when the listed system carries a square root, and that is
all the classifier consumes.  No unit arithmetic happens in the quartic
fields themselves.

Tokens range over the fundamental units of the seven quadratic subfields,
written e_p1, e_p2, e_2q, e_p1p2, e_2p1q, e_2p2q, e_2p1p2q.
"""

from dataclasses import dataclass

from .errors import DeltaNotInLemmaSet, LemmaSubcaseMissing, NoDeltaSetForCase2
from .pell import SquareClassPair

DELTA_SETS = {
    1: ("1", "p1", "2p1"),
    3: ("2p1", "2p2", "q"),
    4: ("2p1", "p2", "2q"),
}

# multiplier applied to z -+ 1 in each sub-case; None means no z condition
_Z_TEST = {
    (1, "1"): "1",
    (1, "p1"): "p1",
    (1, "2p1"): "2p1",
    (3, "2p1"): "2p1",
    (3, "2p2"): None,
    (3, "q"): "q",
    (4, "2p1"): "2p1",
    (4, "p2"): "1",
    (4, "2q"): "2q",
}


@dataclass(frozen=True)
class FsuDescriptor:
    """Three symbolic generators; at most one carries a square root."""

    generators: tuple

    def __post_init__(self):
        roots = sum(1 for g in self.generators if g.startswith("sqrt("))
        assert len(self.generators) == 3 and roots <= 1

    @property
    def q_index(self) -> int:
        return 2 if any(g.startswith("sqrt(") for g in self.generators) else 1


@dataclass(frozen=True)
class UnitIndices:
    q1: int
    q2: int
    q3: int
    fsu: tuple

    def __post_init__(self):
        for q, desc in zip((self.q1, self.q2, self.q3), self.fsu):
            assert q == desc.q_index


def delta_set(case: int):
    """The candidate square classes of x -+ 1 for the given case."""
    if case == 2:
        raise NoDeltaSetForCase2("case 2 has no unit-index lemma")
    try:
        return DELTA_SETS[case]
    except KeyError:
        raise ValueError(f"no delta set for case {case}") from None


def delta_value(kind: str, p1: int, p2: int, q: int) -> int:
    return {
        "1": 1,
        "p1": p1,
        "2p1": 2 * p1,
        "p2": p2,
        "2p2": 2 * p2,
        "q": q,
        "2q": 2 * q,
    }[kind]


@dataclass(frozen=True)
class DeltaResolution:
    kind: str
    value: int
    sign: int  # delta * (x + sign) is the perfect square

    def __post_init__(self):
        assert self.sign in (-1, 1)


def resolve_delta(case: int, pair: SquareClassPair, p1: int, p2: int, q: int) -> DeltaResolution:
    """Identify which member of the delta set matches the square class of x -+ 1."""
    kinds = delta_set(case)
    hits = []
    for kind in kinds:
        value = delta_value(kind, p1, p2, q)
        if value == pair.f_minus:
            hits.append(DeltaResolution(kind=kind, value=value, sign=-1))
        if value == pair.f_plus:
            hits.append(DeltaResolution(kind=kind, value=value, sign=1))
    if not hits:
        raise DeltaNotInLemmaSet(
            f"square classes {pair.members()} avoid the case-{case} set {kinds}"
        )
    assert len(hits) == 1, "delta sets never contain two complementary classes"
    return hits[0]


def z_condition(case: int, delta_kind: str, z_pair: SquareClassPair,
                p1: int, p2: int, q: int):
    """Whether the sub-case's multiple of z -+ 1 is a perfect square; None if no test."""
    mult = _Z_TEST[(case, delta_kind)]
    if mult is None:
        return None
    return delta_value(mult, p1, p2, q) in z_pair.members()


def _k1_fsu(case: int, delta_kind: str) -> FsuDescriptor:
    if (case, delta_kind) in ((1, "2p1"), (3, "2p1"), (4, "2p1")):
        root = "sqrt(e_2p1p2q)"
    else:
        root = "sqrt(e_2p2q*e_2p1p2q)"
    return FsuDescriptor(generators=("e_p1", "e_2p2q", root))


def _k2_fsu(case: int, delta_kind: str, z_square) -> FsuDescriptor:
    if (case, delta_kind) == (3, "2p2"):
        return FsuDescriptor(generators=("e_p2", "e_2p1q", "sqrt(e_2p1p2q)"))
    if z_square:
        return FsuDescriptor(generators=("e_p2", "e_2p1q", "sqrt(e_2p1q*e_2p1p2q)"))
    return FsuDescriptor(generators=("e_p2", "e_2p1q", "e_2p1p2q"))


def _k3_fsu(case: int, delta_kind: str, norm_p1p2: int) -> FsuDescriptor:
    key = (case, delta_kind)
    if key == (1, "1"):
        return FsuDescriptor(generators=("e_2q", "e_p1p2", "sqrt(e_2q*e_2p1p2q)"))
    if key == (3, "q"):
        return FsuDescriptor(generators=("e_2q", "e_p1p2", "sqrt(e_2p1p2q)"))
    if key == (4, "2q"):
        return FsuDescriptor(generators=("e_2q", "e_p1p2", "sqrt(e_2q*e_2p1p2q)"))
    if norm_p1p2 not in (1, -1):
        raise LemmaSubcaseMissing(f"sub-case {key} needs the norm of e_p1p2")
    if norm_p1p2 == -1:
        return FsuDescriptor(generators=("e_2q", "e_p1p2", "e_2p1p2q"))
    if key in ((1, "p1"), (4, "p2")):
        return FsuDescriptor(generators=("e_2q", "e_p1p2", "sqrt(e_2q*e_p1p2*e_2p1p2q)"))
    if key in ((1, "2p1"), (3, "2p1"), (3, "2p2"), (4, "2p1")):
        return FsuDescriptor(generators=("e_2q", "e_p1p2", "sqrt(e_p1p2*e_2p1p2q)"))
    raise LemmaSubcaseMissing(f"no K3 sub-case for {key}")


def unit_indices(case: int, delta: DeltaResolution, z_pair: SquareClassPair,
                 norm_p1p2: int, p1: int, p2: int, q: int) -> UnitIndices:
    """Unit indices (q1, q2, q3) read off the lemma sub-case for this delta."""
    if case not in DELTA_SETS:
        raise NoDeltaSetForCase2(f"no unit-index lemma for case {case}")
    if delta.kind not in DELTA_SETS[case]:
        raise DeltaNotInLemmaSet(f"delta {delta.kind} not in the case-{case} set")
    z_square = z_condition(case, delta.kind, z_pair, p1, p2, q)
    k1 = _k1_fsu(case, delta.kind)
    k2 = _k2_fsu(case, delta.kind, z_square)
    k3 = _k3_fsu(case, delta.kind, norm_p1p2)
    assert k1.q_index == 2, "every K1 system carries a root"
    return UnitIndices(q1=k1.q_index, q2=k2.q_index, q3=k3.q_index, fsu=(k1, k2, k3))


def scholz_norm_check(t1: int, t2: int, norm_p1p2: int, h2_p1p2: int) -> bool:
    """Consistency of the quartic symbols with the norm and 2-class number.

    For (p1/p2) = +1 the equivalence t1 != t2  <=>  N(e_p1p2) = +1 and
    h2(p1*p2) = 2 must hold; a False return flags inconsistent inputs.
    """
    return (t1 != t2) == (norm_p1p2 == 1 and h2_p1p2 == 2)
