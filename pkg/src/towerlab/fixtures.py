"""Reference dataset of 26 classified fields plus two rank-two examples.

Each row freezes the published invariants of one field k = Q(sqrt(d)),
d = 2*p1*p2*q: the unit indices (q1, q2, q3) of the three unramified
biquadratic extensions, the symbols alpha = (A/p1), s = (2q/p1)_4,
t1 = (p1/p2)_4, t2 = (p2/p1)_4, the 2-class numbers n = h2(k) and
n_i = h2(K_i), the opaque unit index q0 of the compositum, and the class
group c of the first Hilbert 2-class field.  Recomputing every derivable
column and checking the verdict against the 2-part of c is the primary
regression gate of this package.

Only c's 2-part participates in checks; q0 and the odd part of c are kept
as opaque reference data.
"""

from dataclasses import dataclass

from .classifier import CaseTag, HilbertCl2, classify
from .errors import FixtureMismatch


@dataclass(frozen=True)
class FixtureRow:
    d: int
    p1: int
    p2: int
    q: int
    case: CaseTag
    delta_kind: str
    q1: int
    q2: int
    q3: int
    alpha: int
    s: int
    t1: int
    t2: int
    n: int
    n1: int
    n2: int
    n3: int
    q0: int
    c: tuple

    def __post_init__(self):
        assert self.d == 2 * self.p1 * self.p2 * self.q

    def c_two_part(self) -> tuple:
        out = []
        for inv in self.c:
            two = inv & -inv
            if two > 1:
                out.append(two)
        return tuple(sorted(out))

    def expected_verdict(self) -> HilbertCl2:
        two = self.c_two_part()
        if len(two) >= 2:
            return HilbertCl2.RANK_AT_LEAST_2
        if two == (2,):
            return HilbertCl2.ORDER_2
        assert len(two) == 1 and two[0] >= 4
        return HilbertCl2.CYCLIC_NON_ELEMENTARY


_C1, _C2, _C3, _C4 = CaseTag.CASE1, CaseTag.CASE2, CaseTag.CASE3, CaseTag.CASE4

# columns: d, p1, p2, q, case, delta, q1, q2, q3, alpha, s, t1, t2,
#          n, n1, n2, n3, q0, c
_ROWS = [
    # case 1, x -+ 1 a square
    (38982, 73, 89, 3, _C1, "1", 2, 1, 2, -1, -1, 1, 1, 8, 8, 8, 16, 16, (4,)),
    (60006, 73, 137, 3, _C1, "1", 2, 1, 2, -1, -1, 1, 1, 8, 8, 8, 64, 16, (16,)),
    (298862, 73, 89, 23, _C1, "1", 2, 1, 2, -1, -1, 1, 1, 8, 8, 8, 16, 16, (12,)),
    # case 1, p1*(x -+ 1) a square
    (51798, 97, 89, 3, _C1, "p1", 2, 1, 2, -1, 1, 1, -1, 8, 8, 8, 8, 16, (2,)),
    (64862, 113, 41, 7, _C1, "p1", 2, 1, 2, -1, 1, 1, -1, 8, 8, 8, 8, 16, (6,)),
    (113734, 73, 41, 19, _C1, "p1", 2, 1, 2, 1, -1, -1, 1, 8, 8, 8, 8, 16, (6,)),
    # case 3, 2*p2*(x -+ 1) a square
    (17630, 41, 5, 43, _C3, "2p2", 2, 2, 2, 1, 1, 1, -1, 8, 8, 32, 8, 32, (8,)),
    (29614, 17, 13, 67, _C3, "2p2", 2, 2, 2, 1, -1, -1, 1, 8, 8, 16, 8, 32, (4,)),
    (34238, 17, 53, 19, _C3, "2p2", 2, 2, 1, 1, 1, -1, -1, 8, 8, 32, 8, 16, (8,)),
    (41830, 89, 5, 47, _C3, "2p2", 2, 2, 1, -1, -1, -1, -1, 16, 16, 32, 16, 16, (4,)),
    (59630, 89, 5, 67, _C3, "2p2", 2, 2, 1, -1, 1, -1, -1, 8, 8, 16, 8, 16, (4,)),
    (69782, 41, 37, 23, _C3, "2p2", 2, 2, 2, 1, -1, -1, 1, 8, 8, 16, 8, 32, (4,)),
    (91078, 113, 13, 31, _C3, "2p2", 2, 2, 2, -1, -1, 1, -1, 16, 16, 32, 16, 32, (12,)),
    # case 3, q*(x -+ 1) a square
    (9430, 41, 5, 23, _C3, "q", 2, 1, 2, 1, -1, 1, -1, 16, 16, 16, 16, 16, (2,)),
    (20774, 17, 13, 47, _C3, "q", 2, 1, 2, 1, -1, -1, 1, 8, 8, 8, 8, 16, (2,)),
    (94054, 41, 37, 31, _C3, "q", 2, 1, 2, 1, -1, -1, 1, 8, 8, 8, 8, 16, (2,)),
    (102638, 73, 37, 19, _C3, "q", 2, 1, 2, 1, -1, -1, 1, 8, 8, 8, 8, 16, (6,)),
    # case 4, p2*(x -+ 1) a square, cyclic side
    (84422, 17, 13, 191, _C4, "p2", 2, 2, 2, 1, -1, -1, 1, 8, 8, 16, 8, 32, (12,)),
    (113102, 97, 53, 11, _C4, "p2", 2, 1, 2, 1, 1, 1, -1, 8, 8, 16, 8, 16, (4,)),
    (123710, 89, 5, 139, _C4, "p2", 2, 1, 1, 1, 1, -1, -1, 8, 8, 16, 8, 16, (8,)),
    (139334, 233, 13, 23, _C4, "p2", 2, 1, 1, 1, 1, -1, -1, 8, 8, 16, 8, 16, (8,)),
    (159310, 89, 5, 179, _C4, "p2", 2, 1, 1, 1, 1, -1, -1, 8, 8, 32, 8, 16, (16,)),
    # case 4, p2*(x -+ 1) a square, order-2 side
    (45526, 17, 13, 103, _C4, "p2", 2, 1, 2, -1, -1, -1, 1, 8, 8, 8, 8, 16, (6,)),
    (53710, 41, 5, 131, _C4, "p2", 2, 1, 2, -1, 1, 1, -1, 8, 8, 8, 8, 16, (2,)),
    (56134, 17, 13, 127, _C4, "p2", 2, 1, 2, -1, 1, -1, 1, 16, 16, 16, 16, 16, (6,)),
    (63438, 97, 109, 3, _C4, "p2", 2, 1, 2, -1, 1, 1, -1, 8, 8, 8, 8, 16, (2,)),
]

FIXTURE_ROWS = tuple(
    FixtureRow(d=r[0], p1=r[1], p2=r[2], q=r[3], case=r[4], delta_kind=r[5],
               q1=r[6], q2=r[7], q3=r[8], alpha=r[9], s=r[10], t1=r[11],
               t2=r[12], n=r[13], n1=r[14], n2=r[15], n3=r[16], q0=r[17],
               c=r[18])
    for r in _ROWS
)


@dataclass(frozen=True)
class RankTwoExample:
    """Case-2 field whose first Hilbert 2-class field has 2-class group (2, 4)."""

    d: int
    p1: int
    p2: int
    q: int
    cl2_hilbert: tuple


RANK_TWO_EXAMPLES = (
    RankTwoExample(d=47158, p1=73, p2=17, q=19, cl2_hilbert=(2, 4)),
    RankTwoExample(d=59942, p1=17, p2=41, q=43, cl2_hilbert=(2, 4)),
)

_CHECKED_COLUMNS = ("q1", "q2", "q3", "alpha", "s", "t1", "t2",
                    "n", "n1", "n2", "n3")


def verify_row(row: FixtureRow) -> dict:
    """Recompute one row; returns {column: (expected, got)} for mismatches."""
    verdict = classify(row.p1, row.p2, row.q)
    mismatches = {}
    if (verdict.p1, verdict.p2) != (row.p1, row.p2):
        mismatches["roles"] = ((row.p1, row.p2), (verdict.p1, verdict.p2))
    if verdict.case != row.case:
        mismatches["case"] = (row.case.value, verdict.case.value)
        return mismatches
    e = verdict.evidence
    got = {
        "q1": e["unit_indices"][0],
        "q2": e["unit_indices"][1],
        "q3": e["unit_indices"][2],
        "alpha": e["symbols"]["alpha"],
        "s": e["symbols"]["s4"],
        "t1": e["symbols"]["t1"],
        "t2": e["symbols"]["t2"],
        "n": e["h2"]["n"],
        "n1": e["h2"]["n1"],
        "n2": e["h2"]["n2"],
        "n3": e["h2"]["n3"],
    }
    for col in _CHECKED_COLUMNS:
        if got[col] != getattr(row, col):
            mismatches[col] = (getattr(row, col), got[col])
    if e["delta"]["kind"] != row.delta_kind:
        mismatches["delta"] = (row.delta_kind, e["delta"]["kind"])
    if verdict.hilbert_cl2 != row.expected_verdict():
        mismatches["verdict"] = (row.expected_verdict().value,
                                 verdict.hilbert_cl2.value)
    if e["inconsistencies"]:
        mismatches["inconsistencies"] = ((), tuple(e["inconsistencies"]))
    return mismatches


def verify_fixtures(strict: bool = False):
    """Recompute every reference row; report per-row status.

    Returns a list of (label, mismatches) pairs.  With strict=True the first
    failing row raises FixtureMismatch instead.
    """
    report = []
    for row in FIXTURE_ROWS:
        mismatches = verify_row(row)
        if mismatches and strict:
            raise FixtureMismatch(f"d={row.d}: {mismatches}")
        report.append((f"d={row.d}", mismatches))
    for ex in RANK_TWO_EXAMPLES:
        verdict = classify(ex.p1, ex.p2, ex.q)
        mismatches = {}
        if verdict.d != ex.d:
            mismatches["d"] = (ex.d, verdict.d)
        if verdict.case != CaseTag.CASE2:
            mismatches["case"] = (CaseTag.CASE2.value, verdict.case.value)
        if verdict.hilbert_cl2 != HilbertCl2.RANK_AT_LEAST_2:
            mismatches["verdict"] = (HilbertCl2.RANK_AT_LEAST_2.value,
                                     verdict.hilbert_cl2.value)
        if mismatches and strict:
            raise FixtureMismatch(f"d={ex.d}: {mismatches}")
        report.append((f"d={ex.d}", mismatches))
    return report
