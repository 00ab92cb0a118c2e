import pytest

from towerlab.errors import DeltaNotInLemmaSet, NoDeltaSetForCase2
from towerlab.pell import SquareClassPair, fundamental_unit, square_class_pair
from towerlab.units import (DeltaResolution, FsuDescriptor, delta_set,
                            delta_value, resolve_delta, scholz_norm_check,
                            unit_indices, z_condition)


def test_delta_sets():
    assert delta_set(1) == ("1", "p1", "2p1")
    assert delta_set(3) == ("2p1", "2p2", "q")
    assert delta_set(4) == ("2p1", "p2", "2q")
    with pytest.raises(NoDeltaSetForCase2):
        delta_set(2)


def test_resolve_delta_on_reference_fields():
    # 38982 = 2*73*89*3: x - 1 is a square
    d = resolve_delta(1, square_class_pair(38982), 73, 89, 3)
    assert (d.kind, d.value) == ("1", 1)
    # 17630 = 2*41*5*43: 2*p2*(x -+ 1) is a square
    d = resolve_delta(3, square_class_pair(17630), 41, 5, 43)
    assert (d.kind, d.value) == ("2p2", 10)
    # 113102 = 2*97*53*11: p2*(x -+ 1) is a square
    d = resolve_delta(4, square_class_pair(113102), 97, 53, 11)
    assert (d.kind, d.value) == ("p2", 53)
    # 51798 = 2*97*89*3: p1*(x -+ 1) is a square
    d = resolve_delta(1, square_class_pair(51798), 97, 89, 3)
    assert (d.kind, d.value) == ("p1", 97)


def test_resolve_delta_rejects_foreign_class():
    pair = SquareClassPair(f_minus=3, f_plus=2 * 73 * 89)
    with pytest.raises(DeltaNotInLemmaSet):
        resolve_delta(1, pair, 73, 89, 3)


def test_z_condition_checks_both_signs():
    # multiplier q = 23 matching either side of the pair must count
    assert z_condition(3, "q", SquareClassPair(23, 2 * 41), 41, 5, 23) is True
    assert z_condition(3, "q", SquareClassPair(2, 41 * 23), 41, 5, 23) is False
    # case 3 with delta = 2p2 has no z test at all
    assert z_condition(3, "2p2", SquareClassPair(1, 2 * 41 * 23), 41, 5, 23) is None
    # case 4 with delta = p2 tests the bare z -+ 1
    assert z_condition(4, "p2", SquareClassPair(1, 2 * 41 * 23), 41, 53, 23) is True


_ZMULT = {
    (1, "1"): "1", (1, "p1"): "p1", (1, "2p1"): "2p1",
    (3, "2p1"): "2p1", (3, "2p2"): None, (3, "q"): "q",
    (4, "2p1"): "2p1", (4, "p2"): "1", (4, "2q"): "2q",
}


def _mk(case, kind, z_square, norm, p1=73, p2=89, q=3):
    """unit_indices with a synthetic z pair forcing the wanted z outcome."""
    delta = DeltaResolution(kind=kind, value=delta_value(kind, p1, p2, q), sign=1)
    mult = _ZMULT[(case, kind)]
    if mult is not None and z_square:
        f_minus = delta_value(mult, p1, p2, q)
    else:
        f_minus = 2  # never a z multiplier
    z_pair = SquareClassPair(f_minus, p1 * q)
    return unit_indices(case, delta, z_pair, norm, p1, p2, q)


def test_unit_indices_reference_rows():
    # d = 38982: case 1, delta 1, z classes exclude 1 -> (2, 1, 2)
    idx = unit_indices(1, DeltaResolution("1", 1, -1),
                       square_class_pair(2 * 73 * 3), 1, 73, 89, 3)
    assert (idx.q1, idx.q2, idx.q3) == (2, 1, 2)

    # d = 17630: case 3, delta 2p2, norm +1 -> (2, 2, 2)
    norm = fundamental_unit(41 * 5).norm
    assert norm == 1
    idx = unit_indices(3, DeltaResolution("2p2", 10, 1),
                       square_class_pair(2 * 41 * 43), norm, 41, 5, 43)
    assert (idx.q1, idx.q2, idx.q3) == (2, 2, 2)

    # d = 34238: case 3, delta 2p2, norm -1 -> (2, 2, 1)
    norm = fundamental_unit(17 * 53).norm
    assert norm == -1
    idx = unit_indices(3, DeltaResolution("2p2", 106, 1),
                       square_class_pair(2 * 17 * 19), norm, 17, 53, 19)
    assert (idx.q1, idx.q2, idx.q3) == (2, 2, 1)


def test_k1_always_carries_a_root():
    for case in (1, 3, 4):
        for kind in delta_set(case):
            for z_square in (True, False):
                for norm in (1, -1):
                    idx = _mk(case, kind, z_square, norm)
                    assert idx.q1 == 2
                    assert idx.q2 in (1, 2) and idx.q3 in (1, 2)
                    for desc in idx.fsu:
                        roots = sum(1 for g in desc.generators
                                    if g.startswith("sqrt("))
                        assert roots <= 1


def test_unconditional_subcases():
    # case 3, delta 2p2: K2 keeps a root regardless of z
    for z_square in (True, False):
        idx = _mk(3, "2p2", z_square, 1)
        assert idx.q2 == 2
    # case 1, delta 1 and case 3, delta q and case 4, delta 2q: K3 root
    assert _mk(1, "1", False, -1).q3 == 2
    assert _mk(3, "q", False, -1).q3 == 2
    assert _mk(4, "2q", False, -1).q3 == 2
    # norm-dependent K3 sub-cases
    assert _mk(1, "p1", False, 1).q3 == 2
    assert _mk(1, "p1", False, -1).q3 == 1
    assert _mk(4, "p2", False, -1).q3 == 1


def test_fsu_shapes():
    idx = _mk(1, "2p1", True, 1)
    assert idx.fsu[0].generators == ("e_p1", "e_2p2q", "sqrt(e_2p1p2q)")
    assert idx.fsu[1].generators == ("e_p2", "e_2p1q", "sqrt(e_2p1q*e_2p1p2q)")
    assert idx.fsu[2].generators == ("e_2q", "e_p1p2", "sqrt(e_p1p2*e_2p1p2q)")
    idx = _mk(4, "p2", False, 1)
    assert idx.fsu[2].generators == ("e_2q", "e_p1p2", "sqrt(e_2q*e_p1p2*e_2p1p2q)")


def test_scholz_examples():
    assert scholz_norm_check(1, -1, 1, 2) is True
    assert scholz_norm_check(1, 1, 1, 4) is True
    assert scholz_norm_check(1, -1, -1, 2) is False
