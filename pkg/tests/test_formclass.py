import math
import random

import pytest

from towerlab.errors import InvalidDiscriminant, RemarkInapplicable
from towerlab.formclass import (QuadForm, cl2_invariants, compose,
                                enumerate_reduced_forms, form_cycles, h2_wide,
                                h_plus, is_reduced, narrow_class_group,
                                narrow_two_sylow, principal_form, reduce_form)
from towerlab.ntheory import is_perfect_square, is_squarefree, sieve_primes
from towerlab.pell import fundamental_unit
from towerlab.redei import prime_discriminants


def fundamental_discriminants(limit, rng=None, count=None):
    out = []
    candidates = range(5, limit)
    if rng is not None:
        candidates = iter(lambda: rng.randrange(5, limit), None)
    for d in candidates:
        if d % 4 == 1 and is_squarefree(d) and not is_perfect_square(d):
            out.append(d)
        elif d % 4 == 0:
            m = d // 4
            if m % 4 in (2, 3) and is_squarefree(m):
                out.append(d)
        if count is not None and len(out) >= count:
            break
    return out


def test_cycle_counts():
    assert len(form_cycles(8)) == 1
    assert len(form_cycles(40)) == 2
    # D = 60 has prime discriminants 5, -3, -4, so the narrow group has
    # 2-rank 2 and exactly four classes
    assert len(form_cycles(60)) == 4


def test_enumeration_is_reduced_and_cycles_partition():
    for D in (8, 40, 60, 316, 145, 229):
        forms = enumerate_reduced_forms(D)
        assert forms, D
        for f in forms:
            assert f.discriminant() == D
            assert is_reduced(f, D)
        cycles = form_cycles(D)
        assert sum(len(c) for c in cycles) == len(forms)


def test_invalid_discriminants_rejected():
    for D in (7, -8, 16, 100, 0):
        with pytest.raises(InvalidDiscriminant):
            enumerate_reduced_forms(D)
    for D in (45, 48, 200):  # non-fundamental but valid form discriminants
        with pytest.raises(InvalidDiscriminant):
            narrow_class_group(D)


def test_group_axioms_small_discriminants():
    for D in fundamental_discriminants(400):
        g = narrow_class_group(D)
        h = g.order
        e = g.identity_index()
        table = [[g.compose_classes(i, j) for j in range(h)] for i in range(h)]
        for i in range(h):
            assert table[i][e] == table[e][i] == i
            for j in range(h):
                assert table[i][j] == table[j][i]
        # associativity, exhaustively for tiny groups
        if h <= 8:
            for i in range(h):
                for j in range(h):
                    for k in range(h):
                        assert table[table[i][j]][k] == table[i][table[j][k]]
        # inverse: (a, -b, c) composes to the identity
        for i, rep in enumerate(g.cycle_representatives):
            inv = QuadForm(rep.a, -rep.b, rep.c)
            assert g.class_index(compose(rep, inv, D)) == e


def test_narrow_group_examples():
    assert narrow_class_group(40).elementary_divisors == [2]
    assert narrow_class_group(60).elementary_divisors == [2, 2]
    g = narrow_class_group(155928)
    assert sorted(d & -d for d in g.elementary_divisors if d % 2 == 0) == [2, 2, 4]
    assert narrow_two_sylow(38982) == [2, 2, 4]


def test_h2_wide_examples():
    assert h2_wide(534) == 2
    assert h2_wide(438) == 4
    assert h2_wide(73) == 1
    assert h2_wide(6497) == 4


def test_cl2_invariants_examples():
    assert cl2_invariants(38982) == [2, 4]
    assert cl2_invariants(41830) == [2, 8]
    assert cl2_invariants(534) == [2]
    with pytest.raises(RemarkInapplicable):
        cl2_invariants(205)  # 5 * 41, no prime = 3 (mod 4)


def test_cl2_product_is_h2():
    rng = random.Random(55)
    done = 0
    while done < 40:
        m = rng.randrange(3, 20000)
        if not is_squarefree(m) or is_perfect_square(m):
            continue
        from towerlab.ntheory import factorize
        if not any(p % 4 == 3 for p in factorize(m)):
            continue
        assert math.prod(cl2_invariants(m)) == h2_wide(m)
        done += 1


def test_norm_sign_vs_principal_cycle():
    # the (-1)-form is principal exactly when the fundamental unit has
    # norm -1; ties the continued fraction to the form composition
    rng = random.Random(11)
    done = 0
    while done < 80:
        m = rng.randrange(3, 20000)
        if not is_squarefree(m) or is_perfect_square(m):
            continue
        D = m if m % 4 == 1 else 4 * m
        g = narrow_class_group(D)
        b0 = D % 2
        neg = QuadForm(-1, b0, (D - b0 * b0) // 4)
        principal_negative = g.class_index(neg) == g.identity_index()
        assert principal_negative == (fundamental_unit(m).norm == -1), m
        done += 1


def test_genus_two_rank_sample():
    rng = random.Random(66)
    for D in fundamental_discriminants(10**6, rng=rng, count=40):
        g = narrow_class_group(D)
        m = D if D % 4 == 1 else D // 4
        assert g.two_rank() == len(prime_discriminants(m).entries) - 1, D


def test_reduce_form_reaches_enumerated_set():
    for D in (40, 60, 316, 155928):
        forms = set(enumerate_reduced_forms(D))
        f = principal_form(D)
        assert f in forms
        big = QuadForm(1, D % 2, ((D % 2) - D) // 4)
        assert reduce_form(big, D) in forms


def test_h_plus_matches_group_order():
    for m in (10, 15, 34, 438, 534):
        D = m if m % 4 == 1 else 4 * m
        assert h_plus(m) == narrow_class_group(D).order
