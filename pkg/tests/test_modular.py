import random
from fractions import Fraction

import pytest

from endoperm import oracle
from endoperm.modular import (DecompositionMatrixE, InertFieldError,
                              LiftValidationError, SqrtConvention,
                              _sqrt_mod, basic_set, cartan_from_decomposition,
                              cartan_from_regular, correspond_projectives,
                              decomposition_matrix, is_local,
                              permutation_verdict, projective_columns,
                              reduce_table, reduce_value)
from endoperm.permgrp import GeneratedGroup, Permutation
from endoperm.quadfield import QuadraticNumber
from endoperm.schur import IntersectionMatrix
from endoperm.splitchar import build_table


def table_for(Ggens, point=0):
    G = GeneratedGroup(Ggens)
    G.build_chain()
    H = G.stabilizer(point)
    act = oracle.coset_action(G, H)
    basis = oracle.commutant_basis(
        act, oracle.subgroup_coset_perms(act, H.gens))
    Ps = oracle.structure_constants(basis)
    lengths = [len(o) for o in basis.orbits]
    pairing = [p + 1 for p in oracle.orbit_pairing(act, basis.orbits)]
    mats = [IntersectionMatrix(j + 1, P, lengths)
            for j, P in enumerate(Ps)]
    gens = [(j + 1, mats[j]) for j in range(1, len(mats))]
    return build_table(gens, mats, lengths, pairing), mats, H


def test_sqrt_convention():
    conv = SqrtConvention(11)
    assert conv.resolve(3) == 5
    assert conv.resolve(33) == 0
    with pytest.raises(InertFieldError):
        conv.resolve(2)
    conv6 = SqrtConvention(11, {3: 6})
    assert conv6.resolve(3) == 6
    with pytest.raises(ValueError):
        SqrtConvention(11, {3: 4})
    # tonelli against brute force
    for p in (3, 5, 7, 11, 13, 17, 101):
        for m in range(1, p):
            s = _sqrt_mod(m, p)
            brute = [x for x in range(p) if (x * x - m) % p == 0]
            assert (s is None) == (not brute)
            if brute:
                assert s in brute


def test_reduce_value_cases():
    conv = SqrtConvention(11, {3: 6})
    assert reduce_value(QuadraticNumber(3, -4, 3), conv) == 1
    assert reduce_value(QuadraticNumber(Fraction(1, 2)), conv) == 6
    conv2 = SqrtConvention(2)
    # (1 + r17)/2 reduces mod 2 (17 = 1 mod 8), (1 + r5)/2 does not
    ok = reduce_value(QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 17),
                      conv2)
    assert ok in (0, 1)
    with pytest.raises(InertFieldError):
        reduce_value(QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5),
                     conv2)


def test_reduction_is_multiplicative():
    rng = random.Random(9)
    for p, n in ((11, 3), (11, 5), (13, 3), (7, 2)):
        conv = SqrtConvention(p)
        for _ in range(20):
            a = QuadraticNumber(rng.randrange(-9, 10),
                                rng.randrange(-9, 10), n)
            b = QuadraticNumber(rng.randrange(-9, 10),
                                rng.randrange(-9, 10), n)
            assert reduce_value(a * b, conv) == \
                reduce_value(a, conv) * reduce_value(b, conv) % p
            assert reduce_value(a + b, conv) == \
                (reduce_value(a, conv) + reduce_value(b, conv)) % p


def test_s5s4_local_at_5_split_at_3():
    tbl, mats, H = table_for([Permutation([1, 0, 2, 3, 4]),
                              Permutation([1, 2, 3, 4, 0])])
    v5 = permutation_verdict(tbl, mats, 5, h_order=H.order())
    assert v5.local and v5.indecomposable
    assert v5.projective_cover_answer == "permutation module"
    assert v5.cartan == [[2]]
    assert [row for row in v5.decomposition.entries] == [[1], [1]]
    v3 = permutation_verdict(tbl, mats, 3, h_order=H.order())
    assert not v3.local
    assert v3.projective_cover_answer is None  # 3 divides |S4|
    assert is_local(mats, 5) and not is_local(mats, 3)


def test_m11_miniature():
    m11 = GeneratedGroup([
        Permutation.from_cycles(11, [list(range(11))]),
        Permutation.from_cycles(11, [[2, 6, 10, 7], [3, 9, 4, 5]])])
    tbl, mats, H = table_for(m11.gens)
    v = permutation_verdict(tbl, mats, 11, h_order=H.order())
    assert v.local and v.projective_cover_answer == "permutation module"


def test_basic_set_corner_cases():
    tbl, mats, H = table_for([Permutation([1, 2, 3, 4, 0]),
                              Permutation([0, 4, 3, 2, 1])])
    # ramified at 5: rows collapse, single basic row
    reduced = reduce_table(tbl, 5)
    assert basic_set(reduced, 5) == [0]
    # split prime: all rows independent, identity decomposition
    reduced11 = reduce_table(tbl, 11)
    basic11 = basic_set(reduced11, 11)
    assert len(basic11) == 3
    D = decomposition_matrix(tbl, reduced11, basic11, 11)
    assert D.entries == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert cartan_from_decomposition(D) == \
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_blocks_match_cartan_blocks():
    tbl, mats, H = table_for([Permutation([1, 2, 3, 4, 0]),
                              Permutation([0, 4, 3, 2, 1])])
    v = permutation_verdict(tbl, mats, 5, h_order=H.order())
    assert len(v.blocks) == 1
    assert v.cartan == [[3]]
    # correspondence is unambiguous here
    matching, ambiguous = v.correspondence
    assert not ambiguous and len(matching) == 1


def test_cartan_routes_agree_everywhere():
    for gens in ([Permutation([1, 0, 2, 3, 4]),
                  Permutation([1, 2, 3, 4, 0])],
                 [Permutation([1, 2, 3, 4, 0]),
                  Permutation([0, 4, 3, 2, 1])]):
        tbl, mats, H = table_for(gens)
        for p in (2, 3, 5, 11):
            try:
                v = permutation_verdict(tbl, mats, p, h_order=H.order())
            except (InertFieldError, LiftValidationError):
                continue
            reg = cartan_from_regular(mats, p)
            assert sorted(map(sorted, v.cartan)) == \
                sorted(map(sorted, reg["cartan"]))


def test_trivial_character_column():
    # the projective column attached to the trivial simple always carries
    # the trivial ordinary character with coefficient exactly 1
    tbl, mats, H = table_for([Permutation([1, 0, 2, 3, 4]),
                              Permutation([1, 2, 3, 4, 0])])
    v = permutation_verdict(tbl, mats, 5, h_order=H.order())
    cols = v.columns
    triv_label = next(f"phi{i + 1}" for i, row in enumerate(tbl.rows)
                      if row.degree == 1 and row.mult == 1
                      and all(x.is_rational() and x.a >= 0
                              for x in row.values))
    carrying = [c for c in cols if c["entries"].get(triv_label) == 1]
    assert len(carrying) == 1


def test_projective_columns_identity_matrix():
    tbl, mats, H = table_for([Permutation([1, 2, 3, 4, 0]),
                              Permutation([0, 4, 3, 2, 1])])
    reduced = reduce_table(tbl, 11)
    basic = basic_set(reduced, 11)
    D = decomposition_matrix(tbl, reduced, basic, 11)
    cols = projective_columns(D, tbl)
    for c in cols:
        assert sum(c["entries"].values()) == 1 and not c["ambiguous"]


def test_lift_validation_error_reported():
    # regular Q8 at p = 2: the multiplicity-2 row reduces to zero and the
    # character-based lift must refuse rather than fabricate entries
    from endoperm.corpus import _quaternion_gens, _regular_group
    G = _regular_group(_quaternion_gens(), 8)
    tbl, mats, H = table_for(G.gens)
    with pytest.raises(LiftValidationError):
        permutation_verdict(tbl, mats, 2, h_order=H.order())
    reg = cartan_from_regular(mats, 2)
    assert len(reg["constituents"]) == 1  # still answers locality
