import random
from fractions import Fraction

import numpy as np
import pytest
import sympy

from endoperm import oracle
from endoperm.quadfield import QuadraticNumber
from endoperm.permgrp import GeneratedGroup, Permutation, closure_elements
from endoperm.schur import IntersectionMatrix
from endoperm.splitchar import (CharRow, EndoCharTable,
                                UnsupportedComponentError, build_table,
                                char_poly, factor_over_Z, fitting_degree,
                                homogeneous_components,
                                homogeneous_components_center,
                                split_component, verify_table,
                                _split_quartic)


def oracle_setup(Ggens, point=0):
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
    return mats, lengths, pairing, basis


def test_char_poly_basics():
    ident = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    assert char_poly(ident) == (-1, 3, -3, 1)
    rng = random.Random(8)
    x = sympy.symbols("x")
    for trial in range(10):
        n = rng.randrange(1, 7)
        M = [[rng.randrange(-50, 51) for _ in range(n)] for _ in range(n)]
        mine = char_poly(M)
        theirs = sympy.Poly(sympy.Matrix(M).charpoly(x), x).all_coeffs()
        assert list(mine) == list(reversed([int(c) for c in theirs]))


def test_char_poly_p1_is_xminus1_power():
    r = 5
    P1 = [[int(i == j) for j in range(r)] for i in range(r)]
    cp = char_poly(P1)
    facs = factor_over_Z(cp)
    assert facs.factors == [((-1, 1), r)]


def test_factor_over_Z_examples():
    assert factor_over_Z((-1, 0, 1)).factors == \
        [((-1, 1), 1), ((1, 1), 1)]
    assert factor_over_Z((-45, 0, 1)).factors == [((-45, 0, 1), 1)]


def test_rank2_components_and_rows():
    mats, lengths, pairing, _ = oracle_setup(
        [Permutation([1, 0, 2, 3, 4]), Permutation([1, 2, 3, 4, 0])])
    comps = homogeneous_components([(2, mats[1])], 2)
    assert sorted(c.dim for c in comps) == [1, 1]
    tbl = build_table([(2, mats[1])], mats, lengths, pairing)
    rows = sorted(((r.values, r.degree) for r in tbl.rows),
                  key=lambda t: t[1])
    assert rows == [([QuadraticNumber(1), QuadraticNumber(4)], 1),
                    ([QuadraticNumber(1), QuadraticNumber(-1)], 4)]


def test_quadratic_pair_matches_eigen_oracle():
    mats, lengths, pairing, basis = oracle_setup(
        [Permutation([1, 2, 3, 4, 0]), Permutation([0, 4, 3, 2, 1])])
    tbl = build_table([(2, mats[1])], mats, lengths, pairing)
    mine = sorted(((tuple(r.values), r.mult, r.degree) for r in tbl.rows),
                  key=lambda t: (t[2], [(v.a, v.b, v.n) for v in t[0]]))
    assert mine == list(oracle.char_table_commutative(basis))
    # conjugate rows are linked
    quad = [r for r in tbl.rows if r.field == 5]
    assert len(quad) == 2 and tbl.rows[quad[0].conj] is quad[1]


def test_commuting_generators_distinct_eigenvalues_dims_one():
    A = [[1, 0], [0, 2]]
    B = [[3, 0], [0, 5]]
    comps = homogeneous_components([(2, A), (3, B)], 2)
    assert [c.dim for c in comps] == [1, 1]


def test_complex_field_raises():
    x = Permutation([(i + 1) % 7 for i in range(7)])
    y = Permutation([(2 * i) % 7 for i in range(7)])
    mats, lengths, pairing, _ = oracle_setup([x, y])
    with pytest.raises(UnsupportedComponentError):
        build_table([(2, mats[1])], mats, lengths, pairing)


def regular_instance(gens, degree):
    elems = sorted(closure_elements(gens, degree), key=lambda p: p.images)

    def rmul(g):
        return Permutation([elems.index(x * g) for x in elems])
    return GeneratedGroup([rmul(g) for g in gens])


def test_rational_multiplicity_two_component():
    # regular D4: one M_2(Q) component of dimension 4, trace halving exact
    G = regular_instance([Permutation([1, 2, 3, 0]),
                          Permutation([0, 3, 2, 1])], 4)
    mats, lengths, pairing, _ = oracle_setup(G.gens)
    tbl = build_table([(j + 1, mats[j]) for j in range(1, 8)], mats,
                      lengths, pairing)
    mult2 = [r for r in tbl.rows if r.mult == 2]
    assert len(mult2) == 1 and mult2[0].degree == 2
    assert sum(r.mult * r.degree for r in tbl.rows) == 8


def test_quadratic_multiplicity_two_component():
    # regular dihedral of order 16: a 2 m^2 = 8 component over Q(r2)
    G = regular_instance([Permutation([1, 2, 3, 4, 5, 6, 7, 0]),
                          Permutation([0, 7, 6, 5, 4, 3, 2, 1])], 8)
    mats, lengths, pairing, _ = oracle_setup(G.gens)
    tbl = build_table([(j + 1, mats[j]) for j in range(1, 16)], mats,
                      lengths, pairing)
    quad = [r for r in tbl.rows if r.field == 2]
    assert len(quad) == 2
    assert all(r.mult == 2 and r.degree == 2 for r in quad)
    assert quad[0].values == [v.conjugate() for v in quad[1].values]
    assert sum(r.mult * r.degree for r in tbl.rows) == 16


def test_center_route_agrees_with_generator_route():
    mats, lengths, pairing, _ = oracle_setup(
        [Permutation([1, 2, 3, 4, 0]), Permutation([0, 4, 3, 2, 1])])
    a = homogeneous_components([(2, mats[1])], 3)
    b = homogeneous_components_center(mats, 3)
    assert sorted(c.dim for c in a) == sorted(c.dim for c in b)


def test_split_quartics_over_real_quadratic():
    n, f1 = _split_quartic((-2768, 1706, -75, -16, 1))
    assert n == 33
    n2, _ = _split_quartic((-2701694976, -2113152, 405424, -1288, 1))
    assert n2 == 33
    # X^4 + 1 splits over Q(r2) into conjugate quadratics
    n3, f3 = _split_quartic((1, 0, 0, 0, 1))
    assert n3 == 2
    # a quartic with Galois group S4 factors over no quadratic field
    with pytest.raises(UnsupportedComponentError):
        _split_quartic((1, 1, 0, 0, 1))


def test_fitting_degree_and_sensitivity():
    mats, lengths, pairing, _ = oracle_setup(
        [Permutation([1, 0, 2, 3, 4]), Permutation([1, 2, 3, 4, 0])])
    tbl = build_table([(2, mats[1])], mats, lengths, pairing)
    triv = next(r for r in tbl.rows
                if [v.as_fraction() for v in r.values] ==
                [Fraction(x) for x in lengths])
    assert triv.degree == 1
    # perturb one value: orthogonality must break
    bad = EndoCharTable(
        [CharRow(list(r.values), r.mult, r.degree) for r in tbl.rows],
        lengths, pairing)
    bad.rows[1].values[1] = bad.rows[1].values[1] + 1
    report = verify_table(bad)
    assert not report["ok"]


def test_table_json_roundtrip():
    mats, lengths, pairing, _ = oracle_setup(
        [Permutation([1, 2, 3, 4, 0]), Permutation([0, 4, 3, 2, 1])])
    tbl = build_table([(2, mats[1])], mats, lengths, pairing)
    back = EndoCharTable.from_json(tbl.to_json())
    assert back.lengths == tbl.lengths
    for a, b in zip(back.rows, tbl.rows):
        assert a.values == b.values and a.degree == b.degree
    assert verify_table(back)["ok"]
