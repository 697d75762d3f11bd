import random
from fractions import Fraction

import pytest

from endoperm.quadfield import (QuadraticNumber, RadicalSum,
                                express_in_rows, left_nullspace, mat_mul,
                                right_nullspace, rref, solve_action,
                                squarefree_part)


def test_squarefree_part():
    assert squarefree_part(45) == (5, 3)
    assert squarefree_part(1) == (1, 1)
    assert squarefree_part(99) == (11, 3)
    with pytest.raises(ValueError):
        squarefree_part(0)


def test_roots_of_quadratics():
    x = QuadraticNumber(-6, 1, 5)
    assert x * x + 12 * x + 31 == 0
    y = QuadraticNumber(0, 3, 5)
    assert y * y == 45
    assert QuadraticNumber(0, 1, 8) == QuadraticNumber(0, 2, 2)


def test_field_axioms_sampled():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.choice([2, 3, 5, 33])
        a = QuadraticNumber(Fraction(rng.randrange(-9, 10), rng.randrange(1, 4)),
                            Fraction(rng.randrange(-9, 10)), n)
        b = QuadraticNumber(rng.randrange(-9, 10), rng.randrange(-9, 10), n)
        assert (a + b) - b == a
        assert a * b == b * a
        if b != 0:
            assert (a / b) * b == a
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()


def test_mixed_radicands_refused():
    a = QuadraticNumber(1, 1, 3)
    b = QuadraticNumber(1, 1, 5)
    with pytest.raises(ValueError):
        a + b


def test_radical_sum_cross_products():
    a = RadicalSum.from_quadratic(QuadraticNumber(1, 2, 3))
    b = RadicalSum.from_quadratic(QuadraticNumber(0, 1, 33))
    prod = a * b
    # (1 + 2 r3) r33 = r33 + 2 r99 = r33 + 6 r11
    assert prod.terms == {33: Fraction(1), 11: Fraction(6)}
    conj = RadicalSum.from_quadratic(QuadraticNumber(1, -2, 3))
    assert (a * conj).terms == {1: Fraction(1 - 12)}


def test_algebraic_integboth():
    assert QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5) \
        .is_algebraic_integer()
    assert not QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 3) \
        .is_algebraic_integer()
    assert QuadraticNumber(3, -4, 3).is_algebraic_integer()


def test_is_positive_embedding():
    assert QuadraticNumber(-1, 1, 5).is_positive()
    assert QuadraticNumber(3, -1, 5).is_positive()
    assert not QuadraticNumber(2, -1, 5).is_positive()
    assert not QuadraticNumber(0, -1, 2).is_positive()


def test_json_roundtrip():
    x = QuadraticNumber(Fraction(3, 2), Fraction(-1, 2), 13)
    assert QuadraticNumber.from_json(x.to_json()) == x


def test_exact_linear_algebra():
    rng = random.Random(4)
    for _ in range(20):
        n = rng.randrange(1, 6)
        M = [[Fraction(rng.randrange(-5, 6)) for _ in range(n)]
             for _ in range(n + 1)]
        R, pivots = rref(M)
        for r, c in enumerate(pivots):
            assert R[r][c] == 1
        N = left_nullspace(M)
        for v in N:
            out = [sum(v[i] * M[i][j] for i in range(len(M)))
                   for j in range(n)]
            assert all(x == 0 for x in out)
        rk = len(pivots)
        assert rk + len(N) == len(M)


def test_express_and_solve_action():
    B = [[Fraction(1), Fraction(2), Fraction(0)],
         [Fraction(0), Fraction(1), Fraction(1)]]
    assert express_in_rows(B, [Fraction(2), Fraction(5), Fraction(1)]) == \
        [Fraction(2), Fraction(1)]
    assert express_in_rows(B, [Fraction(0), Fraction(0), Fraction(7)]) is None
    # invariant row space: x-y plane under a rotation-ish map
    M = [[Fraction(0), Fraction(1), Fraction(0)],
         [Fraction(1), Fraction(0), Fraction(0)],
         [Fraction(0), Fraction(0), Fraction(2)]]
    basis = [[Fraction(1), Fraction(0), Fraction(0)],
             [Fraction(0), Fraction(1), Fraction(0)]]
    C = solve_action(basis, M)
    assert mat_mul(C, basis) == mat_mul(basis, M)
    bad = [[Fraction(1), Fraction(1), Fraction(1)]]
    with pytest.raises(ValueError):
        solve_action(bad, M)
