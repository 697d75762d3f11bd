import random

import pytest
import sympy

from endoperm import zpoly as zp

X = sympy.symbols("x")


def to_sympy(p):
    return sum(c * X ** i for i, c in enumerate(p))


def test_known_factorizations():
    assert zp.factor((-1, 0, 1)) == (1, 1, [((-1, 1), 1), ((1, 1), 1)])
    unit, cont, facs = zp.factor((-45, 0, 1))
    assert facs == [((-45, 0, 1), 1)]
    f4 = (-2768, 1706, -75, -16, 1)
    assert zp.factor(f4)[2] == [(f4, 1)]


def test_random_factorizations_match_sympy():
    rng = random.Random(5)
    done = 0
    while done < 60:
        n = rng.randrange(1, 10)
        p = zp.trim(tuple(rng.randrange(-9, 10) for _ in range(n))
                    + (rng.choice([1, 2, 3, -1, 5]),))
        if zp.deg(p) < 1:
            continue
        done += 1
        unit, cont, facs = zp.factor(p, seed=done)
        prod = (unit * cont,)
        for g, m in facs:
            for _ in range(m):
                prod = zp.mul(prod, g)
        assert prod == p
        mine = sorted((zp.deg(g), m) for g, m in facs)
        theirs = sorted((sympy.degree(g), m)
                        for g, m in sympy.factor_list(to_sympy(p))[1]
                        if sympy.degree(g) > 0)
        assert mine == theirs


def test_structured_products_recover():
    rng = random.Random(17)
    for trial in range(8):
        fs = []
        while sum(zp.deg(f) for f in fs) < 16:
            f = zp.trim(tuple(rng.randrange(-20, 21)
                              for _ in range(rng.randrange(1, 5))) + (1,))
            fs.append(f)
        prod = (1,)
        for f in fs:
            prod = zp.mul(prod, f)
        unit, cont, facs = zp.factor(prod, seed=trial)
        re = (unit * cont,)
        for g, m in facs:
            for _ in range(m):
                re = zp.mul(re, g)
        assert re == prod


def test_squarefree_decomposition():
    f = zp.mul(zp.mul((1, 1), (1, 1)), zp.mul((2, 1), (3, 0, 1)))
    parts = zp.squarefree_decomposition(f)
    total = (1,)
    for g, m in parts:
        for _ in range(m):
            total = zp.mul(total, g)
    assert total == f
    assert sorted(m for _, m in parts) == [1, 2]


def test_gcd_and_exact_division():
    a = zp.mul((1, 1), (2, 0, 1))
    b = zp.mul((1, 1), (5, 1))
    assert zp.gcd(a, b) == (1, 1)
    assert zp.exact_div(a, (1, 1)) == (2, 0, 1)
    with pytest.raises(ValueError):
        zp.exact_div((1, 0, 1), (1, 1))


def test_fp_factor_reconstructs():
    rng = random.Random(23)
    done = 0
    while done < 40:
        p = rng.choice([2, 3, 5, 11, 13])
        f = zp.fp_trim(tuple(rng.randrange(p) for _ in
                             range(rng.randrange(2, 12))), p)
        if zp.deg(f) < 1:
            continue
        done += 1
        lc, facs = zp.fp_factor(f, p, seed=done)
        prod = (lc,)
        for g, m in facs:
            for _ in range(m):
                prod = zp.fp_mul(prod, g, p)
        assert prod == f
        for g, m in facs:
            assert g[-1] == 1 and zp.deg(g) >= 1


def test_fp_irreducibles_have_no_roots():
    # degree-2 irreducibles must have empty root sets
    for p in (3, 5, 7, 11):
        for c0 in range(p):
            for c1 in range(p):
                f = zp.fp_trim((c0, c1, 1), p)
                _, facs = zp.fp_factor(f, p)
                has_root = any(zp.deg(g) == 1 for g, _ in facs)
                roots = [x for x in range(p)
                         if (x * x + c1 * x + c0) % p == 0]
                assert has_root == bool(roots)
