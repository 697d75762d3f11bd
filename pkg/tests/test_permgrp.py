import random

import pytest

from endoperm.permgrp import (GeneratedGroup, Permutation, closure_elements,
                              dump_word_json, evaluate_word, group_from_json,
                              group_to_json, load_word_json, random_element,
                              word_inverse)


def sym(n):
    return GeneratedGroup([Permutation([1, 0] + list(range(2, n))),
                           Permutation(list(range(1, n)) + [0])])


def test_s3_and_c4_orders():
    s3 = GeneratedGroup([Permutation([1, 0, 2]), Permutation([1, 2, 0])])
    assert s3.order() == 6
    c4 = GeneratedGroup([Permutation([1, 2, 3, 0])])
    assert c4.order() == 4


def test_random_s8_pairs_match_exhaustive_closure():
    rng = random.Random(7)
    for _ in range(6):
        gens = [Permutation(rng.sample(range(8), 8)) for _ in range(2)]
        g = GeneratedGroup(gens)
        assert g.order() == len(closure_elements(gens, 8, limit=50000))


def test_stabilizer_orders():
    s4 = sym(4)
    st = s4.stabilizer(0)
    assert st.order() == 6
    assert st.order() * len(s4.orbit(0)) == s4.order()
    # the stabilizer really fixes the point
    for p in closure_elements(st.gens, 4, 100):
        assert p.images[0] == 0


def test_random_s7_subgroups_orbit_stabilizer():
    rng = random.Random(3)
    for trial in range(6):
        gens = [Permutation(rng.sample(range(7), 7)) for _ in range(2)]
        g = GeneratedGroup(gens)
        elements = closure_elements(gens, 7, 20000)
        for x in range(7):
            st = g.stabilizer(x)
            orbit = {p.images[x] for p in elements}
            assert st.order() * len(orbit) == g.order()
            assert st.order() == sum(1 for p in elements if p.images[x] == x)


def test_membership_through_chain():
    s5 = sym(5)
    rng = random.Random(1)
    inside = closure_elements(s5.gens, 5, 200)
    for p in list(inside)[:20]:
        assert p in s5
    a5_gens = [Permutation([1, 2, 0, 3, 4]), Permutation([0, 1, 3, 4, 2])]
    a5 = GeneratedGroup(a5_gens)
    assert a5.order() == 60
    odd = Permutation([1, 0, 2, 3, 4])
    assert odd not in a5


def test_evaluate_word_identities():
    s5 = sym(5)
    ident = Permutation.identity(5)
    assert evaluate_word((), s5.gens, ident) == ident
    assert evaluate_word(((0, 1), (0, -1)), s5.gens, ident) == ident
    rng = random.Random(11)
    word = tuple((rng.randrange(2), rng.choice([1, -1])) for _ in range(20))
    # independent oracle: fold the point images directly
    acc = ident
    for i, e in word:
        g = s5.gens[i] if e > 0 else s5.gens[i].inverse()
        acc = Permutation(g.images[acc.images[x]] for x in range(5))
    assert evaluate_word(word, s5.gens, ident) == acc
    with pytest.raises(IndexError):
        evaluate_word(((5, 1),), s5.gens, ident)


def test_random_element_words_reproduce():
    s4 = sym(4)
    stream = s4.random_stream(seed=42)
    for _ in range(25):
        el, word = random_element(s4, stream)
        assert evaluate_word(word, s4.gens,
                             Permutation.identity(4)) == el
        assert el in s4


def test_random_stream_determinism():
    s4 = sym(4)
    a = [random_element(s4, s4.random_stream(9))[0] for _ in range(10)]
    b = [random_element(s4, s4.random_stream(9))[0] for _ in range(10)]
    assert a == b


def test_stabilizer_with_words():
    s5 = sym(5)
    st, words = s5.stabilizer_with_words(0)
    assert st.order() == 24
    for w, g in zip(words, st.gens):
        assert evaluate_word(w, s5.gens, Permutation.identity(5)) == g


def test_group_json_roundtrip():
    s4 = sym(4)
    data = group_to_json(s4)
    back = group_from_json(data)
    assert back.gens == s4.gens
    with pytest.raises(ValueError):
        group_from_json({"degree": 3, "generators": [[1, 2]]})
    with pytest.raises(ValueError):
        group_from_json({"degree": 3, "generators": [[0, 1, 2]]})


def test_word_json_roundtrip():
    word = ((0, 1), (1, -1), (1, -1), (0, 1))
    data = dump_word_json(word)
    assert load_word_json(data) == word
    assert load_word_json([[2, 2]]) == ((1, 1), (1, 1))
    assert load_word_json([[-2, 1]]) == ((1, -1),)
