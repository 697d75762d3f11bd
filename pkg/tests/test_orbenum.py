import json
import random
from fractions import Fraction

import numpy as np
import pytest

from endoperm import oracle
from endoperm.corpus import build_context, instance_scenario, named_instances
from endoperm.gfmat import FqMatrix
from endoperm.orbenum import (ActionContext, HelperNotEquivariant,
                              HelperSetup, MemoryBudgetExceeded,
                              NotCertifiedMember, PermutationDomain,
                              VectorDomain, classify, disjoint,
                              enumerate_suborbit, load_scenario,
                              membership, memory_estimate, normalize_point,
                              probe_fixed_space, trace_word)
from endoperm.permgrp import (GeneratedGroup, Permutation, evaluate_word,
                              word_inverse)


def make_ctx(G, point=0, k_words=None, quotient=None, seed=0):
    G.build_chain()
    H, h_words = G.stabilizer_with_words(point)
    dom = PermutationDomain(G.degree)
    ctx = ActionContext(dom, G.gens, H.gens, point, h_words=h_words,
                        faithful_h=H, target_index=G.order() // H.order(),
                        seed=seed)
    if k_words is None:
        k_words = [((i, 1),) for i in range(min(1, len(H.gens)))]
    return ctx, HelperSetup(ctx, k_words, quotient), H


def s5():
    return GeneratedGroup([Permutation([1, 0, 2, 3, 4]),
                           Permutation([1, 2, 3, 4, 0])])


def test_base_point_must_be_fixed():
    G = s5()
    G.build_chain()
    H, hw = G.stabilizer_with_words(0)
    with pytest.raises(ValueError):
        ActionContext(PermutationDomain(5), G.gens, H.gens, 1,
                      faithful_h=H)


def test_trivial_orbit_of_base_point():
    ctx, helper, H = make_ctx(s5())
    rec = enumerate_suborbit(ctx, helper, ctx.v1)
    assert rec.length == 1 and rec.stab_order == H.order()


def test_s5_s4_lengths():
    ctx, helper, H = make_ctx(s5())
    part = classify(ctx, helper, seed=1)
    assert part.lengths() == [1, 4]
    assert part.residual == 0
    for rec in part.records:
        assert rec.length * rec.stab_order == H.order()
        assert 2 * rec.covered > rec.length


def test_psl211_a5_two_transitive():
    from endoperm.corpus import _psl2_11_degree11
    ctx, helper, H = make_ctx(_psl2_11_degree11(), seed=2)
    part = classify(ctx, helper, seed=2)
    assert part.lengths() == [1, 10]


def test_pairing_non_self_paired():
    x = Permutation([(i + 1) % 7 for i in range(7)])
    y = Permutation([(2 * i) % 7 for i in range(7)])
    ctx, helper, H = make_ctx(GeneratedGroup([x, y]), seed=11)
    part = classify(ctx, helper, seed=11)
    assert part.lengths() == [1, 3, 3]
    assert part.pairing() == [1, 3, 2]


def test_membership_one_sided():
    ctx, helper, H = make_ctx(s5())
    part = classify(ctx, helper, seed=1)
    rec1, rec2 = part.records
    rng = random.Random(0)
    # a stored point answers True immediately
    some = next(iter(rec2.store))
    assert membership(ctx, helper, rec2, some, rng, budget=0) is True
    # points of the other orbit can never come back True
    for pt in range(5):
        if pt == ctx.v1:
            assert membership(ctx, helper, rec1, pt, rng, 50) is True
        else:
            assert membership(ctx, helper, rec1, pt, rng, 50) == "unknown"


def test_disjointness_matches_exhaustive_partition():
    ctx, helper, H = make_ctx(s5())
    part = classify(ctx, helper, seed=1)
    assert disjoint(part.records[0], part.records[1])
    dup = enumerate_suborbit(ctx, helper, next(iter(part.records[1].store)))
    assert not disjoint(dup, part.records[1])


def test_trace_word_verified_by_evaluation():
    ctx, helper, H = make_ctx(s5())
    part = classify(ctx, helper, seed=1)
    rec = part.records[1]
    assert trace_word(ctx, helper, rec, rec.rep) == ()
    for key in rec.store:
        w = trace_word(ctx, helper, rec, key)
        assert ctx.apply_h_word(rec.rep, w) == key
    # random covered points, via a walk
    pt = rec.rep
    rng = random.Random(5)
    for _ in range(10):
        pt = ctx.domain.apply(pt, ctx.h_gens[rng.randrange(len(ctx.h_gens))])
        if membership(ctx, helper, rec, pt, rng, 200) is True:
            w = trace_word(ctx, helper, rec,
                           normalize_point(helper, pt)[0])
    with pytest.raises(NotCertifiedMember):
        trace_word(ctx, helper, rec, ctx.v1)


def test_saving_factor_bounds():
    # trivial K: factor 1
    ctx, helper, H = make_ctx(s5(), k_words=[])
    assert helper.k_order == 1
    part = classify(ctx, helper, seed=1)
    assert all(r.saving_factor() == 1 for r in part.records)
    # K = H = C3 acts regularly on both 3-point orbits of the Frobenius
    # group of order 21, so those records reach the |K| bound exactly
    x = Permutation([(i + 1) % 7 for i in range(7)])
    y = Permutation([(2 * i) % 7 for i in range(7)])
    ctx, helper, H = make_ctx(GeneratedGroup([x, y]), seed=4)
    assert helper.k_order == 3
    part = classify(ctx, helper, seed=4)
    assert [r.saving_factor() for r in part.records] == [1, 3, 3]
    for rec in part.records:
        assert rec.saving_factor() <= helper.k_order


def test_classify_deterministic_across_seeds():
    sigs = set()
    for seed in range(5):
        ctx, helper, H = make_ctx(
            GeneratedGroup([Permutation([1, 2, 3, 4, 0]),
                            Permutation([0, 4, 3, 2, 1])]), seed=seed)
        part = classify(ctx, helper, seed=seed)
        sigs.add((tuple(part.lengths()), tuple(part.pairing()),
                  tuple(r.stab_order for r in part.records)))
    assert len(sigs) == 1


def test_memory_budget():
    ctx, helper, H = make_ctx(s5(), k_words=[])
    ctx.memory_limit = 1
    with pytest.raises(MemoryBudgetExceeded):
        enumerate_suborbit(ctx, helper, 1)


def test_memory_estimate_numbers():
    dom = VectorDomain(2, 112)
    assert dom.point_bytes() == 18
    ctx, helper, H = make_ctx(s5())
    est = memory_estimate(ctx)
    assert est["full_orbit_bytes"] == 5 * est["bytes_per_point"]


def test_vector_domain_with_projection():
    def permmat(images):
        M = np.zeros((len(images), len(images)), dtype=int)
        for i, j in enumerate(images):
            M[i, j] = 1
        return FqMatrix(2, M)

    g1, g2 = permmat([1, 0, 2, 3]), permmat([1, 2, 3, 0])
    s4 = GeneratedGroup([Permutation([1, 0, 2, 3]),
                         Permutation([1, 2, 3, 0])])
    s4.build_chain()
    H, h_words = s4.stabilizer_with_words(3)
    mats = [evaluate_word(w, [g1, g2], FqMatrix.identity(2, 4))
            for w in h_words]
    dom = VectorDomain(2, 4)
    ctx = ActionContext(dom, [g1, g2], mats, dom.encode([0, 0, 0, 1]),
                        h_words=h_words, faithful_h=H, target_index=4)
    proj = FqMatrix(2, [[1, 0], [1, 0], [0, 1], [0, 1]])
    helper = HelperSetup(ctx, [((0, 1),)], proj)
    part = classify(ctx, helper, seed=2)
    assert part.lengths() == [1, 3]


def test_quotient_equivariance_checked():
    ctx, helper, H = make_ctx(s5())
    # a mapping that identifies points across K-orbits inconsistently
    with pytest.raises((HelperNotEquivariant, ValueError)):
        HelperSetup(ctx, [((0, 1),)], [0, 0, 1, 2, 3])


def test_probe_fixed_space_finds_representative():
    ctx, helper, H = make_ctx(s5())
    part = classify(ctx, helper, seed=1)
    # S = the subgroup of H fixing point 1 as well; its fixed points
    # include a representative of the length-4 orbit
    S = H.stabilizer(1)
    found = probe_fixed_space(ctx, helper, part, S.gens, 4, seed=3)
    assert found is not None
    v, word = found
    assert ctx.apply_g_word(ctx.v1, word) == v


def test_scenario_roundtrip():
    inst = named_instances()[1]
    data = instance_scenario(inst, seed=5)
    blob = json.loads(json.dumps(data))
    ctx, helper = load_scenario(blob)
    part = classify(ctx, helper, seed=5)
    assert part.lengths() == [1, 4]
    assert ctx.h_order == 24
