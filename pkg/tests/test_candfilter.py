import itertools
import random

from endoperm.candfilter import (OrdinaryCharTableG, admissible_candidates,
                                 conjugation_closure, defect_integrality,
                                 partition_search, p_part)
from endoperm.quadfield import QuadraticNumber as Q
from endoperm.quadfield import RadicalSum


def s5_table():
    classes = [
        {"name": "1a", "centralizer": 120, "p_singular": False},
        {"name": "2a", "centralizer": 12, "p_singular": False},
        {"name": "2b", "centralizer": 8, "p_singular": False},
        {"name": "3a", "centralizer": 6, "p_singular": False},
        {"name": "6a", "centralizer": 6, "p_singular": False},
        {"name": "4a", "centralizer": 4, "p_singular": False},
        {"name": "5a", "centralizer": 5, "p_singular": True},
    ]
    chars = {
        "1": [Q(1)] * 7,
        "4": [Q(4), Q(2), Q(0), Q(1), Q(-1), Q(0), Q(-1)],
    }
    return OrdinaryCharTableG(classes, chars)


def test_s5_unique_candidate():
    box, cands = admissible_candidates(s5_table(), [("1", 1), ("4", 1)], 5)
    assert box == 2
    assert len(cands) == 1 and cands[0].coeffs == (1, 1)
    # psi(1) = 5 and |C(1)|_5 = 5: the defect filter passes at the identity
    assert defect_integrality([Q(5)], [120], 5)
    assert not defect_integrality([Q(6)], [120], 5)


def test_no_singular_classes_gives_full_box():
    tbl = OrdinaryCharTableG(
        [{"name": "1a", "centralizer": None, "p_singular": False}],
        {"1": [Q(1)], "x": [Q(2)], "y": [Q(3)]})
    box, cands = admissible_candidates(
        tbl, [("1", 1), ("x", 2), ("y", 3)], 7, use_defect=False)
    assert box == 12 and len(cands) == 12


def test_matches_brute_force_filter():
    # independent oracle: direct loop over the box with the same data
    tbl = s5_table()
    labels = [("1", 1), ("4", 1)]
    _, fast = admissible_candidates(tbl, labels, 5, use_defect=False)
    slow = []
    for d in itertools.product([1], [0, 1]):
        val = RadicalSum()
        for (lab, m), c in zip(labels, d):
            val = val + RadicalSum.from_quadratic(
                tbl.value(lab, 6)).scale(c)
        if val.is_zero():
            slow.append(d)
    assert [c.coeffs for c in fast] == slow


def test_quadratic_defect_componentwise():
    # (11 + 11 r5) / 11 is integral; (11 + r5)/11 is not
    assert defect_integrality([Q(11, 11, 5)], [11], 11)
    assert not defect_integrality([Q(11, 1, 5)], [11], 11)


def test_conjugation_closure_reports_equalities():
    tbl = s5_table()
    _, cands = admissible_candidates(tbl, [("1", 1), ("4", 1)], 5)
    assert conjugation_closure(cands) == [("1", "4")]


def test_partition_search_examples():
    assert partition_search(4, [1, 2, 3], 2) == [(1, 3), (2, 2)]
    assert partition_search(0, [1, 2, 3], 0) == [()]
    sup = [1, 31, 155, 465, 496, 930, 3255, 7440, 19530, 26040, 9765, 4960]
    res = set(partition_search(27001, sup, 3))
    assert {(31, 930, 26040), (465, 496, 26040),
            (31, 7440, 19530)} <= res


def test_partition_search_matches_direct_loop():
    rng = random.Random(6)
    for _ in range(10):
        allowed = sorted(rng.sample(range(1, 40), rng.randrange(3, 8)))
        target = rng.randrange(10, 80)
        fast = set(partition_search(target, allowed, 3))
        slow = set()
        for a in allowed:
            for b in allowed:
                for c in allowed:
                    if a <= b <= c and a + b + c == target:
                        slow.add((a, b, c))
        assert fast == slow


def test_p_part():
    assert p_part(1331 * 6, 11) == 1331
    assert p_part(7, 11) == 1
