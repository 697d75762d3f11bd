import pytest

from endoperm import fixtures, schur
from endoperm.modular import SqrtConvention, reduce_table


def test_full_suite_passes():
    checks = fixtures.run_suite()
    failing = [c.name for c in checks if not c.ok]
    assert not failing, failing
    assert len(checks) >= 20


def test_tampering_is_detected():
    p2 = [row[:] for row in fixtures.load_p2()["entries"]]
    lengths = [o["n"] for o in fixtures.load_orbits()["orbits"]]
    schur.validate_intersection_matrix(p2, 2, lengths)
    p2[3][4] += 1
    with pytest.raises(schur.IntegralityError):
        schur.validate_intersection_matrix(p2, 2, lengths)


def test_convention_is_forced_by_the_reduced_rows():
    # with the default root r3 -> 5 the printed reduction cannot match
    table = fixtures.load_chartable()
    wrong = reduce_table(table, 11, SqrtConvention(11))
    fixture_rows = fixtures.load_reduced()["rows"]
    assert wrong[8].values != fixture_rows["9"]
    right = reduce_table(table, 11, SqrtConvention(11, {3: 6}))
    assert right[8].values == fixture_rows["9"]


def test_corpus_manifest_verifies():
    from endoperm.corpus import verify_against_manifest
    assert verify_against_manifest() == []
