import pytest

from fusionforge.closedrules import closed_ring, crosscheck, crosscheck_diff, hits, misses
from fusionforge.errors import InvalidArgument
from fusionforge.fusionring import verify_axioms

from fixtures_util import load_golden


@pytest.mark.parametrize("q", range(2, 27))
def test_crosscheck_psl2(q):
    assert crosscheck_diff(q, "psl2") == []


@pytest.mark.parametrize("q", range(2, 21))
def test_crosscheck_etingof(q):
    assert crosscheck(q, "etingof")


@pytest.mark.parametrize("q", [6, 15, 21])
def test_closed_rules_reproduce_printed_matrices(q):
    assert (closed_ring(q, "psl2").N == load_golden(q)["N"]).all()


def test_closed_rings_are_fusion_rings():
    for q in (30, 31, 33):
        assert verify_axioms(closed_ring(q, "psl2")).ok


def test_hits_and_misses_partition():
    for total in range(3, 12):
        for a in range(1, 6):
            for b in range(1, 6):
                for c in range(1, 6):
                    assert hits(total, a, b, c) != misses(total, a, b, c)


def test_unknown_family():
    with pytest.raises(InvalidArgument):
        closed_ring(5, "nope")
