import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fusionforge._familysum import character_violation
from fusionforge.chartables import RowLabel, build_table
from fusionforge.errors import InvalidArgument
from fusionforge.fusionring import (FusionRing, character_property_holds, fpdims, fusion_type, is_frobenius_type,
                                    is_simple, multiplicity, self_dual_count, trivial_ring, verify_axioms)
from fusionforge.verlinde import reconstruct

from fixtures_util import load_golden


def ring(q, family="psl2"):
    return reconstruct(build_table(q, family))


def group_ring(n):
    """Rep(Z/n): x_a x_b = x_{a+b}."""
    N = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            N[a, b, (a + b) % n] = 1
    return FusionRing(N)


@pytest.mark.parametrize("q", [6, 15, 21])
def test_golden_fixture_checksums(q):
    data = load_golden(q)
    assert data["N"].shape == (data["rank"],) * 3


def test_fixture_checksum_catches_edits(tmp_path, monkeypatch):
    import fixtures_util
    data = json.loads((fixtures_util.FIXTURES / "R6.json").read_text())
    data["N"][1][1][1] = 7
    (tmp_path / "R6.json").write_text(json.dumps(data))
    monkeypatch.setattr(fixtures_util, "FIXTURES", tmp_path)
    with pytest.raises(AssertionError):
        fixtures_util.load_golden(6)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 40), st.sampled_from(["psl2", "etingof"]))
def test_reconstructed_rings_satisfy_axioms(q, family):
    R = ring(q, family)
    rep = verify_axioms(R)
    assert rep.ok and rep.commutative and not rep.violations
    d = fpdims(R)
    assert d == list(build_table(q, family).degrees)
    assert character_property_holds(R, d)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 30), st.sampled_from(["psl2", "etingof"]), st.data())
def test_corruption_is_detected(q, family, data):
    # one changed entry can still be a fusion ring (x^2 = 1 becomes x^2 = 1 + x),
    # but then it no longer fits the table it came from
    t = build_table(q, family)
    R = reconstruct(t)
    r = R.rank
    i, j, k = (data.draw(st.integers(0, r - 1)) for _ in range(3))
    N = R.N.copy()
    N[i, j, k] += data.draw(st.integers(1, 3))
    rep = verify_axioms(FusionRing(N, R.labels, R.dual))
    assert not rep.ok or character_violation(t, N) is not None


def test_associativity_witness_reported():
    R = ring(6)
    N = R.N.copy()
    N[1, 1, 3] += 1
    rep = verify_axioms(FusionRing(N, R.labels, R.dual))
    assert not rep.associative
    assert any(v[0] == "associativity" for v in rep.violations)


def test_cyclic_group_rings():
    for n in range(1, 8):
        R = group_ring(n)
        assert verify_axioms(R).ok
        assert fpdims(R) == [1] * n
        assert is_simple(R) == (n in (1, 2, 3, 5, 7))


def test_trivial_ring():
    R = trivial_ring()
    assert verify_axioms(R).ok and fpdims(R) == [1]


def test_fpdims_without_table_equal_degrees():
    for q in (4, 6, 7, 9, 10, 13):
        R = ring(q)
        assert fpdims(R) == list(build_table(q, "psl2").degrees)


def test_statistics_q6():
    R = ring(6)
    assert fusion_type(fpdims(R)) == [[1, 1], [5, 3], [6, 1], [7, 2]]
    assert multiplicity(R) == 2
    assert self_dual_count(R) == 7
    assert is_simple(R)
    assert is_frobenius_type(R)


def test_json_round_trip():
    R = ring(15)
    S = FusionRing.from_json(json.loads(json.dumps(R.to_json())))
    assert S == R and S.labels == R.labels


def test_bad_ring_json():
    for bad in ({}, {"N": [[1]]}, {"N": [[[1]]], "rank": 2}, {"N": [[[1]]], "version": 9},
                {"N": [[[-1]]]}, {"N": [[[1]]], "dual": [3]}):
        with pytest.raises(InvalidArgument):
            FusionRing.from_json(bad)


def test_labels_mismatch():
    with pytest.raises(InvalidArgument):
        FusionRing(np.ones((2, 2, 2)), [RowLabel(1, 1, "trivial")])
