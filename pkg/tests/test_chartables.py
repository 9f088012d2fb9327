from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from fusionforge.chartables import (Eigentable, build_etingof_table, build_psl2_table, build_table, column_norm,
                                    find_duals, verify_egyptian, verify_reconstruction_assumptions,
                                    verify_schur_orthogonality)
from fusionforge.errors import InconsistentTableError, InvalidArgument
from fusionforge.exactnum import rational

from oracles import CLASSICAL_DEGREES, agl1_class_sizes, psl2_class_sizes

QS = st.integers(2, 60)
FAMS = st.sampled_from(["psl2", "etingof"])


def psl2_rank(q):
    return q + 1 if q % 2 == 0 else (q + 5) // 2


@settings(max_examples=40, deadline=None)
@given(QS, FAMS)
def test_table_invariants(q, family):
    t = build_table(q, family)
    assert t.entries[0] == tuple(rational(1) for _ in range(t.rank))
    assert t.class_sizes[0] == 1
    assert sum(t.class_sizes) == t.fpdim_total == sum(d * d for d in t.degrees)
    assert verify_egyptian(t)
    for j in range(t.rank):
        assert column_norm(t, j) == t.codegrees[j]


@pytest.mark.parametrize("q", range(2, 31))
def test_psl2_rank_and_fpdim(q):
    t = build_psl2_table(q)
    assert t.rank == psl2_rank(q)
    assert t.fpdim_total == q * (q * q - 1) // gcd(2, q - 1)


@pytest.mark.parametrize("q", range(2, 31))
def test_etingof_rank_and_type(q):
    t = build_etingof_table(q)
    assert t.rank == q and t.fpdim_total == q * (q - 1)
    assert sorted(t.degrees) == [1] * (q - 1) + [q - 1]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 6, 7, 12, 13, 15, 21])
def test_orthogonality_both_families(q):
    for family in ("psl2", "etingof"):
        t = build_table(q, family)
        assert verify_schur_orthogonality(t)
        assert verify_reconstruction_assumptions(t).ok


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_class_sizes_match_actual_groups(p):
    assert sorted(build_psl2_table(p).class_sizes) == psl2_class_sizes(p)
    assert sorted(build_etingof_table(p).class_sizes) == agl1_class_sizes(p)


@pytest.mark.parametrize("q", sorted(CLASSICAL_DEGREES))
def test_classical_degrees(q):
    assert sorted(build_psl2_table(q).degrees) == CLASSICAL_DEGREES[q]


def test_duals():
    # x_{q-1/2} pair is the only non-self-dual pair for q = 3 mod 4
    for q in (7, 11, 15, 19):
        dual, _ = find_duals(build_psl2_table(q))
        assert sum(1 for i, d in enumerate(dual) if d != i) == 2
    for q in (6, 8, 9, 13, 21):
        dual, _ = find_duals(build_psl2_table(q))
        assert dual == tuple(range(len(dual)))


@pytest.mark.parametrize("q,family", [(6, "psl2"), (15, "psl2"), (7, "etingof")])
def test_json_round_trip(q, family):
    t = build_table(q, family)
    u = Eigentable.from_json(t.to_json())
    assert u.entries == t.entries and u.class_sizes == t.class_sizes
    assert u.row_labels == t.row_labels and u.to_json() == t.to_json()


def test_corrupted_entry_detected():
    t = build_psl2_table(6)
    bad = t.with_entry(1, 2, t.entries[1][2] + 1)
    assert not verify_schur_orthogonality(bad)
    assert not verify_reconstruction_assumptions(bad).ok
    with pytest.raises(InconsistentTableError):
        Eigentable(bad.entries, bad.row_labels, bad.class_sizes)


def test_bad_inputs():
    for q in (0, 1, -4):
        with pytest.raises(InvalidArgument):
            build_psl2_table(q)
    with pytest.raises(InvalidArgument):
        build_table(5, "sl3")
    with pytest.raises(InvalidArgument):
        Eigentable.from_json({"entries": []})
    t = build_psl2_table(4)
    with pytest.raises(InconsistentTableError):
        Eigentable(t.entries, t.row_labels, [1] + list(t.class_sizes[1:-1]) + [t.class_sizes[-1] + 1])


def test_format_grid():
    text = build_psl2_table(4).format_grid()
    assert "E(5)" in text and len(text.splitlines()) == 7


def test_q6_codegrees():
    t = build_psl2_table(6)
    assert sorted(t.codegrees) == [5, 5, 6, 7, 7, 7, 210]
    assert sum(Fraction(1, c) for c in t.codegrees) == 1
