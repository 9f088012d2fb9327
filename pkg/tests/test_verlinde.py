import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fusionforge.chartables import Q, QP1, build_psl2_table, build_table
from fusionforge.errors import InconsistentTableError, ReconstructionError
from fusionforge.exactnum import rational
from fusionforge.verlinde import oracle_lemma_suite, reconstruct

from fixtures_util import load_golden
from oracles import float_verlinde


@pytest.mark.parametrize("q", [6, 15, 21])
def test_golden_matches(q):
    assert np.array_equal(reconstruct(build_psl2_table(q)).N, load_golden(q)["N"])


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 22), st.sampled_from(["psl2", "etingof"]))
def test_matches_float_oracle(q, family):
    t = build_table(q, family)
    assert np.array_equal(reconstruct(t).N, float_verlinde(t))


@pytest.mark.parametrize("q", [6, 8, 15, 19, 21, 25])
def test_lemma_suite(q):
    rep = oracle_lemma_suite(q)
    assert rep.ok, rep.to_json()
    assert all(l.checked > 0 for l in rep.lemmas)


def test_even_lemma_literal_typo():
    # <x_{q+1,c1} x_{q+1,c2}, x_q> is printed once as 1; the table gives 1 + delta
    t = build_psl2_table(8)
    R = reconstruct(t)
    rows = {lab: i for i, lab in enumerate(t.row_labels)}
    plus = [i for lab, i in rows.items() if lab.family == QP1]
    steinberg = [i for lab, i in rows.items() if lab.family == Q][0]
    a = plus[0]
    assert R.N[a, a, steinberg] == 2
    assert R.N[plus[0], plus[1], steinberg] == 1


def test_non_integral_table_raises():
    t = build_psl2_table(5)
    bad = t.with_entry(1, 1, rational(0))
    with pytest.raises((ReconstructionError, InconsistentTableError)):
        reconstruct(bad)


def test_reconstruction_error_carries_index():
    t = build_psl2_table(7)
    bad = t.with_entry(3, 0, t.entries[3][0] + 1)
    with pytest.raises(ReconstructionError) as info:
        reconstruct(bad)
    assert len(info.value.index) == 3
