from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fusionforge.chartables import build_psl2_table, build_table
from fusionforge.criteria import (ALL_CRITERIA, EXHAUSTIVE, FAIL, FAST, PASS, drinfeld_center, extended_cyclotomic,
                                  frobenius, isaacs, modular_divisibility, naive_spectrum_witnesses, one_spectrum,
                                  ostrik, ostrik_sum, preone_indices, prezero_index, run_all, schur_product,
                                  schur_values, spectrum_witnesses, zero_spectrum)
from fusionforge.errors import InvalidArgument
from fusionforge.exactnum import sqrt_integer
from fusionforge.fusionring import FusionRing
from fusionforge.verlinde import reconstruct

from oracles import table_to_complex


def ostrik_closed_form(q):
    D = q * q * (q * q - 1) ** 2
    if q % 2 == 0:
        return Fraction(q ** 5 - q ** 3 - 3 * q * q + 2, D)
    if q % 4 == 3:
        return Fraction(2 * q ** 5 - 3 * q ** 4 - 9 * q * q + 6, D)
    return Fraction(2 * q ** 5 - 3 * q ** 4 - 4 * q ** 3 - 9 * q * q + 6, D)


@pytest.mark.parametrize("q,family", [(q, f) for q in (4, 5, 6, 7, 9, 10, 12, 13) for f in ("psl2", "etingof")])
def test_schur_values_match_floats(q, family):
    t = build_table(q, family)
    lam = table_to_complex(t)
    d = lam[:, 0].real
    for (a, b, c), v in schur_values(t):
        want = (lam[:, a] * lam[:, b] * lam[:, c] / d).sum()
        assert isinstance(v, Fraction)
        assert abs(float(v) - want) < 1e-8


def test_schur_q6_zeta7_values():
    # columns of the zeta_7 family: the two values of the sum over the family
    vals = {v for _, v in schur_values(build_psl2_table(6))}
    assert Fraction(49, 30) in vals and Fraction(7, 30) in vals


def test_schur_detects_negative_value():
    # triples are scanned in order; (0, 0, 1) gives 1 - 2 = -1
    from fusionforge.chartables import Eigentable, RowLabel
    t = Eigentable([[1, 1], [1, -2]], [RowLabel(1, 1, "trivial"), RowLabel(1, 2, "custom")], [1, 1], check=False)
    rep = schur_product(t)
    assert rep.verdict == FAIL and rep.witness["triple"] == [0, 0, 1]
    assert rep.witness["value"] == -1


def test_schur_irrational_table():
    from fusionforge.chartables import Eigentable, RowLabel
    phi = (1 + sqrt_integer(5)) / 2
    psi = (1 - sqrt_integer(5)) / 2
    # columns carry different term counts per row; sums are real irrationals
    rows = [[1, 1, 1], [2, phi, psi], [2, psi - 3, phi]]
    labels = [RowLabel(1, 1, "trivial"), RowLabel(2, 1, "custom"), RowLabel(2, 2, "custom")]
    t = Eigentable(rows, labels, [1, 1, 1], check=False)
    seen = 0
    for (a, b, c), v in schur_values(t):
        direct = sum(row[a] * row[b] * row[c] * Fraction(1, d) for row, d in zip(t.entries, t.degrees))
        assert direct == v
        seen += not isinstance(v, Fraction)
    assert seen == 5
    rep = schur_product(t, require_rational=False)
    assert rep.verdict == FAIL and rep.witness == {"triple": [0, 0, 1], "value": -3}
    good = Eigentable([[1, 1], [2, phi]], labels[:2], [1, 1], check=False)
    rep = schur_product(good, require_rational=False)
    assert rep.verdict == PASS and rep.details["irrational_values"] > 0
    with pytest.raises(AssertionError):
        schur_product(good, require_rational=True)


@pytest.mark.parametrize("q", range(2, 51))
def test_ostrik_branch_formulas(q):
    t = build_psl2_table(q)
    assert ostrik_sum(t) == ostrik_closed_form(q)
    assert ostrik(t).passed


def test_ostrik_q6_value():
    assert ostrik_sum(build_psl2_table(6)) == Fraction(7454, 44100)


@pytest.mark.parametrize("q", range(2, 41))
def test_codegree_criteria_pass(q):
    for family in ("psl2", "etingof"):
        t = build_table(q, family)
        for rep in (drinfeld_center(t), extended_cyclotomic(t), isaacs(t), frobenius(t)):
            assert rep.verdict == PASS and rep.method == "exact", rep.to_json()


def test_frobenius_fails_on_bad_degrees():
    R = FusionRing(np.array([[[1, 0], [0, 1]], [[0, 1], [1, 1]]]))
    assert modular_divisibility(R, [1, 3]).verdict == FAIL


@st.composite
def raw_tensor(draw):
    r = draw(st.integers(2, 5))
    flat = draw(st.lists(st.sampled_from([0, 0, 1, 1, 1, 2]), min_size=r ** 3, max_size=r ** 3))
    N = np.array(flat, dtype=np.int64).reshape(r, r, r)
    dual = draw(st.permutations(range(r)))
    return N, list(dual)


@settings(max_examples=40, deadline=None)
@given(raw_tensor(), st.sampled_from(["zero", "one"]))
def test_search_equals_naive_on_raw_tensors(data, kind):
    N, dual = data
    assert spectrum_witnesses(N, dual, kind) == naive_spectrum_witnesses(N, dual, kind)


@pytest.mark.parametrize("q,family", [(2, "psl2"), (3, "psl2"), (4, "psl2"), (5, "psl2"), (6, "etingof"),
                                      (7, "psl2"), (4, "etingof"), (5, "etingof")])
def test_search_equals_naive_on_rings(q, family):
    R = reconstruct(build_table(q, family))
    for kind in ("zero", "one"):
        assert spectrum_witnesses(R.N, R.dual, kind) == naive_spectrum_witnesses(R.N, R.dual, kind) == []


def test_planted_witness_found():
    # a random raw tensor with witnesses of both kinds; the first must be reported
    rng = np.random.default_rng(7)
    while True:
        N = rng.choice([0, 1, 1, 2], size=(4, 4, 4))
        dual = [0, 1, 2, 3]
        w0 = naive_spectrum_witnesses(N, dual, "zero")
        w1 = naive_spectrum_witnesses(N, dual, "one")
        if w0 and w1:
            break
    assert spectrum_witnesses(N, dual, "zero", collect_all=False)[0] in w0
    assert spectrum_witnesses(N, dual, "one", collect_all=False)[0] in w1
    R = FusionRing(N, dual=dual)
    rep = zero_spectrum(R, mode="exhaustive")
    assert rep.verdict == FAIL and rep.method == EXHAUSTIVE
    assert tuple(rep.witness[k] for k in ("i1", "i2", "i3", "i4", "i5", "i6", "i7", "i8", "i9")) in w0


@pytest.mark.parametrize("q", range(2, 12))
def test_exhaustive_spectrum_psl2(q):
    R = reconstruct(build_psl2_table(q))
    assert zero_spectrum(R, "exhaustive").verdict == PASS
    assert one_spectrum(R, "exhaustive").verdict == PASS


@pytest.mark.parametrize("q", range(2, 14))
def test_exhaustive_spectrum_etingof(q):
    R = reconstruct(build_table(q, "etingof"))
    assert zero_spectrum(R, "exhaustive").verdict == PASS
    assert one_spectrum(R, "exhaustive").verdict == PASS


@pytest.mark.parametrize("q", range(4, 41))
def test_fast_path_hypotheses(q):
    R = reconstruct(build_psl2_table(q))
    if q % 2 == 0 or q % 4 == 1:
        assert prezero_index(R) is not None
        assert zero_spectrum(R).method == FAST
    if q % 2 == 0 and q >= 6:
        assert preone_indices(R) is not None
        assert one_spectrum(R).method == FAST
    assert zero_spectrum(R).passed and one_spectrum(R).passed


@pytest.mark.parametrize("q", range(4, 51))
def test_modular_divisibility_obstruction(q):
    R = reconstruct(build_psl2_table(q))
    rep = modular_divisibility(R)
    assert rep.verdict == FAIL and rep.details["obstruction"]
    d = rep.witness["dim"]
    assert rep.witness["fpdim"] % (d * d) != 0


def test_modular_divisibility_passes_for_pointed():
    N = np.zeros((3, 3, 3), dtype=np.int64)
    for a in range(3):
        for b in range(3):
            N[a, b, (a + b) % 3] = 1
    assert modular_divisibility(FusionRing(N)).verdict == PASS


def test_run_all_and_json():
    reps = run_all(6)
    assert sorted(r.criterion for r in reps) == sorted(ALL_CRITERIA)
    for r in reps:
        js = r.to_json()
        assert set(js) == {"criterion", "details", "method", "verdict", "witness"}
    assert run_all(6, only=["ostrik"])[0].criterion == "ostrik"
    with pytest.raises(InvalidArgument):
        run_all(6, only=["nope"])
    with pytest.raises(InvalidArgument):
        run_all(1)
    with pytest.raises(InvalidArgument):
        zero_spectrum(reconstruct(build_psl2_table(5)), mode="slow")
