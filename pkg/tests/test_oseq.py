from math import comb

import pytest
from hypothesis import given, strategies as st

from macinv import oseq
from macinv.oseq import (
    BettiTable, OSequence, Reason, classify_gorenstein_h1_3_s4, classify_gorenstein_s4_unimodal,
    classify_level_h1_3_s4, ek_betti, enumerate_o_sequences, gorenstein_necessary,
    hilbert_series_times_denominator, is_o_sequence, is_stable, lex_ideal, lex_strata,
    macaulay_growth, macaulay_rep, min_last_betti_lower_bound, socle_bound, tables_report,
)
from oracles import brute_o_sequences_h1_3_s4, lex_growth

EXAMPLE_36_GENS = {
    (2, 0, 0, 0), (1, 2, 0, 0), (1, 1, 1, 0), (1, 1, 0, 1), (1, 0, 2, 0), (1, 0, 1, 1),
    (1, 0, 0, 2), (0, 3, 0, 0), (0, 2, 1, 0), (0, 2, 0, 1), (0, 1, 2, 0), (0, 1, 1, 1),
    (0, 1, 0, 2), (0, 0, 3, 0), (0, 0, 2, 1), (0, 0, 1, 4), (0, 0, 0, 5),
}


def test_growth_examples():
    assert macaulay_growth(2, 2) == 2
    assert macaulay_growth(3, 2) == 4
    assert macaulay_growth(6, 2) == 10
    assert macaulay_growth(0, 3) == 0
    assert all(macaulay_growth(1, i) == 1 for i in range(1, 6))
    with pytest.raises(ValueError):
        macaulay_growth(3, 0)


@given(st.integers(0, 60), st.integers(1, 6))
def test_rep_is_greedy_and_exact(h, i):
    rep = macaulay_rep(h, i)
    assert rep.value() == h
    tops = [a for a, _ in rep.binomials]
    assert tops == sorted(tops, reverse=True) and len(set(tops)) == len(tops)
    assert all(a >= j >= 1 for a, j in rep.binomials)


@given(st.integers(0, 40), st.integers(1, 5))
def test_growth_monotone(h, i):
    assert macaulay_growth(h, i) <= macaulay_growth(h + 1, i)


@given(st.integers(1, 5), st.integers(0, 6))
def test_growth_of_pure_binomial(i, extra):
    a = i + extra
    assert macaulay_growth(comb(a, i), i) == comb(a + 1, i + 1)


@pytest.mark.parametrize("h", range(0, 13))
@pytest.mark.parametrize("i", [1, 2, 3])
def test_growth_matches_lex_oracle(h, i):
    assert macaulay_growth(h, i) == lex_growth(h, i)


def test_is_o_sequence():
    assert is_o_sequence((1, 3, 6, 10, 15))
    assert not is_o_sequence((1, 3, 2, 4, 2))
    assert is_o_sequence((1, 4, 9, 2, 2))
    assert not is_o_sequence((2, 1))


def test_socle_bound():
    assert socle_bound(3, (0, 0, 0, 0, 1))[1:] == (3, 6, 3, 1)
    b = socle_bound(3, (0, 0, 0, 0, 2))
    assert b[2] == 6 and b[3] == 6
    assert socle_bound(5, (0, 0, 0, 3))[2] == 15


def test_gorenstein_necessary():
    assert gorenstein_necessary((1, 3, 4, 2, 1)).admissible
    v = gorenstein_necessary((1, 3, 5, 2, 1))
    assert not v.admissible and v.reason is Reason.SECOND_BOUND
    assert gorenstein_necessary((1, 13, 12, 13, 1)).admissible
    assert gorenstein_necessary((1, 3, 6, 4, 1)).reason is Reason.TOP_EXCEEDS_H1
    with pytest.raises(ValueError):
        gorenstein_necessary((1, 3, 3, 2))


def test_classifiers():
    assert classify_gorenstein_h1_3_s4((1, 3, 4, 2, 1)).admissible
    assert classify_gorenstein_h1_3_s4((1, 3, 6, 3, 1)).witness_hint == "gorenstein_construct"
    assert not classify_gorenstein_h1_3_s4((1, 3, 5, 2, 1)).admissible
    assert classify_level_h1_3_s4((1, 3, 6, 7, 9)).admissible
    assert classify_level_h1_3_s4((1, 3, 2, 2, 2)).admissible
    v = classify_level_h1_3_s4((1, 3, 6, 10, 3))
    assert not v.admissible and v.message == "not admissible: h3 > 3*h4"
    with pytest.raises(ValueError):
        classify_level_h1_3_s4((1, 3, 2, 2, 1))
    with pytest.raises(ValueError):
        classify_gorenstein_h1_3_s4((1, 4, 2, 2, 1))


def test_unimodal_classifier():
    assert classify_gorenstein_s4_unimodal((1, 4, 5, 3, 1)).admissible
    v = classify_gorenstein_s4_unimodal((1, 12, 11, 12, 1))
    assert v.admissible is False and v.reason is Reason.NONUNIMODAL_SMALL_H1
    v = classify_gorenstein_s4_unimodal((1, 13, 12, 13, 1))
    assert v.reason is Reason.OUTSIDE_RANGE and v.witness_hint == "stanley_witness"
    assert classify_gorenstein_s4_unimodal((1, 14, 13, 14, 1)).admissible is None


def test_enumeration_matches_brute_force():
    ours = enumerate_o_sequences(4, 3, last_min=2)
    brute = [h for h in brute_o_sequences_h1_3_s4(2) if min(h) >= 1]
    assert sorted(ours) == sorted(brute)
    assert len(ours) == 106
    assert ours == sorted(ours, key=lambda h: (sum(h), tuple(h)))
    assert enumerate_o_sequences(2, 1) == [(1, 1, 1)]


def test_gorenstein_enumeration_is_table_plus_symmetric():
    adm = enumerate_o_sequences(4, 3, last_max=1, keep=lambda h: classify_gorenstein_h1_3_s4(h).admissible)
    sym = [h for h in adm if tuple(h) == tuple(reversed(h))]
    assert {(1, 3, k, 3, 1) for k in (3, 4, 5, 6)} == set(sym)
    assert len(adm) == 6 + len(sym)


def test_lex_ideal_example():
    gens = lex_ideal((1, 4, 9, 2, 2), 4)
    assert set(gens) == EXAMPLE_36_GENS and len(gens) == 17
    assert lex_ideal((1, 1, 1), 1) == [(3,)]
    assert set(lex_ideal((1, 2, 1), 2)) == {(2, 0), (1, 1), (0, 3)}
    with pytest.raises(ValueError):
        lex_ideal((1, 3, 2, 4, 2), 3)


def test_betti_example():
    B = ek_betti(lex_ideal((1, 4, 9, 2, 2), 4), 4)
    assert B.row(1) == {2: 1, 3: 14, 5: 2}
    assert B.row(2) == {4: 33, 6: 6}
    assert B.row(3) == {5: 26, 7: 6}
    assert B.row(4) == {6: 7, 8: 2}
    assert min_last_betti_lower_bound(B, 4) == 9


def test_betti_small():
    assert ek_betti([(2,)]).as_rows() == {0: {0: 1}, 1: {2: 1}}
    assert ek_betti([(1, 0), (0, 2)]).as_rows() == {0: {0: 1}, 1: {1: 1, 2: 1}, 2: {3: 1}}
    with pytest.raises(ValueError):
        ek_betti([(0, 1)])           # x2 alone is not stable


def test_last_betti_bound_trivial_cases():
    assert min_last_betti_lower_bound(BettiTable({(4, 6): 7, (3, 6): 7}), 4) == 0
    assert min_last_betti_lower_bound(BettiTable({(4, 6): 2, (3, 6): 5, (3, 7): 1}), 4) == 0


SEQS = [h for s in (2, 3, 4) for h1 in (1, 2, 3, 4) for h in enumerate_o_sequences(s, h1)]


@pytest.mark.parametrize("h", SEQS[::7], ids=str)
def test_lex_ideal_structure_and_hilbert_series(h):
    r = h[1]
    strata = lex_strata(h, r)
    for d in range(1, len(h)):
        for u in strata[d]:
            for k in range(r):
                v = list(u)
                v[k] += 1
                assert tuple(v) in strata[d + 1]
    gens = lex_ideal(h, r)
    assert is_stable(gens)
    assert ek_betti(gens, r).euler_series() == hilbert_series_times_denominator(h, r)


def test_tables_report():
    t1, t2 = tables_report()
    assert len(t1) == 25 and (1, 3, 6, 7, 9) in t1
    assert t2 == [(1, 3, 1, 1, 1), (1, 3, 2, 1, 1), (1, 3, 3, 1, 1),
                  (1, 3, 2, 2, 1), (1, 3, 3, 2, 1), (1, 3, 4, 2, 1)]


def test_tables_env_override(tmp_path, monkeypatch):
    data = tmp_path / "graded.txt"
    data.write_text("# nothing is graded\n")
    monkeypatch.setenv(oseq.GRADED_DATA_ENV, str(data))
    t1, _ = tables_report()
    assert len(t1) == 100
    monkeypatch.setenv(oseq.GRADED_DATA_ENV, str(tmp_path / "missing.txt"))
    with pytest.raises(FileNotFoundError):
        tables_report()


def test_osequence_type():
    h = OSequence((1, 3, 2, 2, 2))
    assert h.socle_degree == 4 and h.embedding_dim == 3
    assert h == (1, 3, 2, 2, 2)
    assert str(h) == "1,3,2,2,2"
    assert oseq.parse_sequence("(1, 3,2)") == (1, 3, 2)
