import pytest

from hypercf.figures import figure_degrees
from hypercf.hyper import expand, extremal_spec
from hypercf.modular_poly import DensePoly
from hypercf.patterns import (
    check_extremal, degree_total, first_level, index_degrees, index_word_first,
    index_word_second, iter_first, j_word, second_level, v_ni, verify_perfect,
)
from hypercf.quartic import build_lambda0, expand_alpha


def test_first_kind_prefix():
    assert index_word_first(2, 3, 19) == [0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2]
    assert first_level(3, 0) == [0]
    assert index_degrees(7, 2, "first", index_word_first(2, 3, 19))[:9] == [1, 1, 1, 3, 1, 1, 1, 1, 3]


def test_second_kind_prefix():
    w = index_word_second(2, (1, 4, 4), 40)
    assert w[:12] == [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]
    assert w[12:14] == [2, 3]
    degs = index_degrees(5, 2, "second", w)
    assert degs == figure_degrees(1)[:40]


def test_level_lengths_follow_recurrence():
    for k in (1, 2, 3):
        lens = [len(first_level(k, n)) for n in range(5)]
        for n in range(1, 5):
            assert lens[n] == 1 + 2 * k * sum(lens[:n])


def test_prefix_stability():
    a = index_word_second(3, (2, 3), 500)
    b = index_word_second(3, (2, 3), 1500)
    assert b[:500] == a


@pytest.mark.parametrize("p", [5, 7, 11])
def test_summation_identities(p):
    for k in range(1, (p + 1) // 2):
        for n in range(1, 4):
            assert degree_total(p, k, "first", first_level(k, n)) == p ** n
            assert degree_total(p, k, "second", j_word(k, n)) == p ** (2 * n - 1)
            for li in (1, 2, 4):
                assert degree_total(p, k, "second", v_ni(k, n, li)) == p ** (2 * n) * (p - 2 * k + li)


def test_verify_perfect_and_fault_injection():
    lam = build_lambda0(7)
    exp = expand_alpha(7, 120, cross_check=False)
    rep = verify_perfect(exp.word, lam.spec.ctx, lam.kind, lam.meta)
    assert rep.perfect and rep.matched == 120 and len(rep.lambdas) == 120
    word = list(exp.word)
    a = word[50]
    c = a.to_list()
    c[0] = (c[0] + 1) % 7
    word[50] = DensePoly(c, 7)
    rep = verify_perfect(tuple(word), lam.spec.ctx, lam.kind, lam.meta)
    assert rep.mismatch_position == 51 and rep.reason == "not proportional"
    assert rep.matched == 50


def test_index_mismatch_detected():
    lam = build_lambda0(7)
    exp = expand_alpha(7, 30, cross_check=False)
    # shifting the prediction by one letter puts A_1 where A_0 is expected
    rep = verify_perfect(exp.word[1:], lam.spec.ctx, lam.kind, lam.meta)
    assert not rep.perfect and rep.reason in ("degree mismatch", "index mismatch")


def test_csv_export():
    lam = build_lambda0(5)
    exp = expand_alpha(5, 14, cross_check=False)
    rep = verify_perfect(exp.word, lam.spec.ctx, lam.kind, lam.meta)
    lines = rep.to_csv().splitlines()
    assert lines[0] == "n,index,lambda,degree"
    assert lines[1] == f"1,0,{rep.lambdas[0]},1"
    assert lines[14].startswith("14,3,")


@pytest.mark.parametrize("p,k", [(3, 1), (5, 2), (7, 3), (7, 2)])
def test_extremal_feasible_depth(p, k):
    s = extremal_spec(p, k, 1, 2, 2)
    exp = expand(s, 7, cap=1 << 15)
    rep = check_extremal(exp.word, s.ctx, s.eps1)
    assert rep.mismatch_position is None and rep.depth == exp.certified >= 5


@pytest.mark.parametrize("k", [1, 2, 3])
def test_counts_match_streams(k):
    from collections import Counter
    from hypercf.patterns import (
        block_counts, first_level_counts, j_counts, second_level_counts,
    )
    for n in range(4):
        assert first_level_counts(k, n) == Counter(first_level(k, n))
    for n in range(1, 3):
        assert j_counts(k, n) == Counter(j_word(k, n))
        assert block_counts(k, n, 2) == Counter(v_ni(k, n, 3))
        assert second_level_counts(k, n, (1, 4)) == Counter(second_level(k, n, (1, 4)))
