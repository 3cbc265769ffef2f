from fractions import Fraction

from hypercf.figures import figure_degrees
from hypercf.measure import (
    empirical_nu0, level_peaks, nu0_first, nu0_second, nu_eq, ratio_at, record_ratios,
)


def test_first_kind_closed_form():
    assert nu0_first(7, 2, 3) == Fraction(2, 3)
    assert nu0_first(13, 4, 6) == Fraction(2, 3)
    assert nu0_first(11, 5, 4) == 0


def test_second_kind_closed_form():
    nu0, nu1, nu2 = nu0_second(5, 2, (1, 4, 4))
    assert (nu0, nu1, nu2) == (2, 12, 20)
    assert (5 - 1) * (5 - 2 * 2 + 1) == Fraction(2 * nu1, 3)


def test_extremal_shape_is_maximal():
    for p in (5, 7, 11, 13):
        for k in range(1, (p + 1) // 2):
            assert nu0_second(p, k, (1,))[0] == p - 1
            for gaps in ((2,), (1, 2), (3, 3), (1, 4, 4)):
                assert nu0_second(p, k, gaps)[0] < p - 1


def test_nu_eq():
    assert nu_eq(7) == Fraction(8, 3)
    assert nu_eq(5) == 4
    assert nu_eq(13) == Fraction(8, 3)


def test_figure1_ratio():
    f1 = figure_degrees(1)
    assert f1[121] == 1041
    assert ratio_at(f1, 122) == Fraction(1041, 521)
    assert abs(ratio_at(f1, 122) - 2) < Fraction(2, 100)


def test_figure2_peaks_approach_two_thirds():
    peaks = level_peaks(figure_degrees(2))
    assert peaks[-1] == (94, Fraction(115, 171))
    assert abs(peaks[-1][1] - Fraction(2, 3)) < Fraction(1, 100)


def test_constant_degrees():
    rep = empirical_nu0([3] * 50, 0)
    assert rep.empirical_ratios[0] == (2, Fraction(1))
    assert all(Fraction(3, 3 * (n - 1)) == r for n, r in record_ratios([3] * 50))


def test_converged_flag():
    rep = empirical_nu0(figure_degrees(1), 0, target=Fraction(2))
    assert rep.converged and rep.last_ratio == Fraction(1041, 521)
