"""Exact-rational lower bounds, the piecewise form, and table rendering."""

from fractions import Fraction
from math import comb

import pytest

from bookx.bounds import (
    asymptotic_coefficient,
    best_asymptotic_coefficient,
    best_m,
    bound_report,
    counting_bound,
    crossing_lower_bound,
    emit_table,
    exact_range_value,
    format_fixed,
    format_sci,
    limit_coefficient_formula,
    piecewise_bound,
    significant_digits,
    table_known_values,
    upper_coefficient,
)
from bookx.geometry import complete_convex, crossing_count
from bookx.pages import zk


def test_crossing_lower_bound_examples():
    d7 = complete_convex(7, False)
    assert crossing_lower_bound(d7, 0) == 0
    assert crossing_lower_bound(d7, 1) == 14 - 4
    assert crossing_count(d7) == comb(7, 4) >= 10
    with pytest.raises(ValueError):
        crossing_lower_bound(d7, 6)
    with pytest.raises(ValueError):
        crossing_lower_bound(complete_convex(7, True), 1)


def test_counting_bound_values():
    for k in range(3, 13):
        for n in range(2 * k + 1, 3 * k + 1):
            assert counting_bound(k, n, 1) == Fraction((n - 3) * (n - 2 * k), 2)
    assert counting_bound(14, 76, 5) == 4406
    assert counting_bound(9, 30, 0) == 0


def test_best_m_ranges():
    for k in range(3, 13):
        for n in range(2 * k + 1, 3 * k + 1):
            assert best_m(k, n) == (1, False)
        for n in range(3 * k + 1, 4 * k + 1):
            assert best_m(k, n) == (2, False)
    assert best_m(14, 70) == (4, False)
    assert best_m(14, 76) == (5, True)  # e_4(76) < threshold: cap active


def test_piecewise_examples():
    assert piecewise_bound(5, 13)[0] == 15
    assert piecewise_bound(6, 16)[0] == 26
    assert piecewise_bound(7, 21)[0] == 63
    value, branch, _ = piecewise_bound(5, 10)
    assert value == 0 and branch == 0  # vacuous below 2k
    # beta = +1 extends the third branch: k = 11, n = 50 needs it
    value, branch, beta = piecewise_bound(11, 50)
    assert branch == 3 and beta == 1


def test_piecewise_equals_direct_maximum():
    for k in range(3, 13):
        for n in range(2 * k + 1, 8 * k + 1):
            value, branch, _ = piecewise_bound(k, n)
            direct = max(counting_bound(k, n, m) for m in range(6))
            assert value == direct, (k, n, branch, value, direct)
            assert branch == 0 or branch == best_m(k, n)[0] or value == direct


def test_piecewise_below_construction():
    for k in range(3, 13):
        for n in range(2 * k + 1, 6 * k + 1):
            assert piecewise_bound(k, n)[0] <= zk(n, k)


def test_bound_report_ceiling():
    rep = bound_report(4, 40)
    assert rep.best_bound == -(-rep.best_raw.numerator // rep.best_raw.denominator)
    assert rep.chosen_m == 5 and rep.cap_active
    rep = bound_report(5, 13)
    assert rep.best_bound == 15 and rep.branch == 1


def test_exact_range_values():
    assert exact_range_value(5, 14) == 22
    assert exact_range_value(6, 18) == 45
    for k in range(3, 31):
        assert exact_range_value(k, 3 * k) == (3 * k - 3) * k // 2 == zk(3 * k, k)
    with pytest.raises(ValueError):
        exact_range_value(5, 16)


def test_lower_bound_meets_construction_in_exact_range():
    # for 2k < n <= 3k the three routes agree: the exact value, the
    # balanced-construction count, and the first piecewise branch
    for k in range(3, 21):
        for n in range(2 * k + 1, 3 * k + 1):
            value = exact_range_value(k, n)
            assert value == zk(n, k)
            bound, branch, _ = piecewise_bound(k, n)
            assert branch == 1 and bound == value


def test_limit_coefficient_formula():
    assert limit_coefficient_formula(14) == Fraction(5843656000, 1718464200467)
    assert limit_coefficient_formula(3) < Fraction(2, 9) * Fraction(11, 12)
    k = 10**4
    val = k * k * limit_coefficient_formula(k)
    assert abs(val / Fraction(8000, 12321) - 1) < Fraction(1, 100)


def test_asymptotic_coefficient():
    assert asymptotic_coefficient(14, 76) == Fraction(4406, 1282975)
    with pytest.raises(ValueError):
        asymptotic_coefficient(14, 28)


def test_best_asymptotic_coefficient_scan():
    coeff, nprime, m = best_asymptotic_coefficient(14)
    assert (coeff, nprime, m) == (Fraction(4406, 1282975), 76, 5)
    assert best_asymptotic_coefficient(15)[0] == Fraction(640, 214389)
    assert best_asymptotic_coefficient(18)[0] == Fraction(8086, 3921225)


def test_significant_digit_rendering():
    up14 = upper_coefficient(14)  # 27/2744 = 0.009839650...
    assert up14 == Fraction(27, 2744)
    assert significant_digits(up14, 5, "trunc") == ("98396", -3)
    assert significant_digits(up14, 5, "round") == ("98397", -3)
    assert format_sci(up14, 5, "trunc") == "9.8396e-03"
    assert format_fixed(Fraction(349017, 1000000), 4, "round") == "0.3490"
    # carry across a decade
    assert significant_digits(Fraction(9999, 10000), 3, "round") == ("100", 0)
    assert format_fixed(Fraction(25, 2), 3, "round") == "12.5"
    with pytest.raises(ValueError):
        significant_digits(Fraction(0), 3)


def test_known_values_table():
    rows = table_known_values()
    assert rows[0][0] == "k\\n"
    nu2 = rows[1]
    assert nu2[0] == "nu_2"
    assert [int(x) for x in nu2[1:]] == [
        1, 3, 9, 18, 36, 60, 100, 150, 225, 315, 441, 588, 784, 1008, 1296, 1620, 2025, 2475,
    ]
    nu7 = rows[6]
    assert nu7[-2] == "63" and nu7[-1] == "-"
    with pytest.raises(ValueError):
        emit_table(4)
