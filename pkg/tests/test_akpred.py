from fractions import Fraction

import gmpy2
import pytest

from hyperzeta.akpred import (PrecisionContext, H_eval, default_truncation, leading_constants,
                              q1_closed, qk_coefficients, qk_direct, qk_values,
                              regularized_F, render, series_check, series_value)
from hyperzeta.errors import NotTabulated, PoleHit, PrecisionInsufficient
from hyperzeta.exactmoments import keating_snaith
from hyperzeta.series_data import SERIES, coefficient_at

# Rows of the exact-moment tables as {h: coefficient of q^(-h/2)}, trusted below h_max.
ROWS = {
    (1, 1): ({0: 1}, 2),
    (1, 2): ({0: 1, 1: -1}, 4),
    (1, 3): ({0: 2}, 6),
    (1, 4): ({0: 2, 1: -1, 2: -1, 5: -1, 6: 1}, 7),
    (1, 5): ({0: 3, 2: -1, 4: 1}, 8),
    (1, 6): ({0: 3, 1: -1, 2: -2, 4: 1, 5: -1, 6: -1, 7: 1, 8: -1}, 9),
    (1, 7): ({0: 4, 2: -2, 4: 2, 6: -2, 8: 2, 10: 2}, 12),
    (1, 8): ({0: 4, 1: -1, 2: -3, 4: 2, 5: -1, 6: -3, 7: 1, 8: 3, 9: -3, 10: -1}, 11),
    (1, 9): ({0: 5, 2: -3, 4: 3, 6: -4, 8: 6, 10: -5, 12: 1}, 14),
    (2, 1): ({0: 1}, 2),
    (2, 2): ({0: 1, 1: -2, 2: 1}, 6),
    (2, 3): ({0: 5, 4: -1}, 8),
    (2, 4): ({0: 5, 1: -6, 2: -3, 3: 4, 4: -1, 5: -2, 6: 7, 7: -4}, 8),
    (2, 5): ({0: 14, 2: -11, 4: 10, 6: 5, 8: -15}, 10),
    (2, 6): ({0: 14, 1: -12, 2: -19, 3: 14, 4: 17, 5: -24, 7: 24, 8: -33, 9: 14}, 10),
    (2, 7): ({0: 30, 2: -40, 4: 60, 6: -66, 8: 20, 10: 101}, 12),
    (3, 1): ({0: 1}, 2),
    (3, 2): ({0: 1, 1: -3, 2: 3, 3: -1}, 4),
    (3, 3): ({0: 14, 4: -6}, 8),
    (3, 4): ({0: 14, 1: -28, 3: 28, 4: -20, 5: 3, 6: 27}, 7),
    (3, 5): ({0: 84, 2: -111, 4: 91}, 6),
    (3, 7): ({0: 330, 2: -832, 4: 1674, 6: -1986, 8: -240}, 10),
}


def rel(a, b):
    return abs(float((a - b) / b))


@pytest.mark.parametrize("key", sorted(ROWS))
def test_series_reproduces_moment_rows(key):
    k, d = key
    row, hmax = ROWS[key]
    parity = "odd" if d % 2 else "even"
    g = (d - 1) // 2 if d % 2 else (d - 2) // 2
    for h in range(hmax):
        assert coefficient_at(k, parity, h, g) == row.get(h, 0), (k, d, h)


def test_series_leading_term_is_keating_snaith():
    for k in (1, 2, 3):
        for g in range(0, 6):
            assert coefficient_at(k, "odd", 0, g) == keating_snaith(k, g)


def test_series_unknown():
    with pytest.raises(NotTabulated):
        series_value(5, 4, "odd", 2)


def test_q1_cross_oracle():
    for q, d in [(3, 13), (9, 10), (17, 8), (10009, 3), (5, 12)]:
        a = qk_direct(q, d, 1).value
        b = q1_closed(q, d).value
        assert abs(a - b) < gmpy2.mpfr(10) ** -25


def test_known_values():
    assert str(qk_direct(3, 13, 1).decimal(22)) == "5.710336021545693923735"
    assert str(qk_direct(3, 13, 3).decimal(22)) == "1770.108824445967349489"
    assert str(qk_direct(10009, 3, 2).decimal(22)) == "4.999999990017976230662"


def test_truncation_and_shift_stability():
    base = qk_direct(9, 6, 3).value
    longer = qk_direct(9, 6, 3, PrecisionContext.for_problem(9, 3, truncation=default_truncation(9, 22, 3) + 10)).value
    assert rel(base, longer) < 1e-22
    qk_direct(9, 6, 3, check_shift=True)


def test_truncation_grows_with_k():
    assert default_truncation(3, 22, 10) > default_truncation(3, 22, 1)


def test_precision_guard():
    with pytest.raises(PrecisionInsufficient):
        PrecisionContext.for_problem(3, 4, digits=200)
    with pytest.raises(PrecisionInsufficient):
        PrecisionContext.for_problem(3, 2, shift_exponent=12)
    with pytest.raises(PrecisionInsufficient):
        PrecisionContext.for_problem(3, 2, truncation=5)


def test_order_of_shifts_does_not_matter():
    a = qk_direct(5, 7, 3).value
    b = qk_direct(5, 7, 3, order=[3, 1, 2]).value
    assert rel(a, b) < 1e-22


def test_pole_and_domain():
    prec = PrecisionContext.for_problem(3, 2)
    with pytest.raises(PoleHit):
        H_eval([Fraction(1, 10), Fraction(-1, 10)], 3, "odd", prec)
    with pytest.raises(ValueError):
        H_eval([Fraction(1, 10), Fraction(3, 5)], 3, "odd", prec)


@pytest.mark.parametrize("q,k", [(3, 1), (3, 3), (25, 2)])
def test_regularized_factor_at_origin_is_a_k(q, k):
    prec = PrecisionContext.for_problem(q, k)
    a_k, c0 = leading_constants(q, k, prec)
    F0 = regularized_F([0] * k, q, "odd", prec)
    assert rel(F0, a_k) < 1e-25
    # the even-d correction cancels at the origin
    assert rel(regularized_F([0] * k, q, "even", prec), a_k) < 1e-25


@pytest.mark.parametrize("q,k", [(3, 2), (81, 3)])
def test_leading_coefficient(q, k):
    prec = PrecisionContext.for_problem(q, k)
    _, c0 = leading_constants(q, k, prec)
    coef = qk_coefficients(q, k, "odd")
    assert rel(coef[0], c0) < 1e-20


def test_qk_polynomial_reproduces_values():
    coef = qk_coefficients(7, 2, "even")
    for g, v in zip((5, 9), qk_values(7, 2, "even", [5, 9])):
        with gmpy2.context(precision=400):
            poly = sum(c * (2 * g) ** (len(coef) - 1 - r) for r, c in enumerate(coef))
        assert rel(poly, v) < 1e-20


def test_large_q_limit_of_k2_polynomial():
    coef = qk_coefficients(10009, 2, "odd")
    ks = [Fraction(1, 24), Fraction(3, 8), Fraction(13, 12), Fraction(1)]
    for c, e in zip(coef, ks):
        assert abs(float(c) - float(e)) < 2e-3


def test_series_check_k2():
    rep = series_check(53, 2, "odd", 2, order=4)
    assert rep.ok, rep
    full = series_check(53, 2, "odd", 2)
    assert full.ok and full.abs_dev < rep.abs_dev


def test_render_half_even():
    assert str(render(Fraction(25, 10), 1)) == "2"
    assert str(render(Fraction(35, 10), 1)) == "4"
    assert str(render(gmpy2.mpfr("1.25"), 2)) == "1.2"


def test_series_tables_present():
    assert {(1, "odd"), (1, "even"), (2, "odd"), (2, "even"), (3, "odd"), (3, "even")} <= set(SERIES)
