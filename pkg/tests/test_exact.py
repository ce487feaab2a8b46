from fractions import Fraction

import pytest

from hyperzeta.algebraic import AlgebraicValue
from hyperzeta.errors import NotPrime, NotTabulated, PrecisionExceeded, UnsupportedWeight
from hyperzeta.exactmoments import (ERRATA, binomial_identity_1, binomial_identity_2,
                                    evaluate_table, keating_snaith, table_polynomial,
                                    theorem_d3, theorem_d4)
from hyperzeta.modforms import DeltaExpansion, delta_expansion, hecke_trace, tau

KNOWN_TAU = {1: 1, 2: -24, 3: 252, 4: -1472, 5: 4830, 6: -6048, 7: -16744, 11: 534612,
             13: -577738, 23: 18643272}


def test_tau_values():
    for m, t in KNOWN_TAU.items():
        assert tau(m) == t


def test_two_expansions_agree():
    a = DeltaExpansion(400, "jacobi")
    b = DeltaExpansion(400, "pentagonal")
    assert a.tau_list == b.tau_list


def test_tau_multiplicative():
    D = delta_expansion(2000)
    assert D[6] == D[2] * D[3]
    assert D[35] == D[5] * D[7]
    # tau(p^2) = tau(p)^2 - p^11
    assert D[49] == D[7] ** 2 - 7 ** 11


def test_tau_congruence():
    D = delta_expansion(1000)
    for n in range(1, 1001):
        assert (D[n] - sum(e ** 11 for e in range(1, n + 1) if n % e == 0)) % 691 == 0


def test_tau_bounds_errors():
    with pytest.raises(PrecisionExceeded):
        delta_expansion(50)[51]
    with pytest.raises(ValueError):
        tau(0)


def test_hecke_traces():
    assert hecke_trace(12, 5) == 4830
    assert hecke_trace(10, 5) == 0 and hecke_trace(14, 5) == 0
    with pytest.raises(UnsupportedWeight):
        hecke_trace(16, 5)
    with pytest.raises(UnsupportedWeight):
        hecke_trace(7, 5)


@pytest.mark.parametrize("k", range(1, 11))
def test_d3_leading_term_is_catalan_like(k):
    # p -> infinity limit is the leading coefficient of the stored row
    lead = table_polynomial(3, k).terms[0][1]
    big = theorem_d3(10009, k)
    assert abs(big - lead) < Fraction(lead, 10 ** 6)


def test_d3_against_stored_rows():
    for p in (5, 7, 11, 13, 101):
        for k in range(1, 11):
            corrected = evaluate_table(3, k, p, corrected=True)
            assert corrected == AlgebraicValue(theorem_d3(p, k), 0, p)


def test_d3_uncorrected_row_differs():
    assert evaluate_table(3, 7, 5) != AlgebraicValue(theorem_d3(5, 7), 0, 5)
    assert (3, 7) in ERRATA


def test_d5_k1_erratum():
    from hyperzeta.ensemble import moments
    exact = moments(5, 5, 1).mean(1)
    assert exact == AlgebraicValue(Fraction(1774, 625), 0, 5)
    assert evaluate_table(5, 1, 5) != exact
    assert evaluate_table(5, 1, 5, corrected=True) == exact


def test_d4_against_stored_rows():
    for p in (5, 7, 11):
        for k in range(1, 6):
            assert evaluate_table(4, k, p) == theorem_d4(p, k)


def test_theorem_errors():
    with pytest.raises(NotPrime):
        theorem_d3(9, 2)
    with pytest.raises(NotPrime):
        theorem_d4(3, 2)
    with pytest.raises(UnsupportedWeight):
        theorem_d3(5, 14)
    with pytest.raises(NotTabulated):
        table_polynomial(11, 1)


def test_keating_snaith_leading_coefficients():
    assert [keating_snaith(k, 1) for k in range(1, 6)] == [2, 5, 14, 42, 132]
    assert [keating_snaith(k, 2) for k in range(1, 6)] == [3, 14, 84, 594, 4719]
    assert keating_snaith(1, 7) == 8


@pytest.mark.parametrize("k", range(1, 21))
def test_binomial_identities(k):
    lhs, rhs = binomial_identity_1(k)
    assert lhs == rhs
    for l in range(0, (k + 1) // 2 + 1):
        lhs, rhs = binomial_identity_2(k, l)
        assert lhs == rhs


def test_polynomial_str():
    assert str(table_polynomial(3, 2)) == "5 - 1*q^(-2)"
