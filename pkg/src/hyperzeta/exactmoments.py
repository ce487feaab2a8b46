"""Closed-form moment evaluators, stored moment polynomials, Keating-Snaith."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .algebra import is_prime
from .algebraic import AlgebraicValue
from .errors import NotPrime, NotTabulated, UnsupportedWeight
from .modforms import hecke_trace, tau


def _check_p(p: int) -> None:
    if p <= 3 or not is_prime(p):
        raise NotPrime(f"need a prime p > 3, got {p}")


def _trace_plus_one(l: int, p: int) -> int:
    return hecke_trace(2 * l + 2, p) + 1


def _d3_bracket(p: int, k: int) -> Fraction:
    s = Fraction(2, k + 2) * comb(2 * k + 1, k)
    for l in range(1, k // 2 + 1):
        s -= 2 * Fraction(comb(2 * k + 1, k - 2 * l) * (2 * l + 1) * _trace_plus_one(l, p),
                          (k + 2 * l + 2) * p ** (l + 1))
    return s


def theorem_d3(p: int, k: int) -> Fraction:
    """Mean of L(1/2)^k over squarefree monic cubics over F_p, exactly."""
    _check_p(p)
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > 13:
        raise UnsupportedWeight(f"k = {k} needs Hecke traces of weight {2 * (k // 2) + 2}")
    return _d3_bracket(p, k)


def _gamma_ratio(k: int, l: int) -> Fraction:
    # Gamma(2k+2) / (Gamma(k+2l+4) Gamma(k-2l+2)); zero at the poles of the denominator
    if k - 2 * l + 2 <= 0:
        return Fraction(0)
    return Fraction(factorial(2 * k + 1), factorial(k + 2 * l + 3) * factorial(k - 2 * l + 1))


def theorem_d4(p: int, k: int) -> AlgebraicValue:
    """Mean of L(1/2)^k over squarefree monic quartics over F_p, in Q(sqrt p)."""
    _check_p(p)
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > 10:
        raise UnsupportedWeight(f"k = {k} is beyond the supported weight range")
    second = Fraction(4, k + 3) * comb(2 * k + 1, k - 1)
    for l in range(1, (k + 1) // 2 + 1):
        second -= 4 * (k * k + k + 4 * l * l + 4 * l) * _gamma_ratio(k, l) \
            * Fraction((2 * l + 1) * _trace_plus_one(l, p), p ** (l + 1))
    inv_sqrt = AlgebraicValue(0, Fraction(1, p), p)
    factor = (1 - inv_sqrt) ** k
    return factor * _d3_bracket(p, k) + factor * inv_sqrt * second


def keating_snaith(k: int, g: int) -> Fraction:
    value = Fraction(1)
    for j in range(1, k + 1):
        value *= Fraction(factorial(j), factorial(2 * j))
        for i in range(1, j + 1):
            value *= 2 * g + i + j
    return value


def binomial_identity_1(k: int) -> tuple[Fraction, Fraction]:
    lhs = sum(Fraction(comb(k, j) * factorial(j) * 2 ** (k - j),
                       factorial(j // 2) * factorial(j // 2 + 1))
              for j in range(0, k + 1, 2))
    return Fraction(lhs), Fraction(2, k + 2) * comb(2 * k + 1, k)


def binomial_identity_2(k: int, l: int) -> tuple[Fraction, Fraction]:
    if not 0 <= l <= (k + 1) // 2:
        raise ValueError("need 0 <= l <= (k+1)//2")
    lhs = Fraction(0)
    for nu in range(max(2 * l, 2), k + 2, 2):
        lhs += Fraction(comb(k, nu - 1) * factorial(nu) * 2 ** (k - nu + 1),
                        factorial(nu // 2 - l) * factorial(nu // 2 + l + 1))
    rhs = 4 * (k * k + k + 4 * l * l + 4 * l) * _gamma_ratio(k, l)
    return lhs, rhs


# Stored moment polynomials.  Each row maps h -> c for a term c * q^(-h/2);
# the optional marker term -(tau(p)+1) p^(-6) is kept separately.
_TABLES: dict[tuple[int, int], dict[int, int]] = {
    # d = 3, p prime
    (3, 1): {0: 2},
    (3, 2): {0: 5, 4: -1},
    (3, 3): {0: 14, 4: -6},
    (3, 4): {0: 42, 4: -27, 6: -1},
    (3, 5): {0: 132, 4: -110, 6: -10},
    (3, 6): {0: 429, 4: -429, 6: -65, 8: -1},
    (3, 7): {0: 1430, 4: -1638, 6: -350, 8: -7},
    (3, 8): {0: 4862, 4: -6188, 6: -1700, 8: -119, 10: -1},
    (3, 9): {0: 16796, 4: -23256, 6: -7752, 8: -798, 10: -18},
    (3, 10): {0: 58786, 4: -87210, 6: -33915, 8: -4655, 10: -189},
    # d = 4, p prime
    (4, 1): {0: 2, 1: -1, 2: -1, 5: -1, 6: 1},
    (4, 2): {0: 5, 1: -6, 2: -3, 3: 4, 4: -1, 5: -2, 6: 7, 7: -4},
    (4, 3): {0: 14, 1: -28, 3: 28, 4: -20, 5: 3, 6: 27, 7: -40, 8: 18, 9: -3, 10: 1},
    (4, 4): {0: 42, 1: -120, 2: 60, 3: 120, 4: -177, 5: 100, 6: 61,
             7: -232, 8: 223, 9: -100, 10: 31, 11: -8},
    (4, 5): {0: 132, 1: -495, 2: 495, 3: 330, 4: -1100, 5: 1034, 6: -230,
             7: -985, 8: 1665, 9: -1286, 10: 614, 11: -225, 12: 55, 13: -5, 14: 1},
    # d = 5
    (5, 1): {0: 3, 2: -1, 4: 1, 6: -1},
    (5, 2): {0: 14, 2: -11, 4: 10, 6: 5, 8: -15, 10: -1},
    (5, 3): {0: 84, 2: -111, 4: 91, 6: 98, 8: -174, 10: -51, 12: -1},
    (5, 4): {0: 594, 2: -1133, 4: 861, 6: 1476, 8: -1959, 10: -1192, 12: -90, 14: -1},
    (5, 5): {0: 4719, 2: -11869, 4: 8645, 6: 20416, 8: -22055, 10: -21516,
             12: -3398, 14: -145, 16: -1},
    # d = 6
    (6, 1): {0: 3, 1: -1, 2: -2, 4: 1, 5: -1, 6: -1, 7: 1, 8: -1, 9: -1, 10: 2},
    (6, 2): {0: 14, 1: -12, 2: -19, 3: 14, 4: 17, 5: -24, 7: 24, 8: -33, 9: 14,
             10: 30, 11: -34, 12: 14, 13: -6, 14: 1},
    # d = 7; row k=2 reads "40 q{-1}" in the reference data, taken as -40 q^(-1)
    (7, 1): {0: 4, 2: -2, 4: 2, 6: -2, 8: 2, 10: 2, 12: -2},
    (7, 2): {0: 30, 2: -40, 4: 60, 6: -66, 8: 20, 10: 101, 12: -85, 14: -36, 16: -2},
    (7, 3): {0: 330, 2: -832, 4: 1674, 6: -1986, 8: -240, 10: 4348, 12: -2330,
             14: -3222, 16: -626, 18: -12},
    # d = 8
    (8, 1): {0: 4, 1: -1, 2: -3, 4: 2, 5: -1, 6: -3, 7: 1, 8: 3, 9: -3, 10: -1,
             11: 3, 12: -3, 13: -1, 14: 5, 15: -2},
    # d = 9
    (9, 1): {0: 5, 2: -3, 4: 3, 6: -4, 8: 6, 10: -5, 12: 1, 14: 5, 16: -7, 18: -1},
}
_TAU_TERMS = {(3, 10): (12, -1)}  # -(tau(p) + 1) p^(-6)

# Stored coefficients that exhaustive enumeration contradicts; applied only on request.
ERRATA: dict[tuple[int, int], dict[int, int]] = {
    (3, 7): {8: -14},  # stored as -7 p^(-4); brute force over p = 5, 7 and the d=3 formula give -14
    (5, 1): {6: 0, 8: -1},  # stored last term -q^(-3); enumeration at q = 5, 7, 9 gives -q^(-4)
}


@dataclass(frozen=True)
class MomentPolynomial:
    d: int
    k: int
    terms: tuple[tuple[Fraction, int, bool], ...]  # (exponent e, coefficient, tau marker)

    def evaluate(self, q: int) -> AlgebraicValue:
        total = AlgebraicValue(0, 0, q)
        inv_sqrt = AlgebraicValue(0, Fraction(1, q), q)
        for e, c, marked in self.terms:
            h = int(2 * e)
            term = AlgebraicValue(Fraction(c, q ** (h // 2)), 0, q)
            if h % 2:
                term = term * inv_sqrt
            if marked:
                term = term * (tau(q) + 1)
            total = total + term
        return total

    def __str__(self):
        parts = []
        for e, c, marked in self.terms:
            mon = "" if e == 0 else f"q^(-{e})"
            coef = f"{c}*(tau(q)+1)" if marked else str(c)
            parts.append(f"{coef}*{mon}" if mon else coef)
        return " + ".join(parts).replace("+ -", "- ")


def table_polynomial(d: int, k: int, corrected: bool = False) -> MomentPolynomial:
    """Stored row as given, or with ERRATA applied when `corrected`."""
    key = (d, k)
    if key not in _TABLES:
        raise NotTabulated(f"no stored moment polynomial for d={d}, k={k}")
    row = dict(_TABLES[key])
    if corrected:
        row.update(ERRATA.get(key, {}))
    terms = [(Fraction(h, 2), c, False) for h, c in sorted(row.items()) if c]
    if key in _TAU_TERMS:
        h, c = _TAU_TERMS[key]
        terms.append((Fraction(h, 2), c, True))
    return MomentPolynomial(d, k, tuple(terms))


def tabulated_pairs() -> list[tuple[int, int]]:
    return sorted(_TABLES)


def evaluate_table(d: int, k: int, q: int, corrected: bool = False) -> AlgebraicValue:
    return table_polynomial(d, k, corrected).evaluate(q)
