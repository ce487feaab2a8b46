import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hyperzeta.algebra import (FqPoly, count_irreducible, divisors, eval_in_extension,
                               extension_context, is_irreducible, is_prime, is_square,
                               make_context, mobius, monic_polys, prime_power, squarefree)
from hyperzeta.errors import (ContextMismatch, EvenCharacteristic, NotPrime, ZeroPolynomial)


def brute_prime(n):
    return n > 1 and all(n % f for f in range(2, int(n ** 0.5) + 1))


def test_is_prime_matches_trial_division():
    assert [n for n in range(3000) if is_prime(n) != brute_prime(n)] == []


def test_is_prime_large():
    assert is_prime(10009)
    assert is_prime(2 ** 61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


@pytest.mark.parametrize("q,pn", [(3, (3, 1)), (9, (3, 2)), (27, (3, 3)), (25, (5, 2)), (10009, (10009, 1))])
def test_prime_power(q, pn):
    assert prime_power(q) == pn


@pytest.mark.parametrize("q", [1, 6, 12, 100])
def test_prime_power_rejects(q):
    with pytest.raises(NotPrime):
        prime_power(q)


def test_contexts_reject_bad_characteristic():
    with pytest.raises(EvenCharacteristic):
        make_context(2)
    with pytest.raises(NotPrime):
        make_context(15)


def test_moduli_are_smallest_irreducible():
    assert make_context(3, 2).modulus == (1, 0, 1)
    assert make_context(3, 3).modulus == (1, 2, 0, 1)


def test_mobius_and_divisors():
    assert [mobius(m) for m in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


@pytest.mark.parametrize("q,n_max", [(3, 6), (5, 4), (9, 3)])
def test_irreducible_counts_match_enumeration(q, n_max):
    ctx = make_context(*prime_power(q))
    for n in range(1, n_max + 1):
        count = sum(1 for f in monic_polys(ctx, n) if is_irreducible(f))
        assert count == count_irreducible(n, q)


@pytest.mark.parametrize("q", [3, 5, 7, 9, 25, 27])
def test_sum_of_irreducible_counts(q):
    # sum over m | n of m * i_m(q) = q^n
    for n in range(1, 9):
        assert sum(m * count_irreducible(m, q) for m in divisors(n)) == q ** n


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 2), (3, 3), (7, 1)])
def test_field_axioms(p, n):
    F = make_context(p, n)
    els = list(F.elements())
    for a, b in itertools.product(els[:12], els[:12]):
        assert a * b == b * a
        assert a + b - b == a
        if b:
            assert (a / b) * b == a
    assert all(x ** F.q == x for x in els)
    assert len({x.index for x in els}) == F.q


@pytest.mark.parametrize("q", [3, 5, 9, 25])
def test_square_table_agrees_with_euler(q):
    F = make_context(*prime_power(q))
    table = F.square_table()
    assert all(table[e.index] == is_square(e) for e in F.elements())
    assert sum(table) == 0


@pytest.mark.parametrize("base,r", [((3, 1), 2), ((3, 2), 2), ((5, 1), 3), ((3, 2), 3)])
def test_extension_embedding_is_a_homomorphism(base, r):
    F = make_context(*base)
    big = extension_context(F, r)
    assert big.q == F.q ** r
    els = list(F.elements())
    for a, b in itertools.product(els, els):
        assert big.embed(a * b) == big.embed(a) * big.embed(b)
        assert big.embed(a + b) == big.embed(a) + big.embed(b)


def test_context_mismatch():
    a = make_context(3, 2).gen
    with pytest.raises(ContextMismatch):
        make_context(5, 2).element(a)


polys_f5 = st.lists(st.integers(0, 4), min_size=1, max_size=7)


@settings(max_examples=60, deadline=None)
@given(polys_f5, polys_f5)
def test_division_identity(a, b):
    F = make_context(5)
    A, B = FqPoly(F, a), FqPoly(F, b)
    if B.is_zero():
        return
    Q, R = divmod(A, B)
    assert Q * B + R == A
    assert R.degree < B.degree


@settings(max_examples=60, deadline=None)
@given(polys_f5, polys_f5)
def test_gcd_divides_both(a, b):
    F = make_context(5)
    A, B = FqPoly(F, a), FqPoly(F, b)
    if A.is_zero() and B.is_zero():
        return
    g = A.gcd(B)
    assert (A % g).is_zero() and (B % g).is_zero()
    assert g.is_monic()


def test_squarefree_zero_raises():
    with pytest.raises(ZeroPolynomial):
        squarefree(FqPoly(make_context(3), []))


@pytest.mark.parametrize("q,d,count", [(3, 3, 18), (5, 3, 100), (3, 4, 54), (9, 2, 72), (7, 1, 7)])
def test_squarefree_count(q, d, count):
    F = make_context(*prime_power(q))
    assert sum(1 for D in monic_polys(F, d) if squarefree(D)) == count


def test_digit_strings_round_trip():
    for q in (3, 9, 11, 121):
        F = make_context(*prime_power(q))
        for i in range(0, q ** 2, max(1, q ** 2 // 40)):
            D = FqPoly.from_index(F, i, 2)
            assert FqPoly.from_digits(F, D.digits()) == D
            assert D.index == i


def test_digit_string_example():
    F = make_context(3)
    D = FqPoly(F, [0, 1, 0, 1])
    assert D.digits() == "010"


def test_evaluation_in_extension():
    F = make_context(3)
    D = FqPoly(F, [1, 0, 1])  # x^2 + 1 has no roots in F_3
    assert all(D(x) for x in F.elements())
    big = extension_context(F, 2)
    roots = [x for x in big.elements() if not eval_in_extension(D, x)]
    assert len(roots) == 2


def test_compose_shift():
    F = make_context(5)
    D = FqPoly(F, [1, 2, 0, 1])
    u = F(3)
    E = D.compose_shift(u)
    assert all(E(x) == D(x + u) for x in F.elements())
