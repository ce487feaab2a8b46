import io

import numpy as np
import pytest

from hyperzeta import cache
from hyperzeta.algebra import FqPoly, monic_polys, squarefree
from hyperzeta.algebraic import AlgebraicValue
from hyperzeta.ensemble import (EnsembleSpec, aq_moment_m3, aq_moment_m4, birch_sum, field,
                                moments, quartic_to_cubic)
from hyperzeta.errors import BudgetExceeded, VerificationFailed
from hyperzeta.fastcount import EnsembleEngine, squarefree_mask
from hyperzeta.lfunc import lpoly_from_charsums


@pytest.mark.parametrize("q,d", [(3, 4), (5, 3), (9, 2), (3, 6), (7, 3)])
def test_squarefree_mask(q, d):
    ctx = field(q)
    mask = squarefree_mask(ctx, d)
    expect = [squarefree(D) for D in monic_polys(ctx, d)]
    assert mask.tolist() == expect


@pytest.mark.parametrize("q,d,reduced", [(3, 5, False), (5, 4, True), (9, 3, False), (3, 5, True),
                                         (7, 3, True), (25, 2, False)])
def test_fast_matches_scalar(q, d, reduced):
    kmax = 4
    fast = moments(q, d, kmax, reduced=reduced)
    slow = moments(q, d, kmax, reduced=reduced, method="scalar")
    assert fast.sums == slow.sums


def test_reduced_equals_full():
    a = moments(5, 4, 5, reduced=True)
    b = moments(5, 4, 5, reduced=False)
    assert a.sums == b.sums


def test_chunking_and_threads_do_not_change_results():
    base = moments(3, 7, 6)
    assert moments(3, 7, 6, chunk_size=97).sums == base.sums
    assert moments(3, 7, 6, threads=4, chunk_size=250).sums == base.sums


def test_small_means():
    t = moments(5, 3, 3)
    assert t.count == 100
    assert t.mean(1) == 2
    assert t.mean(2) == AlgebraicValue(124, 0, 5) / 25
    assert moments(7, 1, 3).mean(3) == 1


def test_budget():
    with pytest.raises(BudgetExceeded):
        moments(3, 9, 1, budget=1000)


def test_family_size():
    assert EnsembleSpec.default(3, 13).size == 1062882
    assert EnsembleSpec.default(7, 1).size == 7


def test_engine_lpolys_match_charsums():
    ctx = field(5)
    engine = EnsembleEngine(ctx, 4)
    ch = engine.lpolys(0, engine.space)
    assert len(ch.index) == engine.count() == 500
    rng = np.random.default_rng(1)
    for i in rng.choice(len(ch.index), 40, replace=False):
        D = FqPoly.from_digits(ctx, cache.index_to_digits(ctx, int(ch.index[i]), 4))
        assert list(ch.b[i]) == list(lpoly_from_charsums(D).b)


@pytest.mark.parametrize("q", [5, 7, 11, 13, 25])
def test_m3_m4_relation(q):
    for j in range(1, 9):
        if j % 2 == 0:
            assert aq_moment_m4(q, j) == q * aq_moment_m3(q, j)
        else:
            assert aq_moment_m4(q, j) == aq_moment_m3(q, j + 1)


def test_birch_small_cases():
    # sum over A, B of s(A,B)^2 = p^2 (p - 1) for the cubic family
    for p in (5, 7, 11):
        assert birch_sum(p, 1) == p ** 2 * (p - 1)


def test_quartic_to_cubic_needs_large_characteristic():
    from hyperzeta.errors import CharacteristicTooSmall
    F = field(3)
    with pytest.raises(CharacteristicTooSmall):
        quartic_to_cubic(F(1), F(1), F(1))


def test_cache_round_trip(tmp_path):
    ctx = field(3)
    buf = io.StringIO()
    n = cache.write_records(buf, 3, 4, False, cache.engine_rows(ctx, 4, False))
    assert n == cache.expected_records(3, 4, False) == 54
    path = tmp_path / "c.txt"
    path.write_text(buf.getvalue())
    data = cache.load(path)
    assert len(data.records) == 54
    for digits, L in data.records.items():
        assert L == lpoly_from_charsums(FqPoly.from_digits(ctx, digits))


def test_cache_rejects_asymmetric_record():
    text = cache.header(3, 3, False) + "\n" + cache.record("010", (1, 0, 4)) + "\n"
    with pytest.raises(VerificationFailed):
        cache.parse(io.StringIO(text), check_count=False)


def test_cache_rejects_short_file():
    text = cache.header(3, 3, False) + "\n" + cache.record("010", (1, 0, 3)) + "\n"
    with pytest.raises(VerificationFailed):
        cache.parse(io.StringIO(text))
