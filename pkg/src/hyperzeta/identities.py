"""Invariant suites: each returns a SuiteResult with the checks run and any failures."""
from __future__ import annotations

import io
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import FqPoly, is_prime, prime_power
from .cache import engine_rows, parse, write_records
from .charsym import charsum, residue_symbol
from .ensemble import aq_moment_m3, aq_moment_m4, birch_sum, field as field_of
from .exactmoments import (binomial_identity_1, binomial_identity_2, keating_snaith,
                           table_polynomial)
from .fastcount import EnsembleEngine, OrbitEvaluator, index_digits
from .lfunc import lpoly_from_charsums, lpoly_from_pointcounts, newton_power_sums
from .modforms import delta_expansion, hecke_trace


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, message: str) -> None:
        self.checks += 1
        if not cond:
            self.failures.append(message)

    def merge(self, other: SuiteResult) -> None:
        self.checks += other.checks
        self.failures.extend(other.failures)


def _random_monic(ctx, rng, deg):
    cs = [ctx.from_index(rng.randrange(ctx.q)) for _ in range(deg)]
    return FqPoly(ctx, cs + [ctx.one])


def reciprocity(qs=(3, 5, 7, 9, 25), pairs: int = 500, max_deg: int = 6,
                seed: int = 1) -> SuiteResult:
    """(a|b)(b|a) = (-1)^((q-1)/2 deg a deg b) for coprime monic a, b."""
    res = SuiteResult("reciprocity")
    rng = random.Random(seed)
    for q in qs:
        ctx = field_of(q)
        half = (q - 1) // 2
        done = 0
        while done < pairs:
            a = _random_monic(ctx, rng, rng.randint(1, max_deg))
            b = _random_monic(ctx, rng, rng.randint(1, max_deg))
            if a.gcd(b).degree > 0:
                res.expect(residue_symbol(a, b) == 0, f"q={q}: ({a}|{b}) should vanish")
                continue
            lhs = residue_symbol(a, b) * residue_symbol(b, a)
            rhs = -1 if half * a.degree * b.degree % 2 else 1
            res.expect(lhs == rhs, f"q={q}: reciprocity fails for a={a}, b={b}")
            done += 1
    return res


def _odd_prime_powers(limit: int) -> list[int]:
    out = []
    for q in range(3, limit + 1, 2):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def chi_sum_grid(limit: int = 10 ** 4, q_max: int = 101) -> list[tuple[int, int]]:
    """(q, d) with q^d <= limit over odd prime powers q <= q_max."""
    grid = []
    for q in _odd_prime_powers(q_max):
        d = 1
        while q ** d <= limit:
            grid.append((q, d))
            d += 1
    return grid


def _sum_over_monic(cols: list[tuple[int, np.ndarray]], r: int, B: int) -> tuple[np.ndarray, int]:
    """Sum of chi_D(n) over monic n of degree r, via unique factorization.

    cols lists (degree, chi_D(P)) for every monic irreducible P of degree <= r.
    Every monic n is a multiset of irreducibles with total degree r.
    """
    total = np.zeros(B, dtype=np.int64)
    count = 0

    def walk(start, remaining, vec):
        nonlocal total, count
        if remaining == 0:
            total += vec
            count += 1
            return
        for i in range(start, len(cols)):
            deg, col = cols[i]
            if deg > remaining:
                break
            walk(i, remaining - deg, vec * col)

    walk(0, r, np.ones(B, dtype=np.int64))
    return total, count


def chi_sum_vanishing(q: int, d: int, extra: int = 1, limit: int = 10 ** 4) -> SuiteResult:
    """sum over monic n of degree r of chi_D(n) vanishes for r >= d, all squarefree D."""
    res = SuiteResult("chi-sum")
    ctx = field_of(q)
    engine = EnsembleEngine(ctx, d)
    members = engine.members(0, engine.space)
    E = index_digits(members, q, d)
    B = len(members)
    rs = [r for r in range(d, d + extra + 1) if r == d or q ** r <= limit]
    ev = OrbitEvaluator(ctx, d, max(rs))
    cols = []
    for m, vals in ev.characters(E):
        for j in range(vals.shape[1]):
            cols.append((m, vals[:, j].astype(np.int64)))
    for r in rs:
        sums, count = _sum_over_monic([c for c in cols if c[0] <= r], r, B)
        res.expect(count == q ** r, f"q={q} r={r}: enumerated {count} monic polynomials")
        bad = np.flatnonzero(sums)
        res.expect(len(bad) == 0, f"q={q} d={d} r={r}: nonzero sum for N(D)={members[bad[0]] if len(bad) else None}")
    return res


def chi_sum_suite(limit: int = 10 ** 4, q_max: int = 101, literal_limit: int = 125) -> SuiteResult:
    res = SuiteResult("chi-sum")
    for q, d in chi_sum_grid(limit, q_max):
        res.merge(chi_sum_vanishing(q, d, limit=limit))
    # literal enumeration with the Euclidean symbol on the smallest cases
    for q, d in chi_sum_grid(literal_limit, q_max):
        ctx = field_of(q)
        engine = EnsembleEngine(ctx, d)
        for i in engine.members(0, engine.space).tolist():
            D = FqPoly.from_index(ctx, i, d)
            res.expect(charsum(D, d) == 0, f"literal sum for {D} at r={d} is nonzero")
    return res


def _family_check(q: int, d: int, res: SuiteResult) -> None:
    ctx = field_of(q)
    buf = io.StringIO()
    n = write_records(buf, q, d, False, engine_rows(ctx, d, False))
    buf.seek(0)
    data = parse(buf)  # checks the symmetry of every record and the count
    res.expect(len(data.records) == n, f"({q},{d}): cache round trip lost records")
    for digits, L in data.records.items():
        res.expect(L.b[0] == 1, f"({q},{d}) {digits}: b(0) != 1")
        g = L.g
        for r, pr in enumerate(newton_power_sums(L.b, 2 * g), start=1):
            if pr * pr > 4 * g * g * q ** r:
                res.expect(False, f"({q},{d}) {digits}: Weil bound fails for p_{r}")
                break
        else:
            res.checks += 1


def fe(pairs=((3, 3), (3, 4), (3, 5), (3, 6), (5, 3), (5, 4), (7, 3), (7, 4), (9, 3), (25, 2)),
       dual_limit: int = 3 ** 6) -> SuiteResult:
    """Functional equation and Weil bounds on every curve, and dual zeta constructions."""
    res = SuiteResult("fe")
    for q, d in pairs:
        _family_check(q, d, res)
    for q in _odd_prime_powers(dual_limit):
        d = 1
        while q ** d <= dual_limit:
            ctx = field_of(q)
            engine = EnsembleEngine(ctx, d)
            ch = engine.lpolys(0, engine.space)
            for i, b in zip(ch.index.tolist(), ch.b.tolist()):
                D = FqPoly.from_index(ctx, i, d)
                L1 = lpoly_from_charsums(D)
                L2 = lpoly_from_pointcounts(D)
                res.expect(L1 == L2 and list(L1.b) == b,
                           f"({q},{d}) {D}: constructions disagree {L1.b} / {L2.b} / {b}")
            d += 1
    return res


def m34(qs=(5, 7, 11, 13, 25), j_max: int = 8) -> SuiteResult:
    """m_4(q; j) = q m_3(q; j) for even j, m_3(q; j+1) for odd j."""
    res = SuiteResult("m34")
    for q in qs:
        for j in range(j_max + 1):
            m4 = aq_moment_m4(q, j)
            expect = q * aq_moment_m3(q, j) if j % 2 == 0 else aq_moment_m3(q, j + 1)
            res.expect(m4 == expect, f"q={q} j={j}: m_4 = {m4}, expected {expect}")
        for j in range(1, j_max + 1, 2):
            res.expect(aq_moment_m3(q, j) == 0, f"q={q}: odd moment m_3(q;{j}) != 0")
    return res


def birch_formula(p: int, halfj: int) -> int:
    j = 2 * halfj
    from math import factorial as f
    s = Fraction(1) + Fraction(f(j), f(halfj) * f(halfj + 1)) * p ** (halfj + 1)
    for l in range(1, halfj + 1):
        s -= Fraction(f(j) * (2 * l + 1), f(halfj - l) * f(halfj + l + 1)) \
            * p ** (halfj - l) * (hecke_trace(2 * l + 2, p) + 1)
    value = (p - 1) * s
    assert value.denominator == 1
    return int(value)


def birch_corrected(p: int, halfj: int) -> int:
    """The explicit S_1..S_5 with the missing (p-1) restored."""
    from .modforms import tau
    polys = {
        1: p ** 2,
        2: 2 * p ** 3 - 3 * p,
        3: 5 * p ** 4 - 9 * p ** 2 - 5 * p,
        4: 14 * p ** 5 - 28 * p ** 3 - 20 * p ** 2 - 7 * p,
        5: 42 * p ** 6 - 90 * p ** 4 - 75 * p ** 3 - 35 * p ** 2 - 9 * p - tau(p),
    }
    return (p - 1) * polys[halfj]


def birch(ps=(5, 7, 11), halfj_max: int = 5) -> SuiteResult:
    res = SuiteResult("birch")
    for p in ps:
        for h in range(1, halfj_max + 1):
            s = birch_sum(p, h)
            res.expect(s == birch_corrected(p, h), f"p={p}: S_{h} = {s}, corrected formula {birch_corrected(p, h)}")
            res.expect(s == birch_formula(p, h), f"p={p}: S_{h} = {s}, trace formula {birch_formula(p, h)}")
    return res


def binomial(k_max: int = 20) -> SuiteResult:
    res = SuiteResult("binomial")
    for k in range(1, k_max + 1):
        lhs, rhs = binomial_identity_1(k)
        res.expect(lhs == rhs, f"first identity fails at k={k}: {lhs} != {rhs}")
        for l in range(0, (k + 1) // 2 + 1):
            lhs, rhs = binomial_identity_2(k, l)
            res.expect(lhs == rhs, f"second identity fails at k={k}, l={l}: {lhs} != {rhs}")
    return res


def tau_suite(p_max: int = 10 ** 4) -> SuiteResult:
    """Ramanujan bound |tau(p)| <= 2 p^(11/2), and multiplicativity spot checks."""
    res = SuiteResult("tau")
    exp = delta_expansion(p_max)
    for p in range(2, p_max + 1):
        if is_prime(p):
            t = exp[p]
            res.expect(t * t <= 4 * p ** 11, f"Ramanujan bound fails at p={p}")
    for m, n in [(2, 3), (3, 5), (4, 25), (7, 11), (16, 27)]:
        if m * n <= p_max:
            res.expect(exp[m * n] == exp[m] * exp[n], f"tau({m * n}) != tau({m}) tau({n})")
    for p in (2, 3, 5):
        if p * p <= p_max:
            res.expect(exp[p * p] == exp[p] ** 2 - p ** 11, f"Hecke recursion fails at p={p}")
    return res


def ks_limit(k_max: int = 5, genera=(1, 2, 3), qs=(3, 9, 81, 6561)) -> SuiteResult:
    """Q_k(q; 2g+1) approaches the Keating-Snaith value monotonically as q grows."""
    from .akpred import qk_values
    res = SuiteResult("ks-limit")
    for k in range(1, k_max + 1):
        ks = {g: keating_snaith(k, g) for g in genera}
        gaps = {g: [] for g in genera}
        for q in qs:
            vals = qk_values(q, k, "odd", list(genera))
            for g, v in zip(genera, vals):
                gaps[g].append(abs(float(v) - float(ks[g])))
        for g in genera:
            seq = gaps[g]
            res.expect(all(a > b for a, b in zip(seq, seq[1:])),
                       f"k={k} g={g}: gaps not decreasing {seq}")
            res.expect(seq[-1] < 10 * float(ks[g]) / qs[-1],
                       f"k={k} g={g}: final gap {seq[-1]:.3g} too large")
    for g, d in ((1, 3), (2, 5)):
        for k in range(1, 6):
            lead = table_polynomial(d, k).terms[0][1]
            res.expect(keating_snaith(k, g) == lead,
                       f"KeS({k},{g}) = {keating_snaith(k, g)} but stored leading term is {lead}")
    return res


SUITES = {
    "reciprocity": lambda: _combine("reciprocity", reciprocity(), chi_sum_suite()),
    "fe": lambda: fe(),
    "m34": lambda: m34(),
    "birch": lambda: birch(),
    "binomial": lambda: binomial(),
    "tau": lambda: tau_suite(),
    "ks-limit": lambda: ks_limit(),
}


def _combine(name: str, *parts: SuiteResult) -> SuiteResult:
    out = SuiteResult(name)
    for p in parts:
        out.merge(p)
    return out


def run_suite(name: str) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name]()
