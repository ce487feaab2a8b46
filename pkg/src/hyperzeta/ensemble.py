"""Exact central-value moments over the hyperelliptic ensemble, and a_q sums."""
from __future__ import annotations

import functools
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction

import numpy as np

from .algebra import (FqContext, FqElement, make_context, monic_polys,
                      prime_power, squarefree)
from .algebraic import AlgebraicValue
from .errors import BudgetExceeded, CharacteristicTooSmall
from .fastcount import EnsembleEngine, central_scale, central_xy
from .lfunc import central_value, lpoly_from_charsums

DEFAULT_BUDGET = 10 ** 8
CELL_BUDGET = 2 * 10 ** 7  # floats per evaluation block


def field(q: int) -> FqContext:
    p, n = prime_power(q)
    return make_context(p, n)


@dataclass(frozen=True)
class EnsembleSpec:
    q: int
    d: int
    reduced: bool
    chunk_size: int = 0

    @classmethod
    def default(cls, q: int, d: int, reduced: bool | None = None) -> EnsembleSpec:
        p, _ = prime_power(q)
        if reduced is None:
            reduced = d % p != 0 and d >= 2
        return cls(q, d, reduced)

    @property
    def size(self) -> int:
        """#H_{q,d}."""
        return self.q if self.d == 1 else self.q ** self.d - self.q ** (self.d - 1)


@dataclass
class MomentTable:
    q: int
    d: int
    k_max: int
    count: int
    sums: list[AlgebraicValue] = dc_field(default_factory=list)

    def mean(self, k: int) -> AlgebraicValue:
        return self.sums[k] / self.count


def _engine_for(spec: EnsembleSpec) -> EnsembleEngine:
    return EnsembleEngine(field(spec.q), spec.d, spec.reduced)


def _chunk_size(engine: EnsembleEngine, spec: EnsembleSpec) -> int:
    if spec.chunk_size:
        return spec.chunk_size
    cols = max(engine.evaluator.W.shape[1], 1)
    return max(1024, CELL_BUDGET // cols)


def central_value_counts(spec: EnsembleSpec, threads: int = 1,
                         budget: int = DEFAULT_BUDGET) -> tuple[Counter, int]:
    """Multiset of (X, Y) with q^M L(1/2) = X + Y sqrt(q), over the enumerated family."""
    engine = _engine_for(spec)
    if engine.space > budget:
        raise BudgetExceeded(f"{engine.space} coefficient vectors exceed budget {budget}")
    q, d = spec.q, spec.d

    def work(bounds):
        ch = engine.lpolys(*bounds)
        X, Y = central_xy(ch.a, q, d)
        keys, counts = np.unique(np.stack([X, Y], axis=1), axis=0, return_counts=True)
        return Counter({(int(x), int(y)): int(c) for (x, y), c in zip(keys, counts)})

    bounds = engine.chunk_bounds(_chunk_size(engine, spec))
    total = Counter()
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            for part in pool.map(work, bounds):
                total.update(part)
    else:
        for b in bounds:
            total.update(work(b))
    return total, central_scale(q, d)


def moments(q: int, d: int, k_max: int, budget: int = DEFAULT_BUDGET,
            reduced: bool | None = None, threads: int = 1,
            method: str = "fast", chunk_size: int = 0) -> MomentTable:
    """Exact sums of L(1/2, chi_D)^k, k = 0..k_max, over H_{q,d}."""
    spec = EnsembleSpec.default(q, d, reduced)
    spec = EnsembleSpec(spec.q, spec.d, spec.reduced, chunk_size)
    scale = q if spec.reduced else 1
    if method == "scalar":
        return _moments_scalar(spec, k_max, budget)
    counts, M = central_value_counts(spec, threads, budget)
    sx = [0] * (k_max + 1)
    sy = [0] * (k_max + 1)
    for (X, Y), c in sorted(counts.items()):
        x, y = 1, 0
        for k in range(k_max + 1):
            sx[k] += c * x
            sy[k] += c * y
            x, y = x * X + y * Y * q, x * Y + y * X
    sums = [AlgebraicValue(Fraction(scale * sx[k], q ** (M * k)),
                           Fraction(scale * sy[k], q ** (M * k)), q) for k in range(k_max + 1)]
    table = MomentTable(q, d, k_max, spec.size, sums)
    assert sums[0] == table.count, "enumerated family has the wrong size"
    return table


def _moments_scalar(spec: EnsembleSpec, k_max: int, budget: int) -> MomentTable:
    ctx = field(spec.q)
    if spec.q ** spec.d > budget:
        raise BudgetExceeded(f"q^d = {spec.q ** spec.d} exceeds budget {budget}")
    sums = [AlgebraicValue(0, 0, spec.q) for _ in range(k_max + 1)]
    for D in monic_polys(ctx, spec.d):
        if spec.reduced and spec.d > 1 and D.coeffs[spec.d - 1]:
            continue
        if not squarefree(D):
            continue
        v = central_value(lpoly_from_charsums(D))
        w = AlgebraicValue(1, 0, spec.q)
        for k in range(k_max + 1):
            sums[k] = sums[k] + w
            w = w * v
    if spec.reduced:
        sums = [s * spec.q for s in sums]
    return MomentTable(spec.q, spec.d, k_max, spec.size, sums)


@functools.lru_cache(maxsize=32)
def aq_distribution(q: int, d: int) -> dict[int, int]:
    """Counts of a_q over the full family H_{q,d}."""
    engine = EnsembleEngine(field(q), d, reduced=False, R=1)
    dist = Counter()
    for b in engine.chunk_bounds(1 << 16):
        _, aq = engine.a_qr(*b)
        vals, counts = np.unique(aq[:, 0], return_counts=True)
        dist.update({int(v): int(c) for v, c in zip(vals, counts)})
    return dict(dist)


def aq_moment_m3(q: int, j: int) -> int:
    return sum(c * (-a) ** j for a, c in aq_distribution(q, 3).items())


def aq_moment_m4(q: int, j: int) -> int:
    return sum(c * (1 - a) ** j for a, c in aq_distribution(q, 4).items())


def cubic_character_sums(p: int) -> np.ndarray:
    """s[A, B] = sum over x in F_p of the Legendre symbol of x^3 + A x + B."""
    ctx = make_context(p)
    chi = np.array(ctx.square_table(), dtype=np.int64)
    x = np.arange(p)
    A = np.arange(p)[:, None, None]
    B = np.arange(p)[None, :, None]
    vals = (x ** 3 + A * x + B) % p
    return chi[vals].sum(axis=2)


def birch_sum(p: int, halfj: int) -> int:
    """Sum over all (A, B) in F_p^2 of s(A, B)^(2 halfj)."""
    s = cubic_character_sums(p)
    return sum(int(v) ** (2 * halfj) for v in s.ravel())


def quartic_to_cubic(A: FqElement, B: FqElement, C: FqElement) -> tuple[FqElement, FqElement]:
    """Coefficients (alpha, beta) of the cubic attached to x^4 + A x^2 + B x + C."""
    ctx = A.ctx
    if ctx.p <= 3:
        raise CharacteristicTooSmall("needs characteristic > 3")
    alpha = -C / 4 - A * A / 48
    beta = A ** 3 / 864 + B * B / 64 - A * C / 24
    return alpha, beta
