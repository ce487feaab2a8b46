"""Arbitrary-precision evaluation of the moment conjecture Q_k(q; d).

Q_k is the k-fold residue of a symmetric integrand at z = 0.  It is evaluated
by a finite sum over sign vectors at tiny distinct shifts alpha_j = j*10^-E:
sum_eps K(eps_1 alpha_1, ..., eps_k alpha_k), where
K(u) = H(u) exp(g * sum u).  The terms are huge (about 10^(E k(k+1)/2)) and
cancel down to O(1), which is why the working precision has to be large.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .algebra import count_irreducible, prime_power
from .algebraic import AlgebraicValue
from .errors import NotTabulated, PoleHit, PrecisionInsufficient
from .lfunc import genus_data
from .series_data import SERIES, coefficient_at

log = logging.getLogger(__name__)

DEFAULT_SHIFT_EXPONENT = 65
DEFAULT_TARGET = 22
MARGIN = 10


def _bits(digits: int) -> int:
    return int(digits * 3.3219280948873626) + 16


def _parity(d: int) -> str:
    return "even" if d % 2 == 0 else "odd"


def truncation_loss(k: int) -> int:
    """Decimal digits lost to the n^j weights that the shift derivatives put on degree-n terms.

    Fitted on k = 7..10 (relative error ~ 10^(1.7k - 0.5) q^-N, independent of q), rounded up.
    """
    return 2 * k


def default_truncation(q: int, target_digits: int, k: int = 1) -> int:
    return math.ceil((target_digits + 5 + truncation_loss(k)) * math.log(10) / math.log(q)) + 2


@dataclass(frozen=True)
class PrecisionContext:
    digits: int
    target_digits: int = DEFAULT_TARGET
    shift_exponent: int = DEFAULT_SHIFT_EXPONENT
    truncation: int = 0

    @classmethod
    def for_problem(cls, q: int, k: int, target_digits: int = DEFAULT_TARGET,
                    shift_exponent: int = DEFAULT_SHIFT_EXPONENT,
                    truncation: int | None = None, digits: int | None = None,
                    extra_digits: int = 0) -> PrecisionContext:
        """Fill in defaults; an explicit `digits` below the guard is rejected."""
        N = truncation or default_truncation(q, target_digits, k)
        need = cls.required_digits(q, k, target_digits, shift_exponent, N)
        if digits is None:
            digits = need + extra_digits
        ctx = cls(digits, target_digits, shift_exponent, N)
        ctx.check(q, k)
        return ctx

    @staticmethod
    def required_digits(q: int, k: int, target: int, E: int, N: int) -> int:
        # cancellation of the sign sum, plus the growth of i_n(q) ~ q^N / N
        return E * k * (k + 1) // 2 + target + 20 + math.ceil(N * math.log10(q))

    def check(self, q: int, k: int) -> None:
        guard = self.shift_exponent * k * (k + 1) // 2 + self.target_digits + 20
        if self.digits < guard:
            raise PrecisionInsufficient(
                f"{self.digits} working digits < {guard} needed for k={k}, E={self.shift_exponent}")
        if self.truncation < math.ceil((self.target_digits + 5) * math.log(10) / math.log(q)):
            raise PrecisionInsufficient(f"truncation N={self.truncation} too small for q={q}")
        if 2 * self.shift_exponent - MARGIN < self.target_digits:
            raise PrecisionInsufficient(
                f"shift exponent {self.shift_exponent} cannot deliver {self.target_digits} digits")

    def certified_digits(self, k: int, q: int | None = None) -> int:
        E = self.shift_exponent
        best = min(2 * E - MARGIN, self.digits - E * k * (k + 1) // 2 - MARGIN)
        if q is not None:
            best = min(best, int(self.truncation * math.log10(q)) - truncation_loss(k) - 5)
        return best


def render(x, digits: int) -> Decimal:
    """mpfr or Fraction -> Decimal rounded half-even to `digits` significant digits."""
    if not isinstance(x, Fraction):
        n, m = x.as_integer_ratio()
        x = Fraction(int(n), int(m))
    frac = x
    with localcontext() as c:
        c.prec = digits + 10
        v = Decimal(frac.numerator) / frac.denominator
        c.prec = digits
        c.rounding = ROUND_HALF_EVEN
        return +v


@dataclass
class AKPrediction:
    q: int
    d: int
    k: int
    value: object  # mpfr
    certified_digits: int

    def decimal(self, digits: int | None = None) -> Decimal:
        return render(self.value, digits or self.certified_digits)

    def __float__(self):
        return float(self.value)


def _irreducible_counts(q: int, N: int) -> list[int]:
    return [count_irreducible(n, q) for n in range(1, N + 1)]


def euler_P1(q: int, prec: PrecisionContext):
    """P(1) = prod over irreducibles P of (1 - 1/((|P|+1)|P|)), grouped by degree."""
    prime_power(q)
    with gmpy2.context(precision=_bits(prec.target_digits + 30)):
        acc = mpfr(0)
        for n, c in enumerate(_irreducible_counts(q, prec.truncation), start=1):
            Q = mpfr(q) ** n
            acc += c * gmpy2.log1p(-1 / ((Q + 1) * Q))
        log.debug("P(1) truncated at n=%d, tail ~ q^-%d", prec.truncation, prec.truncation + 1)
        return gmpy2.exp(acc)


def prime_deg_sum(q: int, prec: PrecisionContext):
    """sum over irreducibles P of deg P / (|P|(|P|+1) - 1), grouped by degree."""
    prime_power(q)
    with gmpy2.context(precision=_bits(prec.target_digits + 30)):
        s = mpfr(0)
        for n, c in enumerate(_irreducible_counts(q, prec.truncation), start=1):
            Q = mpfr(q) ** n
            s += c * n / (Q * (Q + 1) - 1)
        return s


def q1_closed(q: int, d: int, prec: PrecisionContext | None = None) -> AKPrediction:
    if d < 1:
        raise ValueError("d must be >= 1")
    prec = prec or PrecisionContext.for_problem(q, 1)
    P = euler_P1(q, prec)
    S = prime_deg_sum(q, prec)
    with gmpy2.context(precision=_bits(prec.target_digits + 30)):
        if d % 2:
            v = P / 2 * (d + 1 + 4 * S)
        else:
            v = P / 2 * (d - 2 / (gmpy2.sqrt(mpfr(q)) - 1) + 4 * S)
    return AKPrediction(q, d, 1, v, prec.target_digits)


def _check_domain(u, q):
    half = math.log(q) / 2
    for x in u:
        if abs(float(x)) >= half:
            raise ValueError(f"|u| must be below log(q)/2, got {x}")
    k = len(u)
    for i in range(k):
        for j in range(i, k):
            if u[i] + u[j] == 0:
                raise PoleHit(f"u_{i + 1} + u_{j + 1} = 0")


def _arith_log(u, q: int, parity: str, N: int, counts):
    """log of the degree-grouped arithmetic product and the even-d factor."""
    k = len(u)
    qq = mpfr(q)
    sq = gmpy2.sqrt(qq)
    L = mpfr(0)
    x = [gmpy2.exp(-t) for t in u]
    X = [mpfr(1)] * k
    for n in range(1, N + 1):
        X = [X[j] * x[j] for j in range(k)]
        qn = qq ** (-n)
        qh = sq ** (-n)
        t = mpfr(1)
        for i in range(k):
            for j in range(i, k):
                t *= 1 - qn * X[i] * X[j]
        pm = mpfr(1)
        pp = mpfr(1)
        for j in range(k):
            pm *= 1 - qh * X[j]
            pp *= 1 + qh * X[j]
        bracket = (1 / pm + 1 / pp) / 2 + qn
        L += counts[n - 1] * gmpy2.log(t * bracket / (1 + qn))
    if parity == "even":
        for t in u:
            L += (gmpy2.log1p(-gmpy2.exp(t) / sq) - gmpy2.log1p(-gmpy2.exp(-t) / sq)) / 2
    return L


def H_eval(u, q: int, parity: str, prec: PrecisionContext):
    """Full integrand factor H(u): zeta factor times arithmetic product."""
    with gmpy2.context(precision=_bits(prec.digits)):
        u = [mpfr(t) for t in u]
        _check_domain(u, q)
        z = mpfr(1)
        k = len(u)
        for i in range(k):
            for j in range(i, k):
                z *= -gmpy2.expm1(-(u[i] + u[j]))
        counts = _irreducible_counts(q, prec.truncation)
        return gmpy2.exp(_arith_log(u, q, parity, prec.truncation, counts)) / z


def regularized_F(u, q: int, parity: str, prec: PrecisionContext):
    """H(u) with the zeta factor removed; finite at u = 0, where it equals a_k."""
    with gmpy2.context(precision=_bits(prec.digits)):
        u = [mpfr(t) for t in u]
        counts = _irreducible_counts(q, prec.truncation)
        return gmpy2.exp(_arith_log(u, q, parity, prec.truncation, counts))


class _SignSum:
    """Per-sign-vector terms H(eps * alpha) and shift sums, independent of g."""

    def __init__(self, q: int, k: int, parity: str, prec: PrecisionContext,
                 order: list[int] | None = None):
        self.q, self.k, self.parity, self.prec = q, k, parity, prec
        self.bits = _bits(prec.digits)
        mult = order or list(range(1, k + 1))
        if sorted(mult) != list(range(1, k + 1)):
            raise ValueError("order must be a permutation of 1..k")
        with gmpy2.context(precision=self.bits):
            unit = mpfr(10) ** (-prec.shift_exponent)
            self.alpha = [m * unit for m in mult]
            self._build()

    def _build(self):
        q, k, N = self.q, self.k, self.prec.truncation
        counts = _irreducible_counts(q, N)
        qq = mpfr(q)
        sq = gmpy2.sqrt(qq)
        qn = [qq ** (-n) for n in range(N + 1)]
        qh = [sq ** (-n) for n in range(N + 1)]
        const = -sum(c * gmpy2.log1p(qn[n]) for n, c in enumerate(counts, start=1))
        self.const = const

        def phi(s):
            # sum_n i_n log(1 - q^-n e^{-ns}) together with the zeta factor
            e = gmpy2.exp(-s)
            en = mpfr(1)
            acc = mpfr(0)
            for n, c in enumerate(counts, start=1):
                en *= e
                acc += c * gmpy2.log1p(-qn[n] * en)
            return acc, 1 / (-gmpy2.expm1(-s))

        self.pair = {}
        for i in range(k):
            for j in range(i, k):
                for si in (1, -1):
                    for sj in ((1, -1) if i < j else (si,)):
                        s = si * self.alpha[i] + sj * self.alpha[j]
                        self.pair[(i, j, si, sj)] = phi(s)
        # per-coordinate bracket factors 1/(1 -+ q^{-n/2} e^{-n u_j})
        self.fm, self.fp, self.evenlog = {}, {}, {}
        for j in range(k):
            for s in (1, -1):
                u = s * self.alpha[j]
                e = gmpy2.exp(-u)
                en = mpfr(1)
                fm, fp = [None], [None]
                for n in range(1, N + 1):
                    en *= e
                    x = qh[n] * en
                    fm.append(1 / (1 - x))
                    fp.append(1 / (1 + x))
                self.fm[(j, s)] = fm
                self.fp[(j, s)] = fp
                if self.parity == "even":
                    self.evenlog[(j, s)] = (gmpy2.log1p(-gmpy2.exp(u) / sq)
                                            - gmpy2.log1p(-e / sq)) / 2
        self.counts, self.qn = counts, qn

    def terms(self):
        """Yield (H(eps alpha), exp(sum eps alpha)) in lexicographic order of eps."""
        k, N = self.k, self.prec.truncation
        with gmpy2.context(precision=self.bits):
            for eps in itertools.product((1, -1), repeat=k):
                L = self.const
                zinv = mpfr(1)
                for i in range(k):
                    for j in range(i, k):
                        lg, zi = self.pair[(i, j, eps[i], eps[j])]
                        L += lg
                        zinv *= zi
                fms = [self.fm[(j, eps[j])] for j in range(k)]
                fps = [self.fp[(j, eps[j])] for j in range(k)]
                for n in range(1, N + 1):
                    pm = fms[0][n]
                    pp = fps[0][n]
                    for j in range(1, k):
                        pm *= fms[j][n]
                        pp *= fps[j][n]
                    L += self.counts[n - 1] * gmpy2.log((pm + pp) / 2 + self.qn[n])
                if self.parity == "even":
                    for j in range(k):
                        L += self.evenlog[(j, eps[j])]
                shift = sum(e * a for e, a in zip(eps, self.alpha))
                yield zinv * gmpy2.exp(L), gmpy2.exp(shift)

    def values(self, genera: list[int]) -> list:
        with gmpy2.context(precision=self.bits):
            sums = [mpfr(0) for _ in genera]
            for h, es in self.terms():
                for i, g in enumerate(genera):
                    sums[i] += h * es ** g
            return sums


def _context(q: int, k: int, prec: PrecisionContext | None, **kw) -> PrecisionContext:
    if prec is None:
        return PrecisionContext.for_problem(q, k, **kw)
    prec.check(q, k)
    return prec


def qk_direct(q: int, d: int, k: int, prec: PrecisionContext | None = None,
              check_shift: bool = False, order: list[int] | None = None) -> AKPrediction:
    """Q_k(q; d) from the sign-vector sum.

    With `check_shift` the sum is recomputed at shift exponent E+5 and
    PrecisionInsufficient is raised unless the two agree to the target digits.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    prime_power(q)
    prec = _context(q, k, prec)
    lam, g = genus_data(d)
    parity = _parity(d)
    value = _SignSum(q, k, parity, prec, order).values([g])[0]
    if check_shift:
        alt = PrecisionContext(prec.digits + 5 * k * (k + 1) // 2, prec.target_digits,
                               prec.shift_exponent + 5, prec.truncation)
        other = _SignSum(q, k, parity, alt, order).values([g])[0]
        with gmpy2.context(precision=_bits(prec.digits)):
            rel = abs(other - value) / abs(value)
        if rel > mpfr(10) ** (-prec.target_digits):
            raise PrecisionInsufficient(
                f"shift re-run moved Q_{k}({q};{d}) by relative {float(rel):.3g}")
    return AKPrediction(q, d, k, value, prec.certified_digits(k, q))


def qk_values(q: int, k: int, parity: str, genera: list[int],
              prec: PrecisionContext | None = None) -> list:
    """Q_k at several genera of one parity, sharing the sign-vector terms."""
    prec = _context(q, k, prec)
    return _SignSum(q, k, parity, prec).values(list(genera))


def qk_coefficients(q: int, k: int, parity: str, prec: PrecisionContext | None = None) -> list:
    """Coefficients c_0..c_M of Q_k = sum_r c_r (2g)^(M-r), M = k(k+1)/2."""
    M = k * (k + 1) // 2
    m = M + 1
    if prec is None:
        prec = PrecisionContext.for_problem(q, k, extra_digits=15 * m)
    ys = qk_values(q, k, parity, list(range(1, m + 1)), prec)
    with gmpy2.context(precision=_bits(prec.digits)):
        xs = [2 * g for g in range(1, m + 1)]
        coef = list(ys)
        for level in range(1, m):
            for i in range(m - 1, level - 1, -1):
                coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
        # Newton form -> monomial basis, highest index first (Horner)
        poly = [mpfr(0)] * m  # poly[e] is the coefficient of x^e
        for i in range(m - 1, -1, -1):
            shifted = [mpfr(0)] * m
            for e in range(m - 1):
                shifted[e + 1] += poly[e]
            for e in range(m):
                shifted[e] -= xs[i] * poly[e]
            shifted[0] += coef[i]
            poly = shifted
        return [poly[M - r] for r in range(M + 1)]


def leading_constants(q: int, k: int, prec: PrecisionContext | None = None):
    """(a_k, c_0): the arithmetic factor at the origin and the leading coefficient."""
    prime_power(q)
    prec = prec or PrecisionContext.for_problem(q, 1)
    counts = _irreducible_counts(q, prec.truncation)
    # i_n ~ q^n multiplies a log that is 1 + O(q^-n) inside
    work = prec.target_digits + 30 + math.ceil(prec.truncation * math.log10(q))
    with gmpy2.context(precision=_bits(work)):
        qq = mpfr(q)
        sq = gmpy2.sqrt(qq)
        L = mpfr(0)
        for n, c in enumerate(counts, start=1):
            qn = qq ** (-n)
            qh = sq ** (-n)
            bracket = ((1 - qh) ** (-k) + (1 + qh) ** (-k)) / 2 + qn
            L += c * (k * (k + 1) // 2 * gmpy2.log1p(-qn) - gmpy2.log1p(qn) + gmpy2.log(bracket))
        a_k = gmpy2.exp(L)
        ratio = Fraction(1)
        for j in range(1, k + 1):
            ratio *= Fraction(math.factorial(j), math.factorial(2 * j))
        return a_k, a_k * ratio.numerator / ratio.denominator


@dataclass
class SeriesReport:
    q: int
    k: int
    parity: str
    g: int
    order: Fraction | None
    series_value: AlgebraicValue
    direct_value: object
    abs_dev: float
    rel_dev: float
    expected_tail: float

    @property
    def ok(self) -> bool:
        return self.abs_dev <= 2 * self.expected_tail


def series_value(q: int, k: int, parity: str, g: int, order=None) -> tuple[AlgebraicValue, float]:
    """Stored truncated series at (q, g) and an estimate of the neglected tail.

    `order` is the largest exponent e kept (terms up to q^-e); None keeps all.
    The tail estimate is the size of the omitted stored terms plus the
    largest stored coefficient times the next unstored power.
    """
    if (k, parity) not in SERIES:
        raise NotTabulated(f"no stored series for k={k}, {parity} d")
    data = SERIES[(k, parity)]
    hmax = max(data)
    cut = hmax if order is None else int(2 * Fraction(order))
    value = AlgebraicValue(0, 0, q)
    omitted = 0.0
    biggest = 0.0
    for h in range(hmax + 1):
        c = coefficient_at(k, parity, h, g)
        biggest = max(biggest, abs(float(c)))
        if h % 2 == 0:
            term = AlgebraicValue(c / Fraction(q) ** (h // 2), 0, q)
        else:
            term = AlgebraicValue(0, c / Fraction(q) ** ((h + 1) // 2), q)
        if h <= cut:
            value = value + term
        else:
            omitted += float(term)
    tail = abs(omitted) + biggest * q ** (-(hmax + 1) / 2)
    return value, tail


def series_check(q: int, k: int, parity: str, g: int, order=None,
                 prec: PrecisionContext | None = None) -> SeriesReport:
    """Compare the stored q-expansion with qk_direct at d = 2g+1 or 2g+2."""
    value, tail = series_value(q, k, parity, g, order)
    d = 2 * g + 1 if parity == "odd" else 2 * g + 2
    direct = qk_direct(q, d, k, prec).value
    exact = value.to_decimal(40)
    dev = abs(float(render(direct, 40) - exact))
    return SeriesReport(q, k, parity, g, None if order is None else Fraction(order),
                        value, direct, dev, dev / abs(float(direct)), tail)
