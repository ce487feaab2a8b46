"""Ramanujan tau and the level-one Hecke traces needed for k <= 10.

Delta = x * prod (1 - x^n)^24 is expanded as x * J(x)^8 with Jacobi's
J = prod (1 - x^n)^3 = sum (-1)^m (2m+1) x^(m(m+1)/2).  Series products use
Kronecker substitution on big integers.
"""
from __future__ import annotations

import functools

import gmpy2

from .errors import PrecisionExceeded, UnsupportedWeight

DEFAULT_PRECISION = 10 ** 5
_BITS = 192  # per-coefficient slot; |coefficients| stay far below 2^190 for n <= 10^6


def _pack(coeffs: list[int], bits: int = _BITS) -> gmpy2.mpz:
    half = 1 << (bits - 1)
    nbytes = bits // 8
    raw = b"".join((c + half).to_bytes(nbytes, "little") for c in coeffs)
    offset = _offset(len(coeffs), bits)
    return gmpy2.mpz(int.from_bytes(raw, "little")) - offset


@functools.lru_cache(maxsize=8)
def _offset(n: int, bits: int) -> gmpy2.mpz:
    nbytes = bits // 8
    unit = (1 << (bits - 1)).to_bytes(nbytes, "little")
    return gmpy2.mpz(int.from_bytes(unit * n, "little"))


def _unpack(v: gmpy2.mpz, n: int, bits: int = _BITS) -> list[int]:
    """Low n signed slots of v."""
    half = 1 << (bits - 1)
    nbytes = bits // 8
    v = (v + _offset(n, bits)) % (gmpy2.mpz(1) << (bits * n))
    raw = int(v).to_bytes(nbytes * n, "little")
    return [int.from_bytes(raw[i:i + nbytes], "little") - half
            for i in range(0, nbytes * n, nbytes)]


def _mul_trunc(a: gmpy2.mpz, b: gmpy2.mpz, n: int) -> gmpy2.mpz:
    return _pack(_unpack(a * b, n))


def jacobi_eta3(n: int) -> list[int]:
    """Coefficients of prod (1 - x^k)^3 below x^n."""
    c = [0] * n
    m = 0
    while m * (m + 1) // 2 < n:
        c[m * (m + 1) // 2] = (-1) ** m * (2 * m + 1)
        m += 1
    return c


def euler_pentagonal(n: int) -> list[int]:
    """Coefficients of prod (1 - x^k) below x^n."""
    c = [0] * n
    c[0] = 1
    k = 1
    while k * (3 * k - 1) // 2 < n:
        s = -1 if k % 2 else 1
        c[k * (3 * k - 1) // 2] = s
        e = k * (3 * k + 1) // 2
        if e < n:
            c[e] = s
        k += 1
    return c


def _power(coeffs: list[int], e: int, n: int) -> list[int]:
    base = _pack(coeffs)
    result = None
    while e:
        if e & 1:
            result = base if result is None else _mul_trunc(result, base, n)
        e >>= 1
        if e:
            base = _mul_trunc(base, base, n)
    return _unpack(result, n)


class DeltaExpansion:
    """tau(1..N) from the Jacobi route; `tau_list[m]` is tau(m), index 0 unused."""

    def __init__(self, N: int = DEFAULT_PRECISION, method: str = "jacobi"):
        self.N = N
        if method == "jacobi":
            series = _power(jacobi_eta3(N), 8, N)
        elif method == "pentagonal":
            series = _power(euler_pentagonal(N), 24, N)
        else:
            raise ValueError(f"unknown method {method!r}")
        self.tau_list = [0] + series

    def __getitem__(self, m: int) -> int:
        if not 1 <= m <= self.N:
            raise PrecisionExceeded(f"tau({m}) is beyond precision {self.N}")
        return self.tau_list[m]


@functools.lru_cache(maxsize=4)
def delta_expansion(N: int = DEFAULT_PRECISION) -> DeltaExpansion:
    return DeltaExpansion(N)


def tau(m: int, N: int = DEFAULT_PRECISION) -> int:
    if m < 1:
        raise ValueError("tau is defined for m >= 1")
    if m > N:
        raise PrecisionExceeded(f"tau({m}) is beyond precision {N}")
    if m <= 1000:
        return delta_expansion(1000)[m]
    return delta_expansion(N)[m]


def hecke_trace(weight: int, p: int) -> int:
    """Trace of T_p on level-one cusp forms of the given weight."""
    if weight % 2 or weight < 2:
        raise UnsupportedWeight(f"weight {weight} is not a positive even integer")
    if weight in (2, 4, 6, 8, 10, 14):
        return 0
    if weight == 12:
        return tau(p)
    raise UnsupportedWeight(f"weight {weight} needs traces on a space of dimension >= 1 beyond tau")
