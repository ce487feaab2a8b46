"""Quadratic residue symbol (a|b) in F_q[x] via reciprocity, and chi_D."""
from __future__ import annotations

from .algebra import FqPoly, is_square, monic_polys, squarefree
from .errors import NonMonicModulus, NotSquarefree, ZeroModulus


def residue_symbol(a: FqPoly, b: FqPoly) -> int:
    """Jacobi symbol (a|b) for monic b, by a Euclidean loop with reciprocity."""
    if b.is_zero():
        raise ZeroModulus("modulus is zero")
    if not b.is_monic():
        raise NonMonicModulus("modulus must be monic")
    half = (a.ctx.q - 1) // 2
    sign = 1
    while b.degree > 0:
        a = a % b
        if a.is_zero():
            return 0
        c = a.lc
        if c != 1:
            if is_square(c) < 0 and b.degree % 2:
                sign = -sign
            a = a.monic()
        if half * a.degree * b.degree % 2:
            sign = -sign
        a, b = b, a
    return sign


def chi_D(D: FqPoly, n: FqPoly) -> int:
    if n.is_zero():
        return 0
    if n.degree == 0:
        if not n.is_monic():
            raise NonMonicModulus("n must be monic")
        return 1
    return residue_symbol(D, n)


def charsum(D: FqPoly, r: int) -> int:
    """Sum of chi_D(n) over all monic n of degree r."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if not D.is_monic() or D.degree < 1 or not squarefree(D):
        raise NotSquarefree(f"{D!r} is not squarefree monic")
    return sum(chi_D(D, n) for n in monic_polys(D.ctx, r))
