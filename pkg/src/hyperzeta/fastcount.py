"""Vectorized enumeration of squarefree monic D over F_q and their L-polynomials.

Polynomials are handled as rows of element indices.  A monic D of degree d is
identified with N(D) = sum e_i q^i, where e_i is the index of c_i; the reduced
family (c_{d-1} = 0) is then exactly the range N < q^(d-1).

Point counts: a_{q^r} is assembled from the values of the quadratic character
at D(beta), one beta per Frobenius orbit of degree m | r.  Evaluating D at all
orbit representatives is a single linear map over F_p applied to the
coordinate vectors of the coefficients, done as a float matrix product.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .algebra import FqContext, FqPoly, extension_context
from .lfunc import genus_data


class VField:
    """Elementwise F_q arithmetic on int64 arrays of element indices."""

    TABLE_LIMIT = 2048

    def __init__(self, ctx: FqContext):
        self.ctx = ctx
        self.q = ctx.q
        self.prime = ctx.n == 1
        q = ctx.q
        if not self.prime:
            if q > self.TABLE_LIMIT:
                raise ValueError(f"vector arithmetic over F_{q} is not supported")
            elems = list(ctx.elements())
            self.add_tab = np.array([[(a + b).index for b in elems] for a in elems], dtype=np.int64)
            self.mul_tab = np.array([[(a * b).index for b in elems] for a in elems], dtype=np.int64)
            self.neg_tab = np.array([(-a).index for a in elems], dtype=np.int64)
        self.chi = np.array(ctx.square_table(), dtype=np.int64)

    def add(self, a, b):
        if self.prime:
            return (a + b) % self.q
        return self.add_tab[a, b]

    def mul(self, a, b):
        if self.prime:
            return (a * b) % self.q
        return self.mul_tab[a, b]

    def neg(self, a):
        if self.prime:
            return (-a) % self.q
        return self.neg_tab[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))


@functools.lru_cache(maxsize=16)
def vfield(ctx: FqContext) -> VField:
    return VField(ctx)


def index_digits(indices: np.ndarray, base: int, width: int) -> np.ndarray:
    """Base-`base` digits (lowest first) of each index, shape (len, width)."""
    out = np.empty((len(indices), width), dtype=np.int64)
    rest = np.asarray(indices, dtype=np.int64).copy()
    for i in range(width):
        out[:, i] = rest % base
        rest //= base
    return out


def digits_index(digits: np.ndarray, base: int) -> np.ndarray:
    weights = base ** np.arange(digits.shape[1], dtype=np.int64)
    return digits @ weights


def poly_mul_rows(F: FqContext, f: list[int], G: np.ndarray) -> np.ndarray:
    """Product of one polynomial f (element indices) with every row of G."""
    vf = vfield(F)
    rows, lg = G.shape
    out = np.zeros((rows, len(f) + lg - 1), dtype=np.int64)
    for i, c in enumerate(f):
        if c == 0:
            continue
        out[:, i:i + lg] = vf.add(out[:, i:i + lg], vf.mul(c, G))
    return out


def squarefree_mask(ctx: FqContext, d: int) -> np.ndarray:
    """Boolean mask over N(D) in [0, q^d): True iff D is squarefree.

    Non-squarefree D are exactly the products A^2 B with A monic of degree >= 1.
    """
    q = ctx.q
    mask = np.ones(q ** d, dtype=bool)
    one = ctx.one.index
    for a in range(1, d // 2 + 1):
        nb = d - 2 * a
        B = np.empty((q ** nb, nb + 1), dtype=np.int64)
        B[:, :nb] = index_digits(np.arange(q ** nb), q, nb)
        B[:, nb] = one
        for ai in range(q ** a):
            A = FqPoly.from_index(ctx, ai, a)
            sq = [c.index for c in (A * A).coeffs]
            prod = poly_mul_rows(ctx, sq, B)
            mask[digits_index(prod[:, :d], q)] = False
    return mask


class OrbitEvaluator:
    """Computes a_{q^r}, r = 1..R, for batches of degree-d monic polynomials."""

    def __init__(self, ctx: FqContext, d: int, R: int):
        self.ctx, self.d, self.R = ctx, d, R
        p, n = ctx.p, ctx.n
        self.p = p
        cols, const, self.groups = [], [], []
        start = 0
        for m in range(1, R + 1):
            big = extension_context(ctx, m)
            reps = _orbit_reps(big, ctx.q, m)
            theta = big.base_image
            nm = n * m
            for beta in reps:
                pw = [big.one]
                for _ in range(d):
                    pw.append(pw[-1] * beta)
                block = []
                for i in range(d):
                    tpow = big.one
                    for _t in range(n):
                        block.append((tpow * pw[i]).c)
                        tpow = tpow * theta
                cols.append(np.array(block, dtype=np.float64))
                const.append(np.array(pw[d].c, dtype=np.int64))
            chi = np.array(big.square_table(), dtype=np.int64)
            width = len(reps) * nm
            self.groups.append((m, len(reps), nm, start, start + width, chi))
            start += width
        if cols:
            self.W = np.concatenate(cols, axis=1)
            self.w0 = np.concatenate(const)
        else:
            self.W = np.zeros((d * n, 0))
            self.w0 = np.zeros(0, dtype=np.int64)
        if (p - 1) ** 2 * d * n >= 2 ** 52:
            raise ValueError("characteristic too large for exact float products")

    def coords(self, E: np.ndarray) -> np.ndarray:
        """Element-index matrix (B, d) -> flattened F_p coordinates (B, d*n)."""
        n = self.ctx.n
        if n == 1:
            return E.astype(np.float64)
        B = E.shape[0]
        return index_digits(E.reshape(-1), self.p, n).reshape(B, self.d * n).astype(np.float64)

    def characters(self, E: np.ndarray) -> list[tuple[int, np.ndarray]]:
        """(m, chi(D(beta))) per orbit degree m; arrays have shape (B, #orbits)."""
        B = E.shape[0]
        if self.R == 0:
            return []
        V = self.coords(E) @ self.W
        V = (V.astype(np.int64) + self.w0) % self.p
        out = []
        for m, count, nm, lo, hi, chi in self.groups:
            blk = V[:, lo:hi].reshape(B, count, nm)
            idx = blk @ (self.p ** np.arange(nm, dtype=np.int64))
            out.append((m, chi[idx]))
        return out

    def a_qr(self, E: np.ndarray) -> np.ndarray:
        """E: (B, d) element indices of c_0..c_{d-1}; returns (B, R) int64."""
        out = np.zeros((E.shape[0], self.R), dtype=np.int64)
        for m, vals in self.characters(E):
            s_odd = vals.sum(axis=1)
            s_even = (vals != 0).sum(axis=1)
            for r in range(m, self.R + 1, m):
                out[:, r - 1] -= m * (s_odd if (r // m) % 2 else s_even)
        return out


def _orbit_reps(big: FqContext, q: int, m: int) -> list:
    """One element per Frobenius orbit of exact size m, smallest index first."""
    seen = set()
    reps = []
    for x in big.elements():
        i = x.index
        if i in seen:
            continue
        orbit = [x]
        y = x ** q
        while y != x:
            orbit.append(y)
            y = y ** q
        for z in orbit:
            seen.add(z.index)
        if len(orbit) == m:
            reps.append(x)
    return reps


def lpoly_rows(a_qr: np.ndarray, q: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized Newton identities: returns (b, a) coefficient arrays."""
    lam, g = genus_data(d)
    B = a_qr.shape[0]
    p = a_qr[:, :g] - lam
    b = np.zeros((B, 2 * g + 1), dtype=np.int64)
    b[:, 0] = 1
    for r in range(1, g + 1):
        acc = np.zeros(B, dtype=np.int64)
        for i in range(1, r + 1):
            acc += p[:, i - 1] * b[:, r - i]
        if np.any(acc % r):
            raise ArithmeticError("non-integral L-coefficient in batch")
        b[:, r] = -(acc // r)
    for r in range(g):
        b[:, 2 * g - r] = b[:, r] * q ** (g - r)
    if lam:
        a = np.zeros((B, 2 * g + 2), dtype=np.int64)
        a[:, 0] = b[:, 0]
        a[:, 1:2 * g + 1] = b[:, 1:] - b[:, :-1]
        a[:, 2 * g + 1] = -b[:, 2 * g]
    else:
        a = b
    return b, a


def central_scale(q: int, d: int) -> int:
    lam, g = genus_data(d)
    return (2 * g + lam + 1) // 2


def central_xy(a: np.ndarray, q: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Integers X, Y with q^M L(1/2) = X + Y sqrt(q), M = central_scale(q, d)."""
    M = central_scale(q, d)
    top = a.shape[1] - 1
    if 2 ** (top + 1) * float(q) ** (M + top / 2 + 1) > 2 ** 62:
        raise OverflowError("central values exceed int64 range")
    X = np.zeros(a.shape[0], dtype=np.int64)
    Y = np.zeros(a.shape[0], dtype=np.int64)
    for r in range(top + 1):
        if r % 2 == 0:
            X += a[:, r] * q ** (M - r // 2)
        else:
            Y += a[:, r] * q ** (M - (r + 1) // 2)
    return X, Y


@dataclass
class Chunk:
    index: np.ndarray   # N(D) of each squarefree member
    b: np.ndarray       # (B, 2g+1)
    a: np.ndarray       # (B, 2g+1+lambda)


class EnsembleEngine:
    """Enumerates squarefree monic D of degree d (optionally c_{d-1} = 0)."""

    def __init__(self, ctx: FqContext, d: int, reduced: bool = False, R: int | None = None):
        if d < 1:
            raise ValueError("degree must be >= 1")
        if reduced and d % ctx.p == 0:
            raise ValueError("the reduced family needs p not dividing d")
        self.ctx, self.d, self.reduced = ctx, d, reduced
        lam, g = genus_data(d)
        self.R = g if R is None else R
        self.space = ctx.q ** (d - 1) if reduced else ctx.q ** d
        self._mask = None
        self._eval = None

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            self._mask = squarefree_mask(self.ctx, self.d)[:self.space]
        return self._mask

    @property
    def evaluator(self) -> OrbitEvaluator:
        if self._eval is None:
            self._eval = OrbitEvaluator(self.ctx, self.d, self.R)
        return self._eval

    def count(self) -> int:
        return int(self.mask.sum())

    def chunk_bounds(self, size: int) -> list[tuple[int, int]]:
        return [(lo, min(lo + size, self.space)) for lo in range(0, self.space, size)]

    def members(self, lo: int, hi: int) -> np.ndarray:
        return lo + np.flatnonzero(self.mask[lo:hi])

    def a_qr(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        idx = self.members(lo, hi)
        E = index_digits(idx, self.ctx.q, self.d)
        return idx, self.evaluator.a_qr(E)

    def lpolys(self, lo: int, hi: int) -> Chunk:
        idx, aq = self.a_qr(lo, hi)
        b, a = lpoly_rows(aq, self.ctx.q, self.d)
        return Chunk(idx, b, a)
