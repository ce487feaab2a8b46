"""Finite fields F_q = F_p[t]/(m(t)), their extensions, and polynomials over them.

Elements are coordinate vectors over Z/p.  The index of an element is the
integer whose base-p digits are its coordinates (lowest first); it is the
canonical order used for enumeration and for the cache files.
"""
from __future__ import annotations

import functools
import math
from typing import Iterator, Sequence

from .errors import (ContextMismatch, EvenCharacteristic, NoIrreducibleFound,
                     NotPrime, ZeroPolynomial)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for s in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % s == 0:
            return n == s
    # deterministic Miller-Rabin for n < 3.3e24, probabilistic beyond
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, n) with q = p**n, or raise NotPrime."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = next((f for f in range(2, math.isqrt(q) + 1) if q % f == 0), q)
    n, r = 0, q
    while r % p == 0:
        r //= p
        n += 1
    if r != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, n


def mobius(m: int) -> int:
    if m < 1:
        raise ValueError("mobius needs m >= 1")
    result, f = 1, 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            result = -result
        f += 1
    return -result if m > 1 else result


def divisors(n: int) -> list[int]:
    return [m for m in range(1, n + 1) if n % m == 0]


def count_irreducible(n: int, q: int) -> int:
    """Number of monic irreducible polynomials of degree n over F_q."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    total = sum(mobius(m) * q ** (n // m) for m in divisors(n))
    assert total % n == 0
    return total // n


class FqContext:
    """The field F_p[t]/(modulus).  Immutable; compare by (p, modulus)."""

    def __init__(self, p: int, n: int, modulus: tuple[int, ...] | None,
                 base: FqContext | None = None, base_image: tuple | None = None):
        self.p = p
        self.n = n
        self.q = p ** n
        # monic, lowest coefficient first, length n + 1
        self.modulus = modulus
        self.base = base
        self._base_image = base_image
        self._key = (p, modulus)
        self._sq_table = None

    def __eq__(self, other):
        return isinstance(other, FqContext) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.n == 1:
            return f"F_{self.p}"
        return f"F_{self.q}[t^{self.n}={_fmt_mod(self.modulus)}]"

    # raw coordinate-tuple arithmetic
    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def _mul(self, a, b):
        p, n = self.p, self.n
        if n == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        m = self.modulus
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(n):
                    prod[i - n + j] -= c * m[j]
        return tuple(x % p for x in prod[:n])

    def _pow(self, a, e: int):
        result = self.one.c
        while e:
            if e & 1:
                result = self._mul(result, a)
            a = self._mul(a, a)
            e >>= 1
        return result

    @functools.cached_property
    def zero(self) -> FqElement:
        return FqElement(self, (0,) * self.n)

    @functools.cached_property
    def one(self) -> FqElement:
        return FqElement(self, (1,) + (0,) * (self.n - 1))

    @property
    def gen(self) -> FqElement:
        """The class of t (equal to 1 in a prime field)."""
        if self.n == 1:
            return self.one
        return FqElement(self, (0, 1) + (0,) * (self.n - 2))

    def __call__(self, value) -> FqElement:
        return self.element(value)

    def element(self, value) -> FqElement:
        if isinstance(value, FqElement):
            if value.ctx != self:
                raise ContextMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, int):
            return FqElement(self, (value % self.p,) + (0,) * (self.n - 1))
        coords = tuple(int(x) % self.p for x in value)
        if len(coords) > self.n:
            raise ValueError("too many coordinates")
        return FqElement(self, coords + (0,) * (self.n - len(coords)))

    def from_index(self, index: int) -> FqElement:
        if not 0 <= index < self.q:
            raise ValueError("index out of range")
        coords = []
        for _ in range(self.n):
            index, r = divmod(index, self.p)
            coords.append(r)
        return FqElement(self, tuple(coords))

    def elements(self) -> Iterator[FqElement]:
        for i in range(self.q):
            yield self.from_index(i)

    def square_table(self) -> list[int]:
        """Quadratic character indexed by element index (built by squaring)."""
        if self._sq_table is None:
            table = [-1] * self.q
            table[0] = 0
            for e in self.elements():
                table[(e * e).index] = 1 if e else 0
            self._sq_table = table
        return self._sq_table

    def embed(self, e: FqElement) -> FqElement:
        """Image of an element of the base field under the stored embedding."""
        if e.ctx == self:
            return e
        if self.base is None or e.ctx != self.base:
            if e.ctx.n == 1 and e.ctx.p == self.p:
                return self.element(e.c[0])
            raise ContextMismatch(f"{e.ctx!r} does not embed in {self!r}")
        img = self.zero
        gamma = FqElement(self, self._base_image)
        for c in reversed(e.c):
            img = img * gamma + c
        return img

    @property
    def base_image(self) -> FqElement | None:
        if self._base_image is None:
            return None
        return FqElement(self, self._base_image)


def _fmt_mod(m) -> str:
    terms = [f"{c}t^{i}" if i else str(c) for i, c in enumerate(m[:-1]) if c]
    return "+".join(terms) or "0"


class FqElement:
    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FqContext, coords: tuple[int, ...]):
        self.ctx = ctx
        self.c = coords

    def _coerce(self, other) -> tuple[int, ...]:
        if isinstance(other, FqElement):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{other.ctx!r} vs {self.ctx!r}")
            return other.c
        if isinstance(other, int):
            return (other % self.ctx.p,) + (0,) * (self.ctx.n - 1)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElement(self.ctx, self.ctx._add(self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElement(self.ctx, self.ctx._sub(self.c, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElement(self.ctx, self.ctx._sub(o, self.c))

    def __neg__(self):
        return FqElement(self.ctx, self.ctx._neg(self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElement(self.ctx, self.ctx._mul(self.c, o))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FqElement(self.ctx, self.ctx._pow(self.c, e))

    def inverse(self) -> FqElement:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.ctx.q - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FqElement(self.ctx, o).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.ctx == other.ctx and self.c == other.c
        if isinstance(other, int):
            return self.c == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.q, self.c))

    @property
    def index(self) -> int:
        p, i = self.ctx.p, 0
        for x in reversed(self.c):
            i = i * p + x
        return i

    def __repr__(self):
        if self.ctx.n == 1:
            return f"{self.c[0]}"
        return "(" + "+".join(f"{x}t^{i}" if i else str(x)
                              for i, x in enumerate(self.c) if x or i == 0) + ")"


def is_square(e: FqElement) -> int:
    """Quadratic character of e by Euler's criterion."""
    if not e:
        return 0
    v = e ** ((e.ctx.q - 1) // 2)
    if v == 1:
        return 1
    assert v == -1
    return -1


def _check_prime(p: int) -> None:
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


@functools.lru_cache(maxsize=None)
def make_context(p: int, n: int = 1) -> FqContext:
    _check_prime(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return FqContext(p, 1, None)
    prime = make_context(p, 1)
    # ascending over the integer whose base-p digits are c_0..c_{n-1}
    for code in range(p ** n):
        low = []
        for _ in range(n):
            code, r = divmod(code, p)
            low.append(r)
        if low[0] == 0:
            continue
        f = FqPoly(prime, [prime(c) for c in low] + [prime.one])
        if is_irreducible(f):
            return FqContext(p, n, tuple(low) + (1,))
    raise NoIrreducibleFound(f"no irreducible of degree {n} over F_{p}")


@functools.lru_cache(maxsize=None)
def extension_context(base: FqContext, r: int) -> FqContext:
    """F_{q^r} with an embedding of `base`, found by exhaustive root search."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if r == 1:
        return FqContext(base.p, base.n, base.modulus, base, base.gen.c)
    big = make_context(base.p, base.n * r)
    if base.n == 1:
        return FqContext(big.p, big.n, big.modulus, base, big.one.c)
    m = base.modulus
    for x in big.elements():
        acc = big.zero
        for c in reversed(m):
            acc = acc * x + c
        if not acc:
            return FqContext(big.p, big.n, big.modulus, base, x.c)
    raise NoIrreducibleFound("base modulus has no root in the extension")


class FqPoly:
    """Dense polynomial over F_q, coefficients lowest degree first."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FqContext, coeffs: Sequence):
        cs = [ctx.element(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, ctx: FqContext) -> FqPoly:
        return cls(ctx, [0, 1])

    @classmethod
    def from_index(cls, ctx: FqContext, index: int, d: int) -> FqPoly:
        """Monic degree-d polynomial whose lower coefficients are the base-q digits of index."""
        q, cs = ctx.q, []
        for _ in range(d):
            index, r = divmod(index, q)
            cs.append(ctx.from_index(r))
        if index:
            raise ValueError("index out of range")
        return cls(ctx, cs + [ctx.one])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> FqElement:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def monic_flag(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_monic(self) -> bool:
        return self.monic_flag

    def monic(self) -> FqPoly:
        inv = self.lc.inverse()
        return FqPoly(self.ctx, [c * inv for c in self.coeffs])

    @property
    def index(self) -> int:
        """Inverse of from_index for monic polynomials."""
        i = 0
        for c in reversed(self.coeffs[:-1]):
            i = i * self.ctx.q + c.index
        return i

    def digits(self) -> str:
        """Cache digit string of the non-leading coefficients c_0..c_{d-1}."""
        ctx = self.ctx
        if ctx.p < 10:
            return "".join("".join(str(x) for x in c.c) for c in self.coeffs[:-1])
        w = len(str(ctx.p - 1))
        return "".join("".join(str(x).zfill(w) for x in c.c) for c in self.coeffs[:-1])

    @classmethod
    def from_digits(cls, ctx: FqContext, s: str) -> FqPoly:
        w = 1 if ctx.p < 10 else len(str(ctx.p - 1))
        step = w * ctx.n
        if not s.isdigit() or len(s) % step:
            raise ValueError(f"malformed coefficient string {s!r}")
        cs = []
        for i in range(0, len(s), step):
            chunk = s[i:i + step]
            coords = [int(chunk[j:j + w]) for j in range(0, step, w)]
            if any(c >= ctx.p for c in coords):
                raise ValueError(f"digit out of range in {s!r}")
            cs.append(ctx.element(coords))
        return cls(ctx, cs + [ctx.one])

    def _other(self, other) -> FqPoly:
        if isinstance(other, FqPoly):
            if other.ctx != self.ctx:
                raise ContextMismatch("polynomials over different fields")
            return other
        return FqPoly(self.ctx, [other])

    def __add__(self, other):
        o = self._other(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return FqPoly(self.ctx, [x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return FqPoly(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        if not self.coeffs or not o.coeffs:
            return FqPoly(self.ctx, [])
        out = [self.ctx.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] = out[i + j] + a * b
        return FqPoly(self.ctx, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._other(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        db = o.degree
        inv = o.lc.inverse()
        quot = [self.ctx.zero] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                f = c * inv
                quot[i - db] = f
                for j, b in enumerate(o.coeffs):
                    rem[i - db + j] = rem[i - db + j] - f * b
        return FqPoly(self.ctx, quot), FqPoly(self.ctx, rem[:db])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __pow__(self, e: int):
        result, base = FqPoly(self.ctx, [1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def pow_mod(self, e: int, m: FqPoly) -> FqPoly:
        result, base = FqPoly(self.ctx, [1]), self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def derivative(self) -> FqPoly:
        return FqPoly(self.ctx, [c * i for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other) -> FqPoly:
        a, b = self, self._other(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def __call__(self, x: FqElement) -> FqElement:
        if x.ctx != self.ctx:
            return eval_in_extension(self, x)
        acc = self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_shift(self, u) -> FqPoly:
        """D(x + u)."""
        shift = FqPoly(self.ctx, [u, 1])
        acc = FqPoly(self.ctx, [])
        for c in reversed(self.coeffs):
            acc = acc * shift + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, FqPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 and i:
                terms.append(mon)
            else:
                terms.append(f"{c!r}{'*' if mon else ''}{mon}")
        return " + ".join(terms)


def squarefree(D: FqPoly) -> bool:
    if D.is_zero():
        raise ZeroPolynomial("squarefree test of the zero polynomial")
    return D.gcd(D.derivative()).degree == 0


def is_irreducible(f: FqPoly) -> bool:
    """Rabin's test."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    f = f.monic()
    q = f.ctx.q
    x = FqPoly.x(f.ctx)
    for ell in {m for m in range(2, n + 1) if n % m == 0 and is_prime(m)}:
        h = x.pow_mod(q ** (n // ell), f) - x
        if f.gcd(h).degree != 0:
            return False
    return (x.pow_mod(q ** n, f) - x) % f == FqPoly(f.ctx, [])


def monic_polys(ctx: FqContext, d: int) -> Iterator[FqPoly]:
    for i in range(ctx.q ** d):
        yield FqPoly.from_index(ctx, i, d)


def eval_in_extension(D: FqPoly, x: FqElement) -> FqElement:
    """Horner evaluation of D at x after embedding D's coefficients into x's field."""
    big = x.ctx
    if big == D.ctx:
        coeffs = D.coeffs
    elif (big.base is not None and big.base == D.ctx) or (D.ctx.n == 1 and D.ctx.p == big.p):
        coeffs = [big.embed(c) for c in D.coeffs]
    else:
        raise ContextMismatch(f"{x.ctx!r} is not an extension of {D.ctx!r}")
    acc = big.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
