"""Exact elements x + y*sqrt(q) of Q(sqrt(q))."""
from __future__ import annotations

import decimal
import math
from fractions import Fraction


class AlgebraicValue:
    __slots__ = ("x", "y", "q")

    def __init__(self, x, y=0, q: int = 1):
        x, y = Fraction(x), Fraction(y)
        r = math.isqrt(q)
        if r * r == q:
            x, y = x + y * r, Fraction(0)
        self.x, self.y, self.q = x, y, q

    def _lift(self, other) -> AlgebraicValue:
        if isinstance(other, AlgebraicValue):
            if other.q != self.q and other.y and self.y:
                raise ValueError(f"sqrt({self.q}) and sqrt({other.q}) mixed")
            if other.q != self.q and other.y:
                return other
            return other if other.q == self.q else AlgebraicValue(other.x, 0, self.q)
        if isinstance(other, (int, Fraction)):
            return AlgebraicValue(other, 0, self.q)
        return NotImplemented

    def _q_with(self, o: AlgebraicValue) -> int:
        return self.q if self.y or not o.y else o.q

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return AlgebraicValue(self.x + o.x, self.y + o.y, self._q_with(o))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicValue(-self.x, -self.y, self.q)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        q = self._q_with(o)
        return AlgebraicValue(self.x * o.x + self.y * o.y * q,
                              self.x * o.y + self.y * o.x, q)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = AlgebraicValue(1, 0, self.q)
        for _ in range(k):
            result = result * self
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraicValue(self.x / other, self.y / other, self.q)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        norm = o.x * o.x - o.y * o.y * o.q
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        num = self * AlgebraicValue(o.x, -o.y, o.q)
        return AlgebraicValue(num.x / norm, num.y / norm, num.q)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, AlgebraicValue) else other
        if o is NotImplemented:
            return NotImplemented
        if self.y == 0 and o.y == 0:
            return self.x == o.x
        return self.q == o.q and self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y, self.q if self.y else 0))

    def is_rational(self) -> bool:
        return self.y == 0

    def to_decimal(self, digits: int = 30) -> decimal.Decimal:
        """Value rounded half-even to `digits` significant digits."""
        with decimal.localcontext() as ctx:
            ctx.prec = digits + 10
            v = decimal.Decimal(self.x.numerator) / self.x.denominator
            if self.y:
                s = decimal.Decimal(self.q).sqrt()
                v += decimal.Decimal(self.y.numerator) / self.y.denominator * s
            ctx.prec = digits
            ctx.rounding = decimal.ROUND_HALF_EVEN
            return +v

    def __float__(self):
        return float(self.x) + float(self.y) * math.sqrt(self.q)

    def __repr__(self):
        return f"AlgebraicValue({self})"

    def __str__(self):
        if not self.y:
            return str(self.x)
        return f"{self.x} + {self.y}*sqrt({self.q})"
