"""Exact arithmetic in a quadratic field Q(sqrt(d))."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def is_squarefree(d: int) -> bool:
    if d in (0, 1):
        return False
    n = abs(d)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


class QuadExt:
    """The number ``a + b*sqrt(d)`` with rational ``a``, ``b`` and squarefree ``d``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=3):
        if not is_squarefree(d):
            raise ValueError(f"d={d} must be a squarefree integer other than 0, 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt({self.d})) and Q(sqrt({other.d}))")
            return other
        if isinstance(other, (int, Rational)):
            return QuadExt(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return QuadExt(self.a * other, self.b * other, self.d)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.d)

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero in quadratic field")
            return QuadExt(self.a / other, self.b / other, self.d)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = QuadExt(1, 0, self.d), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Rational)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})"
        bpart = root if self.b == 1 else f"-{root}" if self.b == -1 else f"{self.b}*{root}"
        if self.a == 0:
            return bpart
        sign = "-" if self.b < 0 else "+"
        if bpart.startswith("-"):
            bpart = bpart[1:]
        return f"{self.a} {sign} {bpart}"


def conjugate(c):
    return c.conjugate() if isinstance(c, QuadExt) else c


def sqrt(d: int) -> QuadExt:
    return QuadExt(0, 1, d)
