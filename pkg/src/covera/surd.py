"""Exact numbers of the form a + b*sqrt(D) with rational a, b and integer D >= 0.

Floors and ceilings are decided by integer arithmetic only, which is what the
bound calculations need: every bound ends in a rounding step and the values
involved frequently sit very close to an integer.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor as _ffloor, isqrt
from numbers import Rational
from typing import Union

Number = Union[int, Fraction, "BoundValue"]

_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % q for q in range(2, isqrt(p) + 1))]


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, m) with n == s*s*m, pulling out square factors of small primes."""
    s = 1
    for p in _SMALL_PRIMES:
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            s *= p
    r = isqrt(n)
    if r * r == n:
        return s * r, 1
    return s, n


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class BoundValue:
    """An exact value ``a + b*sqrt(dsc)``.

    Values whose discriminant is a perfect square are folded to rationals, so
    ``b == 0`` and ``dsc == 0`` for every rational value.
    """

    __slots__ = ("a", "b", "dsc")

    def __init__(self, a=0, b=0, dsc: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        dsc = int(dsc)
        if dsc < 0:
            raise ValueError(f"negative discriminant {dsc}")
        if b and dsc:
            s, dsc = _squarefree_split(dsc)
            b *= s
            if dsc == 1:
                a += b
                b, dsc = Fraction(0), 0
        else:
            b, dsc = Fraction(0), 0
        self.a = a
        self.b = b
        self.dsc = dsc

    @classmethod
    def sqrt(cls, x) -> "BoundValue":
        """Exact square root of a nonnegative rational."""
        x = Fraction(x)
        if x < 0:
            raise ValueError(f"square root of negative value {x}")
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(0, Fraction(1, x.denominator), x.numerator * x.denominator)

    @classmethod
    def coerce(cls, x: Number) -> "BoundValue":
        if isinstance(x, BoundValue):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x)
        raise TypeError(f"cannot convert {type(x).__name__} to BoundValue")

    @property
    def is_rational(self) -> bool:
        return self.dsc == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    def _common(self, other: "BoundValue") -> int:
        if self.dsc and other.dsc and self.dsc != other.dsc:
            raise ValueError(f"mixed discriminants {self.dsc} and {other.dsc}")
        return self.dsc or other.dsc

    # arithmetic

    def __neg__(self):
        return BoundValue(-self.a, -self.b, self.dsc)

    def __add__(self, other):
        try:
            other = BoundValue.coerce(other)
        except TypeError:
            return NotImplemented
        dsc = self._common(other)
        return BoundValue(self.a + other.a, self.b + other.b, dsc)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = BoundValue.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = BoundValue.coerce(other)
        except TypeError:
            return NotImplemented
        dsc = self._common(other)
        return BoundValue(
            self.a * other.a + self.b * other.b * dsc,
            self.a * other.b + self.b * other.a,
            dsc,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = BoundValue.coerce(other)
        except TypeError:
            return NotImplemented
        if other.sign() == 0:
            raise ZeroDivisionError("division by zero BoundValue")
        dsc = self._common(other)
        conj = BoundValue(other.a, -other.b, dsc)
        norm = other.a * other.a - other.b * other.b * dsc
        num = self * conj
        return BoundValue(num.a / norm, num.b / norm, dsc)

    def __rtruediv__(self, other):
        return BoundValue.coerce(other) / self

    # ordering

    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa >= 0 and sb > 0:
            return 1
        if sa <= 0 and sb < 0:
            return -1
        lhs = self.a * self.a
        rhs = self.b * self.b * self.dsc
        if lhs > rhs:
            return sa
        if lhs < rhs:
            return sb
        return 0

    def _cmp(self, other) -> int:
        return (self - BoundValue.coerce(other)).sign()

    def __eq__(self, other):
        try:
            other = BoundValue.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.dsc == other.dsc

    def __hash__(self):
        if self.is_rational:
            return hash(self.a)
        return hash((self.a, self.b, self.dsc))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # rounding

    def _surd_floor(self) -> int:
        # floor(b*sqrt(dsc)) from isqrt of b^2*dsc = N/M
        sq = self.b * self.b * self.dsc
        n, m = sq.numerator, sq.denominator
        root = isqrt(n * m) // m  # floor(sqrt(n/m))
        if self.b > 0:
            return root
        # -sqrt(x): floor is -ceil(sqrt(x)); sqrt(x) is irrational here
        return -(root + 1)

    def floor(self) -> int:
        if self.is_rational:
            return _ffloor(self.a)
        guess = _ffloor(self.a) + self._surd_floor()
        while (self - guess).sign() < 0:
            guess -= 1
        while (self - (guess + 1)).sign() >= 0:
            guess += 1
        return guess

    def ceil(self) -> int:
        return -((-self).floor())

    def __floor__(self):
        return self.floor()

    def __ceil__(self):
        return self.ceil()

    def __float__(self):
        return float(self.a) + float(self.b) * self.dsc**0.5

    def __repr__(self):
        return f"BoundValue({self.a!r}, {self.b!r}, {self.dsc})"

    def __str__(self):
        if self.is_rational:
            return str(self.a)
        b = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        surd = f"{b}sqrt({self.dsc})"
        if self.a == 0:
            return surd
        if surd.startswith("-"):
            return f"{self.a} - {surd[1:]}"
        return f"{self.a} + {surd}"
