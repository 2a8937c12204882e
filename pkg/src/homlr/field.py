"""Exact scalar fields: the rationals and prime fields F_p.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field
elements are :class:`Residue` objects holding the canonical representative
in ``0..p-1``; they mix freely with Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Residue:
    """An element of F_p in canonical form."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Residue):
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Residue(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Residue(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Residue(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return Residue(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return Residue(pow(self.v, e, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash(self.v)

    def __int__(self):
        return self.v

    def __repr__(self):
        return "Residue(%d, %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class Field:
    """Descriptor of the base field: characteristic 0 (Q) or a prime p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ValueError("characteristic must be 0 or a prime, got %r" % c)

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @cached_property
    def zero(self):
        return self(0)

    @cached_property
    def one(self):
        return self(1)

    def __call__(self, x):
        p = self.characteristic
        if p == 0 and type(x) is Fraction:
            return x
        if isinstance(x, str):
            return self.parse(x)
        if p == 0:
            if isinstance(x, Residue):
                raise TypeError("cannot coerce a residue into Q")
            return Fraction(x)
        if isinstance(x, Residue):
            if x.p != p:
                raise TypeError("residue of F_%d used in F_%d" % (x.p, p))
            return x
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError("%s has no image in F_%d" % (x, p))
            return Residue(x.numerator * pow(x.denominator, -1, p), p)
        return Residue(int(x), p)

    def parse(self, literal: str):
        """Parse ``"n"`` or ``"p/q"``; raises ValueError on junk."""
        s = literal.strip()
        try:
            if "/" in s:
                num, den = s.split("/")
                value = Fraction(int(num), int(den))
            else:
                value = Fraction(int(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError("bad scalar literal %r" % literal) from exc
        return self(value)

    def format(self, x) -> str:
        x = self(x)
        if self.characteristic:
            return str(x.v)
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)

    def random(self, rng, bound: int = 3):
        """Small random element, numerators in [-bound, bound]."""
        if self.characteristic:
            return self(rng.randrange(self.characteristic))
        return Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 1, 2)))

    def random_nonzero(self, rng: random.Random, bound: int = 3):
        while True:
            x = self.random(rng, bound)
            if x:
                return x

    def __str__(self):
        return "Q" if self.characteristic == 0 else "F%d" % self.characteristic


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
