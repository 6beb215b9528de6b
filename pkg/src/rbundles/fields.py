"""Exact scalar fields: the rationals and prime fields F_p.

Elements of ``QQ`` are plain :class:`fractions.Fraction` objects.  Elements of
``GF(p)`` are :class:`FpElement` instances that interoperate with ``int``.
Both support ``+ - * /``, unary minus, ``==`` against ints, and ``bool``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache


class RationalField:
    """The field of rational numbers."""

    characteristic = 0
    order = None

    def __call__(self, value) -> Fraction:
        if isinstance(value, FpElement):
            raise TypeError("cannot coerce an F_p element into Q")
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def random(self, rng: random.Random, bound: int = 5) -> Fraction:
        """A small random rational; numerators in [-bound, bound], denominators in [1, 3]."""
        return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))

    def random_nonzero(self, rng: random.Random, bound: int = 5) -> Fraction:
        while True:
            x = self.random(rng, bound)
            if x:
                return x

    def to_json(self, x) -> str:
        return str(Fraction(x))

    def tag(self):
        return "Q"

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __reduce__(self):
        return (_get_qq, ())


QQ = RationalField()


def _get_qq():
    return QQ


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    """The prime field F_p.  Use :func:`GF` to obtain a (cached) instance."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p

    def __call__(self, value) -> FpElement:
        p = self.p
        if isinstance(value, FpElement):
            if value.p != p:
                raise TypeError(f"element of F_{value.p} coerced into F_{p}")
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes in F_{p}")
            return FpElement(value.numerator * pow(value.denominator, -1, p), p)
        if isinstance(value, bool) or not isinstance(value, int):
            value = int(value)
        return FpElement(value, p)

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self.p)

    @property
    def one(self) -> FpElement:
        return FpElement(1, self.p)

    def elements(self):
        return [FpElement(i, self.p) for i in range(self.p)]

    def nonzero_elements(self):
        return [FpElement(i, self.p) for i in range(1, self.p)]

    def random(self, rng: random.Random, bound: int | None = None) -> FpElement:
        return FpElement(rng.randrange(self.p), self.p)

    def random_nonzero(self, rng: random.Random, bound: int | None = None) -> FpElement:
        return FpElement(rng.randrange(1, self.p), self.p)

    def to_json(self, x) -> int:
        return self(x).value

    def tag(self):
        return {"Fp": self.p}

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


class FpElement:
    """An element of F_p stored as its least nonnegative residue."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise TypeError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> FpElement:
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return FpElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FpElement(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o, self.p) * self.inverse()

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElement(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.value - o) % self.p == 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"

    def __str__(self):
        return str(self.value)


def field_of(x):
    """The field an element belongs to (ints and Fractions count as rationals)."""
    if isinstance(x, FpElement):
        return GF(x.p)
    return QQ


def field_from_tag(tag) -> RationalField | PrimeField:
    """Inverse of ``field.tag()``: ``"Q"`` or ``{"Fp": p}``."""
    if tag == "Q":
        return QQ
    if isinstance(tag, dict) and set(tag) == {"Fp"} and isinstance(tag["Fp"], int):
        return GF(tag["Fp"])
    raise ValueError(f"invalid field tag {tag!r}; expected \"Q\" or {{\"Fp\": p}}")


def is_square(x) -> bool:
    """Whether x is a square in its field."""
    if isinstance(x, FpElement):
        return x.value == 0 or pow(x.value, (x.p - 1) // 2, x.p) == 1
    return rational_sqrt(Fraction(x)) is not None


def rational_sqrt(x: Fraction) -> Fraction | None:
    from math import isqrt

    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt(x):
    """A square root of x in its own field, or None if x is not a square."""
    if isinstance(x, FpElement):
        for r in range(x.p):
            if (r * r - x.value) % x.p == 0:
                return FpElement(r, x.p)
        return None
    return rational_sqrt(Fraction(x))
