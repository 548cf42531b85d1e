"""Exact ground fields: the rationals and prime fields F_p.

Rational scalars are plain :class:`fractions.Fraction` values.  Residues
mod p are :class:`Mod` instances, which refuse to mix with residues of a
different characteristic.
"""
from fractions import Fraction
import re


class FieldMismatch(ValueError):
    pass


def is_prime(p):
    """Deterministic Miller-Rabin; the witness set is exact below 3.3e24."""
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    if p >= 3317044064679887385961981:
        raise ValueError("primality of moduli this large is not certified")
    return True


class Mod:
    """A residue class mod a prime p, always stored in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.p = p
        if isinstance(value, Fraction):
            value = value.numerator * pow(value.denominator, -1, p)
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatch(f"cannot mix F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in F_{self.p}")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) / self

    def __neg__(self):
        return Mod(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e):
        if e < 0:
            return Mod(pow(self.value, -1, self.p), self.p) ** (-e)
        return Mod(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.value == o

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class Field:
    """The ground field of a computation: ``Field()`` is Q, ``Field(p)`` is F_p."""

    def __init__(self, p=0):
        if p and not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.zero = self(0)
        self.one = self(1)

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, str):
            x = parse_rational(x)
        if p == 0:
            if isinstance(x, Mod):
                raise FieldMismatch("residue passed to the rational field")
            return Fraction(x)
        if isinstance(x, Mod):
            if x.p != p:
                raise FieldMismatch(f"cannot mix F_{p} and F_{x.p}")
            return x
        return Mod(x, p)

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def format(self, x):
        """Exact text: ``a/b`` for rationals, the residue for F_p."""
        return str(x)

    def to_int(self, x):
        return x.value if isinstance(x, Mod) else x


def parse_rational(text):
    text = text.strip()
    if not _RATIONAL.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


QQ = Field(0)
