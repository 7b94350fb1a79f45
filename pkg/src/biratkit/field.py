"""Coefficient fields: the rationals and prime fields Z/p.

Internally every routine works on *raw* values (``int`` in ``[0, p)`` for a
prime field, :class:`fractions.Fraction` for QQ) and calls the field object
for arithmetic.  :class:`Scalar` is the user-facing wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, FieldMismatch

MAX_PRIME = 2**63


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
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


class FieldSpec:
    """A coefficient field: ``FieldSpec.QQ`` or ``FieldSpec.prime(p)``."""

    __slots__ = ("p", "_hash")

    def __init__(self, p: int = 0):
        if p:
            if not is_prime(p):
                raise ValueError(f"modulus {p} is not prime")
            if p >= MAX_PRIME:
                raise ValueError("prime modulus must be below 2**63")
        self.p = p
        self._hash = hash(("field", p))

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @property
    def is_prime_field(self) -> bool:
        return self.p != 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.p == self.p

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ZZ/{self.p}" if self.p else "QQ"

    # raw-value arithmetic -------------------------------------------------
    def convert(self, value) -> Union[int, Fraction]:
        """Map an int, Fraction or Scalar into canonical raw form."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value.value
        p = self.p
        if p:
            if isinstance(value, Fraction):
                if value.denominator % p == 0:
                    raise DivisionByZero(f"denominator divisible by {p}")
                return value.numerator * pow(value.denominator, -1, p) % p
            return int(value) % p
        return Fraction(value)

    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_str(self, a) -> str:
        if self.p:
            return str(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def random_element(self, rng, bound: int = 10_000):
        """Uniform in Z/p, or a uniform integer in [-bound, bound] over QQ."""
        if self.p:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-bound, bound))


QQ = FieldSpec(0)


@dataclass(frozen=True)
class Scalar:
    """An element of a :class:`FieldSpec` in canonical form."""

    field: FieldSpec
    value: object

    @classmethod
    def of(cls, field: FieldSpec, value) -> "Scalar":
        return cls(field, field.convert(value))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field.convert(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __repr__(self):
        return self.field.to_str(self.value)


def scalar_arith(op: str, a: Scalar, b: Scalar = None) -> Scalar:
    """Dispatch one of add/sub/mul/div/inv/neg on scalars."""
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown scalar operation {op!r}")
