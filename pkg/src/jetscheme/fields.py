"""Exact coefficient fields: the rationals and prime fields GF(p).

Field objects act as *domains*: raw element values are plain Python numbers
(``int`` or ``fractions.Fraction`` for QQ, ``int`` in ``[0, p)`` for GF(p)) and
the field object knows how to combine them.  Hot loops elsewhere in the
package work on these raw values directly.  :class:`FieldElem` wraps a value
together with its field for user-facing arithmetic with mixed-field checks.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
import random

from .errors import DivisionByZero, InputError, MixedFields

__all__ = ["Field", "Rationals", "PrimeField", "QQ", "GF", "FieldElem", "field_from_spec"]

_P_MAX = 2**31


class Field:
    """Common interface; see :class:`Rationals` and :class:`PrimeField`."""

    characteristic = 0
    zero = 0
    one = 1
    is_field = True

    def __call__(self, value):
        return FieldElem(self, self.convert(value))

    def add(self, a, b):
        return self.norm(a + b)

    def sub(self, a, b):
        return self.norm(a - b)

    def mul(self, a, b):
        return self.norm(a * b)

    def neg(self, a):
        return self.norm(-a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        return self.norm(a**e)

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1


class Rationals(Field):
    """QQ.  Canonical values: ``int`` when integral, otherwise a reduced ``Fraction``."""

    characteristic = 0
    name = "QQ"

    def norm(self, a):
        if type(a) is Fraction and a.denominator == 1:
            return a.numerator
        return a

    def convert(self, value):
        if isinstance(value, FieldElem):
            if value.field != self:
                raise MixedFields(f"cannot convert element of {value.field} to {self}")
            return value.value
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction):
            return self.norm(value)
        if isinstance(value, str):
            return self.norm(Fraction(value))
        raise InputError(f"cannot convert {value!r} to QQ")

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero in QQ")
        return self.norm(Fraction(1, a) if type(a) is int else 1 / a)

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in QQ")
        return self.norm(Fraction(a) / b)

    def random_element(self, rng: random.Random, bound=10):
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        return self.norm(Fraction(num, den))

    def render(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """GF(p) for a prime ``p < 2**31``; values are ints in ``[0, p)``."""

    def __init__(self, p: int):
        if not (2 <= p < _P_MAX and _is_prime(p)):
            raise InputError(f"characteristic must be a prime below 2^31, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def norm(self, a):
        return a % self.p

    def convert(self, value):
        if isinstance(value, FieldElem):
            if value.field != self:
                raise MixedFields(f"cannot convert element of {value.field} to {self}")
            return value.value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"denominator {value.denominator} vanishes in GF({self.p})")
            return value.numerator * pow(den, -1, self.p) % self.p
        raise InputError(f"cannot convert {value!r} to GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise DivisionByZero(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def random_element(self, rng: random.Random, bound=None):
        return rng.randrange(self.p)

    def render(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec) -> Field:
    """Build a field from ``"QQ"``, ``"GF(p)"``, an int characteristic or a dict."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, dict):
        spec = spec.get("characteristic", 0)
    if isinstance(spec, int):
        return QQ if spec == 0 else GF(spec)
    text = str(spec).strip().replace(" ", "")
    if text in ("QQ", "Q", "0"):
        return QQ
    for prefix in ("GF(", "F_(", "F("):
        if text.startswith(prefix) and text.endswith(")"):
            return GF(int(text[len(prefix):-1]))
    if text.startswith("F_"):
        return GF(int(text[2:]))
    if text.isdigit():
        return GF(int(text))
    raise InputError(f"unknown field specification {spec!r}")


class FieldElem:
    """A field element bound to its field; arithmetic refuses to mix fields."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise MixedFields(f"{self.field} and {other.field}")
            return other.value
        return self.field.convert(other)

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElem(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inv(self):
        return FieldElem(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.convert(other)
        except (InputError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.field!r}({self.value})"

    def __str__(self):
        return str(self.value)
