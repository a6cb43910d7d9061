"""Exact arithmetic in the quadratic field Q(sqrt 5).

Every position, time and ratio in the package is a :class:`Scalar`
``a + b*sqrt(5)`` with rational ``a`` and ``b``.  Comparisons are decided by
exact sign computation; decimal rendering exists for reports only.
"""

from __future__ import annotations

import math
import re
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

Rational = Fraction

_Coercible = Union["Scalar", Fraction, int]


class ScalarParseError(ValueError):
    """Malformed scalar text; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, text: str, pos: int, reason: str):
        self.text = text
        self.pos = pos
        self.reason = reason
        super().__init__(f"{reason} at position {pos} in {text!r}")


class Scalar:
    __slots__ = ("a", "b")

    def __init__(self, a: Fraction | int = 0, b: Fraction | int = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def coerce(cls, value: _Coercible) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot interpret {value!r} as a Scalar")

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{format_scalar(self)} is irrational")
        return self.a

    def conjugate(self) -> "Scalar":
        return Scalar(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm a^2 - 5 b^2 (product with the conjugate)."""
        return self.a * self.a - 5 * self.b * self.b

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return Scalar(self.a + other, self.b)
        return Scalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return Scalar(self.a - other, self.b)
        return Scalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return Scalar(other - self.a, -self.b)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return Scalar(self.a * other, self.b * other)
        if other.b == 0:
            return Scalar(self.a * other.a, self.b * other.a)
        if self.b == 0:
            return Scalar(self.a * other.a, self.a * other.b)
        return Scalar(
            self.a * other.a + 5 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            if other == 0:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar(self.a / other, self.b / other)
        if other.b == 0:
            if other.a == 0:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar(self.a / other.a, self.b / other.a)
        # multiply through by the conjugate; the norm is nonzero because
        # sqrt(5) is irrational
        n = other.norm()
        num = self * other.conjugate()
        return Scalar(num.a / n, num.b / n)

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return Scalar(other) / self

    def __neg__(self):
        return Scalar(-self.a, -self.b)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- ordering ---------------------------------------------------------------

    def sign(self) -> int:
        return sign(self)

    def _cmp(self, other) -> int | None:
        if isinstance(other, Scalar):
            if self.b == other.b:
                d = self.a - other.a
                return (d > 0) - (d < 0)
            return sign(self - other)
        if isinstance(other, (int, Fraction)):
            if self.b == 0:
                d = self.a - other
                return (d > 0) - (d < 0)
            return sign(self - other)
        return None

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- rendering --------------------------------------------------------------

    def to_decimal(self, digits: int = 50) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 10
            r5 = Decimal(5).sqrt()
            a = Decimal(self.a.numerator) / Decimal(self.a.denominator)
            b = Decimal(self.b.numerator) / Decimal(self.b.denominator)
            value = a + b * r5
        with localcontext() as ctx:
            ctx.prec = digits
            return +value

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(5)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


class _Infinity:
    """+infinity sentinel for ratios whose denominator vanishes."""

    __slots__ = ()

    def __repr__(self):
        return "INF"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("rendezvous.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()

ZERO = Scalar(0)
ONE = Scalar(1)


def phi() -> Scalar:
    """The golden ratio (1 + sqrt 5) / 2."""
    return Scalar(Fraction(1, 2), Fraction(1, 2))


def sign(v: Scalar) -> int:
    a, b = v.a, v.b
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger of a^2 and 5 b^2 wins
    lhs = a * a
    rhs = 5 * b * b
    if lhs > rhs:
        return sa
    return sb  # lhs == rhs is impossible for b != 0


def arith(lhs: _Coercible, op: str, rhs: _Coercible) -> Scalar:
    x = Scalar.coerce(lhs)
    y = Scalar.coerce(rhs)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def floor_rational(v: Fraction | int) -> int:
    return math.floor(Fraction(v))


def _format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(v: Scalar) -> str:
    """Canonical text: ``a`` or ``a+(p/q)*r5``; no whitespace."""
    if v is INF:
        return "inf"
    head = _format_fraction(v.a)
    if v.b == 0:
        return head
    return f"{head}+({v.b.numerator}/{v.b.denominator})*r5"


def format_decimal(v: Scalar, significant: int = 12) -> str:
    if v is INF:
        return "inf"
    if v == 0:
        return "0"
    d = v.to_decimal(significant + 10)
    return format(d, f".{significant}g")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def fail(self, reason: str):
        raise ScalarParseError(self.text, self.i, reason)

    def peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, token: str):
        if not self.text.startswith(token, self.i):
            self.fail(f"expected {token!r}")
        self.i += len(token)

    def integer(self) -> int:
        start = self.i
        if self.peek() in "+-":
            self.i += 1
        digits = self.i
        while self.peek().isdigit():
            self.i += 1
        if self.i == digits:
            self.i = start
            self.fail("expected integer")
        return int(self.text[start:self.i])

    def rational(self) -> Fraction:
        num = self.integer()
        if self.peek() == "/":
            self.i += 1
            at = self.i
            den = self.integer()
            if den <= 0:
                self.i = at
                self.fail("denominator must be positive")
            return Fraction(num, den)
        return Fraction(num)


def parse_scalar(text: str) -> Scalar:
    """Parse ``INT``, ``INT/INT``, optionally followed by ``+(INT/INT)*r5``.

    Whitespace between tokens is ignored; inside a number it is an error.  A bare ``(INT/INT)*r5`` is accepted as a purely
    irrational value.
    """
    split = re.search(r"\d\s+\d", text)
    if split:
        raise ScalarParseError(text, split.start() + 1, "whitespace inside a number")
    compact = "".join(text.split())
    if not compact:
        raise ScalarParseError(text, 0, "empty scalar")
    cur = _Cursor(compact)
    if cur.peek() == "(":
        a = Fraction(0)
    else:
        a = cur.rational()
        if cur.peek() == "":
            return Scalar(a)
        cur.expect("+")
    cur.expect("(")
    b = cur.rational()
    cur.expect(")")
    cur.expect("*r5")
    if cur.peek() != "":
        cur.fail("trailing characters")
    return Scalar(a, b)
