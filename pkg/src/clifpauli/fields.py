"""Scalar fields: exact rationals, exact Gaussian rationals and complex floats.

Every multivector carries one :class:`Field` instance.  The field coerces raw
Python numbers into its canonical scalar type and knows how to test for zero,
divide, and convert scalars to and from their text form.

* ``RealExact``    scalars are ``gmpy2.mpq`` (always in lowest terms).
* ``ComplexExact`` scalars are :class:`GaussianRational`.
* ``ComplexFloat`` scalars are builtin ``complex`` with finite parts.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Union

from gmpy2 import mpq, mpz

from .errors import DivisionByZero, FieldMismatch, ParseError

_RATIONAL_TEXT = re.compile(r"^-?[0-9]+(/[0-9]+)?$")

_MPQ = type(mpq(0))
_MPZ = type(mpz(0))


def _to_mpq(x: Any) -> Any:
    """Convert an exact real number to mpq; floats are refused."""
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, (int, _MPZ, Fraction, Rational)):
        return mpq(x.numerator, x.denominator) if not isinstance(x, (int, _MPZ)) else mpq(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise FieldMismatch(f"cannot use {type(x).__name__} {x!r} as an exact rational")


def parse_rational(text: str) -> Any:
    """Parse ``"num"`` or ``"num/den"`` (den > 0) into an mpq."""
    if not isinstance(text, str) or not _RATIONAL_TEXT.match(text):
        raise ParseError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return mpq(int(num), int(den) if den else 1)


def format_rational(x: Any) -> str:
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _gr(re_: Any, im: Any) -> "GaussianRational":
    # trusted constructor: both parts already mpq
    g = object.__new__(GaussianRational)
    g.re = re_
    g.im = im
    return g


class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Any = 0, im: Any = 0):
        self.re = _to_mpq(re)
        self.im = _to_mpq(im)

    @staticmethod
    def _lift(other: Any) -> "GaussianRational | None":
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (_MPQ, int, _MPZ, Fraction)):
            return _gr(_to_mpq(other), mpq(0))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return _gr(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return _gr(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return _gr(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b:
            return _gr(a * c, a * d)
        if not d:
            return _gr(a * c, b * c)
        return _gr(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        c, d = o.re, o.im
        den = c * c + d * d
        if not den:
            raise DivisionByZero("division by zero Gaussian rational")
        a, b = self.re, self.im
        return _gr((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return _gr(-self.re, -self.im)

    def __pos__(self):
        return self

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return _gr(self.re, -self.im)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self) -> str:
        if not self.im:
            return format_rational(self.re)
        im = format_rational(self.im)
        if not self.re:
            return f"{im}i"
        sign = "" if self.im < 0 else "+"
        return f"{format_rational(self.re)}{sign}{im}i"


Scalar = Union[Any, GaussianRational, complex]


class Field:
    """Common interface of the three scalar fields."""

    name: str = ""
    exact: bool = True
    is_complex: bool = False
    tolerance: float = 0.0

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    @property
    def i(self):
        raise FieldMismatch(f"{self.name} has no imaginary unit")

    def coerce(self, x: Any):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return not x

    def modulus(self, x) -> float:
        return float(abs(x))

    def div(self, a, b):
        if self.is_zero(b):
            raise DivisionByZero(f"division by zero in {self.name}")
        return a / b

    def to_text(self, x):
        raise NotImplementedError

    def from_text(self, obj):
        raise NotImplementedError

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class RealExact(Field):
    name = "real-exact"

    @property
    def zero(self):
        return mpq(0)

    @property
    def one(self):
        return mpq(1)

    def coerce(self, x):
        if isinstance(x, GaussianRational):
            if x.im:
                raise FieldMismatch(f"{x} has a nonzero imaginary part; real-exact field")
            return x.re
        if isinstance(x, complex):
            raise FieldMismatch("complex values are not allowed in the real-exact field")
        if isinstance(x, float):
            raise FieldMismatch("floats are not allowed in exact fields")
        return _to_mpq(x)

    def to_text(self, x) -> str:
        return format_rational(x)

    def from_text(self, obj):
        if isinstance(obj, dict):
            g = ComplexExact().from_text(obj)
            return self.coerce(g)
        return parse_rational(obj)


@dataclass(frozen=True)
class ComplexExact(Field):
    name = "complex-exact"
    is_complex = True

    @property
    def zero(self):
        return _gr(mpq(0), mpq(0))

    @property
    def one(self):
        return _gr(mpq(1), mpq(0))

    @property
    def i(self):
        return _gr(mpq(0), mpq(1))

    def coerce(self, x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise FieldMismatch("only integral complex literals are accepted exactly")
            return _gr(mpq(int(x.real)), mpq(int(x.imag)))
        if isinstance(x, float):
            raise FieldMismatch("floats are not allowed in exact fields")
        return _gr(_to_mpq(x), mpq(0))

    def to_text(self, x) -> dict:
        return {"re": format_rational(x.re), "im": format_rational(x.im)}

    def from_text(self, obj):
        if isinstance(obj, str):
            return _gr(parse_rational(obj), mpq(0))
        if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
            raise ParseError(f"expected an object with 're' and 'im', got {obj!r}")
        return _gr(parse_rational(obj["re"]), parse_rational(obj["im"]))


@dataclass(frozen=True)
class ComplexFloat(Field):
    tolerance: float = 1e-9
    name = "complex-float"
    exact = False
    is_complex = True

    def __post_init__(self):
        if not (self.tolerance >= 0 and math.isfinite(self.tolerance)):
            raise ValueError(f"tolerance must be a finite nonnegative float, got {self.tolerance}")

    @property
    def zero(self):
        return 0j

    @property
    def one(self):
        return 1 + 0j

    @property
    def i(self):
        return 1j

    def coerce(self, x):
        if isinstance(x, GaussianRational):
            z = complex(x)
        else:
            z = complex(x)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError(f"non-finite value {z!r} in complex-float field")
        return z

    def is_zero(self, x) -> bool:
        return abs(x) <= self.tolerance

    def to_text(self, x) -> dict:
        return {"re": repr(float(x.real)), "im": repr(float(x.imag))}

    def from_text(self, obj):
        if isinstance(obj, str):
            obj = {"re": obj, "im": "0.0"}
        if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
            raise ParseError(f"expected an object with 're' and 'im', got {obj!r}")
        try:
            re_ = float(obj["re"]) if "/" not in obj["re"] else float(parse_rational(obj["re"]))
            im = float(obj["im"]) if "/" not in obj["im"] else float(parse_rational(obj["im"]))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad float literal in {obj!r}") from exc
        return self.coerce(complex(re_, im))


FIELD_NAMES = ("real-exact", "complex-exact", "complex-float")


def field_from_name(name: str, tolerance: float | None = None) -> Field:
    if name == "real-exact":
        return RealExact()
    if name == "complex-exact":
        return ComplexExact()
    if name == "complex-float":
        return ComplexFloat() if tolerance is None else ComplexFloat(tolerance)
    raise ParseError(f"unknown field {name!r}; expected one of {', '.join(FIELD_NAMES)}")


def scalar_arith(a, b, op: str, field: Field):
    """Apply ``op`` in {add, sub, mul, div} to two scalars of ``field``."""
    a = field.coerce(a)
    b = field.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return field.div(a, b)
    raise ValueError(f"unknown scalar operation {op!r}")


def scalar_is_zero(a, field: Field) -> bool:
    return field.is_zero(field.coerce(a))
