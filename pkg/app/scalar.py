"""Exact arithmetic over the Gaussian rationals Q(i).

Every matrix entry, eigenvalue and coordinate in orbitdx is a
``GaussianRational``. Components are ``fractions.Fraction`` values, so
numerators and denominators are arbitrary-precision and always reduced.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from app.errors import DivisionByZeroError, ScalarParseError

ScalarLike = Union["GaussianRational", Fraction, int]

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")


class GaussianRational:
    """
    An element re + im*i of Q(i) in canonical form.

    Both components are reduced fractions with positive denominators, so
    two values are equal exactly when their components are equal.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re: Union[Fraction, int] = 0, im: Union[Fraction, int] = 0) -> None:
        self._re = Fraction(re)
        self._im = Fraction(im)

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @classmethod
    def coerce(cls, value: ScalarLike | str) -> GaussianRational:
        """Convert an int, Fraction, string or GaussianRational."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, str):
            return parse(value)
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls(value)
        raise TypeError(f"Cannot convert {type(value).__name__} to GaussianRational")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self._re == 0 and self._im == 0

    def is_real(self) -> bool:
        return self._im == 0

    def is_integral(self) -> bool:
        """True when both components have denominator 1."""
        return self._re.denominator == 1 and self._im.denominator == 1

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self._re, -self._im)

    def norm(self) -> Fraction:
        """Field norm re^2 + im^2."""
        return self._re * self._re + self._im * self._im

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self._re, -self._im)

    def __pos__(self) -> GaussianRational:
        return self

    def __add__(self, other: object) -> GaussianRational:
        other = _operand(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __sub__(self, other: object) -> GaussianRational:
        other = _operand(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self._re - other._re, self._im - other._im)

    def __rsub__(self, other: object) -> GaussianRational:
        other = _operand(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> GaussianRational:
        other = _operand(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self._re, self._im, other._re, other._im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        """
        Multiplicative inverse.

        Raises:
            DivisionByZeroError: If self is zero
        """
        n = self.norm()
        if n == 0:
            raise DivisionByZeroError("Cannot invert the zero scalar")
        return GaussianRational(self._re / n, -self._im / n)

    def __truediv__(self, other: object) -> GaussianRational:
        other = _operand(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> GaussianRational:
        other = _operand(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> GaussianRational:
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        other = _operand(other)
        if other is None:
            return NotImplemented
        return self._re == other._re and self._im == other._im

    def __hash__(self) -> int:
        # Real values hash like the equal Fraction/int.
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"GaussianRational({render(self)!r})"


def _operand(value: object) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return GaussianRational(value)
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# Field operations
# ---------------------------------------------------------------------------

def add(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    """Exact sum in canonical form."""
    return a + b


def mul(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    """Exact product in canonical form."""
    return a * b


def inv(a: GaussianRational) -> GaussianRational:
    """
    Exact inverse.

    Raises:
        DivisionByZeroError: If a is zero
    """
    return a.inverse()


# ---------------------------------------------------------------------------
# Text format: "a/b", "a/b+c/d*i", "a/b-c/d*i", with "/1" omissible
# ---------------------------------------------------------------------------

def _render_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _render_imaginary(value: Fraction) -> str:
    if value == 1:
        return "i"
    if value == -1:
        return "-i"
    return f"{_render_rational(value)}*i"


def render(x: GaussianRational) -> str:
    """
    Canonical whitespace-free rendering.

    Example:
        >>> render(GaussianRational(Fraction(1, 2), -1))
        '1/2-i'
    """
    if x.im == 0:
        return _render_rational(x.re)
    imaginary = _render_imaginary(x.im)
    if x.re == 0:
        return imaginary
    if not imaginary.startswith("-"):
        imaginary = "+" + imaginary
    return _render_rational(x.re) + imaginary


def _parse_rational(token: str, text: str) -> Fraction:
    if not _RATIONAL.fullmatch(token):
        raise ScalarParseError(f"Invalid rational component {token!r} in scalar {text!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError as e:
        raise ScalarParseError(f"Zero denominator in scalar {text!r}") from e


def _parse_imaginary(token: str, text: str) -> Fraction:
    # token is the coefficient part with the trailing "i" / "*i" removed
    if token in ("", "+"):
        return Fraction(1)
    if token == "-":
        return Fraction(-1)
    if token.endswith("*"):
        token = token[:-1]
    return _parse_rational(token, text)


def parse(text: str) -> GaussianRational:
    """
    Parse a scalar such as "3", "-1/5*i", "2+3*i" or "1/2-i".

    Whitespace anywhere in the string is ignored.

    Raises:
        ScalarParseError: If the text is not a Gaussian rational
    """
    if not isinstance(text, str):
        raise ScalarParseError(f"Scalar must be a string. Got: {type(text).__name__}")
    compact = "".join(text.split())
    if not compact:
        raise ScalarParseError("Empty scalar string")

    if not compact.endswith("i"):
        return GaussianRational(_parse_rational(compact, text))

    body = compact[:-1]
    # The imaginary term starts at the last sign that is not the leading one.
    split = max(body.rfind("+"), body.rfind("-"))
    if split <= 0:
        return GaussianRational(0, _parse_imaginary(body, text))
    real_part, imaginary_part = body[:split], body[split:]
    return GaussianRational(
        _parse_rational(real_part, text),
        _parse_imaginary(imaginary_part, text),
    )
