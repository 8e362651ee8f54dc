"""Exact scalar rings.

Rationals are plain :class:`fractions.Fraction`.  Gaussian rationals are a
small immutable pair type that interoperates with ``int`` and ``Fraction``
so every kernel in the package can stay ring-agnostic: kernels only use
``+``, ``-``, ``*``, division by integers and truthiness.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

RINGS = ("rational", "gaussian")


class GaussianRational:
    """``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * GaussianRational(o.re, -o.im)
        return GaussianRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = GaussianRational(1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


def _fmt_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def format_scalar(c) -> str:
    """Canonical string form: ``"p/q"`` in lowest terms, sign on ``p``.

    Gaussian rationals with nonzero imaginary part render as
    ``"p/q+r/si"`` (or ``"p/q-r/si"``).
    """
    if isinstance(c, GaussianRational):
        if c.im == 0:
            return _fmt_fraction(c.re)
        im = _fmt_fraction(abs(c.im))
        sign = "-" if c.im < 0 else "+"
        return f"{_fmt_fraction(c.re)}{sign}{im}i"
    return _fmt_fraction(Fraction(c))


_RAT = r"[+-]?\d+(?:/\d+)?"
_GAUSS = re.compile(rf"^\s*({_RAT})?\s*(?:([+-])\s*(\d+(?:/\d+)?)?\s*i)?\s*$")


def parse_scalar(text, ring: str = "rational"):
    """Parse the canonical string form (plain integers are accepted too)."""
    if isinstance(text, bool):
        raise ValueError(f"not a scalar: {text!r}")
    if isinstance(text, int):
        return coerce(text, ring)
    if not isinstance(text, str):
        raise ValueError(f"not a scalar: {text!r}")
    s = text.strip()
    if "i" not in s:
        if not re.fullmatch(_RAT, s):
            raise ValueError(f"not a rational: {text!r}")
        try:
            return coerce(Fraction(s), ring)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {text!r}") from exc
    if ring != "gaussian":
        raise ValueError(f"imaginary scalar {text!r} in a rational context")
    m = _GAUSS.match(s)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ValueError(f"not a Gaussian rational: {text!r}")
    re_part = Fraction(m.group(1)) if m.group(1) else Fraction(0)
    im_part = Fraction(m.group(3)) if m.group(3) else Fraction(1)
    if m.group(2) == "-":
        im_part = -im_part
    return GaussianRational(re_part, im_part)


def coerce(c, ring: str = "rational"):
    """Bring an int/Fraction into the scalar type of ``ring``."""
    if ring == "gaussian":
        return c if isinstance(c, GaussianRational) else GaussianRational(c)
    if isinstance(c, GaussianRational):
        if c.im:
            raise ValueError("imaginary scalar in a rational context")
        return c.re
    return Fraction(c)


def exact_div(c, d):
    """``c / d`` that never falls back to floating point for ints."""
    if isinstance(c, int) and isinstance(d, int):
        return Fraction(c, d)
    if isinstance(d, int) and not isinstance(c, Fraction):
        return c / Fraction(d)
    return c / d
