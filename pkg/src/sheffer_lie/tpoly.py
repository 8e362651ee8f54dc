"""Polynomials in a single time variable ``t``.

A :class:`TPoly` is used as a *scalar* inside series and matrices that
describe time-dependent curves.  It supports the same arithmetic the
kernels need (``+ - *``, division by constants, truthiness, equality) and
adds exact integration and differentiation in ``t``.
"""

from __future__ import annotations

from .scalars import exact_div


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class TPoly:
    """``c0 + c1*t + c2*t**2 + ...`` with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, TPoly):
            coeffs = coeffs.coeffs
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("TPoly is immutable")

    @classmethod
    def t(cls, power=1, coeff=1):
        """The monomial ``coeff * t**power``."""
        return cls([0] * power + [coeff])

    @staticmethod
    def _lift(other):
        if isinstance(other, TPoly):
            return other
        return TPoly((other,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return TPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return TPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, TPoly):
            if not other:
                return TPoly()
            return TPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return TPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return TPoly(out)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, TPoly):
            if other.degree != 0:
                raise ZeroDivisionError("can only divide a TPoly by a constant")
            other = other.coeffs[0]
        return TPoly(exact_div(c, other) for c in self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == TPoly((other,)).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(self.coeffs)

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def integrate(self):
        """Antiderivative vanishing at ``t = 0``."""
        return TPoly([0] + [exact_div(c, n + 1) for n, c in enumerate(self.coeffs)])

    def derivative(self):
        return TPoly(n * c for n, c in enumerate(self.coeffs) if n)

    def __repr__(self):
        return f"TPoly({[str(c) for c in self.coeffs]})"


def tmap(value, fn):
    """Apply ``fn`` to a scalar that may or may not be a :class:`TPoly`."""
    return fn(value if isinstance(value, TPoly) else TPoly((value,)))


def t_integrate(c):
    """``∫_0^t c dt`` for a scalar or t-polynomial ``c``."""
    return tmap(c, TPoly.integrate)


def t_derivative(c):
    return tmap(c, TPoly.derivative)


def t_eval(c, t):
    """Evaluate at a given time; plain scalars are returned unchanged."""
    return c(t) if isinstance(c, TPoly) else c
