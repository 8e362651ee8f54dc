"""The groups F0 (multiplication), F1 (substitution) and S = F0 ⋊ F1.

Elements are thin validated wrappers around :class:`TensorSeries`.  Lie
algebra elements are :class:`AlgebraPair` ``(α, β)`` with ``α_0 = 0`` and
``β_0 = β_1 = 0``.

Time-dependent curves use :class:`~sheffer_lie.tpoly.TPoly` coefficients,
so every integral ``∫_0^t`` is exact.  The ``*_path`` functions return the
whole solution as a curve; the ``*_evolve`` functions return its value at
``t = 1`` and the ``*_residual`` functions evaluate the defining ODE on a
path (the result must be the zero series).
"""

from __future__ import annotations

from math import factorial

from .errors import CurveError, DegreeError, PreconditionError
from .poly import add_into, pmul_degree
from .scalars import GaussianRational, exact_div
from .series import (TensorSeries, dirderiv_series, scalar_subst, series_compose,
                     series_mul, substitute)
from .symtensor import check_same
from .tpoly import TPoly, t_derivative, t_eval, t_integrate


# -- element types -----------------------------------------------------------

def _as_series(x):
    return x.series if isinstance(x, (F0Element, F1Element)) else x


class F0Element:
    """Scalar series with constant term exactly 1."""

    __slots__ = ("series",)

    def __init__(self, series):
        series = _as_series(series)
        if series.target_degree != 0:
            raise DegreeError("F0 elements are scalar-valued")
        if series.coeff((0,) * series.ctx.dim) != 1:
            raise PreconditionError("F0 element needs constant term 1")
        object.__setattr__(self, "series", series)

    def __setattr__(self, name, value):
        raise AttributeError("F0Element is immutable")

    @property
    def ctx(self):
        return self.series.ctx

    @classmethod
    def identity(cls, ctx):
        return cls(TensorSeries.one(ctx))

    def __mul__(self, other):
        return f0_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, F0Element) and self.series == other.series

    def __hash__(self):
        return hash(("f0", self.series))

    def __repr__(self):
        return f"F0Element({self.series!r})"


def _linear_is_identity(series):
    ctx = series.ctx
    N = ctx.dim
    for j in range(N):
        for i in range(N):
            want = 1 if i == j else 0
            if series.coeff(ctx.unit(j), ctx.unit(i)) != want:
                return False
    return True


class F1Element:
    """Φ-valued series ``ξ + B_2 ξ^⊗2 + ...``."""

    __slots__ = ("series",)

    def __init__(self, series):
        series = _as_series(series)
        if series.target_degree != 1:
            raise DegreeError("F1 elements are Φ-valued")
        if series.min_degree() < 1:
            raise PreconditionError("F1 element must have vanishing constant term")
        if not _linear_is_identity(series):
            raise PreconditionError("F1 element needs identity linear term")
        if series.start_degree != 1:
            series = TensorSeries(series.ctx, 1, series.terms, 1)
        object.__setattr__(self, "series", series)

    def __setattr__(self, name, value):
        raise AttributeError("F1Element is immutable")

    @property
    def ctx(self):
        return self.series.ctx

    @classmethod
    def identity(cls, ctx):
        return cls(TensorSeries.identity(ctx))

    def __mul__(self, other):
        return f1_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, F1Element) and self.series == other.series

    def __hash__(self):
        return hash(("f1", self.series))

    def __repr__(self):
        return f"F1Element({self.series!r})"


class SPair:
    """Element ``(A, B)`` of the semidirect product."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        a = a if isinstance(a, F0Element) else F0Element(a)
        b = b if isinstance(b, F1Element) else F1Element(b)
        check_same(a.series, b.series)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("SPair is immutable")

    @property
    def ctx(self):
        return self.a.ctx

    @classmethod
    def identity(cls, ctx):
        return cls(F0Element.identity(ctx), F1Element.identity(ctx))

    def __mul__(self, other):
        return s_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, SPair) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"SPair(a={self.a.series!r}, b={self.b.series!r})"


class AlgebraPair:
    """Lie algebra element ``(α, β)``: ``α`` starts at degree 1, ``β`` at 2."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta):
        check_same(alpha, beta)
        if alpha.target_degree != 0 or beta.target_degree != 1:
            raise DegreeError("α must be scalar-valued and β Φ-valued")
        if alpha.min_degree() < 1:
            raise PreconditionError("α must have vanishing constant term")
        if beta.min_degree() < 2:
            raise PreconditionError("β must start at degree 2")
        alpha = TensorSeries(alpha.ctx, 0, alpha.terms, min(1, alpha.ctx.order))
        beta = TensorSeries(beta.ctx, 1, beta.terms, min(2, beta.ctx.order))
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraPair is immutable")

    @property
    def ctx(self):
        return self.alpha.ctx

    @classmethod
    def zero(cls, ctx):
        return cls(TensorSeries.zero(ctx, 0, 1), TensorSeries.zero(ctx, 1, 2))

    def __add__(self, other):
        return AlgebraPair(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other):
        return AlgebraPair(self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self):
        return AlgebraPair(-self.alpha, -self.beta)

    def __mul__(self, c):
        return AlgebraPair(self.alpha * c, self.beta * c)

    __rmul__ = __mul__

    def map(self, fn):
        return AlgebraPair(self.alpha.map(fn), self.beta.map(fn))

    def __bool__(self):
        return bool(self.alpha) or bool(self.beta)

    def __eq__(self, other):
        return (isinstance(other, AlgebraPair) and self.alpha == other.alpha
                and self.beta == other.beta)

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __repr__(self):
        return f"AlgebraPair(alpha={self.alpha!r}, beta={self.beta!r})"


# -- time curves -------------------------------------------------------------

_SCALARS = (int, GaussianRational)


def _check_coeff(c):
    from fractions import Fraction
    if isinstance(c, bool) or not isinstance(c, (TPoly, Fraction) + _SCALARS):
        raise CurveError(f"curve coefficient {c!r} is not a polynomial in t")
    if isinstance(c, TPoly):
        for x in c.coeffs:
            if isinstance(x, (TPoly, bool)) or not isinstance(x, (Fraction,) + _SCALARS):
                raise CurveError(f"t-polynomial coefficient {x!r} is not exact")
    return c


class TimeCurve:
    """A series, algebra pair or nilpotent matrix with t-polynomial coefficients.

    ``value`` is any object with a coefficient-wise ``map`` method; plain
    scalar coefficients are constant in time.
    """

    __slots__ = ("value", "degree_bound")

    def __init__(self, value, degree_bound=None):
        degrees = []

        def probe(c):
            _check_coeff(c)
            degrees.append(c.degree if isinstance(c, TPoly) else 0)
            return c

        value.map(probe)
        top = max(degrees, default=0)
        if degree_bound is not None and top > degree_bound:
            raise CurveError(f"curve has t-degree {top} > bound {degree_bound}")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "degree_bound", top if degree_bound is None else degree_bound)

    def __setattr__(self, name, value):
        raise AttributeError("TimeCurve is immutable")

    @classmethod
    def constant(cls, value):
        return cls(value)

    @classmethod
    def scaled(cls, value, f):
        """The curve ``t ↦ f(t) * value`` for a :class:`TPoly` ``f``."""
        return cls(value.map(lambda c: f * c))

    @property
    def ctx(self):
        return self.value.ctx

    def at(self, t):
        """The value at a fixed time (plain scalars)."""
        return self.value.map(lambda c: t_eval(c, t))

    def derivative(self):
        return TimeCurve(self.value.map(t_derivative))

    def __eq__(self, other):
        return isinstance(other, TimeCurve) and self.value == other.value

    def __hash__(self):
        return hash(("curve", self.value))

    def __repr__(self):
        return f"TimeCurve({self.value!r})"


def _integrate(series):
    return series.map(t_integrate)


def _at_one(series):
    return series.map(lambda c: t_eval(c, 1))


def _picard(initial, rhs, iterations):
    """Iterate ``Y ← Y(0) + ∫_0^t rhs(Y)`` until it stops changing.

    ``rhs`` must be triangular (degree ``k`` of ``rhs(Y)`` only sees degrees
    below ``k`` of ``Y``), so a fixed point is reached after at most
    ``iterations`` rounds.
    """
    y = initial
    for _ in range(iterations + 1):
        nxt = tuple(y0 + _integrate(r) for y0, r in zip(initial, rhs(y)))
        if nxt == y:
            return y
        y = nxt
    raise PreconditionError("flow did not stabilise; right-hand side is not triangular")


def _curve_value(curve):
    return curve.value if isinstance(curve, TimeCurve) else TimeCurve(curve).value


# -- F0 ------------------------------------------------------------------------

def f0_mul(A1, A2):
    return F0Element(series_mul(_as_series(A1), _as_series(A2)))


def f0_inverse(A):
    """``Ã_1 = -A_1``, ``Ã_k = -A_k - Σ_{l=1}^{k-1} A_{k-l} ⊙ Ã_l``."""
    A = _as_series(A)
    ctx = A.ctx
    N = ctx.dim
    one = (0,) * (2 * N)
    rest = {k: c for k, c in A.terms.items() if k != one}
    inv = {one: ctx.one}
    for k in range(1, ctx.order + 1):
        add_into(inv, pmul_degree(rest, inv, N, k), -1)
    return F0Element(TensorSeries(ctx, 0, inv))


def _exp_coeffs(K):
    return [exact_div(1, factorial(n)) for n in range(K + 1)]


def _log1p_coeffs(K):
    return [0] + [exact_div((-1) ** (n + 1), n) for n in range(1, K + 1)]


def f0_exp(alpha):
    """``exp(α) = Σ α^n / n!`` for ``α_0 = 0``."""
    return F0Element(scalar_subst(_exp_coeffs(alpha.ctx.order), alpha))


def f0_log(A):
    """``log A = Σ (-1)^{n+1} (A - 1)^n / n``."""
    A = _as_series(A)
    u = A - TensorSeries.one(A.ctx)
    out = scalar_subst(_log1p_coeffs(A.ctx.order), u)
    return TensorSeries(out.ctx, 0, out.terms, min(1, out.ctx.order))


def f0_path(curve):
    """``A(t)`` solving ``A' = A α(t)``, ``A(0) = 1``."""
    alpha = _curve_value(curve)
    one = TensorSeries.one(alpha.ctx)
    (A,) = _picard((one,), lambda y: (series_mul(y[0], alpha),), alpha.ctx.order)
    return A


def f0_evolve(curve):
    return F0Element(_at_one(f0_path(curve)))


def f0_residual(curve, path):
    alpha = _curve_value(curve)
    return path.map(t_derivative) - series_mul(path, alpha)


# -- F1 ------------------------------------------------------------------------

def f1_mul(B1, B2):
    """Group law of F1: ``B1(B2(ξ))``."""
    return F1Element(series_compose(_as_series(B1), _as_series(B2)))


def f1_inverse(B):
    """Compositional inverse, one degree at a time: ``B̃_k = -[B̃_{<k}(B)]_k``."""
    B = _as_series(B)
    ctx = B.ctx
    inv = TensorSeries.identity(ctx)
    for k in range(2, ctx.order + 1):
        comp = series_compose(inv, B).degree_part(k)
        inv = inv - comp
    return F1Element(inv)


def f1_bracket(beta1, beta2):
    """``[β1, β2] = D_{β2} β1 - D_{β1} β2``."""
    for b in (beta1, beta2):
        if b.target_degree != 1 or b.min_degree() < 2:
            raise PreconditionError("bracket arguments must start at degree 2")
    out = dirderiv_series(beta1, beta2) - dirderiv_series(beta2, beta1)
    return TensorSeries(out.ctx, 1, out.terms, min(2, out.ctx.order))


def _lie_series(beta, f, weights):
    """``Σ_n weights[n] D_β^n f`` (finite since ``D_β`` raises degree)."""
    term = f
    out = f * weights[0]
    for n in range(1, len(weights)):
        term = dirderiv_series(term, beta)
        if not term:
            break
        out = out + term * weights[n]
    return out


def exp_path(beta):
    """``θ(t) = Exp(tβ)`` with t-polynomial coefficients.

    This is the exact solution of ``θ' = β(θ)``, ``θ(0) = ξ``, written as
    the Lie series ``Σ t^n/n! D_β^n ξ``.
    """
    ctx = beta.ctx
    weights = [TPoly.t(n, exact_div(1, factorial(n))) for n in range(ctx.order + 1)]
    return _lie_series(beta, TensorSeries.identity(ctx), weights)


def f1_exp(beta):
    """``Exp(β)``: time-one map of the flow ``B' = β(B)``."""
    if beta.target_degree != 1 or beta.min_degree() < 2:
        raise PreconditionError("Exp needs β starting at degree 2")
    ctx = beta.ctx
    return F1Element(_lie_series(beta, TensorSeries.identity(ctx), _exp_coeffs(ctx.order)))


def f1_exp_flow(beta):
    """``Exp(tβ)`` by the degree-by-degree integral recurrence.

    ``B_k(t) = ∫_0^t [β(B_{<k}(r))]_k dr`` with exact t-integration; an
    independent route to :func:`exp_path`.
    """
    ctx = beta.ctx
    B = TensorSeries.identity(ctx)
    for k in range(2, ctx.order + 1):
        rhs = series_compose(beta, B).degree_part(k)
        B = B + _integrate(rhs.map(lambda c: c * TPoly((1,))))
    return B


def f1_log(B):
    """``β_k = B_k - [Exp(β_{<k})]_k``."""
    B = _as_series(B)
    ctx = B.ctx
    beta = TensorSeries.zero(ctx, 1, 2)
    for k in range(2, ctx.order + 1):
        lower = f1_exp(beta).series.degree_part(k) if beta else TensorSeries.zero(ctx, 1, k)
        beta = beta + (B.degree_part(k) - lower)
    return TensorSeries(ctx, 1, beta.terms, min(2, ctx.order))


def f1_path(curve):
    """``B(t)`` solving ``B' = D_{β(t)} B``, ``B(0) = ξ``."""
    beta = _curve_value(curve)
    start = TensorSeries.identity(beta.ctx)
    (B,) = _picard((start,), lambda y: (dirderiv_series(y[0], beta),), beta.ctx.order)
    return B


def f1_evolve(curve):
    return F1Element(_at_one(f1_path(curve)))


def f1_residual(curve, path):
    beta = _curve_value(curve)
    return path.map(t_derivative) - dirderiv_series(path, beta)


def f1_flow_path(curve):
    """``B(t)`` solving ``B' = β(t, B)``, ``B(0) = ξ`` (substitution form)."""
    beta = _curve_value(curve)
    start = TensorSeries.identity(beta.ctx)
    (B,) = _picard((start,), lambda y: (series_compose(beta, y[0]),), beta.ctx.order)
    return B


# -- S = F0 ⋊ F1 ---------------------------------------------------------------

def s_mul(p1, p2):
    """``(A1(B2)·A2, B1(B2))``."""
    b2 = p2.b.series
    a = series_mul(series_compose(p1.a.series, b2), p2.a.series)
    return SPair(a, series_compose(p1.b.series, b2))


def s_inverse(p):
    """``(A^{-1}(B^{<-1>}), B^{<-1>})``."""
    binv = f1_inverse(p.b).series
    return SPair(series_compose(f0_inverse(p.a).series, binv), binv)


def s_bracket(w1, w2):
    """``(D_{β2}α1 - D_{β1}α2, D_{β2}β1 - D_{β1}β2)``."""
    check_same(w1.alpha, w2.alpha)
    alpha = dirderiv_series(w1.alpha, w2.beta) - dirderiv_series(w2.alpha, w1.beta)
    beta = dirderiv_series(w1.beta, w2.beta) - dirderiv_series(w2.beta, w1.beta)
    return AlgebraPair(alpha, beta)


def _averaged(alpha, theta):
    """``∫_0^1 α(θ(r)) dr`` for a t-polynomial curve ``θ``."""
    if not alpha:
        return alpha
    lifted = alpha.map(lambda c: c * TPoly((1,)))
    integrand = TensorSeries(alpha.ctx, 0, substitute(lifted, theta))
    return _at_one(_integrate(integrand))


def s_exp(w):
    """``EXP(α, β) = (exp ∫_0^1 α(Exp(rβ)) dr, Exp(β))``."""
    theta = exp_path(w.beta)
    a = f0_exp(_averaged(w.alpha, theta))
    return SPair(a, f1_exp(w.beta))


def s_log(p):
    """Inverse of :func:`s_exp`.

    ``β = Log B``; with ``α̃ = log A``, ``α`` is found degree by degree from
    ``α_k = α̃_k - [∫_0^1 α_{<k}(Exp(rβ)) dr]_k``.
    """
    ctx = p.ctx
    beta = f1_log(p.b)
    target = f0_log(p.a)
    theta = exp_path(beta)
    alpha = TensorSeries.zero(ctx, 0, 1)
    image = TensorSeries.zero(ctx, 0, 1)
    for k in range(1, ctx.order + 1):
        piece = target.degree_part(k) - image.degree_part(k)
        if piece:
            alpha = alpha + piece
            image = image + _averaged(piece, theta)
    return AlgebraPair(alpha, beta)


def _split(curve):
    w = _curve_value(curve)
    return w.alpha, w.beta


def s_path(curve):
    """``(A(t), B(t))`` with ``A' = D_β A + A α``, ``B' = D_β B``."""
    alpha, beta = _split(curve)
    ctx = alpha.ctx

    def rhs(y):
        A, B = y
        return (dirderiv_series(A, beta) + series_mul(A, alpha), dirderiv_series(B, beta))

    return _picard((TensorSeries.one(ctx), TensorSeries.identity(ctx)), rhs, ctx.order)


def s_evolve(curve):
    A, B = s_path(curve)
    return SPair(_at_one(A), _at_one(B))


def s_residual(curve, path):
    alpha, beta = _split(curve)
    A, B = path
    ra = A.map(t_derivative) - dirderiv_series(A, beta) - series_mul(A, alpha)
    rb = B.map(t_derivative) - dirderiv_series(B, beta)
    return ra, rb
