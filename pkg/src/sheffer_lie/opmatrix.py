"""Block upper-triangular operators on polynomials over the dual space.

A polynomial ``p(ω) = Σ_k <ω^⊗k, f^(k)>`` is a :class:`PolyOnDual`; since
``<ω^⊗k, e_m> = w^m`` it is literally the polynomial ``Σ f^(k)(m) w^m``.
Operators acting on such polynomials are stored as one dense graded matrix
over the basis of all multi-indices of degree ``0..K`` (degree-major,
lexicographic inside each degree); ``block(i, k)`` is the ``k → i`` block.

Truncation is harmless for these matrices: in a product of block
upper-triangular matrices the ``(i, k)`` block only involves blocks
``(i, j)`` and ``(j, k)`` with ``i ≤ j ≤ k``, so discarding degrees above
``K`` never changes the blocks that are kept.  The same holds for inverses,
``exp``, ``log`` and the evolution equation, which are all built from sums
of such products.
"""

from __future__ import annotations

from math import factorial

import numpy as np

from .errors import ContextMismatch, DegreeError, PreconditionError
from .groups import AlgebraPair, TimeCurve
from .poly import add_into, falling, multinomial, pderiv, pscale
from .scalars import exact_div
from .symtensor import (BlockOp, DualVector, SymTensor, check_same, functional,
                        identity_op, monomial_value, op_sym_product)
from .tpoly import t_derivative, t_eval, t_integrate


# -- polynomials on the dual -------------------------------------------------

class PolyOnDual:
    """``p(ω) = Σ_{k ≤ K} <ω^⊗k, f^(k)>``."""

    __slots__ = ("ctx", "components")

    def __init__(self, ctx, components):
        comps = list(components)
        if len(comps) > ctx.order + 1:
            extra = comps[ctx.order + 1:]
            if any(extra):
                raise DegreeError(f"polynomial degree exceeds order {ctx.order}")
            comps = comps[:ctx.order + 1]
        comps += [SymTensor(ctx, k) for k in range(len(comps), ctx.order + 1)]
        for k, f in enumerate(comps):
            if f.degree != k:
                raise DegreeError(f"component {k} has degree {f.degree}")
            check_same(f, comps[0])
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "components", tuple(comps))

    def __setattr__(self, name, value):
        raise AttributeError("PolyOnDual is immutable")

    @classmethod
    def from_poly(cls, ctx, poly):
        """From ``{multi-index: coefficient}`` in the ``w`` coordinates."""
        parts = [{} for _ in range(ctx.order + 1)]
        for m, c in poly.items():
            d = sum(m)
            if d > ctx.order:
                if c:
                    raise DegreeError(f"monomial {m} exceeds order {ctx.order}")
                continue
            parts[d][tuple(m)] = c
        return cls(ctx, [SymTensor(ctx, k, parts[k]) for k in range(ctx.order + 1)])

    @classmethod
    def monomial(cls, ctx, m):
        return cls.from_poly(ctx, {tuple(m): ctx.one})

    @classmethod
    def from_vector(cls, ctx, vec):
        comps = []
        for k in range(ctx.order + 1):
            off = ctx.offset(k)
            vals = vec[off:off + ctx.size(k)]
            comps.append(SymTensor(ctx, k, dict(zip(ctx.basis(k), vals))))
        return cls(ctx, comps)

    def poly(self):
        out = {}
        for f in self.components:
            out.update(f.coeffs)
        return out

    def vector(self):
        out = []
        for f in self.components:
            out.extend(f.vector())
        return np.array(out, dtype=object)

    @property
    def degree(self):
        return max((k for k, f in enumerate(self.components) if f), default=-1)

    def __call__(self, omega):
        """Evaluate at a :class:`DualVector` (or a plain coordinate tuple)."""
        w = omega.components if isinstance(omega, DualVector) else tuple(omega)
        acc = self.ctx.zero
        for m, c in self.poly().items():
            acc = acc + c * monomial_value(w, m)
        return acc

    def lift(self, order):
        """The same polynomial in a context of a different order."""
        ctx = self.ctx.with_order(order)
        return PolyOnDual.from_poly(ctx, self.poly())

    def __add__(self, other):
        check_same(self, other)
        return PolyOnDual.from_poly(self.ctx, add_into(self.poly(), other.poly()))

    def __sub__(self, other):
        check_same(self, other)
        return PolyOnDual.from_poly(self.ctx, add_into(self.poly(), other.poly(), -1))

    def __neg__(self):
        return PolyOnDual.from_poly(self.ctx, pscale(self.poly(), -1))

    def __mul__(self, c):
        return PolyOnDual.from_poly(self.ctx, pscale(self.poly(), c))

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.components)

    def __eq__(self, other):
        return (isinstance(other, PolyOnDual) and self.ctx == other.ctx
                and self.components == other.components)

    def __hash__(self):
        return hash((self.ctx, self.components))

    def __repr__(self):
        terms = " + ".join(f"{c}*w{m}" for m, c in sorted(self.poly().items(), key=lambda t: (sum(t[0]), t[0])))
        return f"PolyOnDual({terms or '0'})"


def grad_pow(p, k):
    """``∇^k p = (Σ_j e_j ∂_{w_j})^k p`` as ``{m: coefficient of e_m}``."""
    out = {}
    for m in p.ctx.basis(k):
        poly = p.poly()
        for j, e in enumerate(m):
            for _ in range(e):
                poly = pderiv(poly, j)
        out[m] = PolyOnDual.from_poly(p.ctx, pscale(poly, multinomial(m)))
    return out


def dsigma(p, sigma):
    """Directional derivative ``Σ_j σ_j ∂p/∂w_j``."""
    sigma = _coords(p.ctx, sigma)
    out = {}
    for j, s in enumerate(sigma):
        if s:
            add_into(out, pderiv(p.poly(), j), s)
    return PolyOnDual.from_poly(p.ctx, out)


def dsigma_tensor(p, sigma):
    """Same derivative through blocks: degree ``n`` maps by ``n (σ ⊙ 1_{n-1})``."""
    ctx = p.ctx
    sig = functional(ctx, _coords(ctx, sigma))
    comps = []
    for n in range(1, ctx.order + 1):
        blk = op_sym_product(sig, identity_op(ctx, n - 1))
        comps.append(blk(p.components[n]) * n)
    comps.append(SymTensor(ctx, ctx.order))
    return PolyOnDual(ctx, comps)


def mult(p, xi):
    """``M(ξ) p = <ω, ξ> p``; the result must still fit in order ``K``."""
    ctx = p.ctx
    xi = _coords(ctx, xi)
    if p.components[ctx.order]:
        raise DegreeError("multiplication would exceed the truncation order")
    out = {}
    for m, c in p.poly().items():
        for j, x in enumerate(xi):
            if x:
                key = m[:j] + (m[j] + 1,) + m[j + 1:]
                add_into(out, {key: c * x})
    return PolyOnDual.from_poly(ctx, out)


def _coords(ctx, v):
    comps = v.components if isinstance(v, DualVector) else tuple(v)
    if len(comps) != ctx.dim:
        raise DegreeError(f"expected {ctx.dim} coordinates")
    return tuple(c if not isinstance(c, int) else ctx.scalar(c) for c in comps)


# -- graded matrices -----------------------------------------------------------

class _Graded:
    """Dense block matrix over degrees ``0..K``."""

    __slots__ = ("ctx", "entries")
    strict = False

    def __init__(self, ctx, entries):
        arr = np.array(entries, dtype=object)
        D = ctx.total_size
        if arr.shape != (D, D):
            raise DegreeError(f"graded matrix needs shape {(D, D)}, got {arr.shape}")
        for i in range(ctx.order + 1):
            oi, si = ctx.offset(i), ctx.size(i)
            limit = i + 1 if self.strict else i
            for k in range(limit):
                ok, sk = ctx.offset(k), ctx.size(k)
                if any(bool(c) for c in arr[oi:oi + si, ok:ok + sk].flat):
                    raise PreconditionError(f"nonzero block ({i}, {k}) below the allowed band")
        arr.flags.writeable = False
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "entries", arr)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @staticmethod
    def _assemble(ctx, blocks, diagonal=None):
        D = ctx.total_size
        arr = np.empty((D, D), dtype=object)
        arr.fill(ctx.zero)
        if diagonal is not None:
            for j in range(D):
                arr[j, j] = diagonal
        for (i, k), blk in blocks.items():
            if blk.ctx != ctx:
                raise ContextMismatch(f"{blk.ctx} vs {ctx}")
            if (blk.src, blk.dst) != (k, i):
                raise DegreeError(f"block {blk.src}->{blk.dst} placed at ({i}, {k})")
            oi, ok = ctx.offset(i), ctx.offset(k)
            arr[oi:oi + ctx.size(i), ok:ok + ctx.size(k)] = blk.entries
        return arr

    def block(self, i, k):
        ctx = self.ctx
        oi, ok = ctx.offset(i), ctx.offset(k)
        return BlockOp(ctx, k, i, self.entries[oi:oi + ctx.size(i), ok:ok + ctx.size(k)])

    def blocks(self):
        """All blocks in the stored band, keyed by ``(i, k)``."""
        K = self.ctx.order
        start = 1 if self.strict else 0
        return {(i, k): self.block(i, k) for k in range(K + 1) for i in range(k + 1 - start)}

    def restrict(self, order):
        ctx = self.ctx.with_order(order)
        D = ctx.total_size
        return self._remake(ctx, self.entries[:D, :D])

    def _remake(self, ctx, arr):
        return type(self)(ctx, arr)

    def map(self, fn):
        arr = np.empty(self.entries.shape, dtype=object)
        for idx, c in np.ndenumerate(self.entries):
            arr[idx] = fn(c)
        return self._remake(self.ctx, arr)

    def __call__(self, p):
        return apply(self, p)

    def __matmul__(self, other):
        return _product(self, other)

    def __eq__(self, other):
        if not isinstance(other, _Graded) or type(self) is not type(other):
            return NotImplemented
        return self.ctx == other.ctx and all(
            a == b for a, b in zip(self.entries.flat, other.entries.flat))

    def __hash__(self):
        return hash((type(self).__name__, self.ctx, tuple(self.entries.flat)))

    def __repr__(self):
        rows = "\n".join("  " + " ".join(str(c) for c in r) for r in self.entries)
        return f"{type(self).__name__}(order={self.ctx.order}, dim={self.ctx.dim}\n{rows})"


class OpMatrix(_Graded):
    """Upper block-triangular operator; ``unipotent`` means ``P_kk = 1_k``."""

    __slots__ = ("unipotent",)

    def __init__(self, ctx, entries, unipotent=True):
        super().__init__(ctx, entries)
        if unipotent:
            for k in range(ctx.order + 1):
                if self.block(k, k) != identity_op(ctx, k):
                    raise PreconditionError(f"diagonal block {k} is not the identity")
        object.__setattr__(self, "unipotent", bool(unipotent))

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, cls._assemble(ctx, {}, ctx.one), True)

    @classmethod
    def from_blocks(cls, ctx, blocks, unipotent=True):
        """Missing diagonal blocks default to the identity when ``unipotent``."""
        return cls(ctx, cls._assemble(ctx, blocks, ctx.one if unipotent else None), unipotent)

    def _remake(self, ctx, arr):
        return OpMatrix(ctx, arr, self.unipotent)

    def __eq__(self, other):
        if isinstance(other, OpMatrix):
            return _Graded.__eq__(self, other)
        return NotImplemented

    __hash__ = _Graded.__hash__

    def __sub__(self, other):
        check_same(self, other)
        return _any_matrix(self.ctx, self.entries - other.entries)

    def __add__(self, other):
        check_same(self, other)
        return _any_matrix(self.ctx, self.entries + other.entries)


class NilMatrix(_Graded):
    """Strictly upper block-triangular operator (an element of the Lie algebra)."""

    __slots__ = ()
    strict = True

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, cls._assemble(ctx, {}))

    @classmethod
    def from_blocks(cls, ctx, blocks):
        return cls(ctx, cls._assemble(ctx, blocks))

    def __add__(self, other):
        check_same(self, other)
        if isinstance(other, NilMatrix):
            return NilMatrix(self.ctx, self.entries + other.entries)
        return _any_matrix(self.ctx, self.entries + other.entries)

    def __sub__(self, other):
        check_same(self, other)
        if isinstance(other, NilMatrix):
            return NilMatrix(self.ctx, self.entries - other.entries)
        return _any_matrix(self.ctx, self.entries - other.entries)

    def __neg__(self):
        return NilMatrix(self.ctx, -self.entries)

    def __mul__(self, c):
        if isinstance(c, _Graded):
            return NotImplemented
        return NilMatrix(self.ctx, self.entries * c)

    __rmul__ = __mul__

    def __bool__(self):
        return any(bool(c) for c in self.entries.flat)

    __hash__ = _Graded.__hash__


def _any_matrix(ctx, arr):
    """Wrap ``arr`` as the most specific graded matrix type."""
    try:
        return NilMatrix(ctx, arr)
    except PreconditionError:
        pass
    try:
        return OpMatrix(ctx, arr, True)
    except PreconditionError:
        return OpMatrix(ctx, arr, False)


def _product(A, B):
    ctx = check_same(A, B)
    arr = A.entries.dot(B.entries)
    if isinstance(A, NilMatrix) or isinstance(B, NilMatrix):
        return NilMatrix(ctx, arr)
    return OpMatrix(ctx, arr, A.unipotent and B.unipotent)


# -- operations ------------------------------------------------------------------

def apply(P, p):
    """Component ``i`` of the result is ``Σ_{k ≥ i} P_ik f^(k)``."""
    ctx = check_same(P, p)
    return PolyOnDual.from_vector(ctx, P.entries.dot(p.vector()))


def opmat_mul(P1, P2):
    """Block matrix product ``P_ik = Σ_j P1_ij P2_jk``."""
    return _product(P1, P2)


def nil_mul(V1, V2):
    return _product(V1, V2)


def _require_unipotent(P):
    if not isinstance(P, OpMatrix) or not P.unipotent:
        raise PreconditionError("operation needs a unipotent OpMatrix")


def opmat_inverse(P):
    """``Q_ik = -P_ik - Σ_{i<j<k} Q_ij P_jk`` for unipotent ``P``."""
    _require_unipotent(P)
    ctx = P.ctx
    K = ctx.order
    Q = {}
    for k in range(1, K + 1):
        for i in range(k - 1, -1, -1):
            acc = -P.block(i, k)
            for j in range(i + 1, k):
                acc = acc - Q[i, j] @ P.block(j, k)
            Q[i, k] = acc
    return OpMatrix.from_blocks(ctx, Q, True)


def nil_exp(V):
    """``1 + Σ_{n ≤ K} V^n / n!`` (higher powers vanish)."""
    ctx = V.ctx
    out = OpMatrix.identity(ctx).entries.copy()
    term = V.entries
    for n in range(1, ctx.order + 1):
        if n > 1:
            term = term.dot(V.entries)
        out = out + term * exact_div(1, factorial(n))
    return OpMatrix(ctx, out, True)


def opmat_log(P):
    """``Σ_{n ≤ K} (-1)^{n+1} (P - 1)^n / n``."""
    _require_unipotent(P)
    ctx = P.ctx
    U = P.entries - OpMatrix.identity(ctx).entries
    out = np.zeros_like(U)
    out.fill(ctx.zero)
    term = U
    for n in range(1, ctx.order + 1):
        if n > 1:
            term = term.dot(U)
        out = out + term * exact_div((-1) ** (n + 1), n)
    return NilMatrix(ctx, out)


def commutator(V1, V2):
    """``V1 V2 - V2 V1``."""
    ctx = check_same(V1, V2)
    return NilMatrix(ctx, V1.entries.dot(V2.entries) - V2.entries.dot(V1.entries))


def opmat_path(curve):
    """``P(t)`` solving ``P' = P V(t)``, ``P(0) = 1``, as a matrix of t-polynomials.

    Picard iteration ``P ← 1 + ∫_0^t P V`` reproduces the nested integral
    series term by term and stops after at most ``K`` rounds.
    """
    V = curve.value if isinstance(curve, TimeCurve) else TimeCurve(curve).value
    ctx = V.ctx
    one = OpMatrix.identity(ctx).entries
    P = one
    for _ in range(ctx.order + 2):
        step = P.dot(V.entries)
        nxt = one + np.vectorize(t_integrate, otypes=[object])(step)
        if all(a == b for a, b in zip(nxt.flat, P.flat)):
            return OpMatrix(ctx, P, True)
        P = nxt
    raise PreconditionError("evolution did not stabilise")


def opmat_evolve(curve):
    P = opmat_path(curve)
    return P.map(lambda c: t_eval(c, 1))


def opmat_residual(curve, path):
    """``P'(t) - P(t) V(t)`` (a matrix of t-polynomials)."""
    V = curve.value if isinstance(curve, TimeCurve) else curve
    deriv = np.vectorize(t_derivative, otypes=[object])(path.entries)
    return _any_matrix(path.ctx, deriv - path.entries.dot(V.entries))


# -- operators attached to Lie algebra elements -----------------------------------

def _apply_coeff_derivs(poly_by_x, m, weight=None):
    """``Σ_xm c_xm ∂^xm w^m`` for a map ``xm ↦ c`` (optionally reweighted)."""
    out = {}
    for xm, c in poly_by_x.items():
        if any(a > b for a, b in zip(xm, m)):
            continue
        coeff = c
        for a, b in zip(xm, m):
            coeff = coeff * falling(b, a)
        if weight is not None:
            coeff = weight(sum(xm), coeff)
        if coeff:
            key = tuple(b - a for a, b in zip(xm, m))
            add_into(out, {key: coeff})
    return out


def _parts(w):
    ctx = w.ctx
    N = ctx.dim
    alpha = {key[:N]: c for key, c in w.alpha.terms.items()}
    betas = []
    for j in range(N):
        ej = ctx.unit(j)
        betas.append({key[:N]: c for key, c in w.beta.terms.items() if key[N:] == ej})
    return alpha, betas


def _operator_matrix(w, zero_gradient):
    ctx = w.ctx
    K = ctx.order
    alpha, betas = _parts(w)
    D = ctx.total_size
    arr = np.empty((D, D), dtype=object)
    arr.fill(ctx.zero)
    for n in range(K + 1):
        for col, m in enumerate(ctx.basis(n)):
            c_idx = ctx.offset(n) + col
            if zero_gradient:
                def scaled(k, c, n=n):
                    return exact_div(c, falling(n, k)) if k <= n else 0
            else:
                scaled = None
            result = _apply_coeff_derivs(alpha, m, scaled)
            for j, bj in enumerate(betas):
                part = _apply_coeff_derivs(bj, m, scaled)
                for key, c in part.items():
                    up = key[:j] + (key[j] + 1,) + key[j + 1:]
                    if zero_gradient:
                        c = c * sum(up)
                    add_into(result, {up: c})
            for key, c in result.items():
                i = sum(key)
                arr[ctx.offset(i) + ctx.basis_index(i)[key], c_idx] = c
    return NilMatrix(ctx, arr)


def vector_field_op(w):
    """Matrix of ``α(∇) + M(β(∇))`` acting on polynomials of degree ≤ K.

    ``α(∇)`` substitutes ``∂/∂w_j`` for the argument of ``α``; the second
    term is ``Σ_j w_j β_j(∂)``.
    """
    if not isinstance(w, AlgebraPair):
        raise PreconditionError("vector_field_op needs an AlgebraPair")
    return _operator_matrix(w, False)


def zero_grad_op(w):
    """Matrix of ``α(∇_0) + N M(β(∇_0))``.

    ``∇_0^k`` acts on the degree-``n`` component as ``∇^k / (n)_k`` (zero
    when ``k > n``) and ``N`` is the number operator.
    """
    if not isinstance(w, AlgebraPair):
        raise PreconditionError("zero_grad_op needs an AlgebraPair")
    return _operator_matrix(w, True)


def zero_grad(p, k=1):
    """``∇_0^k p`` as ``{m: coefficient of e_m}``."""
    out = {}
    for m, q in grad_pow(p, k).items():
        comps = [SymTensor(p.ctx, d) for d in range(p.ctx.order + 1)]
        for d, f in enumerate(q.components):
            n = d + k
            if f and n <= p.ctx.order:
                comps[d] = f * exact_div(1, falling(n, k))
        out[m] = PolyOnDual(p.ctx, comps)
    return out


def number_op(ctx):
    """Diagonal operator multiplying the degree-``n`` component by ``n``."""
    blocks = {(n, n): identity_op(ctx, n) * ctx.scalar(n) for n in range(ctx.order + 1)}
    return OpMatrix.from_blocks(ctx, blocks, unipotent=False)
