"""Truncated formal tensor power series.

A ``TensorSeries`` with target degree ``i`` is stored canonically as a flat
polynomial in ``2N`` variables: the first ``N`` exponents are powers of the
argument ``x = ξ``, the last ``N`` are exponents of the basis symbols ``e``
of the value space (so every key has e-degree ``i``).  The degree-``k``
coefficient ``C_k`` in block form is recovered with :func:`block_from_poly`.

The ``blocks_*`` functions recompute the same operations directly from the
block formulas (symmetric products and compositions of ``BlockOp``); they
serve as an independent check of the polynomial kernels.
"""

from __future__ import annotations

from .errors import DegreeError, PreconditionError
from .poly import (PowerCache, add_into, pderiv, pmap, pmul, pscale, truncate)
from .symtensor import (BlockOp, SymTensor, block_from_poly, block_to_poly,
                        check_same, identity_op, op_sym_product)


class TensorSeries:
    """``C(ξ) = Σ_{k ≤ K} C_k ξ^⊗k`` with values in ``Φ^⊙target_degree``."""

    __slots__ = ("ctx", "target_degree", "start_degree", "terms")

    def __init__(self, ctx, target_degree, terms=None, start_degree=0):
        N = ctx.dim
        clean_terms = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != 2 * N or min(key) < 0:
                raise DegreeError(f"bad series key {key}")
            if sum(key[N:]) != target_degree:
                raise DegreeError(f"term {key} is not valued in degree {target_degree}")
            d = sum(key[:N])
            if d > ctx.order:
                continue
            if d < start_degree and c:
                raise DegreeError(f"term {key} lies below start degree {start_degree}")
            if c:
                clean_terms[key] = c
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "target_degree", target_degree)
        object.__setattr__(self, "start_degree", start_degree)
        object.__setattr__(self, "terms", clean_terms)

    def __setattr__(self, name, value):
        raise AttributeError("TensorSeries is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx, target_degree=0, start_degree=0):
        return cls(ctx, target_degree, {}, start_degree)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, 0, {(0,) * (2 * ctx.dim): ctx.one})

    @classmethod
    def identity(cls, ctx):
        """The series ``ξ`` (the identity map of Φ)."""
        N = ctx.dim
        terms = {ctx.unit(j) + ctx.unit(j): ctx.one for j in range(N)}
        return cls(ctx, 1, terms, 1)

    @classmethod
    def scalar(cls, ctx, coeffs, start_degree=0):
        """Scalar series from ``{x-multi-index: coefficient}``."""
        e0 = (0,) * ctx.dim
        return cls(ctx, 0, {tuple(m) + e0: ctx.scalar(c) if not _is_curve(c) else c
                            for m, c in coeffs.items()}, start_degree)

    @classmethod
    def vector(cls, ctx, components, start_degree=0):
        """Φ-valued series from ``N`` scalar coefficient maps (one per ``e_j``)."""
        if len(components) != ctx.dim:
            raise DegreeError(f"expected {ctx.dim} components")
        terms = {}
        for j, comp in enumerate(components):
            ej = ctx.unit(j)
            for m, c in comp.items():
                if c:
                    terms[tuple(m) + ej] = c if _is_curve(c) else ctx.scalar(c)
        return cls(ctx, 1, terms, start_degree)

    @classmethod
    def from_coeffs(cls, ctx, coeffs, target_degree=0, start_degree=0):
        """One-dimensional shortcut: ``coeffs[k]`` multiplies ``ξ^k``."""
        if ctx.dim != 1:
            raise DegreeError("from_coeffs is only for dim = 1")
        e = (target_degree,)
        return cls(ctx, target_degree,
                   {(k,) + e: c if _is_curve(c) else ctx.scalar(c)
                    for k, c in enumerate(coeffs)}, start_degree)

    @classmethod
    def from_blocks(cls, ctx, target_degree, blocks, start_degree=0):
        """Series with ``C_k = blocks[k]`` (each a ``k → target_degree`` block)."""
        terms = {}
        for k, blk in blocks.items():
            if blk.src != k or blk.dst != target_degree:
                raise DegreeError(f"block {blk.src}->{blk.dst} cannot be term {k}")
            terms.update(block_to_poly(blk))
        return cls(ctx, target_degree, terms, start_degree)

    # -- views --------------------------------------------------------------

    def block(self, k):
        """The coefficient ``C_k`` as a ``k → target_degree`` BlockOp."""
        N = self.ctx.dim
        part = {key: c for key, c in self.terms.items() if sum(key[:N]) == k}
        return block_from_poly(self.ctx, k, self.target_degree, part)

    def polymap(self, k):
        """Coefficient of ``x^m`` (as a SymTensor) for every degree-``k`` ``m``."""
        N = self.ctx.dim
        grouped = {m: {} for m in self.ctx.basis(k)}
        for key, c in self.terms.items():
            if sum(key[:N]) == k:
                grouped[key[:N]][key[N:]] = c
        return {m: SymTensor(self.ctx, self.target_degree, d) for m, d in grouped.items()}

    def degree_part(self, k):
        N = self.ctx.dim
        return TensorSeries(self.ctx, self.target_degree,
                            {key: c for key, c in self.terms.items() if sum(key[:N]) == k},
                            min(k, self.ctx.order))

    def below(self, k):
        """Terms of degree strictly less than ``k``."""
        N = self.ctx.dim
        return TensorSeries(self.ctx, self.target_degree,
                            {key: c for key, c in self.terms.items() if sum(key[:N]) < k},
                            self.start_degree)

    def component(self, j):
        """Scalar series multiplying ``e_j`` (Φ-valued series only)."""
        if self.target_degree != 1:
            raise DegreeError("component() needs a Φ-valued series")
        N = self.ctx.dim
        ej = self.ctx.unit(j)
        e0 = (0,) * N
        return TensorSeries(self.ctx, 0, {key[:N] + e0: c for key, c in self.terms.items()
                                         if key[N:] == ej}, self.start_degree)

    def coeff(self, xm, em=None):
        N = self.ctx.dim
        em = (0,) * N if em is None else tuple(em)
        return self.terms.get(tuple(xm) + em, self.ctx.zero)

    def coeffs_1d(self):
        """Dense coefficient list ``[C_0, ..., C_K]`` when ``dim = 1``."""
        if self.ctx.dim != 1:
            raise DegreeError("coeffs_1d is only for dim = 1")
        i = self.target_degree
        return [self.terms.get((k, i), self.ctx.zero) for k in range(self.ctx.order + 1)]

    def min_degree(self):
        N = self.ctx.dim
        return min((sum(k[:N]) for k in self.terms), default=self.ctx.order + 1)

    # -- linear structure ---------------------------------------------------

    def _like(self, terms, start=None):
        return TensorSeries(self.ctx, self.target_degree, terms,
                            self.start_degree if start is None else start)

    def _check(self, other):
        check_same(self, other)
        if other.target_degree != self.target_degree:
            raise DegreeError(f"target degree {self.target_degree} vs {other.target_degree}")

    def __add__(self, other):
        self._check(other)
        return self._like(add_into(dict(self.terms), other.terms),
                          min(self.start_degree, other.start_degree))

    def __sub__(self, other):
        self._check(other)
        return self._like(add_into(dict(self.terms), other.terms, -1),
                          min(self.start_degree, other.start_degree))

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, TensorSeries):
            return NotImplemented
        return self._like(pscale(self.terms, c))

    __rmul__ = __mul__

    def map(self, fn):
        """Apply ``fn`` to every coefficient."""
        return self._like(pmap(self.terms, fn))

    def restrict(self, order):
        """The same series viewed in a context of lower truncation order."""
        ctx = self.ctx.with_order(order)
        return TensorSeries(ctx, self.target_degree,
                            truncate(self.terms, self.ctx.dim, order),
                            min(self.start_degree, order))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorSeries):
            return NotImplemented
        return (self.ctx == other.ctx and self.target_degree == other.target_degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ctx, self.target_degree, frozenset(self.terms.items())))

    def __repr__(self):
        N = self.ctx.dim
        parts = []
        for key in sorted(self.terms, key=lambda k: (sum(k[:N]), k)):
            parts.append(f"{self.terms[key]}*x{key[:N]}e{key[N:]}")
        body = " + ".join(parts) if parts else "0"
        return f"TensorSeries(deg={self.target_degree}: {body})"


def _is_curve(c):
    from .tpoly import TPoly
    return isinstance(c, TPoly)


def _require(cond, msg):
    if not cond:
        raise PreconditionError(msg)


# -- the six operations (polynomial-map kernels) -----------------------------

def series_mul(A1, A2):
    """Product of scalar-valued series, truncated at order ``K``."""
    ctx = check_same(A1, A2)
    if A1.target_degree or A2.target_degree:
        raise DegreeError("series_mul needs scalar-valued series")
    return TensorSeries(ctx, 0, pmul(A1.terms, A2.terms, ctx.dim, ctx.order),
                        A1.start_degree + A2.start_degree)


def series_tensor(B, C):
    """Symmetric tensor product ``B ⊙ C`` valued in ``Φ^⊙(i+j)``."""
    ctx = check_same(B, C)
    return TensorSeries(ctx, B.target_degree + C.target_degree,
                        pmul(B.terms, C.terms, ctx.dim, ctx.order),
                        B.start_degree + C.start_degree)


def series_power(B, n):
    """``B^⊙n`` (``n = 0`` gives the constant 1)."""
    out = TensorSeries.one(B.ctx)
    for _ in range(n):
        out = series_tensor(out, B)
    return out


def _has_constant(B):
    N = B.ctx.dim
    return any(sum(k[:N]) == 0 for k in B.terms)


def substitute(C, B):
    """Core of composition: replace ``x_j`` by ``B_j(x)`` in ``C``."""
    ctx = C.ctx
    N = ctx.dim
    zero_e = (0,) * N
    bases = []
    for j in range(N):
        ej = ctx.unit(j)
        bases.append({key[:N] + zero_e: c for key, c in B.terms.items() if key[N:] == ej})
    cache = PowerCache(bases, N, ctx.order, (0,) * (2 * N))
    out = {}
    for key, c in C.terms.items():
        xm, em = key[:N], key[N:]
        for pk, pc in cache.get(xm).items():
            add_into(out, {pk[:N] + em: pc * c})
    return out


def series_compose(C, B):
    """``C(B(ξ))``; ``B`` must be Φ-valued with vanishing constant term."""
    ctx = check_same(C, B)
    if B.target_degree != 1:
        raise DegreeError("the inner series must be Φ-valued")
    _require(not _has_constant(B), "inner series has a nonzero constant term")
    start = C.start_degree * max(B.start_degree, 1)
    return TensorSeries(ctx, C.target_degree, substitute(C, B), min(start, ctx.order))


def scalar_subst(q, A):
    """``Σ_l q_l A^l`` for a scalar series ``A`` with ``A_0 = 0``."""
    ctx = A.ctx
    if A.target_degree:
        raise DegreeError("scalar_subst needs a scalar-valued series")
    _require(not _has_constant(A), "series has a nonzero constant term")
    q = list(q)
    one = (0,) * (2 * ctx.dim)
    out = {one: q[0]} if q and q[0] else {}
    power = {one: 1}
    for l in range(1, min(len(q), ctx.order + 1)):
        power = pmul(power, A.terms, ctx.dim, ctx.order)
        if not power:
            break
        if q[l]:
            add_into(out, power, q[l])
    return TensorSeries(ctx, 0, out)


def dirderiv_vector(C, zeta):
    """Gâteaux derivative ``Σ_j ζ_j ∂C/∂x_j``.

    The result keeps the target degree; its start degree is lowered by one
    (it may contain a term of degree ``i - 1``).
    """
    ctx = C.ctx
    if len(zeta) != ctx.dim:
        raise DegreeError(f"direction needs {ctx.dim} components")
    out = {}
    for j, z in enumerate(zeta):
        z = z if _is_curve(z) else ctx.scalar(z)
        if z:
            add_into(out, pderiv(C.terms, j), z)
    start = max(C.target_degree - 1, C.start_degree - 1, 0)
    lowest = min((sum(k[:ctx.dim]) for k in out), default=start)
    return TensorSeries(ctx, C.target_degree, out, min(start, lowest))


def dirderiv_series(C, B):
    """``D_B C = Σ_j B_j(ξ) ∂C/∂x_j``, truncated at order ``K``."""
    ctx = check_same(C, B)
    if B.target_degree != 1:
        raise DegreeError("the direction must be a Φ-valued series")
    _require(not _has_constant(B), "direction series has a nonzero constant term")
    N = ctx.dim
    zero_e = (0,) * N
    out = {}
    for j in range(N):
        dj = pderiv(C.terms, j)
        if not dj:
            continue
        ej = ctx.unit(j)
        bj = {key[:N] + zero_e: c for key, c in B.terms.items() if key[N:] == ej}
        add_into(out, pmul(dj, bj, N, ctx.order))
    start = max(C.start_degree - 1, 0) + max(B.start_degree, 1)
    return TensorSeries(ctx, C.target_degree, out, min(start, ctx.order))


# -- block-formula counterparts ----------------------------------------------

def _blocks(S):
    return {k: S.block(k) for k in range(S.ctx.order + 1)}


def blocks_mul(A1, A2):
    """``A_k = Σ_l A1_l ⊙ A2_{k-l}`` computed on BlockOps."""
    return blocks_tensor(A1, A2)


def blocks_tensor(B, C):
    """``D_k = Σ_l B_l ⊙ C_{k-l}`` computed on BlockOps."""
    ctx = check_same(B, C)
    b, c = _blocks(B), _blocks(C)
    i = B.target_degree + C.target_degree
    out = {}
    for k in range(ctx.order + 1):
        acc = BlockOp.zero(ctx, k, i)
        for l in range(k + 1):
            if b[l] and c[k - l]:
                acc = acc + op_sym_product(b[l], c[k - l])
        out[k] = acc
    return TensorSeries.from_blocks(ctx, i, out)


def _block_powers(B):
    """``pw[l][k] = Σ_{i_1+...+i_l=k} B_{i_1} ⊙ ... ⊙ B_{i_l}`` (a k → l block)."""
    ctx = B.ctx
    K = ctx.order
    b = _blocks(B)
    pw = {0: {k: BlockOp.zero(ctx, k, 0) for k in range(K + 1)}}
    pw[0][0] = identity_op(ctx, 0)
    for l in range(1, K + 1):
        pw[l] = {}
        for k in range(K + 1):
            acc = BlockOp.zero(ctx, k, l)
            for j in range(1, k + 1):
                prev = pw[l - 1][k - j]
                if b[j] and prev:
                    acc = acc + op_sym_product(b[j], prev)
            pw[l][k] = acc
    return pw


def blocks_compose(C, B):
    """``D_k = Σ_l C_l Σ_{i_1+...+i_l=k} B_{i_1} ⊙ ... ⊙ B_{i_l}`` on BlockOps."""
    ctx = check_same(C, B)
    _require(not _has_constant(B), "inner series has a nonzero constant term")
    c = _blocks(C)
    pw = _block_powers(B)
    out = {}
    for k in range(ctx.order + 1):
        acc = BlockOp.zero(ctx, k, C.target_degree)
        for l in range(k + 1):
            if c[l]:
                acc = acc + c[l] @ pw[l][k]
        out[k] = acc
    return TensorSeries.from_blocks(ctx, C.target_degree, out)


def blocks_dirderiv(C, B):
    """``D_k = Σ_l l C_l (1_{l-1} ⊙ B_{k-l+1})`` on BlockOps."""
    ctx = check_same(C, B)
    c, b = _blocks(C), _blocks(B)
    out = {}
    for k in range(ctx.order + 1):
        acc = BlockOp.zero(ctx, k, C.target_degree)
        for l in range(1, k + 1):
            bl = b[k - l + 1]
            if c[l] and bl:
                acc = acc + l * (c[l] @ op_sym_product(identity_op(ctx, l - 1), bl))
        out[k] = acc
    return TensorSeries.from_blocks(ctx, C.target_degree, out)
