"""Sheffer, Appell, umbral and Riordan operators.

A Sheffer operator ``P`` maps the monomial ``<ω^⊗n, ·>`` to the ``n``-th
polynomial of a sequence with generating function
``exp<ω, B(ξ)> A(ξ)``.  Its blocks are

    P_kn = (n!/k!) [B(ξ)^⊙k A(ξ)]_n,

so row ``k`` has exponential generating function ``B^⊙k A / k!``.  The
Riordan image ``R_kn = (k!/n!) P_kn`` turns these into ordinary generating
functions: ``Σ_n R_kn ξ^⊗n = B^⊙k A``.
"""

from __future__ import annotations

from math import factorial

import numpy as np

from .errors import ConsistencyError, DomainError, MembershipError, PreconditionError
from .groups import SPair, f0_inverse, s_inverse, s_mul
from .opmatrix import (NilMatrix, OpMatrix, commutator, nil_exp, opmat_inverse,
                       opmat_log, opmat_mul)
from .poly import falling
from .scalars import exact_div
from .series import TensorSeries, series_power, series_tensor
from .symtensor import BlockOp, identity_op, op_sym_product

#: When true, every group operation on :class:`ShefferOp` verifies that the
#: matrix and the pair still describe the same operator.
CHECK_CONSISTENCY = True


class ShefferOp:
    """A Sheffer operator with both views cached: the pair and the matrix."""

    __slots__ = ("pair", "matrix")

    def __init__(self, pair, matrix=None, check=False):
        if matrix is None:
            matrix = build_matrix(pair)
        elif check and build_matrix(pair) != matrix:
            raise ConsistencyError("matrix does not match the pair")
        object.__setattr__(self, "pair", pair)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("ShefferOp is immutable")

    @property
    def ctx(self):
        return self.matrix.ctx

    def consistent(self):
        return build_matrix(self.pair) == self.matrix

    def block(self, i, k):
        return self.matrix.block(i, k)

    def __mul__(self, other):
        return sheffer_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, ShefferOp) and self.pair == other.pair and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.pair, self.matrix))

    def __repr__(self):
        return f"ShefferOp({self.pair!r})"


class RiordanOp:
    """Riordan image ``R_ik = (i!/k!) P_ik`` of a Sheffer operator."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        if not isinstance(matrix, OpMatrix) or not matrix.unipotent:
            raise PreconditionError("a Riordan operator is a unipotent OpMatrix")
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("RiordanOp is immutable")

    @property
    def ctx(self):
        return self.matrix.ctx

    def block(self, i, k):
        return self.matrix.block(i, k)

    def __mul__(self, other):
        return RiordanOp(opmat_mul(self.matrix, other.matrix))

    def __eq__(self, other):
        return isinstance(other, RiordanOp) and self.matrix == other.matrix

    def __hash__(self):
        return hash(("riordan", self.matrix))

    def __repr__(self):
        return f"RiordanOp({self.matrix!r})"


# -- construction and factorization ------------------------------------------

def build_matrix(pair):
    """Blocks ``P_kn = (n!/k!) [B^⊙k A]_n`` from block-level recursions.

    ``S(k, n) = [B^⊙k]_n = Σ_l B_l ⊙ S(k-1, n-l)`` and
    ``[B^⊙k A]_n = S(k, n) + Σ_{m ≥ 1} A_m ⊙ S(k, n-m)``.
    """
    ctx = pair.ctx
    K = ctx.order
    A = {n: pair.a.series.block(n) for n in range(K + 1)}
    B = {n: pair.b.series.block(n) for n in range(K + 1)}
    S = {(0, 0): identity_op(ctx, 0)}
    for n in range(1, K + 1):
        S[0, n] = BlockOp.zero(ctx, n, 0)
    for k in range(1, K + 1):
        for n in range(K + 1):
            acc = BlockOp.zero(ctx, n, k)
            for l in range(1, n + 1):
                prev = S.get((k - 1, n - l))
                if prev is not None and B[l] and prev:
                    acc = acc + op_sym_product(B[l], prev)
            S[k, n] = acc
    blocks = {}
    for k in range(K + 1):
        for n in range(k + 1, K + 1):
            acc = S[k, n]
            for m in range(1, n - k + 1):
                if A[m] and S[k, n - m]:
                    acc = acc + op_sym_product(A[m], S[k, n - m])
            blocks[k, n] = acc * exact_div(factorial(n), factorial(k))
    return OpMatrix.from_blocks(ctx, blocks, True)


def sheffer_build(pair):
    """The Sheffer operator of ``(A, B)``."""
    return ShefferOp(pair, build_matrix(pair))


def sheffer_factor(P, check_membership=False):
    """Recover ``(A, B)`` from rows 0 and 1.

    ``A_n = P_0n / n!`` and ``B_n = P_1n / n! - Σ_{m<n} A_{n-m} ⊙ B_m``.
    With ``check_membership`` a non-Sheffer input raises
    :class:`MembershipError`; otherwise the recurrence is applied as is.
    """
    P = P.matrix if isinstance(P, ShefferOp) else P
    if not isinstance(P, OpMatrix) or not P.unipotent:
        raise PreconditionError("sheffer_factor needs a unipotent OpMatrix")
    if check_membership and not is_sheffer(P):
        raise MembershipError("operator is not a Sheffer operator")
    ctx = P.ctx
    K = ctx.order
    A = {n: P.block(0, n) * exact_div(1, factorial(n)) for n in range(K + 1)}
    B = {0: BlockOp.zero(ctx, 0, 1)}
    for n in range(1, K + 1):
        acc = P.block(1, n) * exact_div(1, factorial(n))
        for m in range(1, n):
            if A[n - m] and B[m]:
                acc = acc - op_sym_product(A[n - m], B[m])
        B[n] = acc
    return SPair(TensorSeries.from_blocks(ctx, 0, A), TensorSeries.from_blocks(ctx, 1, B, 1))


def is_sheffer(P):
    """Rows ``k ≥ 2`` are determined by rows 0 and 1; check that they match."""
    P = P.matrix if isinstance(P, ShefferOp) else P
    if not isinstance(P, OpMatrix) or not P.unipotent:
        return False
    try:
        return build_matrix(sheffer_factor(P)) == P
    except DomainError:
        return False


def is_appell(P):
    """Sheffer and ``P_1n = n P_{0,n-1} ⊙ 1_1`` for all ``n ≥ 1``."""
    P = P.matrix if isinstance(P, ShefferOp) else P
    if not is_sheffer(P):
        return False
    one = identity_op(P.ctx, 1)
    return all(P.block(1, n) == op_sym_product(P.block(0, n - 1), one) * n
               for n in range(1, P.ctx.order + 1))


def is_umbral(P):
    """Sheffer and ``P_0n = 0`` for all ``n ≥ 1``."""
    P = P.matrix if isinstance(P, ShefferOp) else P
    if not is_sheffer(P):
        return False
    return not any(P.block(0, n) for n in range(1, P.ctx.order + 1))


def _consistent(op):
    if CHECK_CONSISTENCY and not op.consistent():
        raise ConsistencyError("matrix and pair views disagree")
    return op


def sheffer_mul(P1, P2):
    """Product: matrices multiply, pairs multiply in S."""
    return _consistent(ShefferOp(s_mul(P1.pair, P2.pair), opmat_mul(P1.matrix, P2.matrix)))


def sheffer_inverse(P):
    return _consistent(ShefferOp(s_inverse(P.pair), opmat_inverse(P.matrix)))


def row_gf(P, i):
    """``i! Σ_k P_ik ξ^⊗k / k!`` as a series valued in ``Φ^⊙i``."""
    M = P.matrix if isinstance(P, (ShefferOp, RiordanOp)) else P
    K = M.ctx.order
    blocks = {k: M.block(i, k) * exact_div(factorial(i), factorial(k)) for k in range(i, K + 1)}
    return TensorSeries.from_blocks(M.ctx, i, blocks)


def riordan_row_gf(R, i):
    """``Σ_k R_ik ξ^⊗k``."""
    M = R.matrix if isinstance(R, RiordanOp) else R
    K = M.ctx.order
    return TensorSeries.from_blocks(M.ctx, i, {k: M.block(i, k) for k in range(i, K + 1)})


def pair_row(pair, i):
    """``B^⊙i A`` computed directly on series."""
    return series_tensor(series_power(pair.b.series, i), pair.a.series)


# -- Lie algebra maps ----------------------------------------------------------

def _algebra_blocks(w):
    K = w.ctx.order
    return ({j: w.alpha.block(j) for j in range(K + 1)},
            {j: w.beta.block(j) for j in range(K + 1)})


def _lie_blocks(w, beta_weight, alpha_weight):
    ctx = w.ctx
    K = ctx.order
    alpha, beta = _algebra_blocks(w)
    blocks = {}
    for k in range(1, K + 1):
        for i in range(k):
            acc = BlockOp.zero(ctx, k, i)
            b = beta[k - i + 1] if i >= 1 and k - i + 1 <= K else None
            if b is not None and b:
                acc = acc + op_sym_product(b, identity_op(ctx, i - 1)) * beta_weight(i, k)
            a = alpha[k - i]
            if a:
                acc = acc + op_sym_product(a, identity_op(ctx, i)) * alpha_weight(i, k)
            blocks[i, k] = acc
    return NilMatrix.from_blocks(ctx, blocks)


def lie_map(w):
    """``V_ik = (k)_{k-i+1} β_{k-i+1} ⊙ 1_{i-1} + (k)_{k-i} α_{k-i} ⊙ 1_i``."""
    return _lie_blocks(w, lambda i, k: falling(k, k - i + 1), lambda i, k: falling(k, k - i))


def riordan_lie_map(w):
    """``V_ik = i β_{k-i+1} ⊙ 1_{i-1} + α_{k-i} ⊙ 1_i``."""
    return _lie_blocks(w, lambda i, k: i, lambda i, k: 1)


# -- Riordan transform -----------------------------------------------------------

def _rescale(M, forward):
    ctx = M.ctx
    K = ctx.order
    d = []
    for k in range(K + 1):
        d.extend([factorial(k)] * ctx.size(k))
    arr = np.empty(M.entries.shape, dtype=object)
    for (r, c), v in np.ndenumerate(M.entries):
        arr[r, c] = v * (exact_div(d[r], d[c]) if forward else exact_div(d[c], d[r]))
    return arr


def riordan_transform(P):
    """``R_ik = (i!/k!) P_ik``; a group isomorphism onto the Riordan group."""
    M = P.matrix if isinstance(P, ShefferOp) else P
    return RiordanOp(OpMatrix(M.ctx, _rescale(M, True), True))


def riordan_inverse_transform(R):
    """Undo :func:`riordan_transform`; returns a :class:`ShefferOp` when the
    result is Sheffer, otherwise raises :class:`MembershipError`."""
    M = R.matrix if isinstance(R, RiordanOp) else R
    P = OpMatrix(M.ctx, _rescale(M, False), True)
    if not is_sheffer(P):
        raise MembershipError("not the Riordan image of a Sheffer operator")
    return ShefferOp(sheffer_factor(P), P)


def riordan_nil(V):
    """Rescale a Lie algebra element the same way as :func:`riordan_transform`."""
    return NilMatrix(V.ctx, _rescale(V, True))


# -- BCH -------------------------------------------------------------------------

def bch(V1, V2):
    """``log(exp V1 exp V2)``, exact within the truncation."""
    return opmat_log(opmat_mul(nil_exp(V1), nil_exp(V2)))


def bch_partial(V1, V2, depth=3):
    """``V1 + V2 + [V1,V2]/2 + ([V1,[V1,V2]] - [V2,[V1,V2]])/12`` cut at ``depth``."""
    out = V1 + V2
    if depth >= 2:
        c = commutator(V1, V2)
        out = out + c * exact_div(1, 2)
        if depth >= 3:
            out = out + (commutator(V1, c) - commutator(V2, c)) * exact_div(1, 12)
    return out


# -- classical sequences -----------------------------------------------------------

CATALOG = ("identity", "hermite", "bernoulli", "touchard", "falling_factorial", "pascal")


def catalog(name, ctx):
    """A classical pair ``(A, B)`` truncated at the context's order."""
    if name not in CATALOG:
        raise DomainError(f"unknown catalog name {name!r}; choose from {', '.join(CATALOG)}")
    if name == "identity":
        return SPair.identity(ctx)
    if ctx.dim != 1:
        raise DomainError(f"catalog entry {name!r} is one-dimensional; got dim={ctx.dim}")
    K = ctx.order
    one = [1] + [0] * K
    xi = [0, 1] + [0] * (K - 1)
    if name == "hermite":
        a = [exact_div((-1) ** (n // 2), 2 ** (n // 2) * factorial(n // 2)) if n % 2 == 0 else 0
             for n in range(K + 1)]
        b = xi
    elif name == "bernoulli":
        g = TensorSeries.from_coeffs(ctx, [exact_div(1, factorial(n + 1)) for n in range(K + 1)])
        a = f0_inverse(g).series.coeffs_1d()
        b = xi
    elif name == "touchard":
        a = one
        b = [0] + [exact_div(1, factorial(n)) for n in range(1, K + 1)]
    elif name == "falling_factorial":
        a = one
        b = [0] + [exact_div((-1) ** (n + 1), n) for n in range(1, K + 1)]
    else:
        a = [1] * (K + 1)
        b = [0] + [1] * K
    return SPair(TensorSeries.from_coeffs(ctx, a), TensorSeries.from_coeffs(ctx, b, 1, 1))


def sequence_poly(P, n):
    """The ``n``-th polynomial ``Σ_i <ω^⊗i, P_in e_m>`` for each degree-``n`` ``m``.

    Returns ``{m: {w-multi-index: coefficient}}``.
    """
    M = P.matrix if isinstance(P, ShefferOp) else P
    ctx = M.ctx
    out = {}
    for m in ctx.basis(n):
        poly = {}
        for i in range(n + 1):
            col = M.block(i, n).column(m)
            poly.update(col.coeffs)
        out[m] = poly
    return out
