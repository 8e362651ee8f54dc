from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest

from sheffer_lie import randoms as rnd
from sheffer_lie.errors import DegreeError, PreconditionError
from sheffer_lie.groups import AlgebraPair, TimeCurve
from sheffer_lie.opmatrix import (NilMatrix, OpMatrix, PolyOnDual, apply, commutator, dsigma,
                                  grad_pow, mult, nil_exp, number_op, opmat_evolve,
                                  opmat_inverse, opmat_log, opmat_mul, opmat_path,
                                  opmat_residual, vector_field_op, zero_grad, zero_grad_op)
from sheffer_lie.series import TensorSeries
from sheffer_lie.sheffer import catalog, riordan_transform, sheffer_build
from sheffer_lie.symtensor import BlockOp, Context, DualVector
from sheffer_lie.tpoly import TPoly

C1 = Context(1, 6)
C2 = Context(2, 4)


def z(ctx, *m):
    return PolyOnDual.monomial(ctx, m)


def superdiag(ctx, weight, gap=1):
    blocks = {(i, i + gap): BlockOp(ctx, i + gap, i, [[Fraction(weight(i))]])
              for i in range(ctx.order + 1 - gap)}
    return NilMatrix.from_blocks(ctx, blocks)


def table(M):
    return M.entries.tolist()


def pair1(alpha, beta, ctx=C1):
    K = ctx.order
    pad = lambda c: list(c) + [0] * (K + 1 - len(c))  # noqa: E731
    return AlgebraPair(TensorSeries.from_coeffs(ctx, pad(alpha), 0, 1),
                       TensorSeries.from_coeffs(ctx, pad(beta), 1, 2))


# -- polynomials ---------------------------------------------------------------------

def test_poly_on_dual_evaluation():
    p = PolyOnDual.from_poly(C2, {(2, 0): 3, (1, 1): -1, (0, 0): 2})
    assert p(DualVector(C2, [1, 2])) == 3 - 2 + 2
    assert PolyOnDual.from_vector(C2, p.vector()) == p


def test_apply_examples(rng):
    I = OpMatrix.identity(C2)
    p = PolyOnDual.from_poly(C2, {(1, 2): 5, (0, 1): 1})
    assert apply(I, p) == p
    H = sheffer_build(catalog("hermite", C1)).matrix
    assert apply(H, z(C1, 2)) == PolyOnDual.from_poly(C1, {(2,): 1, (0,): -1})
    P = rnd.unipotent(rng, C2)
    assert apply(P, z(C2, 0, 0)) == z(C2, 0, 0)


def test_gradient_examples():
    grads = grad_pow(z(C1, 5), 2)
    assert grads[(2,)] == z(C1, 3) * 20
    assert not dsigma(z(C2, 0, 0), DualVector(C2, [1, 1]))


def test_mult_overflow():
    with pytest.raises(DegreeError):
        mult(z(C1, 6), (1,))


def test_zero_gradient_examples():
    for n in range(1, 7):
        assert zero_grad(z(C1, n))[(1,)] == z(C1, n - 1)
    assert not zero_grad(z(C1, 0))[(1,)]
    N = number_op(C1)
    for n in range(7):
        assert apply(N, z(C1, n)) == z(C1, n) * n


def test_m_times_grad_squared():
    # M(1)∇² with β₂ = 1 on z² gives 2z
    V = vector_field_op(pair1([0], [0, 0, 1]))
    assert apply(V, z(C1, 2)) == z(C1, 1) * 2


# -- group and algebra ----------------------------------------------------------------

def test_product_examples(rng):
    P = rnd.unipotent(rng, C2)
    assert opmat_mul(P, OpMatrix.identity(C2)) == P
    pascal = riordan_transform(sheffer_build(catalog("pascal", C1))).matrix
    sq = opmat_mul(pascal, pascal)
    assert table(sq) == [[2 ** (k - i) * comb(k, i) for k in range(7)] for i in range(7)]
    T = sheffer_build(catalog("touchard", C1)).matrix
    F = sheffer_build(catalog("falling_factorial", C1)).matrix
    assert opmat_mul(T, F) == OpMatrix.identity(C1)


def test_inverse_examples(rng):
    assert opmat_inverse(OpMatrix.identity(C2)) == OpMatrix.identity(C2)
    pascal = riordan_transform(sheffer_build(catalog("pascal", C1))).matrix
    assert table(opmat_inverse(pascal)) == [[(-1) ** (k - i) * comb(k, i) for k in range(7)]
                                            for i in range(7)]
    P = rnd.unipotent(rng, C2)
    assert opmat_mul(P, opmat_inverse(P)) == OpMatrix.identity(C2)


def test_inverse_needs_unipotent():
    with pytest.raises(PreconditionError):
        opmat_inverse(number_op(C1))


def test_exp_examples(rng):
    assert nil_exp(NilMatrix.zero(C2)) == OpMatrix.identity(C2)
    V = superdiag(C1, lambda i: (i + 1) ** 2)
    E = nil_exp(V)
    assert [E.entries[0, k] for k in range(7)] == [factorial(k) for k in range(7)]
    assert E.entries[0, 2] == 2 and E.entries[0, 3] == 6
    W = rnd.nilmatrix(rng, C2)
    assert opmat_log(nil_exp(W)) == W


def test_commutator_examples(rng):
    V = rnd.nilmatrix(rng, C2)
    assert not commutator(V, V)
    grad = superdiag(C1, lambda i: i + 1)
    m_grad2 = superdiag(C1, lambda i: (i + 1) * i)
    grad2 = superdiag(C1, lambda i: (i + 2) * (i + 1), gap=2)
    assert commutator(grad, m_grad2) == grad2
    U, W = rnd.nilmatrix(rng, C2), rnd.nilmatrix(rng, C2)
    assert commutator(U * 2 + W, V) == commutator(U, V) * 2 + commutator(W, V)


def test_evolve_examples(rng):
    V = rnd.nilmatrix(rng, C2)
    assert opmat_evolve(TimeCurve.constant(V)) == nil_exp(V)
    assert opmat_evolve(TimeCurve.scaled(V, TPoly((0, 1)))) == nil_exp(V * Fraction(1, 2))
    assert opmat_evolve(TimeCurve.constant(NilMatrix.zero(C2))) == OpMatrix.identity(C2)
    curve = rnd.curve_nilmatrix(rng, C2)
    assert not opmat_residual(curve, opmat_path(curve))


def test_lower_blocks_rejected():
    arr = OpMatrix.identity(C1).entries.copy()
    arr[3, 1] = 1
    with pytest.raises(PreconditionError):
        OpMatrix(C1, arr)


# -- operators attached to algebra elements --------------------------------------------

def test_vector_field_examples():
    assert table(vector_field_op(pair1([0, 1], [0]))) == table(superdiag(C1, lambda i: i + 1))
    assert table(vector_field_op(pair1([0], [0, 0, 1]))) == table(superdiag(C1, lambda i: (i + 1) * i))
    assert not vector_field_op(AlgebraPair.zero(C2))


def test_zero_gradient_operator_example():
    assert table(zero_grad_op(pair1([0], [0, 0, 1]))) == table(superdiag(C1, lambda i: i))
    assert table(zero_grad_op(pair1([0, 1], [0]))) == table(superdiag(C1, lambda i: 1))


def test_matrices_are_read_only(rng):
    P = rnd.unipotent(rng, C1)
    with pytest.raises(ValueError):
        P.entries[0, 1] = 5
    assert isinstance(P.entries, np.ndarray)
