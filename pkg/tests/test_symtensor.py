from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sheffer_lie import oracles
from sheffer_lie import randoms as rnd
from sheffer_lie.errors import ContextMismatch, DegreeError
from sheffer_lie.poly import multinomial
from sheffer_lie.symtensor import (BlockOp, Context, DualVector, SymTensor, block_from_poly,
                                   block_to_poly, functional, identity_op, multiindices,
                                   op_from_polymap, op_sym_product, op_to_polymap, pairing,
                                   sym_product, vector_block)


def e(ctx, *m):
    return SymTensor.basis_vector(ctx, m)


# -- multi-indices ---------------------------------------------------------------

def test_multiindices_examples():
    assert multiindices(1, 3) == ((3,),)
    assert multiindices(2, 2) == ((0, 2), (1, 1), (2, 0))
    assert len(multiindices(3, 2)) == 6


@pytest.mark.parametrize("dim,k", [(1, 0), (2, 5), (3, 4), (4, 3)])
def test_multiindices_sorted_and_complete(dim, k):
    ms = multiindices(dim, k)
    assert list(ms) == sorted(ms)
    assert len(set(ms)) == len(ms)
    assert all(sum(m) == k for m in ms)
    from math import comb
    assert len(ms) == comb(dim + k - 1, k)


def test_context_offsets():
    ctx = Context(2, 3)
    assert [ctx.offset(k) for k in range(4)] == [0, 1, 3, 6]
    assert ctx.total_size == 10
    with pytest.raises(ValueError):
        Context(0, 3)


# -- products and pairing ----------------------------------------------------------

def test_basis_products():
    c1, c2 = Context(1, 6), Context(2, 4)
    assert sym_product(e(c1, 2), e(c1, 3)) == e(c1, 5)
    assert sym_product(e(c2, 1, 0), e(c2, 0, 1)) == e(c2, 1, 1)
    f = e(c2, 1, 1) * 3
    assert sym_product(SymTensor.scalar(c2, Fraction(1, 2)), f) == f * Fraction(1, 2)


def test_basis_product_matches_word_oracle():
    # averaging e1⊗e2 over the full tensor basis gives unit coefficient
    assert oracles.sym_product_via_words({(1, 0): 1}, {(0, 1): 1}, 2) == {(1, 1): 1}


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 10 ** 6))
def test_sym_product_against_words(a, b, seed):
    ctx = Context(2, 6)
    rng = rnd.make_rng(seed)
    f, g = rnd.symtensor(rng, ctx, a), rnd.symtensor(rng, ctx, b)
    assert sym_product(f, g).coeffs == oracles.sym_product_via_words(f.coeffs, g.coeffs, 2)


def test_pairing_examples():
    c1, c2 = Context(1, 4), Context(2, 4)
    assert pairing(DualVector(c1, [2]), e(c1, 3)) == 8
    assert pairing(DualVector(c2, [1, 1]), e(c2, 1, 1)) == 1
    assert pairing(DualVector(c2, [0, 0]), e(c2, 2, 1)) == 0


def test_pairing_is_multiplicative(rng):
    ctx = Context(2, 5)
    w = rnd.dual(rng, ctx)
    f, g = rnd.symtensor(rng, ctx, 2), rnd.symtensor(rng, ctx, 3)
    assert pairing(w, sym_product(f, g)) == pairing(w, f) * pairing(w, g)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        sym_product(e(Context(2, 4), 1, 0), e(Context(2, 5), 1, 0))


def test_bad_multiindex():
    with pytest.raises(DegreeError):
        SymTensor(Context(2, 4), 2, {(1, 0): 1})


# -- block operators -----------------------------------------------------------------

def _words_block_product(A, B):
    """Oracle for ``A ⊙ B`` through full tensors."""
    ctx = A.ctx
    a, b = A.src, B.src
    cols = {}
    for m in ctx.basis(a + b):
        ws = [w for w in oracles.words(ctx.dim, a + b) if oracles.content(w, ctx.dim) == m]
        acc = {}
        for w in ws:
            u = A(e(ctx, *oracles.content(w[:a], ctx.dim)))
            v = B(e(ctx, *oracles.content(w[a:], ctx.dim)))
            for k, c in oracles.sym_product_via_words(u.coeffs, v.coeffs, ctx.dim).items():
                acc[k] = acc.get(k, 0) + c / len(ws)
        cols[m] = acc
    rows = ctx.basis(A.dst + B.dst)
    return [[cols[m].get(r, 0) for m in ctx.basis(a + b)] for r in rows]


def test_functional_times_identity_example():
    ctx = Context(2, 4)
    A = BlockOp(ctx, 2, 0, [[0, 1, 0]])
    got = op_sym_product(A, identity_op(ctx, 1))
    t = Fraction(2, 3)
    assert got.entries.tolist() == [[0, t, 0, 0], [0, 0, t, 0]]
    assert got.entries.tolist() == _words_block_product(A, identity_op(ctx, 1))


@pytest.mark.parametrize("a,i,b,j", [(1, 0, 1, 1), (2, 1, 1, 0), (1, 1, 2, 1), (0, 1, 2, 2)])
def test_op_sym_product_against_words(rng, a, i, b, j):
    ctx = Context(2, 5)
    A, B = rnd.blockop(rng, ctx, a, i), rnd.blockop(rng, ctx, b, j)
    assert op_sym_product(A, B).entries.tolist() == _words_block_product(A, B)


def test_op_sym_product_defining_identity(rng):
    # (A⊙B) ξ^⊗(a+b) = Aξ^⊗a ⊙ Bξ^⊗b on a concrete vector ξ
    ctx = Context(2, 5)
    A, B = rnd.blockop(rng, ctx, 2, 1), rnd.blockop(rng, ctx, 1, 1)
    xi = (Fraction(2), Fraction(-1, 3))

    def power(k):
        return SymTensor(ctx, k, {m: multinomial(m) * xi[0] ** m[0] * xi[1] ** m[1]
                                  for m in ctx.basis(k)})

    assert op_sym_product(A, B)(power(3)) == sym_product(A(power(2)), B(power(1)))


def test_identity_products():
    ctx = Context(3, 4)
    assert op_sym_product(identity_op(ctx, 1), identity_op(ctx, 2)) == identity_op(ctx, 3)
    c1 = Context(1, 6)
    a, b = BlockOp(c1, 2, 0, [[3]]), BlockOp(c1, 3, 1, [[Fraction(1, 2)]])
    assert op_sym_product(a, b).entries.tolist() == [[Fraction(3, 2)]]


def test_polymap_examples():
    ctx = Context(2, 4)
    pm = op_to_polymap(identity_op(ctx, 2))
    assert all(pm[m] == e(ctx, *m) * multinomial(m) for m in ctx.basis(2))
    c1 = Context(1, 4)
    assert op_to_polymap(BlockOp(c1, 3, 1, [[7]]))[(3,)] == e(c1, 1) * 7


def test_polymap_round_trip(rng):
    ctx = Context(2, 4)
    C = rnd.blockop(rng, ctx, 3, 1)
    assert op_from_polymap(ctx, 3, 1, op_to_polymap(C)) == C
    assert block_from_poly(ctx, 3, 1, block_to_poly(C)) == C


def test_polymap_degree_error():
    ctx = Context(2, 4)
    with pytest.raises(DegreeError):
        op_from_polymap(ctx, 2, 1, {(1, 0): e(ctx, 1, 0)})


def test_block_composition_and_call(rng):
    ctx = Context(2, 4)
    A, B = rnd.blockop(rng, ctx, 2, 1), rnd.blockop(rng, ctx, 3, 2)
    f = rnd.symtensor(rng, ctx, 3)
    assert (A @ B)(f) == A(B(f))


def test_functional_and_vector_follow_basis_order():
    ctx = Context(2, 3)
    sig = functional(ctx, [1, 10])
    assert sig(e(ctx, 1, 0)).value == 1
    assert sig(e(ctx, 0, 1)).value == 10
    v = vector_block(ctx, [1, 10])(SymTensor.scalar(ctx, 1))
    assert v == e(ctx, 1, 0) + e(ctx, 0, 1) * 10


def test_blockop_is_immutable():
    ctx = Context(1, 3)
    C = BlockOp.scalar(ctx, 2)
    with pytest.raises(ValueError):
        C.entries[0, 0] = 3
