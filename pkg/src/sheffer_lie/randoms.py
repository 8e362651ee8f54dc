"""Seeded random instances for property checks.

All generators take a :class:`random.Random` so that runs are reproducible.
Coefficients are small rationals; a fraction of them is zero so that
sparse and dense cases both occur.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .groups import AlgebraPair, SPair, TimeCurve
from .opmatrix import NilMatrix, OpMatrix
from .scalars import GaussianRational
from .series import TensorSeries
from .symtensor import BlockOp, DualVector, SymTensor
from .tpoly import TPoly


def make_rng(seed=0):
    return random.Random(seed)


def scalar(rng, ctx, bound=3, den=3, zero_rate=0.25):
    if rng.random() < zero_rate:
        return ctx.zero

    def q():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, den))

    if ctx.ring == "gaussian":
        return GaussianRational(q(), q())
    return q()


def nonzero_scalar(rng, ctx, bound=3, den=3):
    while True:
        c = scalar(rng, ctx, bound, den, zero_rate=0)
        if c:
            return c


def symtensor(rng, ctx, k):
    return SymTensor(ctx, k, {m: scalar(rng, ctx) for m in ctx.basis(k)})


def blockop(rng, ctx, src, dst):
    rows = [[scalar(rng, ctx) for _ in range(ctx.size(src))] for _ in range(ctx.size(dst))]
    return BlockOp(ctx, src, dst, rows)


def dual(rng, ctx):
    return DualVector(ctx, [scalar(rng, ctx, zero_rate=0.1) for _ in range(ctx.dim)])


def vector(rng, ctx):
    return tuple(scalar(rng, ctx, zero_rate=0.1) for _ in range(ctx.dim))


def series(rng, ctx, target_degree=0, start=0, stop=None, make=None):
    """Random series with terms in degrees ``start..stop`` (default ``K``)."""
    stop = ctx.order if stop is None else stop
    make = make or (lambda: scalar(rng, ctx))
    terms = {}
    for k in range(start, stop + 1):
        for xm in ctx.basis(k):
            for em in ctx.basis(target_degree):
                c = make()
                if c:
                    terms[xm + em] = c
    return TensorSeries(ctx, target_degree, terms, min(start, ctx.order))


def f0_series(rng, ctx):
    return TensorSeries.one(ctx) + series(rng, ctx, 0, 1)


def f1_series(rng, ctx):
    return TensorSeries.identity(ctx) + series(rng, ctx, 1, 2)


def spair(rng, ctx):
    return SPair(f0_series(rng, ctx), f1_series(rng, ctx))


def algebra_pair(rng, ctx):
    return AlgebraPair(series(rng, ctx, 0, 1), series(rng, ctx, 1, 2))


def tpoly(rng, ctx, degree=2):
    return TPoly(scalar(rng, ctx) for _ in range(degree + 1))


def curve_pair(rng, ctx, degree=2):
    """A time-dependent algebra pair with t-polynomial coefficients."""
    def make():
        return tpoly(rng, ctx, degree)
    return TimeCurve(AlgebraPair(series(rng, ctx, 0, 1, make=make),
                                 series(rng, ctx, 1, 2, make=make)))


def curve_series(rng, ctx, target_degree, degree=2):
    start = 1 if target_degree == 0 else 2
    return TimeCurve(series(rng, ctx, target_degree, start, make=lambda: tpoly(rng, ctx, degree)))


def _graded(rng, ctx, min_gap, make):
    D = ctx.total_size
    arr = np.empty((D, D), dtype=object)
    arr.fill(ctx.zero)
    for k in range(ctx.order + 1):
        for i in range(k - min_gap + 1):
            oi, ok = ctx.offset(i), ctx.offset(k)
            for r in range(ctx.size(i)):
                for c in range(ctx.size(k)):
                    arr[oi + r, ok + c] = make()
    return arr


def nilmatrix(rng, ctx, min_gap=1):
    """Strictly upper matrix whose nonzero blocks satisfy ``k - i ≥ min_gap``."""
    return NilMatrix(ctx, _graded(rng, ctx, max(min_gap, 1), lambda: scalar(rng, ctx)))


def unipotent(rng, ctx):
    arr = _graded(rng, ctx, 1, lambda: scalar(rng, ctx))
    for j in range(ctx.total_size):
        arr[j, j] = ctx.one
    return OpMatrix(ctx, arr, True)


def curve_nilmatrix(rng, ctx, degree=2):
    return TimeCurve(NilMatrix(ctx, _graded(rng, ctx, 1, lambda: tpoly(rng, ctx, degree))))


def perturb_deep_block(rng, P):
    """Change one entry of a block ``(i, k)`` with ``2 ≤ i < k``.

    Rows ``i ≥ 2`` of a Sheffer operator are determined by rows 0 and 1, so
    the result is never Sheffer.  Needs order ≥ 3.
    """
    ctx = P.ctx
    K = ctx.order
    if K < 3:
        raise ValueError("deep blocks exist only for order >= 3")
    k = rng.randint(3, K)
    i = rng.randint(2, k - 1)
    r = rng.randrange(ctx.size(i))
    c = rng.randrange(ctx.size(k))
    arr = P.entries.copy()
    arr.flags.writeable = True
    arr[ctx.offset(i) + r, ctx.offset(k) + c] += nonzero_scalar(rng, ctx)
    return OpMatrix(ctx, arr, True)
