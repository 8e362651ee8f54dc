"""Property suites behind ``sheffer-lie check``.

Each suite draws seeded random instances and returns a list of
:class:`Result` rows (property name, instance count, number passed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import oracles
from . import randoms as rnd
from .errors import DomainError
from .groups import (AlgebraPair, SPair, TimeCurve, f0_evolve, f0_exp, f0_inverse, f0_log,
                     f0_mul, f0_path, f0_residual, f1_evolve, f1_exp, f1_exp_flow, f1_inverse,
                     f1_log, f1_mul, f1_path, f1_residual, s_bracket, s_evolve, s_exp,
                     s_inverse, s_log, s_mul, s_path, s_residual)
from .opmatrix import (NilMatrix, OpMatrix, PolyOnDual, commutator, dsigma, dsigma_tensor,
                       mult, nil_exp, opmat_evolve, opmat_inverse, opmat_log, opmat_mul,
                       opmat_path, opmat_residual, vector_field_op, zero_grad_op)
from .series import TensorSeries, series_compose
from .sheffer import (CATALOG, catalog, is_appell, is_sheffer, is_umbral, lie_map, pair_row,
                      riordan_lie_map, riordan_nil, riordan_row_gf, riordan_transform, row_gf,
                      sequence_poly, sheffer_build, sheffer_factor)
from .symtensor import BlockOp, Context
from .tpoly import TPoly

SUITES = ("groups", "explog", "isomorphism", "rowgf", "liealgebra", "weyl", "riordan",
          "flows", "classical")
DEFAULT_INSTANCES = 20


@dataclass(frozen=True)
class Result:
    suite: str
    name: str
    instances: int
    passed: int

    @property
    def ok(self):
        return self.passed == self.instances


class _Tally:
    def __init__(self, suite):
        self.suite = suite
        self.rows = {}

    def record(self, name, ok):
        n, p = self.rows.get(name, (0, 0))
        self.rows[name] = (n + 1, p + bool(ok))

    def results(self):
        return [Result(self.suite, name, n, p) for name, (n, p) in self.rows.items()]


def run(suite, ctx, seed=0, instances=None):
    """Run one suite (or ``"all"``) and return the result rows."""
    if suite == "all":
        out = []
        for name in SUITES:
            out.extend(run(name, ctx, seed, instances))
        return out
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    n = DEFAULT_INSTANCES if instances is None else instances
    tally = _Tally(suite)
    _SUITE_FUNCS[suite](tally, ctx, rnd.make_rng(seed), n)
    return tally.results()


# -- suites ------------------------------------------------------------------------

def _axioms(tally, label, draw, mul, inv, identity, n):
    for _ in range(n):
        x, y, z = draw(), draw(), draw()
        tally.record(f"{label} associativity", mul(mul(x, y), z) == mul(x, mul(y, z)))
        tally.record(f"{label} identity", mul(identity, x) == x and mul(x, identity) == x)
        xi = inv(x)
        tally.record(f"{label} inverse", mul(x, xi) == identity and mul(xi, x) == identity)


def suite_groups(tally, ctx, rng, n):
    _axioms(tally, "F0", lambda: rnd.f0_series(rng, ctx), lambda a, b: f0_mul(a, b).series,
            lambda a: f0_inverse(a).series, TensorSeries.one(ctx), n)
    _axioms(tally, "F1", lambda: rnd.f1_series(rng, ctx), lambda a, b: f1_mul(a, b).series,
            lambda a: f1_inverse(a).series, TensorSeries.identity(ctx), n)
    _axioms(tally, "S", lambda: rnd.spair(rng, ctx), s_mul, s_inverse, SPair.identity(ctx), n)
    _axioms(tally, "M", lambda: rnd.unipotent(rng, ctx), opmat_mul, opmat_inverse,
            OpMatrix.identity(ctx), n)


def suite_explog(tally, ctx, rng, n):
    for _ in range(n):
        alpha = rnd.series(rng, ctx, 0, 1)
        A = rnd.f0_series(rng, ctx)
        tally.record("f0 log(exp(α)) = α", f0_log(f0_exp(alpha)) == alpha)
        tally.record("f0 exp(log(A)) = A", f0_exp(f0_log(A)).series == A)
        beta = rnd.series(rng, ctx, 1, 2)
        B = rnd.f1_series(rng, ctx)
        tally.record("f1 Log(Exp(β)) = β", f1_log(f1_exp(beta)) == beta)
        tally.record("f1 Exp(Log(B)) = B", f1_exp(f1_log(B)).series == B)
        tally.record("f1 Exp as flow = Lie series",
                     f1_exp_flow(beta).map(lambda c: c(1) if isinstance(c, TPoly) else c)
                     == f1_exp(beta).series)
        w = rnd.algebra_pair(rng, ctx)
        p = rnd.spair(rng, ctx)
        tally.record("S LOG(EXP(w)) = w", s_log(s_exp(w)) == w)
        tally.record("S EXP(LOG(p)) = p", s_exp(s_log(p)) == p)
        V = rnd.nilmatrix(rng, ctx)
        P = rnd.unipotent(rng, ctx)
        tally.record("M log(exp(V)) = V", opmat_log(nil_exp(V)) == V)
        tally.record("M exp(log(P)) = P", nil_exp(opmat_log(P)) == P)


def suite_isomorphism(tally, ctx, rng, n):
    for _ in range(n):
        p, q = rnd.spair(rng, ctx), rnd.spair(rng, ctx)
        P, Q = sheffer_build(p).matrix, sheffer_build(q).matrix
        PQ = opmat_mul(P, Q)
        tally.record("build(p·q) = build(p)·build(q)", sheffer_build(s_mul(p, q)).matrix == PQ)
        Pinv = opmat_inverse(P)
        tally.record("build(p⁻¹) = build(p)⁻¹", sheffer_build(s_inverse(p)).matrix == Pinv)
        tally.record("factor(build(p)) = p", sheffer_factor(P) == p)
        tally.record("products and inverses stay Sheffer", is_sheffer(PQ) and is_sheffer(Pinv))
        # Appell·umbral splitting: (A(B⁻¹), ξ)·(1, B) = (A, B)
        binv = f1_inverse(p.b).series
        appell = SPair(series_compose(p.a.series, binv), TensorSeries.identity(ctx))
        umbral = SPair(TensorSeries.one(ctx), p.b.series)
        Pa, Pu = sheffer_build(appell).matrix, sheffer_build(umbral).matrix
        tally.record("Appell·umbral factorization",
                     is_appell(Pa) and is_umbral(Pu) and opmat_mul(Pa, Pu) == P)
        a2 = SPair(rnd.f0_series(rng, ctx), TensorSeries.identity(ctx))
        Pa2 = sheffer_build(a2).matrix
        tally.record("Appell subgroup is abelian", opmat_mul(Pa, Pa2) == opmat_mul(Pa2, Pa))
        u2 = SPair(TensorSeries.one(ctx), rnd.f1_series(rng, ctx))
        Pu2 = sheffer_build(u2).matrix
        tally.record("umbral subgroup is closed",
                     is_umbral(opmat_mul(Pu, Pu2)) and is_umbral(opmat_inverse(Pu)))
        if ctx.order >= 3:
            tally.record("deep-block perturbation is rejected",
                         not is_sheffer(rnd.perturb_deep_block(rng, P)))


def _rowgf_checks(tally, pair, label):
    S = sheffer_build(pair)
    R = riordan_transform(S)
    K = pair.ctx.order
    tally.record(f"{label} rows: i!Σ P_ik ξ^k/k! = B^i A",
                 all(row_gf(S, i) == pair_row(pair, i) for i in range(K + 1)))
    tally.record(f"{label} Riordan rows: Σ R_ik ξ^k = B^i A",
                 all(riordan_row_gf(R, i) == pair_row(pair, i) for i in range(K + 1)))


def suite_rowgf(tally, ctx, rng, n):
    names = CATALOG if ctx.dim == 1 else ("identity",)
    for name in names:
        _rowgf_checks(tally, catalog(name, ctx), "catalog")
    for _ in range(n):
        _rowgf_checks(tally, rnd.spair(rng, ctx), "random")


def suite_liealgebra(tally, ctx, rng, n):
    for _ in range(n):
        w1, w2 = rnd.algebra_pair(rng, ctx), rnd.algebra_pair(rng, ctx)
        V1 = lie_map(w1)
        tally.record("log(build(EXP(w))) = R(w)", opmat_log(sheffer_build(s_exp(w1)).matrix) == V1)
        tally.record("R(w) = α(∇) + M(β(∇))", vector_field_op(w1) == V1)
        tally.record("R([w1,w2]) = [R(w1),R(w2)]",
                     lie_map(s_bracket(w1, w2)) == commutator(V1, lie_map(w2)))
        tally.record("R is linear", lie_map(w1 + w2 * 3) == V1 + lie_map(w2) * 3)


def _low_monomials(ctx):
    for k in range(ctx.order):
        for m in ctx.basis(k):
            yield m


def suite_weyl(tally, ctx, rng, n):
    big = ctx.with_order(ctx.order + 1)
    for _ in range(n):
        s1, s2 = rnd.dual(rng, ctx), rnd.dual(rng, ctx)
        x1, x2 = rnd.vector(rng, ctx), rnd.vector(rng, ctx)
        for m in _low_monomials(ctx):
            p = PolyOnDual.monomial(ctx, m)
            tally.record("[D_σ, D_σ'] = 0", dsigma(dsigma(p, s2), s1) == dsigma(dsigma(p, s1), s2))
            lp = p.lift(big.order)
            tally.record("[M(ξ), M(ξ')] = 0", mult(mult(lp, x2), x1) == mult(mult(lp, x1), x2))
            lhs = dsigma(mult(p, x1), s1) - mult(dsigma(p, s1), x1)
            tally.record("[D_σ, M(ξ)] = <σ,ξ>", lhs == p * sum(s * x for s, x in zip(s1.components, x1)))
            tally.record("D_σ by coordinates = D_σ by blocks", dsigma(p, s1) == dsigma_tensor(p, s1))


def suite_riordan(tally, ctx, rng, n):
    for _ in range(n):
        p, q = rnd.spair(rng, ctx), rnd.spair(rng, ctx)
        P, Q = sheffer_build(p).matrix, sheffer_build(q).matrix
        tally.record("Riordan transform is multiplicative",
                     riordan_transform(opmat_mul(P, Q)).matrix
                     == opmat_mul(riordan_transform(P).matrix, riordan_transform(Q).matrix))
        w = rnd.algebra_pair(rng, ctx)
        RV = riordan_lie_map(w)
        R = riordan_transform(sheffer_build(s_exp(w)))
        tally.record("log(Riordan image of EXP(w)) = riordan_lie_map(w)", opmat_log(R.matrix) == RV)
        tally.record("riordan_lie_map(w) = α(∇₀) + N M(β(∇₀))", zero_grad_op(w) == RV)
        tally.record("rescaled lie_map = riordan_lie_map", riordan_nil(lie_map(w)) == RV)


def _at1(value):
    return value.map(lambda c: c(1) if isinstance(c, TPoly) else c)


def suite_flows(tally, ctx, rng, n):
    for _ in range(n):
        ca = rnd.curve_series(rng, ctx, 0)
        tally.record("f0 path solves A' = Aα", not f0_residual(ca, f0_path(ca)))
        cb = rnd.curve_series(rng, ctx, 1)
        tally.record("f1 path solves B' = D_β B", not f1_residual(cb, f1_path(cb)))
        cw = rnd.curve_pair(rng, ctx)
        ra, rb = s_residual(cw, s_path(cw))
        tally.record("S path solves its flow", not ra and not rb)
        cv = rnd.curve_nilmatrix(rng, ctx)
        tally.record("M path solves P' = PV", not opmat_residual(cv, opmat_path(cv)))
        alpha, beta = rnd.series(rng, ctx, 0, 1), rnd.series(rng, ctx, 1, 2)
        w, V = AlgebraPair(alpha, beta), rnd.nilmatrix(rng, ctx)
        tally.record("constant curves give exp",
                     f0_evolve(TimeCurve.constant(alpha)) == f0_exp(alpha)
                     and f1_evolve(TimeCurve.constant(beta)) == f1_exp(beta)
                     and s_evolve(TimeCurve.constant(w)) == s_exp(w)
                     and opmat_evolve(TimeCurve.constant(V)) == nil_exp(V))
        # t ↦ 2t w: the solution at t = 1 is exp(w)
        lin = TPoly((0, 2))
        tally.record("linear-in-t curve gives exp",
                     s_evolve(TimeCurve.scaled(w, lin)) == s_exp(w)
                     and opmat_evolve(TimeCurve.scaled(V, lin)) == nil_exp(V))


def _table(M):
    K = M.ctx.order
    return [[M.entries[i, k] for k in range(K + 1)] for i in range(K + 1)]


def suite_classical(tally, ctx, rng, n):
    """One-dimensional tables against the recurrence oracles (uses dim 1)."""
    ctx = Context(1, ctx.order, ctx.ring)
    K = ctx.order
    mats = {}
    for name in CATALOG:
        pair = catalog(name, ctx)
        a, b = oracles.classical_pair(name, K)
        tally.record(f"{name}: pair matches closed form",
                     pair.a.series.coeffs_1d() == a and pair.b.series.coeffs_1d() == b)
        mats[name] = sheffer_build(pair).matrix
        tally.record(f"{name}: matrix matches oracle",
                     _table(mats[name]) == oracles.classical_table(name, K))
        tally.record(f"{name}: matrix matches generating function",
                     _table(mats[name]) == oracles.sheffer_table(a, b, K))
    seqs = [sequence_poly(mats["hermite"], k)[(k,)] for k in range(K + 1)]
    tally.record("Hermite sequence He_n",
                 all({(d,): c for d, c in enumerate(oracles.hermite_poly(k)) if c} == seqs[k]
                     for k in range(K + 1)))
    bseqs = [sequence_poly(mats["bernoulli"], k)[(k,)] for k in range(K + 1)]
    tally.record("Bernoulli polynomials B_n(z)",
                 all({(d,): c for d, c in enumerate(oracles.bernoulli_poly(k)) if c} == bseqs[k]
                     for k in range(K + 1)))
    eye = OpMatrix.identity(ctx)
    tally.record("Stirling matrices are inverse",
                 opmat_mul(mats["touchard"], mats["falling_factorial"]) == eye
                 and opmat_mul(mats["falling_factorial"], mats["touchard"]) == eye)
    R = riordan_transform(mats["pascal"]).matrix
    tally.record("Pascal Riordan R_ik = C(k,i)",
                 _table(R) == [[comb(k, i) for k in range(K + 1)] for i in range(K + 1)])
    tally.record("Pascal² R_ik = 2^(k-i) C(k,i)",
                 _table(opmat_mul(R, R)) == [[2 ** (k - i) * comb(k, i) if k >= i else 0
                                              for k in range(K + 1)] for i in range(K + 1)])
    xi = TensorSeries.from_coeffs(ctx, [0, 1] + [0] * (K - 1), 0, 1)
    xi2 = TensorSeries.from_coeffs(ctx, [0, 0, 1] + [0] * (K - 2), 1, 2)
    w = AlgebraPair(xi, xi2)
    tally.record("EXP(ξ, ξ²) = (1/(1-ξ), ξ/(1-ξ))", s_exp(w) == catalog("pascal", ctx))
    V = NilMatrix.from_blocks(ctx, {(i, i + 1): _scalar_block(ctx, i, (i + 1) ** 2)
                                    for i in range(K)})
    tally.record("superdiagonal (i+1)²: exp row 0 is n!",
                 [nil_exp(V).entries[0, k] for k in range(K + 1)] == [factorial(k) for k in range(K + 1)])
    tally.record("superdiagonal (i+1)² is R(ξ, ξ²)", lie_map(w) == V)
    cat = TensorSeries.from_coeffs(ctx, [0, 1, -1] + [0] * (K - 2), 1, 1)
    inv = f1_inverse(cat).series.coeffs_1d()
    tally.record("reversion of ξ-ξ² gives Catalan numbers",
                 inv == [0] + [oracles.catalan(k - 1) for k in range(1, K + 1)]
                 and inv == oracles.lagrange_inverse(cat.coeffs_1d(), K))
    bern = sheffer_build(catalog("bernoulli", ctx)).matrix
    tally.record("Bernoulli numbers in row 0",
                 [bern.entries[0, k] for k in range(K + 1)]
                 == [oracles.bernoulli_number(k) for k in range(K + 1)])


def _scalar_block(ctx, i, c):
    return BlockOp(ctx, i + 1, i, [[Fraction(c)]])


_SUITE_FUNCS = {
    "groups": suite_groups,
    "explog": suite_explog,
    "isomorphism": suite_isomorphism,
    "rowgf": suite_rowgf,
    "liealgebra": suite_liealgebra,
    "weyl": suite_weyl,
    "riordan": suite_riordan,
    "flows": suite_flows,
    "classical": suite_classical,
}
