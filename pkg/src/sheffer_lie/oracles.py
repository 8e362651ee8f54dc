"""Independent reference values for the one-dimensional classical cases.

Nothing here touches the tensor machinery: coefficients are plain lists of
Fractions and the tables come from textbook recurrences.  They serve as
oracles for the checks and tests.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial


# -- combinatorial numbers ---------------------------------------------------------

@lru_cache(maxsize=None)
def stirling2(n, k):
    """Stirling numbers of the second kind ``S(n, k)``."""
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def stirling1(n, k):
    """Signed Stirling numbers of the first kind ``s(n, k)``."""
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return stirling1(n - 1, k - 1) - (n - 1) * stirling1(n - 1, k)


@lru_cache(maxsize=None)
@lru_cache(maxsize=None)
def bernoulli_number(n):
    """``B_n`` with ``B_1 = -1/2``, from ``Σ_{k ≤ n} C(n+1, k) B_k = 0``."""
    if n == 0:
        return Fraction(1)
    return -sum(comb(n + 1, k) * bernoulli_number(k) for k in range(n)) / (n + 1)


def bernoulli_poly(n):
    """Coefficients (ascending in ``z``) of ``B_n(z) = Σ C(n,k) B_{n-k} z^k``."""
    return [comb(n, k) * bernoulli_number(n - k) for k in range(n + 1)]


def hermite_poly(n):
    """Probabilists' Hermite ``He_n``: ``He_{n+1} = z He_n - n He_{n-1}``."""
    prev, cur = [Fraction(1)], [Fraction(0), Fraction(1)]
    if n == 0:
        return prev
    for j in range(1, n):
        nxt = [Fraction(0)] + cur
        for d, c in enumerate(prev):
            nxt[d] -= j * c
        prev, cur = cur, nxt
    return cur


def catalan(n):
    return comb(2 * n, n) // (n + 1)


# -- one-dimensional power series --------------------------------------------------

def ps_mul(a, b, K):
    out = [Fraction(0)] * (K + 1)
    for i, x in enumerate(a[:K + 1]):
        if x:
            for j, y in enumerate(b[:K + 1 - i]):
                out[i + j] += x * y
    return out


def ps_pow(a, n, K):
    out = [Fraction(1)] + [Fraction(0)] * K
    for _ in range(n):
        out = ps_mul(out, a, K)
    return out


def ps_exp(a, K):
    """``exp(a)`` for ``a(0) = 0`` via ``E' = a' E``."""
    e = [Fraction(1)] + [Fraction(0)] * K
    for n in range(1, K + 1):
        e[n] = sum(k * Fraction(a[k]) * e[n - k] for k in range(1, n + 1)) / n
    return e


def lagrange_inverse(b, K):
    """Compositional inverse of ``b = ξ + …`` by Lagrange inversion.

    ``[x^n] b^{-1} = (1/n) [ξ^{n-1}] (ξ / b(ξ))^n``.
    """
    q = [Fraction(x) for x in b[1:K + 1]] + [Fraction(0)]
    # ξ / b(ξ) = 1 / q(ξ) with q = b / ξ
    inv = [Fraction(0)] * (K + 1)
    inv[0] = 1 / q[0]
    for n in range(1, K + 1):
        inv[n] = -sum(q[j] * inv[n - j] for j in range(1, n + 1)) / q[0]
    out = [Fraction(0)] * (K + 1)
    for n in range(1, K + 1):
        out[n] = ps_pow(inv, n, K)[n - 1] / n
    return out


def sheffer_table(a, b, K):
    """``P[i][k]`` = coefficient of ``z^i`` in ``p_k(z)`` where
    ``Σ_k p_k(z) ξ^k / k! = A(ξ) exp(z B(ξ))``."""
    table = [[Fraction(0)] * (K + 1) for _ in range(K + 1)]
    for i in range(K + 1):
        row = ps_mul(ps_pow(b, i, K), a, K)
        for k in range(K + 1):
            table[i][k] = row[k] * Fraction(factorial(k), factorial(i))
    return table


def classical_pair(name, K):
    """1D coefficient lists ``(A, B)`` of a catalog entry, from closed forms."""
    exp_series = [Fraction(1, factorial(n)) for n in range(K + 1)]
    xi = [Fraction(0), Fraction(1)] + [Fraction(0)] * (K - 1)
    one = [Fraction(1)] + [Fraction(0)] * K
    if name == "identity":
        return one, xi
    if name == "hermite":
        return ps_exp([0, 0, Fraction(-1, 2)] + [0] * (K - 2), K), xi
    if name == "bernoulli":
        return [bernoulli_number(n) / factorial(n) for n in range(K + 1)], xi
    if name == "touchard":
        return one, [Fraction(0)] + exp_series[1:]
    if name == "falling_factorial":
        return one, [Fraction(0)] + [Fraction((-1) ** (n + 1), n) for n in range(1, K + 1)]
    if name == "pascal":
        return [Fraction(1)] * (K + 1), [Fraction(0)] + [Fraction(1)] * K
    raise KeyError(name)


def classical_table(name, K):
    """Reference matrix ``P[i][k]`` from the closed-form sequences."""
    if name == "hermite":
        cols = [hermite_poly(k) for k in range(K + 1)]
    elif name == "bernoulli":
        cols = [bernoulli_poly(k) for k in range(K + 1)]
    elif name == "touchard":
        cols = [[stirling2(k, i) for i in range(k + 1)] for k in range(K + 1)]
    elif name == "falling_factorial":
        cols = [[stirling1(k, i) for i in range(k + 1)] for k in range(K + 1)]
    elif name == "pascal":
        # Laguerre-type: p_k(z) = Σ_i C(k, i) k!/i! z^i
        cols = [[comb(k, i) * Fraction(factorial(k), factorial(i)) for i in range(k + 1)]
                for k in range(K + 1)]
    elif name == "identity":
        cols = [[int(i == k) for i in range(k + 1)] for k in range(K + 1)]
    else:
        raise KeyError(name)
    return [[Fraction(cols[k][i]) if i <= k else Fraction(0) for k in range(K + 1)]
            for i in range(K + 1)]


# -- symmetric tensors through words -----------------------------------------------

def words(dim, k):
    return list(itertools.product(range(dim), repeat=k))


def content(word, dim):
    m = [0] * dim
    for j in word:
        m[j] += 1
    return tuple(m)


def sym_product_via_words(f, g, dim):
    """Product of symmetric tensors ``{m: c}`` via full tensors.

    Each ``e_m`` is embedded as the average of the words with content ``m``;
    the tensor product is symmetrized and read back at one representative
    word per content, rescaled by the number of such words.
    """
    def embed(t):
        full = {}
        for m, c in t.items():
            k = sum(m)
            ws = [w for w in words(dim, k) if content(w, dim) == m]
            for w in ws:
                full[w] = full.get(w, 0) + Fraction(c) / len(ws)
        return full

    ff, gg = embed(f), embed(g)
    prod = {}
    for u, x in ff.items():
        for v, y in gg.items():
            prod[u + v] = prod.get(u + v, 0) + x * y
    out = {}
    for w, c in prod.items():
        m = content(w, dim)
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}
