"""Sparse multivariate polynomial kernel.

A polynomial is a ``dict`` mapping exponent tuples to nonzero scalars.
Truncation is always with respect to the total degree of the first
``nx`` exponents (the "x" variables); any trailing exponents are carried
along untouched.  Everything here is ring-agnostic.
"""

from __future__ import annotations

from math import factorial


def xdeg(key, nx):
    return sum(key[:nx])


def clean(p):
    return {k: c for k, c in p.items() if c}


def add_into(acc, p, scale=None):
    """``acc += scale * p`` in place (``scale`` omitted means 1)."""
    for k, c in p.items():
        v = c if scale is None else c * scale
        if k in acc:
            s = acc[k] + v
            if s:
                acc[k] = s
            else:
                del acc[k]
        elif v:
            acc[k] = v
    return acc


def padd(p, q):
    return add_into(dict(p), q)


def psub(p, q):
    return add_into(dict(p), q, -1)


def pscale(p, c):
    if not c:
        return {}
    return clean({k: v * c for k, v in p.items()})


def pmul(p, q, nx, order):
    """Product truncated at x-degree ``order``."""
    if not p or not q:
        return {}
    qs = sorted(((xdeg(k, nx), k, c) for k, c in q.items()), key=lambda t: t[0])
    out = {}
    for ka, ca in p.items():
        da = xdeg(ka, nx)
        room = order - da
        if room < 0:
            continue
        for db, kb, cb in qs:
            if db > room:
                break
            key = tuple(a + b for a, b in zip(ka, kb))
            v = ca * cb
            if key in out:
                out[key] = out[key] + v
            else:
                out[key] = v
    return clean(out)


def truncate(p, nx, order):
    return {k: c for k, c in p.items() if xdeg(k, nx) <= order}


def pderiv(p, var):
    """Partial derivative with respect to variable index ``var``."""
    out = {}
    for k, c in p.items():
        e = k[var]
        if e:
            key = k[:var] + (e - 1,) + k[var + 1:]
            out[key] = c * e
    return clean(out)


def pmap(p, fn):
    return clean({k: fn(c) for k, c in p.items()})


def multinomial(m):
    """``|m|! / prod(m_j!)``."""
    out = factorial(sum(m))
    for e in m:
        out //= factorial(e)
    return out


def falling(n, k):
    """Pochhammer symbol ``(n)_k = n (n-1) ... (n-k+1)``."""
    out = 1
    for j in range(k):
        out *= n - j
    return out


class PowerCache:
    """Memoized products ``prod_j base_j ** m_j`` with truncation.

    ``bases`` are polynomials in the x variables (the substitution values);
    results are built incrementally, one factor at a time.
    """

    def __init__(self, bases, nx, order, one_key):
        self.bases = bases
        self.nx = nx
        self.order = order
        self.cache = {tuple(0 for _ in bases): {one_key: 1}}

    def get(self, m):
        hit = self.cache.get(m)
        if hit is not None:
            return hit
        j = next(i for i, e in enumerate(m) if e)
        prev = m[:j] + (m[j] - 1,) + m[j + 1:]
        val = pmul(self.get(prev), self.bases[j], self.nx, self.order)
        self.cache[m] = val
        return val


def pmul_degree(p, q, nx, k):
    """Only the x-degree-``k`` part of ``p * q``."""
    if not p or not q:
        return {}
    by_deg = {}
    for key, c in q.items():
        by_deg.setdefault(xdeg(key, nx), []).append((key, c))
    out = {}
    for ka, ca in p.items():
        for kb, cb in by_deg.get(k - xdeg(ka, nx), ()):
            key = tuple(a + b for a, b in zip(ka, kb))
            v = ca * cb
            out[key] = out[key] + v if key in out else v
    return clean(out)
