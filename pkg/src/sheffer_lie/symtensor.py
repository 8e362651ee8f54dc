"""Symmetric tensor algebra over ``F^N``.

Basis conventions
-----------------
``e_m`` (``m`` a multi-index of degree ``k``) denotes the symmetric product
``e_1^m_1 ... e_N^m_N`` in the ``k``-th symmetric power.  It is normalized
so that ``e_m ⊙ e_m' = e_(m+m')`` and ``<w^k, e_m> = w^m``; a symmetric
tensor is therefore the same thing as a homogeneous polynomial in the
``e`` variables, and the symmetric product is polynomial multiplication.

Operators between symmetric powers are stored as dense matrices
(:class:`BlockOp`).  The equivalent *polynomial map* of ``C: Φ^⊙k → Φ^⊙i``
is ``m ↦`` coefficient of ``x^m`` in ``C ξ^⊗k``; the two views are related
by ``C e_m = P(m) / multinomial(k; m)``.  That conversion is the only place
multinomial coefficients appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .errors import ContextMismatch, DegreeError
from .poly import add_into, multinomial
from .scalars import RINGS, coerce, exact_div


@dataclass(frozen=True)
class Context:
    """Dimension ``dim`` of Φ, truncation order ``order`` and scalar ring."""

    dim: int
    order: int
    ring: str = "rational"

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        if not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"order must be a positive integer, got {self.order!r}")
        if self.ring not in RINGS:
            raise ValueError(f"unknown ring {self.ring!r}")

    def scalar(self, c):
        return coerce(c, self.ring)

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    def with_order(self, order):
        return Context(self.dim, order, self.ring)

    def basis(self, k):
        return multiindices(self.dim, k)

    def basis_index(self, k):
        return _index(self.dim, k)

    def size(self, k):
        return comb(self.dim + k - 1, k)

    def offset(self, k):
        """Start of degree ``k`` in the graded basis of degrees ``0..order``."""
        return comb(self.dim + k - 1, k - 1) if k else 0

    @property
    def total_size(self):
        return comb(self.dim + self.order, self.order)

    def unit(self, j):
        """Multi-index of ``e_j``."""
        return tuple(1 if i == j else 0 for i in range(self.dim))


def check_same(*objs):
    """Raise :class:`ContextMismatch` unless all ``ctx`` attributes agree."""
    ctx = objs[0].ctx
    for o in objs[1:]:
        if o.ctx != ctx:
            raise ContextMismatch(f"{ctx} vs {o.ctx}")
    return ctx


@lru_cache(maxsize=None)
def multiindices(dim, k):
    if k < 0:
        raise DegreeError("negative degree")
    if dim == 1:
        return ((k,),)
    out = []
    for first in range(k + 1):
        for rest in multiindices(dim - 1, k - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _index(dim, k):
    return {m: n for n, m in enumerate(multiindices(dim, k))}


def enumerate_multiindices(ctx, k):
    """All ``N``-tuples of naturals summing to ``k``, lexicographically."""
    return list(ctx.basis(k))


def _madd(a, b):
    return tuple(x + y for x, y in zip(a, b))


class SymTensor:
    """Element of the ``degree``-th symmetric power, as a sparse map."""

    __slots__ = ("ctx", "degree", "coeffs")

    def __init__(self, ctx, degree, coeffs=None):
        clean = {}
        for m, c in (coeffs or {}).items():
            m = tuple(m)
            if len(m) != ctx.dim or sum(m) != degree or min(m) < 0:
                raise DegreeError(f"multi-index {m} does not have degree {degree}")
            if c:
                clean[m] = c
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SymTensor is immutable")

    @classmethod
    def scalar(cls, ctx, c):
        return cls(ctx, 0, {(0,) * ctx.dim: ctx.scalar(c)})

    @classmethod
    def basis_vector(cls, ctx, m):
        return cls(ctx, sum(m), {tuple(m): ctx.one})

    @property
    def value(self):
        """The scalar held by a degree-0 tensor."""
        if self.degree:
            raise DegreeError("only degree-0 tensors are scalars")
        return self.coeffs.get((0,) * self.ctx.dim, self.ctx.zero)

    def __getitem__(self, m):
        return self.coeffs.get(tuple(m), self.ctx.zero)

    def _check(self, other):
        check_same(self, other)
        if other.degree != self.degree:
            raise DegreeError(f"degree {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._check(other)
        return SymTensor(self.ctx, self.degree, add_into(dict(self.coeffs), other.coeffs))

    def __sub__(self, other):
        self._check(other)
        return SymTensor(self.ctx, self.degree, add_into(dict(self.coeffs), other.coeffs, -1))

    def __neg__(self):
        return SymTensor(self.ctx, self.degree, {m: -c for m, c in self.coeffs.items()})

    def __mul__(self, c):
        return SymTensor(self.ctx, self.degree, {m: v * c for m, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, SymTensor):
            return NotImplemented
        return (self.ctx == other.ctx and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx, self.degree, frozenset(self.coeffs.items())))

    def vector(self):
        """Dense coordinates in the lexicographic basis."""
        return [self[m] for m in self.ctx.basis(self.degree)]

    def __repr__(self):
        terms = ", ".join(f"{m}: {c}" for m, c in sorted(self.coeffs.items()))
        return f"SymTensor(deg={self.degree}, {{{terms}}})"


def sym_product(f, g):
    """``f ⊙ g``: convolution of coefficient maps."""
    ctx = check_same(f, g)
    out = {}
    for m1, c1 in f.coeffs.items():
        for m2, c2 in g.coeffs.items():
            add_into(out, {_madd(m1, m2): c1 * c2})
    return SymTensor(ctx, f.degree + g.degree, out)


class DualVector:
    """Coordinates ``(w_1, ..., w_N)`` of a functional on Φ."""

    __slots__ = ("ctx", "components")

    def __init__(self, ctx, components):
        comps = tuple(ctx.scalar(c) for c in components)
        if len(comps) != ctx.dim:
            raise DegreeError(f"expected {ctx.dim} components, got {len(comps)}")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("DualVector is immutable")

    def __eq__(self, other):
        return (isinstance(other, DualVector) and self.ctx == other.ctx
                and self.components == other.components)

    def __hash__(self):
        return hash((self.ctx, self.components))

    def __repr__(self):
        return f"DualVector({[str(c) for c in self.components]})"


def monomial_value(w, m):
    out = 1
    for wj, e in zip(w, m):
        if e:
            out = out * wj ** e
    return out


def pairing(omega, f):
    """``<ω^⊗k, f> = Σ_m f(m) w^m``."""
    check_same(omega, f)
    acc = omega.ctx.zero
    for m, c in f.coeffs.items():
        acc = acc + c * monomial_value(omega.components, m)
    return acc


def _frozen(arr):
    arr.flags.writeable = False
    return arr


class BlockOp:
    """Dense matrix of a linear map ``Φ^⊙src → Φ^⊙dst``.

    Rows are indexed by degree-``dst`` multi-indices, columns by
    degree-``src`` multi-indices, both in lexicographic order.
    """

    __slots__ = ("ctx", "src", "dst", "entries")

    def __init__(self, ctx, src, dst, entries):
        arr = np.array(entries, dtype=object)
        shape = (ctx.size(dst), ctx.size(src))
        if arr.shape != shape:
            try:
                arr = arr.reshape(shape)
            except ValueError:
                raise DegreeError(f"block {src}->{dst} needs shape {shape}, got {arr.shape}") from None
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "entries", _frozen(arr))

    def __setattr__(self, name, value):
        raise AttributeError("BlockOp is immutable")

    @classmethod
    def zero(cls, ctx, src, dst):
        arr = np.empty((ctx.size(dst), ctx.size(src)), dtype=object)
        arr.fill(ctx.zero)
        return cls(ctx, src, dst, arr)

    @classmethod
    def identity(cls, ctx, k):
        return _identity(ctx, k)

    @classmethod
    def scalar(cls, ctx, c):
        """The ``1 x 1`` block ``Φ^⊙0 → Φ^⊙0``."""
        return cls(ctx, 0, 0, [[ctx.scalar(c)]])

    @property
    def shape(self):
        return self.entries.shape

    def _check(self, other):
        check_same(self, other)
        if (self.src, self.dst) != (other.src, other.dst):
            raise DegreeError(f"block {self.src}->{self.dst} vs {other.src}->{other.dst}")

    def __add__(self, other):
        self._check(other)
        return BlockOp(self.ctx, self.src, self.dst, self.entries + other.entries)

    def __sub__(self, other):
        self._check(other)
        return BlockOp(self.ctx, self.src, self.dst, self.entries - other.entries)

    def __neg__(self):
        return BlockOp(self.ctx, self.src, self.dst, -self.entries)

    def __mul__(self, c):
        if isinstance(c, BlockOp):
            return NotImplemented
        return BlockOp(self.ctx, self.src, self.dst, self.entries * c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        """Composition ``self ∘ other``."""
        check_same(self, other)
        if other.dst != self.src:
            raise DegreeError(f"cannot compose {self.src}->{self.dst} after {other.src}->{other.dst}")
        return BlockOp(self.ctx, other.src, self.dst, self.entries.dot(other.entries))

    def __call__(self, f):
        """Apply to a :class:`SymTensor` of degree ``src``."""
        check_same(self, f)
        if f.degree != self.src:
            raise DegreeError(f"block expects degree {self.src}, got {f.degree}")
        col = self.entries.dot(np.array(f.vector(), dtype=object))
        return SymTensor(self.ctx, self.dst, dict(zip(self.ctx.basis(self.dst), col)))

    def column(self, m):
        n = self.ctx.basis_index(self.src)[tuple(m)]
        return SymTensor(self.ctx, self.dst, dict(zip(self.ctx.basis(self.dst), self.entries[:, n])))

    def map(self, fn):
        arr = np.empty(self.shape, dtype=object)
        for idx, c in np.ndenumerate(self.entries):
            arr[idx] = fn(c)
        return BlockOp(self.ctx, self.src, self.dst, arr)

    def __bool__(self):
        return any(bool(c) for c in self.entries.flat)

    def __eq__(self, other):
        if not isinstance(other, BlockOp):
            return NotImplemented
        return (self.ctx == other.ctx and self.src == other.src and self.dst == other.dst
                and all(a == b for a, b in zip(self.entries.flat, other.entries.flat)))

    def __hash__(self):
        return hash((self.ctx, self.src, self.dst, tuple(self.entries.flat)))

    def rows(self):
        return [list(r) for r in self.entries]

    def __repr__(self):
        rows = "; ".join(" ".join(str(c) for c in r) for r in self.entries)
        return f"BlockOp({self.src}->{self.dst}: [{rows}])"


@lru_cache(maxsize=None)
def _identity(ctx, k):
    n = ctx.size(k)
    arr = np.empty((n, n), dtype=object)
    arr.fill(ctx.zero)
    for j in range(n):
        arr[j, j] = ctx.one
    return BlockOp(ctx, k, k, arr)


def identity_op(ctx, k):
    """``1_k``."""
    return _identity(ctx, k)


# -- polynomial maps --------------------------------------------------------

def block_to_poly(C):
    """Flat polynomial ``Σ_m x^m e^{m'} coeff`` of ``C ξ^⊗k``.

    Keys are ``xm + em`` (length ``2N``); this is the raw form used by the
    series kernels.
    """
    ctx = C.ctx
    out = {}
    rows = ctx.basis(C.dst)
    for n, m in enumerate(ctx.basis(C.src)):
        mult = multinomial(m)
        for r, em in enumerate(rows):
            c = C.entries[r, n]
            if c:
                out[m + em] = c * mult
    return out


def block_from_poly(ctx, src, dst, poly):
    """Inverse of :func:`block_to_poly`.

    ``poly`` must be homogeneous of x-degree ``src`` and e-degree ``dst``.
    """
    N = ctx.dim
    col = ctx.basis_index(src)
    row = ctx.basis_index(dst)
    arr = np.empty((ctx.size(dst), ctx.size(src)), dtype=object)
    arr.fill(ctx.zero)
    for key, c in poly.items():
        xm, em = key[:N], key[N:]
        if xm not in col or em not in row:
            raise DegreeError(f"term {key} does not map degree {src} to degree {dst}")
        arr[row[em], col[xm]] = exact_div(c, multinomial(xm))
    return BlockOp(ctx, src, dst, arr)


def op_to_polymap(C):
    """``m ↦`` coefficient of ``x^m`` in ``C ξ^⊗k`` (a SymTensor)."""
    ctx = C.ctx
    N = ctx.dim
    grouped = {m: {} for m in ctx.basis(C.src)}
    for key, c in block_to_poly(C).items():
        grouped[key[:N]][key[N:]] = c
    return {m: SymTensor(ctx, C.dst, d) for m, d in grouped.items()}


def op_from_polymap(ctx, k, i, P):
    """Build the ``k → i`` block from a polynomial map ``P``."""
    poly = {}
    for m, f in P.items():
        m = tuple(m)
        if sum(m) != k or len(m) != ctx.dim:
            raise DegreeError(f"multi-index {m} does not have degree {k}")
        if f.degree != i:
            raise DegreeError(f"value at {m} has degree {f.degree}, expected {i}")
        for em, c in f.coeffs.items():
            poly[m + em] = c
    return block_from_poly(ctx, k, i, poly)


def op_sym_product(A, B):
    """``A ⊙ B``, characterized by ``(A⊙B) ξ^⊗(a+b) = Aξ^⊗a ⊙ Bξ^⊗b``."""
    ctx = check_same(A, B)
    pa, pb = block_to_poly(A), block_to_poly(B)
    out = {}
    for ka, ca in pa.items():
        for kb, cb in pb.items():
            add_into(out, {_madd(ka, kb): ca * cb})
    return block_from_poly(ctx, A.src + B.src, A.dst + B.dst, out)


def functional(ctx, sigma):
    """The block ``Φ → F`` given by ``ξ ↦ Σ σ_j ξ_j``."""
    row = [ctx.zero] * ctx.dim
    for j, s in enumerate(sigma):
        row[ctx.basis_index(1)[ctx.unit(j)]] = ctx.scalar(s)
    return BlockOp(ctx, 1, 0, [row])


def vector_block(ctx, xi):
    """The block ``F → Φ`` sending 1 to the vector ``ξ``."""
    col = [[ctx.zero] for _ in range(ctx.dim)]
    for j, s in enumerate(xi):
        col[ctx.basis_index(1)[ctx.unit(j)]] = [ctx.scalar(s)]
    return BlockOp(ctx, 0, 1, col)
