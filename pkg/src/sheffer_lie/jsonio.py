"""JSON encoding of every value type.

Scalars are strings ``"p/q"`` in lowest terms (never floats); coefficients
of time curves are ``{"t_poly": ["p/q", ...]}``.  Encoders return plain
``dict``/``list`` trees; :func:`dumps` renders them deterministically.
"""

from __future__ import annotations

import json

from .errors import ContextMismatch, DomainError
from .groups import AlgebraPair, F0Element, F1Element, SPair, TimeCurve
from .opmatrix import NilMatrix, OpMatrix, PolyOnDual
from .scalars import format_scalar, parse_scalar
from .series import TensorSeries
from .sheffer import RiordanOp, ShefferOp
from .symtensor import BlockOp, Context, DualVector, SymTensor
from .tpoly import TPoly


class FormatError(ValueError):
    """A JSON document does not follow the expected schema."""


def dumps(doc):
    """Indented JSON with lists of plain values kept on one line."""
    return _render(doc, 0) + "\n"


def _render(x, depth):
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(x, dict) and x:
        items = [f"{inner}{json.dumps(k)}: {_render(v, depth + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, list) and any(isinstance(v, (dict, list)) for v in x):
        items = [inner + _render(v, depth + 1) for v in x]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(x, ensure_ascii=False, separators=(", ", ": "))


# -- scalars ---------------------------------------------------------------------

def enc_scalar(c):
    if isinstance(c, TPoly):
        return {"t_poly": [format_scalar(x) for x in c.coeffs]}
    return format_scalar(c)


def dec_scalar(obj, ctx):
    try:
        if isinstance(obj, dict):
            if set(obj) != {"t_poly"} or not isinstance(obj["t_poly"], list):
                raise FormatError(f"bad t-polynomial {obj!r}")
            return TPoly(parse_scalar(x, ctx.ring) for x in obj["t_poly"])
        return parse_scalar(obj, ctx.ring)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# -- symmetric tensors and blocks --------------------------------------------------

def enc_symtensor(f):
    return {"degree": f.degree,
            "terms": [{"m": list(m), "c": enc_scalar(c)} for m, c in sorted(f.coeffs.items())]}


def dec_symtensor(obj, ctx):
    _need(obj, "degree", "terms")
    coeffs = {}
    for t in obj["terms"]:
        _need(t, "m", "c")
        coeffs[_mi(t["m"], ctx)] = dec_scalar(t["c"], ctx)
    return SymTensor(ctx, _int(obj["degree"]), coeffs)


def enc_blockop(b):
    return {"src": b.src, "dst": b.dst, "rows": [[enc_scalar(c) for c in row] for row in b.entries]}


def dec_blockop(obj, ctx):
    _need(obj, "src", "dst", "rows")
    rows = [[dec_scalar(c, ctx) for c in row] for row in obj["rows"]]
    src, dst = _int(obj["src"]), _int(obj["dst"])
    if len(rows) != ctx.size(dst) or any(len(r) != ctx.size(src) for r in rows):
        raise FormatError(f"block {src}->{dst} has the wrong shape for dim {ctx.dim}")
    return BlockOp(ctx, src, dst, rows)


def enc_dual(w):
    return {"kind": "dual", "components": [enc_scalar(c) for c in w.components]}


def dec_dual(obj, ctx):
    _need(obj, "components")
    return DualVector(ctx, [dec_scalar(c, ctx) for c in obj["components"]])


# -- series and group elements ------------------------------------------------------

def _ctx_fields(ctx):
    out = {"order": ctx.order, "dim": ctx.dim}
    if ctx.ring != "rational":
        out["ring"] = ctx.ring
    return out


def enc_series(s):
    ctx = s.ctx
    N = ctx.dim
    doc = {"target_degree": s.target_degree, **_ctx_fields(ctx), "start_degree": s.start_degree}
    grouped = {}
    for key, c in s.terms.items():
        grouped.setdefault(key[:N], {})[key[N:]] = c
    terms = []
    for xm in sorted(grouped, key=lambda m: (sum(m), m)):
        vals = grouped[xm]
        if s.target_degree == 0:
            value = enc_scalar(vals[(0,) * N])
        else:
            value = enc_symtensor(SymTensor(ctx, s.target_degree, vals))
        terms.append({"m": list(xm), "value": value})
    doc["terms"] = terms
    return doc


def context_of(obj, default=None):
    """The context described by a document's ``dim``/``order``/``ring`` keys."""
    if "dim" in obj and "order" in obj:
        ring = obj.get("ring", default.ring if default else "rational")
        try:
            ctx = Context(_int(obj["dim"]), _int(obj["order"]), ring)
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
        if default is not None and ctx != default:
            raise ContextMismatch(f"document context {ctx} differs from {default}")
        return ctx
    if default is None:
        raise FormatError("document does not specify dim and order")
    return default


def dec_series(obj, ctx=None):
    _need(obj, "target_degree", "terms")
    ctx = context_of(obj, ctx)
    i = _int(obj["target_degree"])
    N = ctx.dim
    terms = {}
    for t in obj["terms"]:
        _need(t, "m", "value")
        xm = _mi(t["m"], ctx)
        if i == 0:
            terms[xm + (0,) * N] = dec_scalar(t["value"], ctx)
        else:
            f = dec_symtensor(t["value"], ctx)
            if f.degree != i:
                raise FormatError(f"term value has degree {f.degree}, expected {i}")
            for em, c in f.coeffs.items():
                terms[xm + em] = c
    return TensorSeries(ctx, i, terms, _int(obj.get("start_degree", 0)))


def encode(x):
    """Encode any supported value to a JSON tree."""
    if isinstance(x, F0Element):
        return {"kind": "f0", "series": enc_series(x.series)}
    if isinstance(x, F1Element):
        return {"kind": "f1", "series": enc_series(x.series)}
    if isinstance(x, SPair):
        return {"kind": "spair", "a": enc_series(x.a.series), "b": enc_series(x.b.series)}
    if isinstance(x, AlgebraPair):
        return {"kind": "algebra_pair", "alpha": enc_series(x.alpha), "beta": enc_series(x.beta)}
    if isinstance(x, TimeCurve):
        return {"kind": "curve", "of": encode(x.value)}
    if isinstance(x, TensorSeries):
        return {"kind": "series", **enc_series(x)}
    if isinstance(x, OpMatrix):
        return enc_matrix(x)
    if isinstance(x, NilMatrix):
        return enc_matrix(x)
    if isinstance(x, ShefferOp):
        return {"kind": "sheffer", "pair": encode(x.pair), "matrix": enc_matrix(x.matrix)}
    if isinstance(x, RiordanOp):
        return {"kind": "riordan", "matrix": enc_matrix(x.matrix)}
    if isinstance(x, PolyOnDual):
        return {"kind": "poly_on_dual", **_ctx_fields(x.ctx),
                "components": [enc_symtensor(f) for f in x.components]}
    if isinstance(x, SymTensor):
        return enc_symtensor(x)
    if isinstance(x, BlockOp):
        return enc_blockop(x)
    if isinstance(x, DualVector):
        return enc_dual(x)
    raise TypeError(f"cannot encode {type(x).__name__}")


def enc_matrix(M):
    ctx = M.ctx
    doc = {"kind": "opmatrix" if isinstance(M, OpMatrix) else "nilmatrix", **_ctx_fields(ctx)}
    if isinstance(M, OpMatrix):
        doc["unipotent"] = M.unipotent
    doc["blocks"] = [{"i": i, "k": k, "op": enc_blockop(b)}
                     for (i, k), b in sorted(M.blocks().items(), key=lambda t: (t[0][1], t[0][0]))]
    return doc


def dec_matrix(obj, ctx=None):
    _need(obj, "kind", "blocks")
    ctx = context_of(obj, ctx)
    blocks = {}
    for b in obj["blocks"]:
        _need(b, "i", "k", "op")
        op = dec_blockop(b["op"], ctx)
        i, k = _int(b["i"]), _int(b["k"])
        if (op.dst, op.src) != (i, k):
            raise FormatError(f"block at ({i}, {k}) maps {op.src}->{op.dst}")
        if k > ctx.order:
            raise FormatError(f"block ({i}, {k}) exceeds order {ctx.order}")
        blocks[i, k] = op
    if obj["kind"] == "opmatrix":
        unipotent = obj.get("unipotent", True)
        if not isinstance(unipotent, bool):
            raise FormatError("unipotent must be a boolean")
        return OpMatrix.from_blocks(ctx, blocks, unipotent)
    return NilMatrix.from_blocks(ctx, blocks)


def decode(obj, ctx=None):
    """Decode a document produced by :func:`encode`.

    ``ctx`` (if given) must agree with any context recorded in the document.
    """
    if not isinstance(obj, dict):
        raise FormatError("expected a JSON object")
    kind = obj.get("kind")
    if kind == "f0":
        _need(obj, "series")
        return F0Element(dec_series(obj["series"], ctx))
    if kind == "f1":
        _need(obj, "series")
        return F1Element(dec_series(obj["series"], ctx))
    if kind == "spair":
        _need(obj, "a", "b")
        return SPair(dec_series(obj["a"], ctx), dec_series(obj["b"], ctx))
    if kind == "algebra_pair":
        _need(obj, "alpha", "beta")
        return AlgebraPair(dec_series(obj["alpha"], ctx), dec_series(obj["beta"], ctx))
    if kind == "curve":
        _need(obj, "of")
        return TimeCurve(decode(obj["of"], ctx))
    if kind == "series" or (kind is None and "target_degree" in obj):
        return dec_series(obj, ctx)
    if kind in ("opmatrix", "nilmatrix"):
        return dec_matrix(obj, ctx)
    if kind == "sheffer":
        _need(obj, "pair", "matrix")
        pair = decode(obj["pair"], ctx)
        op = ShefferOp(pair, dec_matrix(obj["matrix"], pair.ctx))
        if not op.consistent():
            raise DomainError("the matrix does not match the pair")
        return op
    if kind == "riordan":
        _need(obj, "matrix")
        return RiordanOp(dec_matrix(obj["matrix"], ctx))
    if kind == "poly_on_dual" or (kind is None and "components" in obj and "order" in obj):
        c = context_of(obj, ctx)
        return PolyOnDual(c, [dec_symtensor(f, c) for f in obj["components"]])
    if kind == "dual":
        if ctx is None:
            raise FormatError("a dual vector needs a context")
        return dec_dual(obj, ctx)
    raise FormatError(f"unknown document kind {kind!r}")


def loads(text, ctx=None):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from exc
    return decode(obj, ctx)


# -- helpers -------------------------------------------------------------------

def _need(obj, *keys):
    if not isinstance(obj, dict):
        raise FormatError(f"expected an object with keys {keys}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"missing keys {missing}")


def _int(x):
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"expected an integer, got {x!r}")
    return x


def _mi(m, ctx):
    if not isinstance(m, list) or len(m) != ctx.dim or not all(
            isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in m):
        raise FormatError(f"bad multi-index {m!r} for dim {ctx.dim}")
    return tuple(m)
