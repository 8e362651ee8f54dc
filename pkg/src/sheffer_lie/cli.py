"""Command-line front end.

Operands are catalog names, inline JSON or ``@path`` references.  Output is
deterministic JSON (or an aligned table with ``--format table``).  Exit
codes: 0 success, 1 usage or malformed input, 2 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks
from .errors import DomainError
from .groups import (AlgebraPair, F0Element, F1Element, SPair, TimeCurve, f0_evolve, f0_exp,
                     f0_inverse, f0_log, f0_mul, f1_bracket, f1_evolve, f1_exp, f1_inverse,
                     f1_log, f1_mul, s_bracket, s_evolve, s_exp, s_log)
from .jsonio import FormatError, decode, dumps, encode
from .opmatrix import (NilMatrix, OpMatrix, commutator, nil_exp, opmat_evolve, opmat_inverse,
                       opmat_log, opmat_mul)
from .scalars import RINGS, GaussianRational, format_scalar
from .series import TensorSeries
from .sheffer import (RiordanOp, ShefferOp, catalog, is_appell, is_sheffer, is_umbral,
                      riordan_transform, sequence_poly, sheffer_build, sheffer_factor,
                      sheffer_inverse, sheffer_mul)
from .symtensor import Context

COMMANDS = ("build", "mul", "inverse", "exp", "log", "bracket", "evolve", "factor",
            "membership", "riordan", "sequence", "check")
ARITY = {"mul": 2, "bracket": 2, "check": 1}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def make_parser():
    common = _Parser(add_help=False)
    common.add_argument("--dim", type=int, default=1, help="dimension N of Φ")
    common.add_argument("--order", type=int, default=6, help="truncation order K")
    common.add_argument("--ring", choices=RINGS, default="rational")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for check suites")
    common.add_argument("--instances", type=int, default=None, help="instances per property")
    common.add_argument("--transpose", action="store_true",
                        help="riordan: print lower-triangular rows")
    common.add_argument("--n", type=int, default=None, help="sequence: polynomial degree")
    parser = _Parser(prog="sheffer-lie",
                     description="Exact truncated Sheffer and Riordan group computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "check":
            p.add_argument("suite", choices=checks.SUITES + ("all",))
        else:
            p.add_argument("operands", nargs=ARITY.get(name, 1))
    return parser


# -- operands ------------------------------------------------------------------------

def load_operand(text, ctx):
    """A catalog name, inline JSON document or ``@path``."""
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise FormatError(f"cannot read {text[1:]}: {exc}") from exc
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise FormatError(f"malformed JSON: {exc}") from exc
        return decode(obj, ctx)
    if stripped.startswith(("[", '"')):
        raise FormatError("operand must be a JSON object or a catalog name")
    return catalog(stripped, ctx)


def _matrix(x):
    if isinstance(x, SPair):
        return sheffer_build(x).matrix
    if isinstance(x, (ShefferOp, RiordanOp)):
        return x.matrix
    if isinstance(x, OpMatrix):
        return x
    raise DomainError(f"expected an operator, got {type(x).__name__}")


def _sheffer(x):
    if isinstance(x, SPair):
        return sheffer_build(x)
    if isinstance(x, ShefferOp):
        return x
    raise DomainError(f"expected a Sheffer pair, got {type(x).__name__}")


def _kind(x):
    return type(x).__name__


# -- commands ----------------------------------------------------------------------

def cmd_build(x):
    return _sheffer(x)


def cmd_mul(x, y):
    if isinstance(x, (SPair, ShefferOp)) and isinstance(y, (SPair, ShefferOp)):
        return sheffer_mul(_sheffer(x), _sheffer(y))
    if isinstance(x, F0Element) and isinstance(y, F0Element):
        return f0_mul(x, y)
    if isinstance(x, F1Element) and isinstance(y, F1Element):
        return f1_mul(x, y)
    if isinstance(x, RiordanOp) and isinstance(y, RiordanOp):
        return RiordanOp(opmat_mul(x.matrix, y.matrix))
    if isinstance(x, OpMatrix) and isinstance(y, OpMatrix):
        return opmat_mul(x, y)
    raise DomainError(f"cannot multiply {_kind(x)} by {_kind(y)}")


def cmd_inverse(x):
    if isinstance(x, (SPair, ShefferOp)):
        return sheffer_inverse(_sheffer(x))
    if isinstance(x, F0Element):
        return f0_inverse(x)
    if isinstance(x, F1Element):
        return f1_inverse(x)
    if isinstance(x, RiordanOp):
        return RiordanOp(opmat_inverse(x.matrix))
    if isinstance(x, OpMatrix):
        return opmat_inverse(x)
    raise DomainError(f"cannot invert {_kind(x)}")


def cmd_exp(x):
    if isinstance(x, AlgebraPair):
        return s_exp(x)
    if isinstance(x, NilMatrix):
        return nil_exp(x)
    if isinstance(x, TensorSeries):
        return f0_exp(x) if x.target_degree == 0 else f1_exp(x)
    raise DomainError(f"exp is not defined for {_kind(x)}")


def cmd_log(x):
    if isinstance(x, ShefferOp):
        x = x.pair
    if isinstance(x, SPair):
        return s_log(x)
    if isinstance(x, OpMatrix):
        return opmat_log(x)
    if isinstance(x, F0Element):
        return f0_log(x)
    if isinstance(x, F1Element):
        return f1_log(x)
    raise DomainError(f"log is not defined for {_kind(x)}")


def cmd_bracket(x, y):
    if isinstance(x, AlgebraPair) and isinstance(y, AlgebraPair):
        return s_bracket(x, y)
    if isinstance(x, NilMatrix) and isinstance(y, NilMatrix):
        return commutator(x, y)
    if isinstance(x, TensorSeries) and isinstance(y, TensorSeries):
        return f1_bracket(x, y)
    raise DomainError(f"cannot bracket {_kind(x)} with {_kind(y)}")


def cmd_evolve(x):
    curve = x if isinstance(x, TimeCurve) else TimeCurve.constant(x)
    v = curve.value
    if isinstance(v, AlgebraPair):
        return s_evolve(curve)
    if isinstance(v, NilMatrix):
        return opmat_evolve(curve)
    if isinstance(v, TensorSeries):
        return f0_evolve(curve) if v.target_degree == 0 else f1_evolve(curve)
    raise DomainError(f"cannot evolve {_kind(v)}")


def cmd_factor(x):
    if isinstance(x, ShefferOp):
        return x.pair
    return sheffer_factor(_matrix(x), check_membership=True)


def cmd_membership(x):
    P = _matrix(x)
    return {"kind": "membership", "sheffer": is_sheffer(P), "appell": is_appell(P),
            "umbral": is_umbral(P)}


def cmd_riordan(x, transpose=False):
    R = x if isinstance(x, RiordanOp) else riordan_transform(_matrix(x))
    if not transpose:
        return R
    arr = R.matrix.entries
    rows = [[format_scalar(arr[c, r]) for c in range(r + 1)] for r in range(arr.shape[0])]
    return {"kind": "riordan_rows", "rows": rows}


def cmd_sequence(x, n):
    ctx = x.ctx
    if n is None:
        raise UsageError("sequence needs --n")
    if not 0 <= n <= ctx.order:
        raise DomainError(f"--n must lie in 0..{ctx.order}")
    polys = sequence_poly(_matrix(x), n)
    return {"kind": "sequence", "n": n,
            "polynomials": [{"m": list(m), "poly": format_poly(p, ctx.dim)}
                            for m, p in polys.items()]}


# -- formatting ----------------------------------------------------------------------

def _monomial(m, dim):
    names = ["z"] if dim == 1 else [f"z{j + 1}" for j in range(dim)]
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(poly, dim):
    """Render ``{multi-index: coefficient}``, highest degree first, e.g. ``z^3 - 3*z``."""
    terms = sorted(((m, c) for m, c in poly.items() if c), key=lambda t: (sum(t[0]), t[0]),
                   reverse=True)
    if not terms:
        return "0"
    out = ""
    for idx, (m, c) in enumerate(terms):
        mono = _monomial(m, dim)
        if isinstance(c, GaussianRational):
            sign, body = "+", f"({format_scalar(c)})"
        else:
            sign = "-" if c < 0 else "+"
            body = str(abs(c))
        if mono:
            body = mono if body == "1" else f"{body}*{mono}"
        if idx == 0:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out


def _grid(rows):
    width = max((len(c) for row in rows for c in row), default=0)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in rows) + "\n"


def _matrix_rows(M):
    return [[format_scalar(c) for c in row] for row in M.entries]


def render_table(result):
    if isinstance(result, (OpMatrix, NilMatrix)):
        return _grid(_matrix_rows(result))
    if isinstance(result, (ShefferOp, RiordanOp)):
        return _grid(_matrix_rows(result.matrix))
    if isinstance(result, dict):
        kind = result.get("kind")
        if kind == "riordan_rows":
            return _grid(result["rows"])
        if kind == "sequence":
            return "".join(f"{tuple(p['m'])}  {p['poly']}\n" for p in result["polynomials"])
        if kind == "membership":
            return "".join(f"{k:<8} {result[k]}\n" for k in ("sheffer", "appell", "umbral"))
    return dumps(encode(result) if not isinstance(result, dict) else result)


def render_report(rows, fmt):
    ok = all(r.ok for r in rows)
    if fmt == "json":
        return dumps({"kind": "check_report", "ok": ok, "results": [
            {"suite": r.suite, "property": r.name, "instances": r.instances, "passed": r.passed}
            for r in rows]})
    width = max((len(r.name) for r in rows), default=8)
    lines = [f"{'suite':<12} {'property':<{width}} {'passed':>9}  status"]
    for r in rows:
        status = "pass" if r.ok else "FAIL"
        lines.append(f"{r.suite:<12} {r.name:<{width}} {f'{r.passed}/{r.instances}':>9}  {status}")
    return "\n".join(lines) + "\n"


# -- entry point -------------------------------------------------------------------

def _command_first(argv):
    # flags are declared on the subcommands; let them also appear before the command
    argv = list(argv)
    for i, tok in enumerate(argv):
        if tok in COMMANDS:
            return [tok] + argv[:i] + argv[i + 1:]
    return argv


def run(argv):
    """Execute a command; returns ``(exit code, stdout text, stderr text)``."""
    try:
        args = make_parser().parse_args(_command_first(argv))
        try:
            ctx = Context(args.dim, args.order, args.ring)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if args.command == "check":
            rows = checks.run(args.suite, ctx, args.seed, args.instances)
            return (0 if all(r.ok for r in rows) else 1), render_report(rows, args.format), ""
        ops = [load_operand(t, ctx) for t in args.operands]
        fn = globals()[f"cmd_{args.command}"]
        if args.command == "riordan":
            result = fn(*ops, transpose=args.transpose)
        elif args.command == "sequence":
            result = fn(*ops, args.n)
        else:
            result = fn(*ops)
        if args.format == "table":
            return 0, render_table(result), ""
        return 0, dumps(result if isinstance(result, dict) else encode(result)), ""
    except (UsageError, FormatError) as exc:
        return 1, "", f"error: {exc}\n"
    except DomainError as exc:
        return 2, "", f"error: {exc}\n"


def main(argv=None):
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
