"""
Command-line front end.

Every command prints JSON by default (``--format text`` gives a terse human
listing).  Exit status is 0 on success, 1 when a checked statement fails and
2 on bad input.

>>> import io
>>> buf = io.StringIO()
>>> run(["basis", "--ell", "2", "--n", "2", "--format", "text"], stdout=buf)
0
>>> print(buf.getvalue().strip())
0 perm=(1, 2) exps=(0, 0) deg=0
1 perm=(1, 2) exps=(1, 0) deg=2
2 perm=(2, 1) exps=(0, 0) deg=-2
3 perm=(2, 1) exps=(1, 0) deg=0
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb, factorial
from typing import TextIO

from .cellular import (
    CellIndex, cell_degree, cell_element, graded_cartan, graded_dim_D0, graded_dim_P0, lam_max,
    p0_enumerate, specht_gram,
)
from .centeridem import (
    c_mu, f11_H, f_units, graded_span_dimension, sign_w0, z_degree, z_mu,
)
from .checks import SUITES, check_matrix_iso, run_suite
from .cyclotomic import CycContext, from_json, get_context
from .exactlinalg import LinAlgError
from .traces import Tr_functional, TrHat, TrSVV, Tr, svv_functional

__all__ = ["GUARD", "UsageError", "run", "main"]

GUARD = 10 ** 5
WORKERS_ENV = "NILHECKE_WORKERS"


class UsageError(ValueError):
    """Bad arguments or payload; maps to exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- argument helpers ---------------------------------------------------------

def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _guard(ell: int, n: int, force: bool):
    if ell < 1 or n < 1:
        raise UsageError("need ell >= 1 and n >= 1")
    size = comb(ell, n) * factorial(n) ** 2
    if size > GUARD and not force:
        raise UsageError(f"H({ell},{n}) has dimension {size} > {GUARD}; pass --force to proceed")


def _context(args) -> CycContext:
    if args.ell is None or args.n is None:
        raise UsageError("--ell and --n are required")
    _guard(args.ell, args.n, args.force)
    return get_context(args.ell, args.n)


def _load(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read element from {path}: {exc}") from None


def _element(args, path: str):
    data = _load(path)
    try:
        ell = int(data.get("ell", args.ell if args.ell is not None else -1))
        n = int(data["n"])
    except (KeyError, TypeError, ValueError, AttributeError):
        raise UsageError(f"{path}: element JSON needs integer 'n' and 'ell'") from None
    if args.ell is not None and args.ell != ell:
        raise UsageError(f"{path}: element has ell={ell}, command has --ell {args.ell}")
    if args.n is not None and args.n != n:
        raise UsageError(f"{path}: element has n={n}, command has --n {args.n}")
    if ell < 1:
        raise UsageError(f"{path}: ell missing")
    _guard(ell, n, args.force)
    ctx = get_context(ell, n)
    try:
        for t in data.get("terms", []):
            if len(t["perm"]) != n or len(t["exps"]) != n or sorted(t["perm"]) != list(range(1, n + 1)):
                raise UsageError(f"{path}: term {t} does not fit n={n}")
        return from_json({**data, "ell": ell}, ctx)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"{path}: malformed element: {exc}") from None


def _fr(x) -> str:
    return str(Fraction(x))


# -- output -------------------------------------------------------------------

def _emit(out: TextIO, fmt: str, payload, text_lines=None):
    if fmt == "json" or text_lines is None:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        for line in text_lines:
            out.write(line + "\n")


# -- commands -----------------------------------------------------------------

def cmd_basis(args, out):
    ctx = _context(args)
    rows = [{"index": i, "perm": list(w), "exps": list(a), "degree": ctx.degrees[i]}
            for i, (w, a) in enumerate(ctx.basis)]
    _emit(out, args.format, rows,
          [f"{r['index']} perm={tuple(r['perm'])} exps={tuple(r['exps'])} deg={r['degree']}" for r in rows])
    return 0


def cmd_reduce(args, out):
    x = _element(args, args.element)
    _emit(out, args.format, x.to_json(), [repr(x)])
    return 0


def cmd_mul(args, out):
    a, b = _element(args, args.left), _element(args, args.right)
    if a.ctx is not b.ctx:
        raise UsageError("factors live in different algebras")
    x = a * b
    _emit(out, args.format, x.to_json(), [repr(x)])
    return 0


def cmd_cell(args, out):
    ctx = _context(args)
    n = ctx.n
    w = _ints(args.w) if args.w else tuple(range(1, n + 1))
    u = _ints(args.u) if args.u else tuple(range(1, n + 1))
    for p in (w, u):
        if sorted(p) != list(range(1, n + 1)):
            raise UsageError(f"{p} is not a permutation of 1..{n}")
    lam = _ints(args.lam)
    if lam not in p0_enumerate(ctx):
        raise UsageError(f"{lam} is not an increasing {n}-tuple in [1, {ctx.ell}]")
    idx = CellIndex(lam, w, u)
    x = ctx.zero() if ctx.is_zero else cell_element(ctx, idx)
    payload = {"lambda": list(lam), "w": list(w), "u": list(u),
               "degree": cell_degree(ctx, idx), "element": x.to_json()}
    _emit(out, args.format, payload, [f"deg {payload['degree']}: {x!r}"])
    return 0


def cmd_gram(args, out):
    ctx = _context(args)
    g = [[_fr(c) for c in row] for row in specht_gram(ctx)]
    _emit(out, args.format, g, [" ".join(row) for row in g])
    return 0


def cmd_graded_dims(args, out):
    ctx = _context(args)
    shift = ctx.n * (ctx.n - 1) // 2
    payload = {
        "ell": ctx.ell, "n": ctx.n,
        "D0": graded_dim_D0(ctx).to_json(),
        "P0": graded_dim_P0(ctx).to_json(),
        "cartan": graded_cartan(ctx).to_json(),
        "f11H": graded_span_dimension(f11_H(ctx)).to_json(),
        "f11H_shift": shift,
    }
    _emit(out, args.format, payload, [
        f"dim_q D0 = {graded_dim_D0(ctx)!r}",
        f"dim_q P0 = {graded_dim_P0(ctx)!r}",
        f"cartan = {graded_cartan(ctx)!r}",
        f"dim_q f11 H = {graded_span_dimension(f11_H(ctx))!r} (shift {shift})",
    ])
    return 0


def cmd_center(args, out):
    ctx = _context(args)
    rows = [{"mu": list(mu), "degree": z_degree(ctx, mu), "element": z_mu(ctx, mu).to_json()}
            for mu in p0_enumerate(ctx)]
    _emit(out, args.format, rows,
          [f"z_{tuple(r['mu'])} deg {r['degree']}: {z_mu(ctx, tuple(r['mu']))!r}" for r in rows])
    return 0


def cmd_idempotents(args, out):
    ctx = _context(args)
    fam = f_units(ctx)
    bad = fam.failures()
    payload = {
        "ell": ctx.ell, "n": ctx.n,
        "perms": [list(w) for w in fam.perms],
        "units": [{"i": i, "j": j, "element": fam[(i, j)].to_json()}
                  for i in range(fam.size) for j in range(fam.size)],
        "report": {"statement": SUITES["matrix-units"].statement, "ok": not bad, "failures": bad},
    }
    _emit(out, args.format, payload,
          [f"f[{i},{j}] = {fam[(i, j)]!r}" for i in range(fam.size) for j in range(fam.size)]
          + [f"{'PASS' if not bad else 'FAIL'} {len(bad)} failing relations"])
    return 0 if not bad else 1


def cmd_matrix_iso(args, out):
    ctx = _context(args)
    if args.check:
        bad = check_matrix_iso(ctx, round_trip=True)
        payload = {"suite": "matrix-iso", "statement": SUITES["matrix-iso"].statement,
                   "ell": ctx.ell, "n": ctx.n, "ok": not bad, "failures": bad}
        _emit(out, args.format, payload,
              [f"{'PASS' if not bad else 'FAIL'} matrix-iso ({ctx.ell},{ctx.n})"] + bad)
        return 0 if not bad else 1
    rows = [{"mu": list(mu), "c_mu": _fr(c_mu(ctx, mu))} for mu in p0_enumerate(ctx)]
    _emit(out, args.format, rows, [f"c_{tuple(r['mu'])} = {r['c_mu']}" for r in rows])
    return 0


_FORMS = {"tr": Tr, "trhat": TrHat, "trsvv": TrSVV}


def cmd_trace(args, out):
    if args.compare:
        ctx = _context(args)
        tr, sv = Tr_functional(ctx), svv_functional(ctx)
        k = c_mu(ctx, lam_max(ctx)) * sign_w0(ctx.n)
        hat = [TrHat(ctx.basis_element(i)) for i in range(ctx.dimension)]
        prop = [i for i in range(ctx.dimension) if hat[i] != k * tr[i]]
        eq = [i for i in range(ctx.dimension) if sv[i] != tr[i]]
        report = {
            "ell": ctx.ell, "n": ctx.n, "scalar": _fr(k),
            "trhat_proportional_to_tr": not prop, "trsvv_equals_tr": not eq,
            "proportionality_mismatches": [_basis_json(ctx, i) for i in prop],
            "equality_mismatches": [_basis_json(ctx, i) for i in eq],
        }
        _emit(out, args.format, report, [
            f"scalar {report['scalar']}",
            f"TrHat = scalar * Tr: {not prop} ({len(prop)} mismatches)",
            f"TrSVV = Tr: {not eq} ({len(eq)} mismatches)",
        ])
        return 0 if not prop and not eq else 1
    form = _FORMS[args.form]
    if args.element:
        out.write(_fr(form(_element(args, args.element))) + "\n")
        return 0
    if not args.basis:
        raise UsageError("trace needs --element, --basis or --compare")
    ctx = _context(args)
    vals = [_fr(form(ctx.basis_element(i))) for i in range(ctx.dimension)]
    _emit(out, args.format, [{**_basis_json(ctx, i), "value": v} for i, v in enumerate(vals)],
          [f"{i} {v}" for i, v in enumerate(vals)])
    return 0


def _basis_json(ctx, i):
    w, a = ctx.basis[i]
    return {"index": i, "perm": list(w), "exps": list(a)}


def _verify_contexts(args, suite) -> list[tuple[int, int]]:
    if args.max_ell is not None or args.max_n is not None:
        if args.max_ell is None or args.max_n is None:
            raise UsageError("--max-ell and --max-n go together")
        ctxs = [(ell, n) for n in range(1, args.max_n + 1) for ell in range(n, args.max_ell + 1)]
    elif args.ell is not None or args.n is not None:
        if args.ell is None or args.n is None:
            raise UsageError("--ell and --n go together")
        ctxs = [(args.ell, args.n)]
    else:
        ctxs = list(suite.contexts)
    for ell, n in ctxs:
        _guard(ell, n, args.force)
    return ctxs


def _run_job(job):
    return run_suite(*job)


def cmd_verify(args, out):
    names = [args.suite] if args.suite else list(SUITES)
    jobs = [(name, ell, n) for name in names for ell, n in _verify_contexts(args, SUITES[name])]
    try:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be an integer") from None
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_job, jobs))
    else:
        reports = [_run_job(j) for j in jobs]
    order = {name: i for i, name in enumerate(SUITES)}
    reports.sort(key=lambda r: (order[r["suite"]], r["n"], r["ell"]))
    ok = all(r["ok"] for r in reports)
    lines = []
    for r in reports:
        head = f"{'PASS' if r['ok'] else 'FAIL'} {r['suite']} ({r['ell']},{r['n']}): {r['statement']}"
        lines.append(head)
        lines.extend(f"    {f}" for f in r["failures"][:5])
    _emit(out, args.format, {"ok": ok, "reports": reports}, lines)
    return 0 if ok else 1


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--ell", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--force", action="store_true",
                        help=f"allow algebras of dimension above {GUARD}")

    p = _Parser(prog="nilhecke", description="Exact computations in cyclotomic nilHecke algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("basis", parents=[common], help="list the monomial basis").set_defaults(func=cmd_basis)

    q = sub.add_parser("reduce", parents=[common], help="normal form of an element")
    q.add_argument("--element", required=True, help="JSON file, or - for stdin")
    q.set_defaults(func=cmd_reduce)

    q = sub.add_parser("mul", parents=[common], help="product of two elements")
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)
    q.set_defaults(func=cmd_mul)

    q = sub.add_parser("cell", parents=[common], help="a cellular basis element")
    q.add_argument("--lambda", dest="lam", required=True, help="k1,k2,...")
    q.add_argument("--w", help="one-line permutation, e.g. 2,1")
    q.add_argument("--u", help="one-line permutation")
    q.set_defaults(func=cmd_cell)

    sub.add_parser("gram", parents=[common], help="Specht-module Gram matrix").set_defaults(func=cmd_gram)
    sub.add_parser("graded-dims", parents=[common], help="graded dimensions").set_defaults(func=cmd_graded_dims)
    sub.add_parser("center", parents=[common], help="basis of the center").set_defaults(func=cmd_center)
    sub.add_parser("idempotents", parents=[common], help="matrix units and their check").set_defaults(
        func=cmd_idempotents)

    q = sub.add_parser("matrix-iso", parents=[common], help="c_mu scalars, or --check the isomorphism")
    q.add_argument("--check", action="store_true")
    q.set_defaults(func=cmd_matrix_iso)

    q = sub.add_parser("trace", parents=[common], help="evaluate a symmetrizing form")
    q.add_argument("--form", choices=sorted(_FORMS), default="tr")
    q.add_argument("--element")
    q.add_argument("--basis", action="store_true")
    q.add_argument("--compare", action="store_true")
    q.set_defaults(func=cmd_trace)

    q = sub.add_parser("verify", parents=[common], help="run verification suites")
    q.add_argument("--suite", choices=list(SUITES))
    q.add_argument("--max-ell", type=int)
    q.add_argument("--max-n", type=int)
    q.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"nilhecke: error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except LinAlgError as exc:
        err.write(f"nilhecke: computation failed: {exc}\n")
        return 1
    except ValueError as exc:
        err.write(f"nilhecke: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
