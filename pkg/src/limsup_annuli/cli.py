"""Command-line entry point.

Coordinates on the command line are 1-based (``--j 1`` is the first
coordinate).  Exponents are parsed as exact rationals.

Exit status: 0 success, 1 a checked property was violated, 2 usage
error, 3 I/O failure.
"""

from __future__ import annotations

import argparse
from fractions import Fraction
import io
import json
import os
import sys

from . import cover, enumeration, formulas, mtp, verify
from ._numbers import fmt, parse_rational, parse_vector, to_float12
from .errors import InvalidParameterError

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
OUTDIR_ENV = "LIMSUP_ANNULI_OUTDIR"


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _out_path(path):
    if path is None or os.path.isabs(path):
        return path
    base = os.environ.get(OUTDIR_ENV)
    return os.path.join(base, path) if base else path


def _write(args, text):
    path = _out_path(getattr(args, "out", None))
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _config(args):
    skip = {"func", "out", "format"}
    return {k: _jsonable(v) for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(args, result, lines):
    if getattr(args, "format", "text") == "json":
        doc = {"command": args.command, "config": _config(args), "result": _jsonable(result)}
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        text = "".join(f"{line}\n" for line in lines)
    _write(args, text)


def _value_str(v):
    if v is None:
        return "unknown"
    if isinstance(v, Fraction):
        return f"{fmt(v)} ({to_float12(v)!r})"
    return repr(to_float12(v))


def _vector(text, n, name):
    v = parse_vector(text)
    if len(v) == 1 and n > 1:
        v = v * n
    if len(v) != n:
        raise UsageError(f"--{name} needs 1 or {n} values, got {len(v)}")
    return v


def _profile(args):
    n = args.n
    return formulas.ExponentProfile(n, _vector(args.tau_psi, n, "tau-psi"),
                                    _vector(args.tau_phi, n, "tau-phi"))


def _index(j, n, name):
    if not 1 <= j <= n:
        raise UsageError(f"--{name} must lie in 1..{n}")
    return j - 1


# --------------------------------------------------------------------------
# commands

def cmd_dim(args):
    args.weighted = args.weighted or "," in args.tau_psi or "," in args.tau_phi
    if args.weighted:
        res = formulas.dim_weighted(_profile(args))
    else:
        res = formulas.dim_isotropic(args.n, parse_rational(args.tau_psi),
                                     parse_rational(args.tau_phi))
    branch = res.branch
    if res.witness_j is not None:
        branch = f"j={res.witness_j + 1},k={res.witness_k[res.witness_j] + 1}"
    result = {"value": res.value, "branch": branch, "tie": res.tie,
              "within_hypotheses": res.within_hypotheses}
    lines = [f"dimension: {_value_str(res.value)}", f"branch: {branch}"]
    if res.witness_j is not None:
        result["witness_j"] = res.witness_j + 1
        result["witness_k"] = [k + 1 for k in res.witness_k]
        lines.append(f"witness j: {res.witness_j + 1}")
        lines.append("witness k(j): " + ",".join(str(k + 1) for k in res.witness_k))
    if not res.within_hypotheses:
        lines.append("note: outside theorem hypotheses")
    _emit(args, result, lines)
    return EXIT_OK


def cmd_select(args):
    profile = _profile(args)
    sel = mtp.select_exponents(profile, _index(args.j, profile.n, "j"))
    bound = mtp.ww_lower_bound(sel.instance())
    result = {"b": sel.b, "a": sel.a, "t": sel.t, "case": sel.case_tag, "ell": sel.ell,
              "bound": bound.value, "A_star": bound.details["A_star"]}
    lines = ["b: " + ",".join(fmt(x) for x in sel.b),
             "a: " + ",".join(fmt(x) for x in sel.a),
             "t: " + ",".join(fmt(x) for x in sel.t),
             f"case: {sel.case_tag}" + (f" (ell={sel.ell})" if sel.ell else ""),
             f"lower bound: {_value_str(bound.value)}"]
    _emit(args, result, lines)
    return EXIT_OK


def cmd_mtp(args):
    a = parse_vector(args.a)
    n = len(a)
    inst = mtp.MtpInstance(n, _vector(args.delta, n, "delta"), a, _vector(args.t, n, "t"),
                           parse_rational(args.kappa))
    res = mtp.ww_lower_bound(inst)
    d = res.details
    part = {k: [j + 1 for j in d[k]] for k in ("K1", "K2", "K3")}
    result = {"value": res.value, "A_star": d["A_star"], **part}
    lines = [f"lower bound: {_value_str(res.value)}", f"A*: {fmt(d['A_star'])}"]
    lines += [f"{k}: {part[k]}" for k in ("K1", "K2", "K3")]
    _emit(args, result, lines)
    return EXIT_OK


def cmd_cover(args):
    profile = _profile(args)
    qs = [int(x) for x in args.q.split(",")]
    pairs = None
    if args.j is not None or args.k is not None:
        if args.j is None or args.k is None:
            raise UsageError("--j and --k go together")
        pairs = [(_index(args.j, profile.n, "j"), _index(args.k, profile.n, "k"))]
    reports = cover.cover_sweep(profile, qs, pairs)
    buf = io.StringIO()
    cover.write_cover_csv(reports, buf)
    _write(args, buf.getvalue())
    lo, hi = Fraction(1, 8), Fraction(8)
    bad = [r for r in reports if not lo <= Fraction(r.measured) / Fraction(r.predicted) <= hi]
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_sweep(args):
    rows = mtp.consistency_sweep(args.trials, args.seed)
    _write(args, mtp.sweep_csv_text(rows))
    worst = max((float(r.abs_diff) for r in rows), default=0.0)
    return EXIT_VIOLATION if worst > args.tol else EXIT_OK


def cmd_verify(args):
    if args.check == "cube":
        rep = verify.cube_check(args.n, parse_rational(args.rho), args.constants)
    else:
        if args.seed is None:
            raise UsageError(f"{args.check} samples randomly and needs --seed")
        profile = _profile(args)
        point = verify.default_point(args.n, args.q)
        fn = verify.decomposition_check if args.check == "decomposition" else verify.sandwich_check
        rep = fn(profile, point, args.samples, args.seed)
    clean = rep.clean
    result = {"check": rep.name, "samples": rep.samples, "violations": rep.violations,
              "boundary_skipped": rep.boundary_skipped,
              "scalar_mismatches": rep.scalar_mismatches, "details": rep.details,
              "expect_fail": args.expect_fail}
    verdict = "clean" if clean else "VIOLATIONS"
    lines = [f"{rep.name}: {verdict} ({rep.violations} violations in {rep.samples} samples)"]
    lines += [f"  {k}: {_jsonable(v)}" for k, v in rep.details.items()]
    _emit(args, result, lines)
    if args.expect_fail:
        return EXIT_OK if not clean else EXIT_VIOLATION
    return EXIT_OK if clean else EXIT_VIOLATION


def cmd_stream(args):
    profile = _profile(args)
    j = _index(args.j, profile.n, "j") if args.j is not None else None
    spec = enumeration.FamilySpec(args.kind, profile,
                                  rho=parse_rational(args.rho) if args.rho else None,
                                  j=j, sign=args.sign, coprime=args.coprime)
    buf = io.StringIO()
    enumeration.dump_ndjson(spec, (args.q_lo, args.q_hi), buf)
    _write(args, buf.getvalue())
    return EXIT_OK


# --------------------------------------------------------------------------
# parser

def _seed(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _add_profile(p, with_n=True):
    if with_n:
        p.add_argument("--n", type=_positive, required=True, help="ambient dimension")
    p.add_argument("--tau-psi", required=True, help="outer exponent(s), comma separated")
    p.add_argument("--tau-phi", required=True, help="thickness exponent(s), comma separated")


def _add_output(p, formats=True):
    p.add_argument("--out", help=f"output file (relative paths resolve against ${OUTDIR_ENV})")
    if formats:
        p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="limsup-annuli",
        description="Dimension formulas and constructive checks for limsup sets of annuli.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="closed-form Hausdorff dimension")
    _add_profile(p)
    p.add_argument("--weighted", action="store_true", help="use the rectangular formula")
    _add_output(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("select", help="exponent selection for coordinate j")
    _add_profile(p)
    p.add_argument("--j", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("mtp", help="rectangles-to-rectangles lower bound")
    p.add_argument("--delta", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--kappa", default="0")
    _add_output(p)
    p.set_defaults(func=cmd_mtp)

    p = sub.add_parser("cover", help="predicted vs measured cover counts (CSV)")
    _add_profile(p)
    p.add_argument("--q", required=True, help="comma separated denominators")
    p.add_argument("--j", type=int)
    p.add_argument("--k", type=int)
    _add_output(p, formats=False)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("sweep", help="formula vs lower bound on random profiles (CSV)")
    p.add_argument("--trials", type=_positive, default=200)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    _add_output(p, formats=False)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="Monte Carlo and corner certificates")
    p.add_argument("check", choices=("decomposition", "sandwich", "cube"))
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--q", type=_positive, default=2)
    p.add_argument("--tau-psi", default="1")
    p.add_argument("--tau-phi", default="1")
    p.add_argument("--samples", type=_positive, default=100000)
    p.add_argument("--seed", type=_seed, help="required for the Monte Carlo checks")
    p.add_argument("--rho", default="2")
    p.add_argument("--constants", choices=("corrected", "uncorrected"), default="corrected")
    p.add_argument("--expect-fail", action="store_true",
                   help="succeed only if the check finds violations")
    _add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stream", help="NDJSON dump of a shape family")
    p.add_argument("--kind", choices=enumeration.KINDS, required=True)
    _add_profile(p)
    p.add_argument("--q-lo", type=_positive, required=True)
    p.add_argument("--q-hi", type=_positive, required=True)
    p.add_argument("--rho")
    p.add_argument("--j", type=int)
    p.add_argument("--sign", type=int, choices=(1, -1))
    p.add_argument("--coprime", action="store_true")
    _add_output(p, formats=False)
    p.set_defaults(func=cmd_stream)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidParameterError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{parser.prog}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
