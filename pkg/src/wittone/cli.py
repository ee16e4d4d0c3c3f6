"""Command-line entry point.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on usage errors or malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
import warnings
from fractions import Fraction

import numpy as np

from . import asymptotics as asym
from .char_one import (
    ChiHom,
    DeformContext,
    check_cocycle,
    check_symmetric_multi,
    deform_add,
    deform_partial_sum,
    positivity_probe,
)
from .finite_field import FqContext
from .fixtures import witt_table
from .run_repr import (
    ParseError,
    ToleranceMergeWarning,
    alpha_auto,
    hyper_add,
    hyper_membership_check,
    limit_check,
    parse_exp_fraction,
    residue,
    residue_tilde,
)
from .witt_polys import compute_witt_polys, verify_newton_identity, wp_series, wp_support_check, wp_table_csv
from .witt_vectors import verify_teich_sum

OK, CHECK_FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, text):
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_fracs(text):
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational list {text!r}: {exc}") from None


# ---------------------------------------------------------------------------


def cmd_witt_poly(args):
    if args.k < 1 or args.n < 1:
        raise UsageError("-k and -n must be >= 1")
    polys = compute_witt_polys(args.k, args.n)
    report = {
        "k": args.k,
        "n_max": args.n,
        "polys": {str(i + 1): s.to_json() for i, s in enumerate(polys)},
        "checks": {},
    }
    ok = True
    if args.check_table:
        if args.k != 2:
            raise UsageError("--check-table compares the two-variable table")
        table = witt_table()
        upto = min(args.n, max(table))
        mism = [n for n in range(1, upto + 1) if polys[n - 1] != table[n]]
        report["checks"]["table"] = {"compared": upto, "mismatches": mism, "pass": not mism}
        ok &= not mism
    if args.newton:
        res = {str(n): verify_newton_identity(n, args.k) for n in range(1, args.newton + 1)}
        report["checks"]["newton"] = {"results": res, "pass": all(res.values())}
        ok &= all(res.values())
    if args.format == "json":
        _emit(args, _json(report))
    else:
        lines = [f"S_{i + 1} = {s.to_str()}" for i, s in enumerate(polys)]
        for name, chk in report["checks"].items():
            lines.append(f"{name}: {'PASS' if chk['pass'] else 'FAIL'}")
        _emit(args, "\n".join(lines))
    return OK if ok else CHECK_FAILED


def cmd_wp(args):
    p, order = args.p, args.order
    try:
        support = wp_support_check(p, order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "csv":
        _emit(args, wp_table_csv(p, order))
        return OK
    rows = {str(a): list(wp_series(p, a, order).coeffs) for a in support}
    if args.format == "json":
        _emit(args, _json({"p": p, "order": order, "support": [str(a) for a in support], "series": rows}))
    else:
        _emit(args, "\n".join(f"w_{p}({a}) = {c}" for a, c in rows.items()))
    return OK


def cmd_teich(args):
    try:
        ctx = FqContext.get(args.p, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    elements = list(ctx.elements())
    k = args.k
    if ctx.q**k <= args.exhaustive_limit:
        tuples = list(itertools.product(elements, repeat=k))
        mode = "exhaustive"
    else:
        rng = np.random.default_rng(args.seed)
        tuples = [tuple(ctx.random_element(rng) for _ in range(k)) for _ in range(args.samples)]
        mode = "random"
    cases = [verify_teich_sum(t, args.N, args.p_mult) for t in tuples]
    ok = all(c["equal"] for c in cases)
    report = {"p": args.p, "m": args.m, "N": args.N, "k": k, "mode": mode, "modulus": list(ctx.modulus), "cases": cases}
    if args.format == "json":
        _emit(args, _json(report))
    else:
        _emit(args, f"F_{ctx.q} N={args.N} k={k} {mode}: {sum(c['equal'] for c in cases)}/{len(cases)} equal")
    return OK if ok else CHECK_FAILED


def cmd_deform(args):
    if args.T <= 0:
        raise UsageError("-T must be positive for the convergence table")
    ctx = DeformContext(args.T)
    x, y = ctx.rho_power(args.a), ctx.rho_power(args.b)
    limit = deform_add(x, y, ctx).logval / ctx.T
    rows = []
    n = 1
    while n <= args.n_max:
        s = deform_partial_sum(x, y, n, ctx).logval / ctx.T
        rows.append([n, args.a, args.b, s, limit, abs(s - limit)])
        n *= 2
    header = ["n", "a", "b", "sigma_n", "limit", "abs_error"]
    if args.format == "csv":
        _emit(args, _csv(header, [[repr(v) if isinstance(v, float) else v for v in r] for r in rows]))
    elif args.format == "json":
        _emit(args, _json({"T": args.T, "rows": [dict(zip(header, r)) for r in rows]}))
    else:
        _emit(args, "\n".join(f"n={r[0]:>6} sigma_n={r[3]:.12f} err={r[5]:.3e}" for r in rows))
    return OK


def _parse_chi(text):
    values = {}
    try:
        for item in text.split(","):
            if item.strip():
                p, v = item.split(":")
                values[int(p)] = float(v)
    except ValueError:
        raise UsageError(f"bad prime assignment {text!r}; expected e.g. 2:1,3:10") from None
    return ChiHom(values)


def cmd_entropy_check(args):
    chi = ChiHom.entropy_solution(args.entropy) if args.chi is None else _parse_chi(args.chi)
    rng = np.random.default_rng(args.seed)
    samples = []
    for _ in range(args.samples):
        a = Fraction(int(rng.integers(1, args.max_den)), args.max_den)
        b = Fraction(int(rng.integers(1, args.max_den)), args.max_den)
        samples.append((a, b))
    cocycle = check_cocycle(chi, samples)
    sym3 = check_symmetric_multi(chi, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)], partition=[[0, 1], [2]])
    part = check_symmetric_multi(chi, [Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)], partition=[[0, 1], [2]])
    witness = positivity_probe(chi, args.depth)
    tol = args.tol
    report = {
        "chi": {str(p): v for p, v in sorted(chi.prime_log_values.items())},
        "cocycle": cocycle,
        "symmetric_multi": {"(1/2,1/3,1/6)": sym3, "(1/4,1/4,1/2)": part},
        "positivity_witness": _frac_str(witness) if witness is not None else None,
        "tolerance": tol,
    }
    ok = cocycle["max"] < tol and sym3["max"] < tol and part["max"] < tol
    report["pass"] = ok
    if args.format == "json":
        _emit(args, _json(report))
    else:
        _emit(
            args,
            f"cocycle residual {cocycle['max']:.3e}\nsymmetric residual {max(sym3['max'], part['max']):.3e}\n"
            f"positivity witness {report['positivity_witness']}",
        )
    return OK if ok else CHECK_FAILED


def cmd_run(args):
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", ToleranceMergeWarning)
            f = parse_exp_fraction(args.expr)
            g = parse_exp_fraction(args.with_expr) if args.with_expr else None
            report, ok = _run_report(f, g, args)
    except (ParseError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    report["tolerance_merge"] = any(issubclass(w.category, ToleranceMergeWarning) for w in caught)
    if args.format == "json":
        _emit(args, _json(report))
    else:
        lines = [f"f = {report['expr']}", f"residue_tilde = {report['residue_tilde']!r}"]
        lines += [f"T={r['T']:.6g} f^T={r['value']!r} err={r['abs_error']:.3e}" for r in report["limit"]["rows"]]
        if g is not None:
            lines.append(f"hyper membership: {report['hyper']['member']}")
        if report["tolerance_merge"]:
            lines.append("note: exponents closer than the merge tolerance were combined")
        _emit(args, "\n".join(lines))
    return OK if ok else CHECK_FAILED


def _run_report(f, g, args):
    report = {
        "expr": f.to_text(),
        "alpha_lambda": {"lambda": args.lam, "expr": alpha_auto(f, args.lam).to_text()},
        "residue_tilde": residue_tilde(f).r,
    }
    try:
        report["residue"] = residue(f).value
    except ValueError:
        report["residue"] = None
    # f^T = sign * |chi_T(f)|^T stays finite where chi_T(f) itself would overflow
    report["limit"] = limit_check(f, range(args.k_max + 1))
    ok = True
    if g is not None:
        member = hyper_membership_check(f, g)
        report["hyper"] = {
            "with": g.to_text(),
            "sum_residue": residue_tilde(f + g).r,
            "hypersum": hyper_add(residue_tilde(f), residue_tilde(g)).to_json(),
            "member": member,
        }
        ok &= member
    return report, ok


def cmd_asym(args):
    if (args.b is None) == (args.a is None):
        raise UsageError("give exactly one of --b or --a")
    try:
        if args.b is not None:
            b = _parse_fracs(args.b)
            a = asym.t_power_expand(b, args.N)
            back = asym.invert_expansion(a)
            padded = (b + [Fraction(0)] * len(back))[: len(back)]
            ok = back == padded
        else:
            a = _parse_fracs(args.a)
            b = asym.invert_expansion(a)
            ok = asym.t_power_expand(b, len(a)) == a
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = {"a": [_frac_str(x) for x in a], "b": [_frac_str(x) for x in b], "borel_phi": [_frac_str(x) for x in asym.borel_transform(b)], "roundtrip": ok}
    if args.format == "json":
        _emit(args, _json(report))
    else:
        _emit(args, "\n".join([f"a_{i} = {v}" for i, v in enumerate(report["a"])] + [f"b_{i} = {v}" for i, v in enumerate(report["b"])]))
    return OK if ok else CHECK_FAILED


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="wittone", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "text"), default=None):
        sp.add_argument("--format", choices=formats, default=default or formats[0])
        sp.add_argument("--output", "-o", help="write to this file instead of standard output")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    sp = common(sub.add_parser("witt-poly", help="universal polynomials S_n"), default="text")
    sp.add_argument("-k", type=int, default=2, help="number of variables")
    sp.add_argument("-n", type=int, default=10, help="largest n")
    sp.add_argument("--check-table", action="store_true", help="compare S_1..S_10 with the reference table")
    sp.add_argument("--newton", type=int, default=0, metavar="N", help="check the Newton identity for n <= N")
    sp.set_defaults(func=cmd_witt_poly)

    sp = common(sub.add_parser("wp", help="w_p(alpha) support and coefficients"), ("csv", "json", "text"))
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--order", type=int, default=3)
    sp.set_defaults(func=cmd_wp)

    sp = common(sub.add_parser("teich", help="verify Teichmüller sums in W_N(F_q)"))
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-m", type=int, default=1)
    sp.add_argument("-N", type=int, default=3)
    sp.add_argument("-k", type=int, default=2, help="number of summands")
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--exhaustive-limit", type=int, default=729)
    sp.add_argument("--p-mult", choices=("fold", "shift"), default="fold")
    sp.set_defaults(func=cmd_teich)

    sp = common(sub.add_parser("deform", help="convergence of partial sums to the deformed addition"), ("csv", "json", "text"))
    sp.add_argument("-a", type=float, required=True)
    sp.add_argument("-b", type=float, required=True)
    sp.add_argument("-T", type=float, default=1.0)
    sp.add_argument("--n-max", type=int, default=1024)
    sp.set_defaults(func=cmd_deform)

    sp = common(sub.add_parser("entropy-check", help="functional equations for w(alpha)"))
    sp.add_argument("--chi", help="prime log values l(p), e.g. 2:1,3:10 (default: entropy solution)")
    sp.add_argument("--entropy", type=float, default=1.0, metavar="LAMBDA", help="scale of the entropy solution")
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--max-den", type=int, default=97)
    sp.add_argument("--depth", type=int, default=12)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_entropy_check)

    sp = common(sub.add_parser("run", help="evaluate an exponential-sum fraction"))
    sp.add_argument("expr", help='e.g. "2*exp(-1/T) + 1*exp(-3/T) / (1)"')
    sp.add_argument("--with", dest="with_expr", help="second fraction for the hyperfield membership check")
    sp.add_argument("--k-max", type=int, default=10, help="T schedule 2^0 .. 2^-k_max")
    sp.add_argument("--lambda", dest="lam", type=float, default=2.0)
    sp.set_defaults(func=cmd_run)

    sp = common(sub.add_parser("asym", help="a <-> b tables for g(T)^T"))
    sp.add_argument("--b", help="comma-separated b_0.. (b_0 = 1)")
    sp.add_argument("--a", help="comma-separated a_0.. (a_0 = 1, a_1 = 0)")
    sp.add_argument("-N", type=int, default=8)
    sp.set_defaults(func=cmd_asym)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
