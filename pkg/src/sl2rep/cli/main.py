"""Command-line front end: eval, verify, structure, transform and table."""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from typing import List, Optional

from ..hyperfun import psi_jet
from ..ktypes import InadmissibleIndexError, KTypeIndex, is_admissible, ktype_function, required_class
from ..ktypes import to_noncompact, window_indices
from ..structure import WindowError, composition_series, detect_extremal
from ..tdreduce import (
    MULTIPLIERS,
    PotentialSpecError,
    TransformError,
    parse_grid,
    parse_potential,
    solve_chi,
    td_residual,
    transform_solution,
    with_lambda,
)
from ..tdreduce.chi import ChiSystemError
from .report import ReportDocument, Tolerances, dumps, now_stamp
from .suites import SUITES, TD_PRESETS, suite_tdreduce

EXIT_USAGE = 2


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _index(q: int, l: int, m: int) -> KTypeIndex:
    if l < 0:
        raise InadmissibleIndexError("l must be nonnegative")
    if not is_admissible(q, l, m):
        raise InadmissibleIndexError(
            f"inadmissible index (q={q}, l={l}, m={m}): m must be congruent to "
            f"2l+q = {required_class(q, l)} mod 4"
        )
    return KTypeIndex(q, l, m)


def cmd_eval(args) -> int:
    idx = _index(args.q, args.l, args.m)
    if args.t is not None or args.x is not None:
        if args.t is None or args.x is None:
            raise ValueError("the non-compact picture needs both --t and --x")
        value = to_noncompact(ktype_function(idx))(args.t, args.x)
        doc = {"index": idx.as_dict(), "picture": "noncompact", "t": args.t, "x": args.x, "value": value}
        jet = None
    else:
        j = psi_jet(idx, args.theta, args.y)
        value = j.value
        jet = {"value": j.value, "d_theta": j.d_theta, "d_y": j.d_y, "d_yy": j.d_yy}
        doc = {"index": idx.as_dict(), "picture": "compact", "theta": args.theta, "y": args.y,
               "value": value}
        if args.jet:
            doc["jet"] = jet
    if args.json:
        print(dumps(doc))
    else:
        print(_fmt_complex(value))
        if args.jet and jet is not None:
            for k in ("d_theta", "d_y", "d_yy"):
                print(f"{k} {_fmt_complex(jet[k])}")
    return 0


def cmd_verify(args) -> int:
    tol = Tolerances(args.tol)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        if name == "tdreduce" and args.preset:
            results.extend(suite_tdreduce(tol, presets=args.preset))
        else:
            results.extend(SUITES[name](tol))
    inputs = {"suite": args.suite, "tol": args.tol or [], "preset": args.preset or []}
    doc = ReportDocument("verify", inputs, results,
                         timestamp=None if args.no_timestamp else now_stamp())
    print(doc.to_json())
    return doc.exit_code


def cmd_structure(args) -> int:
    rep = composition_series(args.q, args.lmax, args.mbound, args.source)
    print(dumps(rep.to_dict()))
    return 0 if rep.passed else 1


def cmd_transform(args) -> int:
    spec = parse_potential(args.potential)
    idx = _index(args.q, args.l, args.m)
    lam = idx.lambda_()
    if spec.lam not in (0, lam):
        raise PotentialSpecError(
            f"lambda={spec.lam} in the potential does not match lambda={lam} of the K-type l={idx.l}"
        )
    spec = with_lambda(spec, lam)
    cs = solve_chi(spec, args.step)
    t, x = parse_grid(args.grid)
    f = to_noncompact(ktype_function(idx))
    gf = transform_solution(cs, f, t, x, args.multiplier)
    text = gf.to_csv()
    if args.csv == "-":
        sys.stdout.write(text)
    else:
        with open(args.csv, "w", newline="") as fh:
            fh.write(text)
    rep = td_residual(gf, spec, multiplier=args.multiplier)
    doc = rep.to_dict()
    doc["index"] = idx.as_dict()
    body = dumps(doc) + "\n"
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(body)
    elif args.csv == "-":
        sys.stderr.write(body)
    else:
        sys.stdout.write(body)
    return 0


TABLE_COLUMNS = ["q", "l", "m", "lambda", "lowest", "highest", "theta", "y", "re_psi", "im_psi"]


def cmd_table(args) -> int:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_COLUMNS)
    if args.lmax >= 0 and args.mbound >= 0:
        for idx in window_indices(args.q, args.lmax, args.mbound):
            kind, m_ext = detect_extremal(idx.q, idx.l)
            lowest = kind == "lowest" and idx.m == m_ext
            highest = kind == "highest" and idx.m == m_ext
            v = psi_jet(idx, args.theta, args.y).value
            w.writerow([idx.q, idx.l, idx.m, str(Fraction(idx.lambda_())),
                        str(lowest).lower(), str(highest).lower(),
                        f"{args.theta:.17g}", f"{args.y:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"])
    sys.stdout.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sl2rep", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a K-type function and its jet")
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--l", type=int, required=True)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--theta", type=float, default=0.0)
    e.add_argument("--y", type=float, default=1.0)
    e.add_argument("--t", type=float, default=None, help="non-compact picture time")
    e.add_argument("--x", type=float, default=None, help="non-compact picture space")
    e.add_argument("--jet", action="store_true", help="also print d_theta, d_y, d_yy")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=list(SUITES) + ["all"])
    v.add_argument("--tol", action="append", metavar="VALUE|NAME=VALUE",
                   help="override tolerances; repeatable")
    v.add_argument("--preset", action="append", choices=TD_PRESETS,
                   help="tdreduce preset(s); default all")
    v.add_argument("--no-timestamp", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("structure", help="composition series on a truncated window")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--lmax", type=int, default=6)
    s.add_argument("--mbound", type=int, default=29)
    s.add_argument("--source", choices=("paper", "derived"), default="paper")
    s.set_defaults(func=cmd_structure)

    t = sub.add_parser("transform", help="carry a K-type solution to a time-dependent potential")
    t.add_argument("--potential", required=True,
                   help="'g2=..; g1=..; g0=..; lambda=..; T=..' or a preset name")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--l", type=int, required=True)
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--grid", default="-0.5:0.5:101,0.5:2.0:151", help="t0:t1:nt,x0:x1:nx")
    t.add_argument("--multiplier", choices=MULTIPLIERS, default="verbatim")
    t.add_argument("--step", type=float, default=1e-3, help="chi-system step")
    t.add_argument("--csv", default="-", help="CSV output path ('-' for stdout)")
    t.add_argument("--report", default=None, help="residual JSON path")
    t.set_defaults(func=cmd_transform)

    b = sub.add_parser("table", help="CSV catalog of K-types")
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--lmax", type=int, default=6)
    b.add_argument("--mbound", type=int, default=29)
    b.add_argument("--theta", type=float, default=0.0)
    b.add_argument("--y", type=float, default=1.0)
    b.set_defaults(func=cmd_table)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InadmissibleIndexError, WindowError, PotentialSpecError, TransformError,
            ChiSystemError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
