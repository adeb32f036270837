"""Command-line front end: ``frobcount <command> [options]``.

Options may also come from an INI file (``--config job.ini``, section ``[job]``,
keys spelled like the long flags with dashes or underscores); explicit flags
win over the file.

Exit codes: 0 ok, 1 usage error, 2 verification failure, 3 budget refusal.
"""

from __future__ import annotations

import argparse
import configparser
import contextlib
import csv
import json
import logging
import sys
from fractions import Fraction
from itertools import permutations

from . import census as C
from . import dirichlet as D
from .cyclofactor import factor_xd_minus_1
from .fppoly import to_str
from .invariants import run_suite
from .tame import classify, enumerate_cyclic_cd, enumerate_tame

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("frobcount")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _parse_I(text: str, factors) -> list[tuple]:
    if text in (None, "", "all", "all-subsets"):
        return C.all_subsets(factors)
    out = []
    for chunk in text.split(";"):
        idx = tuple(sorted({int(t) for t in chunk.replace(" ", "").split(",") if t}))
        if not idx or any(i < 1 or i > factors.count for i in idx):
            raise UsageError(f"factor indices {chunk!r} outside 1..{factors.count}")
        out.append(idx)
    return out


def _parse_L(text: str):
    if text in (None, "", "all"):
        return "all"
    try:
        e, f, t = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"L must be 'all' or e,f,twist, got {text!r}") from exc
    return (e, f, t)


def _select(ctxs, L):
    if L == "all":
        return ctxs
    sel = [c for c in ctxs if c.L.label == L]
    if not sel:
        raise UsageError(f"L={L} is not a cyclic extension for these parameters")
    return sel


def _factors(args):
    try:
        return factor_xd_minus_1(args.p, args.d)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _contexts(args, val_bound: int = 1):
    try:
        return C.contexts(args.p, args.r, args.d, val_bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- commands ---------------------------------------------------------------


def cmd_factors(args, out) -> int:
    fa = _factors(args)
    for i in fa.indices():
        print(f"f_{i} = {to_str(fa.factor(i))}\tell={fa.ell(i)}\tcoset={list(fa.cosets[i - 1])}", file=out)
    return EXIT_OK


def cmd_tame(args, out) -> int:
    try:
        exts = enumerate_cyclic_cd(args.p, args.r, args.d)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    q = args.p**args.r
    print(f"# tame labels with e*f = {args.d} over F_{q}((t))", file=out)
    for e in range(1, args.d + 1):
        if args.d % e:
            continue
        for label in enumerate_tame(args.p, args.r, e, args.d // e):
            c = classify(label, args.p, args.r)
            print(f"{label}\tgalois={c.galois}\tabelian={c.abelian}\tcyclic={c.cyclic}", file=out)
    print(f"# {len(exts)} cyclic C_{args.d}-extensions", file=out)
    for L in exts:
        print(f"L={L.label}\tk={L.k}\tl={L.l}\tN={L.N}\ta={L.a}\tdisc={L.disc}", file=out)
    return EXIT_OK


def _census_tables(args) -> list:
    method, conv = args.method, args.convention
    fa = _factors(args)
    Is = _parse_I(args.I, fa)
    L = _parse_L(args.L)
    tables = []
    if method == "oracle":
        res = C.oracle_census(args.p, args.r, args.d, args.val_bound, budget=args.budget,
                              L_filter=None if L == "all" else [L])
        for I in Is:
            t = res.table(I, conv, L, args.x)
            if t.x_max < args.x:
                log.warning("valuation bound %d only covers disc <= %d for I=%s; table truncated "
                            "(raise --val-bound)", args.val_bound, t.x_max, list(I))
            tables.append(t)
        return tables
    ctxs = _select(_contexts(args), L)
    for I in Is:
        if method in ("closed", "tuple"):
            # pd counts have no tuple form; both methods give the closed N_I/Psi table there
            t = C.z_pd_exact(ctxs, I, args.x) if conv == "pd" else C.z_split_exact(ctxs, I, args.x)
        else:  # series
            if conv != "split":
                raise UsageError("the series method produces splitting-field counts only")
            coeffs = D.series_coeffs(D.assemble_phi(ctxs, I), args.x)
            counts = {}
            for x, c in enumerate(coeffs):
                if c.denominator != 1 or c < 0:
                    raise C.CountError(f"series coefficient {c} at u^{x} is not a count")
                if c:
                    counts[x] = int(c)
            t = C.CountTable(args.p, args.r, args.d, I, L, "split", "series", args.x, counts)
        tables.append(t)
    return tables


def cmd_census(args, out) -> int:
    if args.x is None:
        raise UsageError("census needs --x (disc bound)")
    tables = _census_tables(args)
    if args.csv:
        with _open_out(args.csv, out) as fh:
            _write_csv(tables, fh)
    if args.json:
        with _open_out(args.json, out) as fh:
            json.dump([t.to_json() for t in tables], fh, indent=1, sort_keys=True)
            fh.write("\n")
    if not args.csv and not args.json:
        _write_csv(tables, out)
    return EXIT_OK


@contextlib.contextmanager
def _open_out(path: str, out):
    """Open ``path`` for writing; ``-`` means the command's own output stream."""
    if path == "-":
        yield out
        return
    with open(path, "w", newline="") as fh:
        yield fh


def _write_csv(tables, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    for t in tables:
        fh.write(f"# p={t.p} r={t.r} d={t.d} I={list(t.I)} L={t.L} convention={t.convention}\n")
        w.writerow(["x", "count", "cumulative", "method"])
        for row in t.rows():
            w.writerow(row)


def cmd_series(args, out) -> int:
    fa = _factors(args)
    Is = _parse_I(args.I, fa)
    ctxs = _select(_contexts(args), _parse_L(args.L))
    report = []
    for I in Is:
        phi = D.assemble_phi(ctxs, I)
        coeffs = D.series_coeffs(phi, args.n)
        report.append({"I": list(I), "L": args.L or "all", "phi": phi.to_json(),
                       "coefficients": [_frac(c) for c in coeffs]})
        if not args.json:
            print(f"I={list(I)}: {len(phi.terms)} terms; coefficients to u^{args.n}:", file=out)
            print(" ".join(str(c) for c in coeffs), file=out)
    if args.json:
        with _open_out(args.json, out) as fh:
            json.dump({"p": args.p, "r": args.r, "d": args.d, "series": report}, fh, indent=1, sort_keys=True)
    return EXIT_OK


def cmd_poles(args, out) -> int:
    fa = _factors(args)
    report = []
    for I in _parse_I(args.I, fa):
        reports = [(tau, D.pole_report(args.p, args.d, [fa.ell(i) for i in tau])) for tau in permutations(I)]
        if not args.json:
            print(f"I={list(I)}\tsigma_max={_frac(max(pr.sigma_max for _, pr in reports))}", file=out)
        for tau, pr in reports:
            if not args.json:
                print(f"  tau={list(tau)}\tsigmas={[_frac(s) for s in pr.sigmas]}", file=out)
            report.append({"I": list(I), "tau": list(tau), **pr.to_json()})
    if args.json:
        with _open_out(args.json, out) as fh:
            json.dump(report, fh, indent=1, sort_keys=True)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    """Every cross-method equality and invariant suite for one (p, r, d)."""
    V = args.bound
    ctxs = _contexts(args, max(V, 1))
    fa = ctxs[0].factors
    failures = []

    def check(name, ok):
        print(f"{'ok  ' if ok else 'FAIL'} {name}", file=out)
        if not ok:
            failures.append(name)

    res = C.oracle_census(args.p, args.r, args.d, V, budget=args.budget)
    for I in C.all_subsets(fa):
        for L in ["all"] + res.labels:
            sel = _select(ctxs, L)
            o_pd = res.table(I, "pd", L)
            check(f"pd closed = oracle I={list(I)} L={L} x<={o_pd.x_max}",
                  not C.compare_tables(o_pd, C.z_pd_exact(sel, I, o_pd.x_max)))
            o_sp = res.table(I, "split", L)
            tup = C.z_split_exact(sel, I, o_sp.x_max)
            check(f"split tuple = oracle I={list(I)} L={L} x<={o_sp.x_max}", not C.compare_tables(o_sp, tup))
            coeffs = D.series_coeffs(D.assemble_phi(sel, I), o_sp.x_max)
            check(f"split series = tuple I={list(I)} L={L}", coeffs == [Fraction(c) for c in tup.series()])
        for ctx in ctxs:
            top = ctx.e * ctx.p * 3
            check(f"N_I inclusion-exclusion I={list(I)} L={ctx.L.label}",
                  all(C.closed_N(ctx, I, x)[0] == C.N_I_inclusion_exclusion(ctx, I, x) for x in range(top)))
        ell = fa.ell_of(I)
        poles_ok = True
        for tau in permutations(I):
            try:
                pr = D.pole_report(args.p, args.d, [fa.ell(i) for i in tau])
                poles_ok &= pr.sigma_max == D.sigma_max_formula(args.p, args.d, ell)
            except ArithmeticError:
                poles_ok = False
        for ctx in ctxs:
            poles_ok &= D.rightmost_pole(D.assemble_phi_L(ctx, I), ctx.F.q) == D.sigma_max_formula(args.p, args.d, ell)
        check(f"poles I={list(I)}", poles_ok)
        for conv in ("pd", "split"):
            _, _, est = C.growth_check(ctxs, I, conv)
            check(f"growth exponent {conv} I={list(I)} a={_frac(est.target)} a_hat={est.a_hat:.9f}", est.passed)
    for ctx in ctxs:
        for i in fa.indices():
            check(f"level counts L={ctx.L.label} i={i}",
                  all(C.closed_N_tilde(ctx, i, n) == C.N_tilde_formula(ctx, i, n) for n in range(1, 3 * ctx.e * ctx.p)))
    suite = run_suite(ctxs, draws=args.draws, val_bound=min(V, 4) or 1, seed=args.seed)
    for name, n in sorted(suite.failures.items()):
        check(f"invariant {name} ({suite.draws} module draws)", n == 0)
    print(f"{'PASS' if not failures else 'FAIL'}: {len(failures)} failure(s)", file=out)
    return EXIT_OK if not failures else EXIT_VERIFY


# -- argument handling ------------------------------------------------------

COMMANDS = {
    "factors": cmd_factors,
    "tame": cmd_tame,
    "census": cmd_census,
    "series": cmd_series,
    "poles": cmd_poles,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frobcount", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, need_r=True):
        sp.add_argument("--p", type=int)
        if need_r:
            sp.add_argument("--r", type=int)
        sp.add_argument("--d", type=int)
        sp.add_argument("--config", help="INI file with a [job] section")

    sp = sub.add_parser("factors", help="factor X^d - 1 over F_p")
    common(sp, need_r=False)
    sp = sub.add_parser("tame", help="list tame labels and the cyclic C_d-extensions")
    common(sp)
    sp = sub.add_parser("census", help="count tables by method")
    common(sp)
    sp.add_argument("--I", help="factor indices, e.g. 1,2 (';' separates several), or 'all'")
    sp.add_argument("--L", help="'all' or e,f,twist")
    sp.add_argument("--x", type=int, help="disc-exponent bound")
    sp.add_argument("--convention", choices=["pd", "split"])
    sp.add_argument("--method", choices=["closed", "tuple", "oracle", "series"])
    sp.add_argument("--val-bound", type=int, help="valuation bound for the oracle")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--csv")
    sp.add_argument("--json")
    sp = sub.add_parser("series", help="Dirichlet series Phi_L and its expansion")
    common(sp)
    sp.add_argument("--I")
    sp.add_argument("--L")
    sp.add_argument("--n", type=int)
    sp.add_argument("--json")
    sp = sub.add_parser("poles", help="exact pole data per ordering")
    common(sp)
    sp.add_argument("--I")
    sp.add_argument("--json")
    sp = sub.add_parser("verify", help="run every cross-check; exit 2 on any mismatch")
    common(sp)
    sp.add_argument("--bound", type=int, help="valuation bound for the oracle")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--draws", type=int)
    sp.add_argument("--seed", type=int)
    return parser


DEFAULTS = {
    "r": 1,
    "I": "all",
    "L": "all",
    "convention": "pd",
    "method": "closed",
    "val_bound": 6,
    "budget": C.DEFAULT_BUDGET,
    "n": 40,
    "bound": 6,
    "draws": 200,
    "seed": 0,
    "x": None,
    "csv": None,
    "json": None,
}
INT_KEYS = {"p", "r", "d", "x", "val_bound", "budget", "n", "bound", "draws", "seed"}


def _apply_config(args) -> None:
    file_values = {}
    if args.config:
        cp = configparser.ConfigParser()
        cp.optionxform = str  # keep I and L distinct from i and l
        if not cp.read(args.config):
            raise UsageError(f"cannot read config file {args.config}")
        if "job" not in cp:
            raise UsageError("config file has no [job] section")
        for key, val in cp["job"].items():
            key = key.replace("-", "_")
            file_values[key if key in ("I", "L") else key.lower()] = val
        for key in ("I", "L"):
            if key not in file_values and key.lower() in file_values:
                file_values[key] = file_values.pop(key.lower())
    for key, default in list(DEFAULTS.items()) + [("p", None), ("d", None)]:
        if not hasattr(args, key):
            continue
        if getattr(args, key) is not None:
            continue
        val = file_values.get(key, default)
        if val is not None and key in INT_KEYS:
            try:
                val = int(val)
            except ValueError as exc:
                raise UsageError(f"{key} must be an integer") from exc
        setattr(args, key, val)
    for key in ("p", "d"):
        if getattr(args, key, None) is None:
            raise UsageError(f"--{key} is required")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        _apply_config(args)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"frobcount: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except C.BudgetExceeded as exc:
        print(f"frobcount: refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (C.CountError, ArithmeticError) as exc:
        print(f"frobcount: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
