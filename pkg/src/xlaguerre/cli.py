"""Command-line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 usage or construction error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import checks, eop, numerics, susy
from .errors import ConvergenceFailure, XLaguerreError
from .exactmath import as_rational, rational_to_str
from .susy import Case, Convention, ExtensionSpec

log = logging.getLogger("xlaguerre")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _spec_from_args(args) -> ExtensionSpec:
    return ExtensionSpec(Case(args.case), args.l, args.m1, args.m2, as_rational(args.omega))


def _load(path: str):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read descriptor {path}: {exc}") from exc
    try:
        return susy.from_descriptor(data)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"invalid descriptor {path}: {exc}") from exc


def _add_spec_args(p, required: bool):
    p.add_argument("--case", choices=[c.value for c in Case], required=required)
    p.add_argument("--l", type=int, required=required)
    p.add_argument("--m1", type=int, default=0)
    p.add_argument("--m2", type=int, default=0)
    p.add_argument("--omega", default="1", help="positive rational, e.g. 1 or 3/2")


# -- subcommands ---------------------------------------------------------------

def cmd_construct(args) -> int:
    pot = susy.build_extension(_spec_from_args(args))
    desc = susy.to_descriptor(pot, Convention(args.convention))
    _write(_dump(desc), args.out)
    summary = sys.stdout if args.out not in (None, "-") else sys.stderr
    print(f"mu = {pot.mu}", file=summary)
    print(f"C = {rational_to_str(pot.C)}", file=summary)
    print("admissible: yes (g has no zero on z > 0)", file=summary)
    if pot.mu == 0:
        print("note: g is constant, V2 is a pure radial oscillator", file=summary)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    pot, conv = _load(args.pot_file)
    if args.convention:
        conv = Convention(args.convention)
    which = "V2" if conv is Convention.SHIFTED else "ext"
    formula = [susy.spectrum_energy(pot, nu, conv) for nu in range(args.levels)]
    if not args.numeric:
        print("nu\tformula")
        for nu, e in enumerate(formula):
            print(f"{nu}\t{rational_to_str(e)}")
        return EXIT_OK
    cfg = numerics.SolverConfig.for_omega(pot.omega, n_eigen=args.levels)
    try:
        rep = numerics.eig_solve(numerics.potential_terms(pot, which), cfg).compare(formula)
    except ConvergenceFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print("nu\tformula\tnumeric\trel_error")
    for nu, (e, x) in enumerate(zip(formula, rep.eigenvalues)):
        print(f"{nu}\t{rational_to_str(e)}\t{x:.12f}\t{abs(x - float(e)) / abs(float(e)):.3e}")
    print(f"max_rel_error\t{rep.max_rel_error:.3e}")
    return EXIT_OK


def cmd_eop(args) -> int:
    pot, _ = _load(args.pot_file)
    fam = eop.EopFamily.from_potential(pot)
    out = [eop.eop_solve(fam, fam.mu + nu).to_json(fam) for nu in range(args.nu_max + 1)]
    _write(_dump(out), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    ctx = checks.Context(alphas=checks.parse_alpha_set(args.alpha_set))
    if args.pot_file:
        ctx.potential, _ = _load(args.pot_file)
    elif args.case:
        if args.l is None:
            raise UsageError("--case needs --l")
        ctx.potential = susy.build_extension(_spec_from_args(args))
    if args.check:
        ids = args.check
    elif args.all or ctx.potential is None:
        ids = list(checks.MANIFEST)
    else:
        ids = [c for c in checks.MANIFEST if c not in checks.GLOBAL_ONLY]
    try:
        results = checks.run_checks(ids, ctx)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    return _report(results, args.report)


def cmd_golden(args) -> int:
    return _report(susy.golden_suite(include_corrected=not args.reference_only), args.report)


def _report(results, path) -> int:
    for r in results:
        print(f"{r.status.upper():4s}  {r.check_id}  residual={r.residual}")
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} passed")
    if path:
        Path(path).write_text(_dump({"entries": [r.to_dict() for r in results], "passed": ok}),
                              encoding="utf-8")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sample(args) -> int:
    pot, conv = _load(args.pot_file)
    if args.points <= 0 or args.x_max <= 0:
        raise UsageError("--points and --x-max must be positive")
    nus = [int(t) for t in args.nus.split(",") if t.strip()] if args.nus else []
    which = "V2" if conv is Convention.SHIFTED else "ext"
    x = args.x_max * np.arange(1, args.points + 1) / args.points
    cols = [x, numerics.sample_potential(numerics.potential_terms(pot, which), x)]
    fam = eop.EopFamily.from_potential(pot)
    for nu in nus:
        cols.append(numerics.wavefunction(fam, eop.eop_solve(fam, fam.mu + nu), x, pot.omega))
    try:
        fh = open(args.csv, "w", newline="", encoding="utf-8") if args.csv != "-" else None
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    with fh or contextlib.nullcontext(sys.stdout) as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["x", "V"] + [f"psi_{nu}" for nu in nus])
        for row in zip(*cols):
            w.writerow([f"{v:.17g}" for v in row])
    return EXIT_OK


def cmd_explore(args) -> int:
    alpha = as_rational(args.alpha)
    records = susy.enumerate_mu(args.mu, alpha)
    for r in records:
        flag = "admissible" if r["admissible"] else "has positive zero"
        print(f"{r['construction']:<18s} {flag:<18s} monic g = {r['g']}")
    distinct = susy.distinct_admissible(records)
    print(f"distinct admissible g_{args.mu} at alpha = {rational_to_str(alpha)}: {len(distinct)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="xlaguerre", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build an extended potential and write its descriptor")
    _add_spec_args(p, required=True)
    p.add_argument("--convention", choices=[c.value for c in Convention], default=Convention.SHIFTED.value)
    p.add_argument("--out", help="descriptor path (default: stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("spectrum", help="closed-form (and optionally numeric) energies")
    p.add_argument("pot_file")
    p.add_argument("--levels", type=int, default=5)
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--convention", choices=[c.value for c in Convention])
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("eop", help="emit monic exceptional polynomials y_{mu+nu}")
    p.add_argument("pot_file")
    p.add_argument("--nu-max", type=int, default=5)
    p.add_argument("--out")
    p.set_defaults(func=cmd_eop)

    p = sub.add_parser("verify", help="run exact and numeric identity checks")
    p.add_argument("pot_file", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--check", action="append", choices=list(checks.MANIFEST))
    p.add_argument("--alpha-set", default="3/2,5/2,7/2")
    p.add_argument("--report", help="write the JSON report here")
    _add_spec_args(p, required=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("golden", help="compare the cubic potentials with their reference closed forms")
    p.add_argument("--report")
    p.add_argument("--reference-only", action="store_true", help="skip the corrected type-II variant")
    p.set_defaults(func=cmd_golden)

    p = sub.add_parser("sample", help="export V and wavefunctions on a grid as CSV")
    p.add_argument("pot_file")
    p.add_argument("--x-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--nus", default="0")
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("explore-mu4", help="enumerate candidate g of a given degree (exploratory)")
    p.add_argument("--alpha", default="5/2")
    p.add_argument("--mu", type=int, default=4)
    p.set_defaults(func=cmd_explore)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, XLaguerreError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
