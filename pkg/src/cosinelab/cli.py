"""Command-line entry point: ``cosinelab {verify,classify,halve,converge}``.

Exit codes: 0 success (all invariants pass), 1 invariant failure,
2 usage or configuration error.
"""

import argparse
import datetime
import json
import os
import sys

from . import reports
from .errors import CosineLabError
from .families import load_family
from .sampling import SEED_ENV, resolve_seed
from .verification import DEFAULT_TOLERANCES, DEFAULT_TRIALS, SUITES, run_suites
from .zero_two import SamplingPlan, contraction_sequence, dyadic_refine, limsup_estimate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("json", "csv", "text")
CONFIG_KEYS = {"seed", "tolerances", "format", "suites", "family_files", "trials", "scale"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _tol_pair(text):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance {name!r} needs a number") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON run configuration")
    common.add_argument("--seed", type=lambda s: int(s, 0), help=f"random seed (fallback ${SEED_ENV})")
    common.add_argument("--format", choices=FORMATS, help="output format (default json)")
    common.add_argument("--reproducible", action="store_true", help="omit the timestamp field")
    common.add_argument("--tol", type=_tol_pair, action="append", default=[], metavar="NAME=VALUE",
                        help="override a named tolerance (repeatable)")

    parser = _Parser(prog="cosinelab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("verify", parents=[common], help="run every invariant suite")

    p = sub.add_parser("classify", parents=[common], help="estimate limsup ||C(t) - 1|| near 0")
    p.add_argument("family_file")
    p.add_argument("--t-init", type=float, default=1.0)
    p.add_argument("--scales", type=int, default=40)
    p.add_argument("--per-scale", type=int, default=4)
    p.add_argument("--convergents", type=int, default=30)
    p.add_argument("--multiples", type=int, default=1)

    p = sub.add_parser("halve", parents=[common], help="dyadic half-angle reconstruction trace")
    p.add_argument("family_file")
    p.add_argument("--t0", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=10)

    p = sub.add_parser("converge", parents=[common], help="table of the contraction envelope u_n")
    p.add_argument("--n", type=int, default=20)
    return parser


def load_config(args):
    cfg = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(cfg) - CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
    tolerances = dict(cfg.get("tolerances", {}))
    tolerances.update(dict(args.tol))
    bad = set(tolerances) - set(DEFAULT_TOLERANCES)
    if bad:
        raise UsageError(f"unknown tolerance names: {sorted(bad)}")
    suites = cfg.get("suites", list(SUITES))
    family_files = list(cfg.get("family_files", []))
    known = set(SUITES) | {"family_files"}
    if not isinstance(suites, list) or set(suites) - known:
        raise UsageError(f"suites must be a list drawn from {sorted(known)}")
    if "family_files" in suites:
        if not family_files:
            raise UsageError("suite 'family_files' requested but no family_files given")
        missing = [p for p in family_files if not os.path.isfile(p)]
        if missing:
            raise UsageError(f"family files not found: {missing}")
    trials = cfg.get("trials", {})
    if set(trials) - set(DEFAULT_TRIALS):
        raise UsageError(f"unknown trial keys: {sorted(set(trials) - set(DEFAULT_TRIALS))}")
    seed = args.seed if args.seed is not None else cfg.get("seed")
    return {
        "seed": resolve_seed(seed),
        "tolerances": tolerances,
        "format": args.format or cfg.get("format", "json"),
        "suites": [s for s in suites if s != "family_files"],
        "family_files": family_files if "family_files" in suites else [],
        "trials": trials,
        "scale": float(cfg.get("scale", 1.0)),
        "reproducible": args.reproducible,
    }


def _emit(out, cfg, kind, payload, header, rows, title):
    fmt = cfg["format"]
    if fmt == "json":
        stamp = None if cfg["reproducible"] else datetime.datetime.now(datetime.timezone.utc).isoformat()
        out.write(reports.dumps_json(reports.document(kind, payload, stamp)))
    elif fmt == "csv":
        out.write(reports.dumps_csv(header, rows))
    else:
        out.write(reports.dumps_text(header, rows, title))


def cmd_verify(cfg, out):
    if cfg["format"] not in FORMATS:
        raise UsageError(f"format must be one of {FORMATS}")
    results = run_suites(cfg["seed"], cfg["tolerances"], cfg["suites"], cfg["trials"],
                         cfg["scale"], cfg["family_files"])
    passed = all(r.passed for r in results)
    payload = {
        "seed": cfg["seed"],
        "passed": passed,
        "suites": cfg["suites"],
        "tolerances": {k: cfg["tolerances"][k] for k in sorted(cfg["tolerances"])},
        "results": results,
    }
    title = f"cosinelab verify  seed={cfg['seed']}  {'PASS' if passed else 'FAIL'}"
    _emit(out, cfg, "verify", payload, reports.VERIFY_COLUMNS, reports.verify_rows(results), title)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_classify(cfg, args, out):
    family = load_family(args.family_file)
    if family.real_argument:
        plan = SamplingPlan.geometric(args.t_init, args.scales, args.per_scale)
    else:
        plan = SamplingPlan.convergent(args.convergents, args.multiples)
    report = limsup_estimate(family, plan)
    payload = {"family": args.family_file, "plan": plan, "result": report}
    _emit(out, cfg, "classify", payload, reports.PROFILE_COLUMNS, reports.profile_rows(report),
          f"branch: {report.branch}")
    return EXIT_OK


def cmd_halve(cfg, args, out):
    family = load_family(args.family_file)
    if not family.real_argument:
        raise UsageError("halve needs a family with real arguments")
    trace = dyadic_refine(family, args.t0, args.steps,
                          tol=cfg["tolerances"].get("half_angle", DEFAULT_TOLERANCES["half_angle"]))
    payload = {"family": args.family_file, "trace": trace}
    title = f"eta = {trace.eta}  flagged steps: {[s.n for s in trace.flagged_steps]}"
    _emit(out, cfg, "halve", payload, reports.TRACE_COLUMNS, reports.trace_rows(trace), title)
    return EXIT_OK


def cmd_converge(cfg, args, out):
    if not 1 <= args.n <= 200:
        raise UsageError("--n must lie in [1, 200]")
    seq = contraction_sequence(args.n)
    rows = reports.converge_rows(seq)
    payload = {"rows": [{"n": n, "u_n": u, "ratio": r} for n, u, r in rows]}
    _emit(out, cfg, "converge", payload, reports.CONVERGE_COLUMNS, rows, "contraction envelope")
    return EXIT_OK


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = load_config(args)
        if args.command == "verify":
            return cmd_verify(cfg, out)
        if args.command == "classify":
            return cmd_classify(cfg, args, out)
        if args.command == "halve":
            return cmd_halve(cfg, args, out)
        return cmd_converge(cfg, args, out)
    except UsageError as exc:
        print(f"cosinelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, CosineLabError) as exc:
        print(f"cosinelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
