"""Command line entry point: ``gtwlab scan|check|trace|selftest``."""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import scan as scanmod
from .case_analysis import TRACES
from .contact_frame import DomainError
from .gtw import PredictorInapplicable, TorsionFamily, condition_residuals, gtw_parallelism_residuals, typeA_residual_predictor
from .hypersurface_models import classify_type_a, geodesic_sphere, hopf_model, nonhopf_model, tube_a2
from .scan import ConfigError

EXIT_CONFIG = 2
EXIT_DISCREPANCY = 3

TRACE_NOTE = (
    "nonhopf-skew: the published non-Hopf skew-symmetric result is stated for "
    "k*g(A xi, xi) = 1 while its derivation assumes k*alpha != 1; the replay "
    "follows the derivation and reports ScopeViolation at k*alpha = 1."
)


def _radius(text: str) -> float:
    try:
        return scanmod._parse_radius(text if "pi" in text else float(text), "--r")[0]
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gtwlab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scan", help="evaluate a model x k grid from a JSON config")
    s.add_argument("config_path", nargs="?", help="config file (same as --config)")
    s.add_argument("--config", dest="config_opt")
    s.add_argument("--format", choices=["csv", "json"])
    s.add_argument("--output")
    s.add_argument("--tol", type=float, help="residual_zero_tol override")
    s.add_argument("--seed", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--traces", action="store_true", help="embed case traces (json only)")
    s.add_argument("--strict", action="store_true", help="exit 3 if any discrepancy_flag is set")

    c = sub.add_parser("check", help="residual report for one model")
    c.add_argument("kind", choices=["A1", "A2", "HopfGeneric", "NonHopf"])
    c.add_argument("--r", type=_radius)
    c.add_argument("--n", type=int)
    c.add_argument("--m", type=int, default=3)
    c.add_argument("--alpha", type=float)
    c.add_argument("--beta", type=float)
    c.add_argument("--lambdas", type=_floats, help="comma separated, one per phi-plane")
    c.add_argument("--du", type=_floats, help="comma separated D_U curvatures, one per phi-plane")
    c.add_argument("--k", type=float, action="append", required=True)

    t = sub.add_parser("trace", help="replay a scalar case analysis", epilog=TRACE_NOTE)
    t.add_argument("case", choices=sorted(TRACES))
    t.add_argument("--k", type=float, required=True)
    t.add_argument("--alpha", type=float)
    t.add_argument("--beta", type=float)

    st = sub.add_parser("selftest", help="run the invariant suite")
    st.add_argument("--seed", type=int, default=0)
    return p


def _cmd_scan(args) -> int:
    path = args.config_opt or args.config_path
    if not path:
        print("error: scan needs a config path", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = scanmod.load_config(path)
    except FileNotFoundError:
        print(f"config error: {path}: no such file", file=sys.stderr)
        return EXIT_CONFIG
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.tol is not None:
        cfg.residual_zero_tol = args.tol
    if args.seed is not None:
        cfg.seed = args.seed
    if args.traces:
        cfg.include_traces = True
    fmt = args.format or cfg.output_format
    out = args.output or cfg.output_path
    result = scanmod.run_scan(cfg, workers=args.workers)
    try:
        payload = scanmod.write_report(result, fmt, out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not out:
        sys.stdout.write(payload.decode())
    if args.strict and result.any_discrepancy:
        return EXIT_DISCREPANCY
    return 0


def _model_from_args(args):
    if args.kind == "A1":
        return geodesic_sphere(args.r, args.m)
    if args.kind == "A2":
        return tube_a2(args.r, args.n, args.m)
    if args.kind == "HopfGeneric":
        return hopf_model(args.m, args.alpha, args.lambdas or [])
    return nonhopf_model(args.m, args.alpha, args.beta, [(x, True) for x in (args.du or [])])


def _cmd_check(args) -> int:
    try:
        model = _model_from_args(args)
    except (DomainError, TypeError) as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    is_a, comm = classify_type_a(model)
    out = {"model": model.describe(), "type_a": is_a, "commutator_residual": comm, "k": []}
    for k in args.k:
        tf = TorsionFamily(model, k)
        rep = condition_residuals(tf)
        entry = {"k": k, **rep.as_dict(), "parallelism": gtw_parallelism_residuals(tf).as_dict()}
        try:
            pred = typeA_residual_predictor(tf)
            entry["predicted"] = {
                "sym_residual": pred.sym_residual,
                "skew_residual": pred.skew_residual,
                "vanish_residual": pred.vanish_residual,
            }
        except PredictorInapplicable:
            entry["predicted"] = None
        out["k"].append(entry)
    print(json.dumps(out, indent=1))
    return 0


def _cmd_trace(args) -> int:
    fn = TRACES[args.case]
    try:
        if args.case == "hopf-symmetric":
            tr = fn(args.alpha, args.k)
        elif args.case == "hopf-skew":
            tr = fn(args.k)
        elif args.case == "nonhopf-symmetric":
            tr = fn(args.k, args.beta)
        else:
            tr = fn(args.k, args.alpha, args.beta)
    except (DomainError, TypeError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(json.dumps(tr.to_dict(), indent=1))
    return 0


def _cmd_selftest(args) -> int:
    from .selftest import run_selftest

    results = run_selftest(args.seed)
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    return {
        "scan": _cmd_scan,
        "check": _cmd_check,
        "trace": _cmd_trace,
        "selftest": _cmd_selftest,
    }[args.command](args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
