"""Command-line interface: ``dynseq generate|discrepancy|table|scan|check``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys

import numpy as np

from . import diagnostics, io, tables
from .discrepancy import star_disc_1d, star_disc_dd, xn_embed
from .estimator import make_kernel
from .exceptions import InsufficientPoints, NoAdmissibleRegion, UnsupportedDimension
from .greedy import GreedyConfig, build_sequence

log = logging.getLogger("dynseq")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_REGION = 3
EXIT_DIMENSION = 4
EXIT_CERTIFICATE = 5


class UsageError(Exception):
    pass


def _floats(text):
    try:
        return [float(v) for v in text.replace(";", ",").split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _multipliers(text):
    return tuple(int(v) if float(v).is_integer() else float(v) for v in _floats(text))


def _add_greedy_options(p):
    p.add_argument("--dim", type=int, default=1)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--initial", type=_floats, help="initial coordinates, row-major")
    src.add_argument("--initial-file", help="CSV of initial points")
    p.add_argument("--kernel", choices=["logsin", "fourier", "cosine-series"], default="logsin")
    p.add_argument("--coefficients", type=_floats, help="cosine-series coefficients c_1..c_M")
    p.add_argument("--fourier-m", type=int, help="fixed truncation degree (with --fourier-m-rule none)")
    p.add_argument("--fourier-m-rule", default="equal-n", help="equal-n | mult:C | none")
    p.add_argument("--exclusion-exponent", type=int, default=10)
    p.add_argument("--grid", type=int)
    p.add_argument("--engine", choices=["direct", "spectral"], default="direct")
    p.add_argument("--cert-mults", type=_multipliers, default=(1, 10, 100),
                   help="Fourier certificate degrees as multiples of N")
    p.add_argument("--threads", type=int, default=1)


def _initial(args):
    if args.initial_file:
        X = io.read_points_csv(args.initial_file)
    elif args.initial:
        X = np.asarray(args.initial, dtype=np.float64)
        if X.size % args.dim:
            raise UsageError(f"--initial has {X.size} values, not a multiple of --dim {args.dim}")
        X = X.reshape(-1, args.dim)
    else:
        raise UsageError("one of --initial or --initial-file is required")
    if X.shape[1] != args.dim:
        raise UsageError(f"initial points have dimension {X.shape[1]}, --dim is {args.dim}")
    if np.any(X < 0) or np.any(X > 1):
        raise UsageError("initial coordinates must lie in [0, 1]")
    return X


def _config(args):
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    rule = None if args.fourier_m_rule == "none" or args.kernel != "fourier" else args.fourier_m_rule
    try:
        kernel = make_kernel(args.kernel, args.dim, args.fourier_m, args.coefficients)
        return GreedyConfig(
            kernel=kernel,
            exclusion_exponent=args.exclusion_exponent,
            fourier_m_rule=rule,
            grid=args.grid,
            engine=args.engine,
            certificate_multipliers=args.cert_mults,
            n_jobs=args.threads,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_generate(args):
    X = _initial(args)
    config = _config(args)
    if args.count < X.shape[0]:
        raise UsageError("--count is smaller than the initial set")
    P, steps = build_sequence(X, args.count, config)
    io.write_points_csv(args.out, P.points)
    outputs = [args.out]
    if args.steps:
        io.write_steps_jsonl(args.steps, steps)
        outputs.append(args.steps)
    io.write_manifest(args.out, "generate", config.to_dict() | {"initial": X.tolist(),
                      "count": args.count}, outputs, [args.initial_file] if args.initial_file else [])
    log.info("wrote %d points to %s", len(P), args.out)
    return EXIT_OK


def cmd_discrepancy(args):
    X = io.read_points_csv(args.input)
    if args.embed_xn:
        if X.shape[1] != 1:
            raise UsageError("--embed-xn needs a one-dimensional sequence")
        report = star_disc_dd(xn_embed(X, X.shape[0]))
    elif X.shape[1] == 1:
        report = star_disc_1d(X)
    else:
        report = star_disc_dd(X)
    io.write_json(args.out, report.to_dict() | {"embed_xn": bool(args.embed_xn)})
    return EXIT_OK


def _write_cells(path, cells):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["table", "column", "N", "reference", "computed", "deviation", "tolerance", "pass"])
        for c in cells:
            w.writerow([c.table, c.column, c.N, c.reference, f"{c.computed:.6f}",
                        f"{c.deviation:.6f}", c.tolerance, "pass" if c.ok else "FAIL"])


def cmd_table(args):
    config = GreedyConfig(n_jobs=args.threads)
    if args.which == 1:
        cells = tables.table1(args.columns, args.index_origin, config)
    else:
        if args.columns == "baselines":
            raise UsageError("table 2 has no baseline columns")
        cells = tables.table2(config)
    _write_cells(args.out, cells)
    failed = [c for c in cells if not c.ok]
    for c in failed:
        log.warning("table %d %s N=%d: computed %.4f, reference %.3f (tolerance %.3f)",
                    c.table, c.column, c.N, c.computed, c.reference, c.tolerance)
    return EXIT_CERTIFICATE if failed else EXIT_OK


def cmd_scan(args):
    X = _initial(args)
    config = _config(args)
    if args.max_n <= X.shape[0]:
        raise UsageError("--max-n must exceed the number of initial points")
    if args.stride < 1:
        raise UsageError("--stride must be positive")
    report, P, _ = diagnostics.conjecture_scan(X, args.max_n, config, args.stride)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["N", "discrepancy", "prefix_discrepancy", "log_ratio", "sqrt_ratio"])
        for r in report.rows:
            w.writerow([r.N] + [io.format_float(v) for v in
                                (r.discrepancy, r.prefix_discrepancy, r.log_ratio, r.sqrt_ratio)])
    if args.plot_data:
        with open(args.plot_data, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["N", "discrepancy"])
            for r in report.rows:
                w.writerow([r.N, io.format_float(r.discrepancy)])
    io.write_manifest(args.out, "scan", config.to_dict() | {"initial": X.tolist(),
                      "max_n": args.max_n, "stride": args.stride},
                      [args.out] + ([args.plot_data] if args.plot_data else []))
    print(f"rows={len(report.rows)} max_log_ratio={report.max_log_ratio:.6f} "
          f"max_sqrt_ratio={report.max_sqrt_ratio:.6f}")
    return EXIT_OK


def _check_lemma3(P, steps, args):
    mult = args.m_mult
    results = []
    if P is not None:
        first = steps[0].index if steps else 2
        for n in range(max(first, args.min_index), P.shape[0] + 1):
            M = int(mult * n)
            value = diagnostics.lemma3_negativity(P[:n - 1], P[n - 1], M)
            results.append({"index": n, "M": M, "value": value, "pass": value <= args.tol})
    else:
        key = f"lemma3_m{mult:g}"
        for rec in steps:
            if rec.index < args.min_index:
                continue
            if key not in rec.certificates:
                raise UsageError(f"steps file has no {key} certificate; pass --points")
            value = rec.certificates[key]
            results.append({"index": rec.index, "M": int(mult * rec.index), "value": value,
                            "pass": value <= args.tol})
    failing = [r["index"] for r in results if not r["pass"]]
    return {"hard": True, "steps": results, "pass": not failing,
            "failing_index": failing[0] if failing else None, "tolerance": args.tol}


def _check_theorem3(P, steps):
    if P is None:
        values = [rec.certificates.get("theorem3") for rec in steps]
        rows = [{"index": rec.index, "value": v, "le_one": v <= 1.0, "le_mean": v <= rec.index - 1 + 1e-9}
                for rec, v in zip(steps, values) if v is not None]
    else:
        first = steps[0].index if steps else 2
        rows = []
        for n in range(first, P.shape[0] + 1):
            rep = diagnostics.theorem3_report(P[:n - 1], P[n - 1], n)
            rows.append({"index": n} | rep)
    failing = [r["index"] for r in rows if not r["le_mean"]]
    frac = sum(r["le_one"] for r in rows) / len(rows) if rows else float("nan")
    return {"hard": True, "steps": rows, "fraction_le_one": frac, "pass": not failing,
            "failing_index": failing[0] if failing else None}


def cmd_check(args):
    if not (args.lemma3 or args.theorem3 or args.dyadic or args.min_energy):
        raise UsageError("select at least one of --lemma3, --theorem3, --dyadic, --min-energy")
    if args.points is None and args.steps is None:
        raise UsageError("one of --points or --steps is required")
    P = io.read_points_csv(args.points) if args.points else None
    steps = io.read_steps_jsonl(args.steps) if args.steps else []
    if P is None and (args.dyadic or args.min_energy):
        raise UsageError("--dyadic and --min-energy need --points")
    report = {}
    if args.lemma3:
        if P is not None and P.shape[1] != 1:
            raise UsageError("--lemma3 needs a one-dimensional sequence")
        report["lemma3"] = _check_lemma3(P, steps, args)
    if args.theorem3:
        if P is not None and P.shape[1] < 2:
            raise UsageError("--theorem3 needs a sequence in d >= 2")
        report["theorem3"] = _check_theorem3(P, steps)
    if args.dyadic:
        ok = diagnostics.dyadic_block_check(P, args.depth, args.dyadic_tol)
        report["dyadic"] = {"hard": True, "depth": args.depth, "pass": ok}
    if args.min_energy:
        n = P.shape[0]
        r = max(float(n + 1) ** -args.exclusion_exponent, 1e-15)
        x, value = diagnostics.min_energy_report(P, r)
        report["min_energy"] = {"hard": False, "x": x, "value": value,
                                "margin": -1.0 / n**2, "below_margin": value <= -1.0 / n**2}
    report["pass"] = all(v["pass"] for v in report.values() if isinstance(v, dict) and v.get("hard"))
    io.write_json(args.out, report)
    return EXIT_OK if report["pass"] else EXIT_CERTIFICATE


def build_parser():
    parser = argparse.ArgumentParser(prog="dynseq", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a greedy sequence")
    _add_greedy_options(p)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--steps")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("discrepancy", help="exact star discrepancy of a points file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--embed-xn", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_discrepancy)

    p = sub.add_parser("table", help="regenerate a published table")
    p.add_argument("--which", type=int, choices=[1, 2], required=True)
    p.add_argument("--columns", choices=["all", "baselines", "greedy"], default="all")
    p.add_argument("--index-origin", type=int, choices=[0, 1], default=1)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("scan", help="discrepancy growth of a greedy sequence")
    _add_greedy_options(p)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--plot-data")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("check", help="evaluate per-step certificates")
    p.add_argument("--points")
    p.add_argument("--steps")
    p.add_argument("--lemma3", action="store_true")
    p.add_argument("--m-mult", type=float, default=10)
    p.add_argument("--min-index", type=int, default=8)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--theorem3", action="store_true")
    p.add_argument("--dyadic", action="store_true")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--dyadic-tol", type=float, default=1e-7)
    p.add_argument("--min-energy", action="store_true")
    p.add_argument("--exclusion-exponent", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, io.MalformedInput, InsufficientPoints) as exc:
        print(f"dynseq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoAdmissibleRegion as exc:
        print(f"dynseq {args.command}: no admissible region: {exc}", file=sys.stderr)
        return EXIT_NO_REGION
    except UnsupportedDimension as exc:
        print(f"dynseq {args.command}: {exc}", file=sys.stderr)
        return EXIT_DIMENSION


if __name__ == "__main__":
    sys.exit(main())
