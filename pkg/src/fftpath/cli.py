"""Command-line interface.

Commands: plan, bench-edges, compare, verify, export-graph.  A cost-model
file puts a command in synthetic mode: fully deterministic, no hardware
timing.  Without one, commands that need weights measure them on the host.

Exit codes: 0 success, 2 usage/validation error, 3 verification failure,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import kernels
from .errors import FFTPathError
from .graph import build_graph, format_graph, named_arrangements, shortest_path
from .measure import (
    TimingConfig,
    builtin_model_names,
    load_builtin_model,
    load_cost_model,
    measure_all_edges,
    save_cost_model,
)
from .planner import (
    PerfReport,
    VERIFY_TOLERANCE,
    compare_arrangements,
    compile_plan,
    execute_plan,
    gflops,
    per_pass_profile,
    verify_arrangements,
)
from .numerics import init_signal, rel_l2_error

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_IO = 4

MAX_N = 1 << 20


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1024, help="transform size (power of two, 4..2**20)")
    common.add_argument("--context-order", type=int, choices=(0, 1), default=1)
    common.add_argument("--trials", type=_positive_int, default=50)
    common.add_argument("--warmup", type=_positive_int, default=5)
    common.add_argument("--runs", type=_positive_int, default=3)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--cost-model", metavar="PATH",
                        help="cost-model document or builtin name (enables synthetic mode)")
    common.add_argument("--output", choices=("text", "json", "csv"), default="text")
    common.add_argument("--vector", choices=("on", "off"), default=None,
                        help="on: lane-parallel numpy kernels; off: scalar kernels")

    parser = argparse.ArgumentParser(prog="fftpath", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", parents=[common], help="search, verify and report the best arrangement")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("bench-edges", parents=[common], help="measure every edge and save the cost model")
    p.add_argument("--save-model", metavar="PATH", required=True)
    p.set_defaults(func=cmd_bench_edges)

    p = sub.add_parser("compare", parents=[common], help="run the fixed comparison table")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", parents=[common], help="check arrangements against the direct DFT")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-graph", parents=[common], help="write the decomposition graph as text")
    p.add_argument("--export", metavar="PATH", required=True)
    p.set_defaults(func=cmd_export_graph)
    return parser


def _resolve_backend(args) -> str | None:
    if args.vector == "on":
        return "numpy"
    if args.vector == "off":
        return "numba" if kernels.jit.HAVE_NUMBA else "python"
    return None


def _timing_config(args) -> TimingConfig:
    return TimingConfig(trials=args.trials, warmup=args.warmup, runs=args.runs, seed=args.seed)


def _check_n(n: int) -> int:
    if n < 4 or n > MAX_N or n & (n - 1):
        raise FFTPathError(f"--n must be a power of two in 4..{MAX_N}, got {n}")
    return n.bit_length() - 1


def _load_model(spec: str):
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            return load_cost_model(fh.read())
    if spec in builtin_model_names():
        return load_builtin_model(spec)
    raise OSError(f"cost model not found: {spec!r} is neither a file nor a builtin name")


def _models_for(args, L):
    """(search model matching --context-order, context-aware model if any)."""
    model = _load_model(args.cost_model)
    if model.L != L:
        raise FFTPathError(f"cost model is for L={model.L}, but --n implies L={L}")
    model1 = model if model.context_order == 1 else None
    search = model.collapse() if args.context_order == 0 else model
    return search, model1


def _emit(args, payload: dict, text: str, csv_rows: list[dict] | None = None) -> None:
    if args.output == "json":
        print(json.dumps(payload, indent=2))
    elif args.output == "csv":
        rows = csv_rows if csv_rows is not None else [payload]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        print(buf.getvalue(), end="")
    else:
        print(text)


def cmd_plan(args) -> int:
    L = _check_n(args.n)
    backend = _resolve_backend(args)
    cfg = _timing_config(args)
    g = build_graph(L, args.context_order)
    synthetic = args.cost_model is not None
    if synthetic:
        search_model, _ = _models_for(args, L)
    else:
        search_model = measure_all_edges(g, args.n, cfg, backend)

    arrangement = shortest_path(g, search_model)
    plan = compile_plan(arrangement, args.n)

    buf = init_signal(args.n, args.seed)
    reference = kernels.reference_dft(buf)
    execute_plan(plan, buf, backend)
    error = rel_l2_error(buf, reference)
    verified = error <= VERIFY_TOLERANCE

    predicted = arrangement.cost
    if synthetic:
        observed = None
        basis = predicted
    else:
        from .planner import _time_plan

        observed = _time_plan(plan, cfg, backend).ns
        basis = observed

    rate = gflops(basis, args.n)
    text = "\n".join(
        [
            f"arrangement:  {arrangement.describe()}",
            f"predicted:    {predicted:.1f} ns",
            f"observed:     {'n/a (synthetic mode)' if observed is None else f'{observed:.1f} ns'}",
            f"gflops:       {rate:.2f}",
            f"verification: rel L2 error {error:.3e} (tolerance {VERIFY_TOLERANCE:g})"
            f" -> {'ok' if verified else 'FAILED'}",
        ]
    )
    payload = {
        "n": args.n,
        "context_order": args.context_order,
        "arrangement": arrangement.describe(),
        "predicted_ns": predicted,
        "observed_ns": observed,
        "gflops": rate,
        "verify_error": error,
        "verified": verified,
    }
    _emit(args, payload, text)
    return EXIT_OK if verified else EXIT_VERIFY


def cmd_bench_edges(args) -> int:
    L = _check_n(args.n)
    if args.cost_model is not None:
        raise FFTPathError("bench-edges measures on hardware; drop --cost-model")
    backend = _resolve_backend(args)
    cfg = _timing_config(args)
    g = build_graph(L, args.context_order)

    spreads = []
    count = 0

    def observe(_key, result):
        nonlocal count
        count += 1
        spreads.append(result.spread)

    model = measure_all_edges(g, args.n, cfg, backend, on_measurement=observe)
    document = save_cost_model(model)
    with open(args.save_model, "w", encoding="utf-8") as fh:
        fh.write(document)

    rows = per_pass_profile(args.n, cfg, backend)
    header = f"{'Pass':>8} {'Stride':>7} {'Time (ns)':>12} {'GFLOPS':>8}"
    lines = [
        f"measured {count} edges -> {args.save_model}"
        f" (max run spread {100 * max(spreads):.1f}%)",
        header,
    ]
    for row in rows:
        stride = "-" if row.stride is None else str(row.stride)
        lines.append(f"{row.label:>8} {stride:>7} {row.time_ns:>12.1f} {row.gflops:>8.2f}")
    payload = {
        "n": args.n,
        "context_order": args.context_order,
        "measurements": count,
        "model_path": args.save_model,
        "passes": [vars(row) for row in rows],
    }
    csv_rows = [
        {
            "label": row.label,
            "stride": row.stride if row.stride is not None else "",
            "time_ns": repr(row.time_ns),
            "gflops": repr(row.gflops),
        }
        for row in rows
    ]
    _emit(args, payload, "\n".join(lines), csv_rows)
    return EXIT_OK


def _report_payload(report: PerfReport) -> dict:
    return {
        "n": report.n,
        "mode": report.mode,
        "rows": [vars(row) for row in report.rows],
    }


def _report_csv_rows(report: PerfReport) -> list[dict]:
    return [
        {
            "name": row.name,
            "time_ns": repr(row.time_ns),
            "gflops": repr(row.gflops),
            "percent_of_best": repr(row.percent_of_best),
        }
        for row in report.rows
    ]


def _report_text(report: PerfReport) -> str:
    lines = [f"{'Algorithm':<34} {'Time (ns)':>10} {'GFLOPS':>8} {'% of best':>10}"]
    for row in report.rows:
        lines.append(
            f"{row.name:<34} {row.time_ns:>10.0f} {row.gflops:>8.1f}"
            f" {row.percent_of_best:>9.0f}%"
        )
    return "\n".join(lines)


def cmd_compare(args) -> int:
    L = _check_n(args.n)
    if L != 10:
        raise FFTPathError("compare uses the fixed 1024-point table; run with --n 1024")
    backend = _resolve_backend(args)
    cfg = _timing_config(args)
    synthetic = args.cost_model is not None
    model0 = model1 = None
    if synthetic:
        search, model1 = _models_for(args, L)
        model0 = search if search.context_order == 0 else search.collapse()
        if model1 is None:
            model1 = search if search.context_order == 1 else None
    report = compare_arrangements(
        named_arrangements(10),
        args.n,
        cfg,
        model0=model0,
        model1=model1,
        synthetic=synthetic,
        backend=backend,
    )
    _emit(args, _report_payload(report), _report_text(report), _report_csv_rows(report))
    return EXIT_OK


def cmd_verify(args) -> int:
    _check_n(args.n)
    backend = _resolve_backend(args)
    seeds = [args.seed + i for i in range(3)]
    worst, failures = verify_arrangements(args.n, seeds, backend=backend)
    lines = [f"max rel L2 error over checked arrangements: {worst:.3e}"]
    for name, seed, err in failures:
        lines.append(f"FAILED: {name} (seed {seed}): {err:.3e} > {VERIFY_TOLERANCE:g}")
    payload = {
        "n": args.n,
        "max_error": worst,
        "tolerance": VERIFY_TOLERANCE,
        "failures": [
            {"arrangement": name, "seed": seed, "error": err} for name, seed, err in failures
        ],
    }
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if not failures else EXIT_VERIFY


def cmd_export_graph(args) -> int:
    L = _check_n(args.n)
    g = build_graph(L, args.context_order)
    model = None
    if args.cost_model is not None:
        model, _ = _models_for(args, L)
    text = format_graph(g, model)
    with open(args.export, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {len(g.nodes)} nodes, {len(g.edges)} edges to {args.export}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except FFTPathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main() -> None:  # pragma: no cover - setuptools entry point
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    console_main()
