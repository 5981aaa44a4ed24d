"""Compare kernel backends: numba-compiled scalar loops vs the pure-numpy
lane-parallel path (vs uncompiled loops, optionally).

Times each pass type and a full 1024-point plan under every backend with
the same warmup/median protocol the planner uses, then prints a table with
speedups relative to numpy.

Usage:
    python benchmarks/bench_backends.py [--n 1024] [--trials 30] [--with-python]
"""

import argparse
import statistics
import time

from fftpath.graph import EdgeType, make_arrangement
from fftpath.kernels import available_backends, run_pass
from fftpath.numerics import fill_signal, init_signal, log2_size, make_twiddles
from fftpath.planner import compile_plan, execute_plan


def time_case(setup, fn, trials, warmup):
    durations = []
    for i in range(warmup + trials):
        setup()
        t0 = time.perf_counter_ns()
        fn()
        t1 = time.perf_counter_ns()
        durations.append(t1 - t0)
    return statistics.median(durations[warmup:])


def bench(n, trials, warmup, backends):
    L = log2_size(n)
    tw = make_twiddles(n)
    buf = init_signal(n, 42)
    cases = [
        ("radix-2 pass @0", EdgeType.R2, 0),
        ("radix-4 pass @0", EdgeType.R4, 0),
        ("radix-8 pass @0", EdgeType.R8, 0),
        ("fused-8 tail", EdgeType.F8, L - 3),
        ("fused-32 tail", EdgeType.F32, L - 5),
    ]
    plan = compile_plan(make_arrangement([EdgeType.R4, EdgeType.R2, EdgeType.R4,
                                          EdgeType.R4, EdgeType.F8]), n)

    results = {}
    for label, kind, s in cases:
        if kind.is_fused and s < 0:
            continue
        row = {}
        for backend in backends:
            # warm the JIT outside the timed region
            run_pass(init_signal(n, 1), kind, s, tw, backend)
            row[backend] = time_case(
                lambda: fill_signal(buf, 42),
                lambda: run_pass(buf, kind, s, tw, backend),
                trials, warmup,
            )
        results[label] = row
    if n == 1024:
        row = {}
        for backend in backends:
            execute_plan(plan, init_signal(n, 1), backend)
            row[backend] = time_case(
                lambda: fill_signal(buf, 42),
                lambda: execute_plan(plan, buf, backend),
                trials, warmup,
            )
        results["full plan R4 R2 R4 R4 F8"] = row
    return results


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1024)
    parser.add_argument("--trials", type=int, default=30)
    parser.add_argument("--warmup", type=int, default=3)
    parser.add_argument("--with-python", action="store_true",
                        help="also time the uncompiled loops (slow)")
    args = parser.parse_args()

    backends = [b for b in available_backends() if b != "python" or args.with_python]
    print(f"n = {args.n}, median of {args.trials} trials, backends: {', '.join(backends)}")
    results = bench(args.n, args.trials, args.warmup, backends)

    header = f"{'case':<26}" + "".join(f"{b:>14}" for b in backends) + f"{'best/numpy':>12}"
    print(header)
    for label, row in results.items():
        cells = "".join(f"{row[b] / 1000:>12.1f}us" for b in backends)
        ratio = row["numpy"] / min(row.values())
        print(f"{label:<26}{cells}{ratio:>11.2f}x")


if __name__ == "__main__":
    main()
