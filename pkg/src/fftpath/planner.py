"""Compile arrangements into executable plans, run and verify them, and
produce the comparison and per-pass performance reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import PlanError, ShapeError
from .graph import (
    Arrangement,
    EdgeType,
    build_graph,
    enumerate_paths,
    edge_types_at,
    make_arrangement,
    named_arrangements,
    shortest_path,
)
from .measure import CostModel, TimingConfig, _clobber, measure_all_edges, time_protocol, _measure_edge_detailed
from .numerics import (
    SplitComplexBuffer,
    TwiddleTable,
    fill_signal,
    init_signal,
    log2_size,
    make_twiddles,
    rel_l2_error,
)

__all__ = [
    "Plan",
    "PerfRow",
    "PassRow",
    "PerfReport",
    "compile_plan",
    "execute_plan",
    "gflops",
    "pass_gflops",
    "compare_arrangements",
    "per_pass_profile",
    "verify_arrangements",
    "sample_arrangements",
    "VERIFY_TOLERANCE",
]

VERIFY_TOLERANCE = 1e-5


@dataclass
class Plan:
    """Executable form of an arrangement: kernel invocations in order, the
    final output permutation, and the twiddle table they share."""

    n: int
    invocations: tuple[tuple[EdgeType, int], ...]
    permutation: np.ndarray
    twiddles: TwiddleTable
    arrangement: Arrangement


def compile_plan(arrangement: Arrangement, n: int) -> Plan:
    """Validate an arrangement against n and attach twiddles + reorder."""
    L = log2_size(n)
    spans = arrangement.spans
    if sum(spans) != L:
        raise PlanError(f"spans {list(spans)} sum to {sum(spans)}, need L={L}")
    expected = 0
    for i, (kind, s) in enumerate(arrangement.steps):
        if s != expected:
            raise PlanError(f"step {i} ({kind.name}) starts at {s}, expected {expected}")
        if kind.is_fused and s + kind.span != L:
            raise PlanError(f"fused edge {kind.name} must be terminal")
        expected += kind.span
    perm = kernels.output_permutation(spans, n)
    return Plan(n, arrangement.steps, perm, make_twiddles(n), arrangement)


def execute_plan(plan: Plan, buf: SplitComplexBuffer, backend: str | None = None) -> SplitComplexBuffer:
    """Run the plan in place on buf; the result is the natural-order DFT."""
    if buf.n != plan.n:
        raise ShapeError(f"buffer size {buf.n} does not match plan size {plan.n}")
    for kind, s in plan.invocations:
        kernels.run_pass(buf, kind, s, plan.twiddles, backend)
    out_re = np.empty_like(buf.re)
    out_im = np.empty_like(buf.im)
    out_re[plan.permutation] = buf.re
    out_im[plan.permutation] = buf.im
    buf.re[:] = out_re
    buf.im[:] = out_im
    return buf


def gflops(time_ns: float, n: int) -> float:
    """GFLOPS for a full transform, with the 5*n*log2(n) FLOP convention."""
    L = log2_size(n)
    if not time_ns > 0:
        raise ValueError(f"time must be positive, got {time_ns!r}")
    return (5.0 * n * L) / time_ns


def pass_gflops(time_ns: float, n: int, span: int) -> float:
    """GFLOPS for a single pass, charging 5*n FLOPs per stage spanned."""
    log2_size(n)
    if not time_ns > 0:
        raise ValueError(f"time must be positive, got {time_ns!r}")
    return (5.0 * n * span) / time_ns


@dataclass
class PerfRow:
    name: str
    arrangement: str
    time_ns: float
    gflops: float
    percent_of_best: float = 100.0
    predicted_ns: float | None = None


@dataclass
class PassRow:
    label: str
    pass_index: int | None
    stride: int | None
    time_ns: float
    gflops: float


@dataclass
class PerfReport:
    n: int
    mode: str  # "hardware" or "synthetic"
    rows: list[PerfRow] = field(default_factory=list)
    pass_rows: list[PassRow] = field(default_factory=list)


def _fill_percent_of_best(rows: list[PerfRow]) -> None:
    best = min(row.time_ns for row in rows)
    for row in rows:
        row.percent_of_best = 100.0 * best / row.time_ns


def _time_plan(plan: Plan, cfg: TimingConfig, backend: str | None):
    buf = init_signal(plan.n, cfg.seed)

    def prepare():
        fill_signal(buf, cfg.seed)
        _clobber(cfg.clobber_bytes)

    def timed():
        execute_plan(plan, buf, backend)

    return time_protocol(prepare, timed, cfg)


def compare_arrangements(
    named: list[tuple[str, Arrangement]],
    n: int,
    cfg: TimingConfig,
    model0: CostModel | None = None,
    model1: CostModel | None = None,
    synthetic: bool = False,
    backend: str | None = None,
) -> PerfReport:
    """Comparison report: the given arrangements plus both search results.

    Hardware mode measures missing cost models with cfg and times every
    compiled plan end to end (permutation included) under the same
    protocol; synthetic mode never touches the clock and reports each
    path's cost under the most context-aware model supplied.  Rows carry
    the model-predicted total alongside the operative time either way.
    """
    L = log2_size(n)
    g0 = build_graph(L, 0)
    g1 = build_graph(L, 1)
    if synthetic and model0 is None and model1 is None:
        raise PlanError("synthetic comparison requires a cost model")
    if not synthetic:
        if model0 is None:
            model0 = measure_all_edges(g0, n, cfg, backend)
        if model1 is None:
            model1 = measure_all_edges(g1, n, cfg, backend)

    eval_model = model1 if model1 is not None else model0
    search0 = model0 if model0 is not None else model1.collapse()
    search1 = model1 if model1 is not None else model0

    arr0 = shortest_path(g0, search0)
    arr1 = shortest_path(g1, search1)
    all_rows = list(named) + [
        ("Dijkstra (context-free)", arr0),
        ("Dijkstra (context-aware)", arr1),
    ]

    report = PerfReport(n=n, mode="synthetic" if synthetic else "hardware")
    for name, arr in all_rows:
        predicted = eval_model.path_cost(arr) if eval_model is not None else None
        if synthetic:
            time_ns = predicted
        else:
            time_ns = _time_plan(compile_plan(arr, n), cfg, backend).ns
        report.rows.append(
            PerfRow(
                name=name,
                arrangement=arr.describe(),
                time_ns=float(time_ns),
                gflops=gflops(time_ns, n),
                predicted_ns=predicted,
            )
        )
    _fill_percent_of_best(report.rows)
    return report


def per_pass_profile(n: int, cfg: TimingConfig, backend: str | None = None) -> list[PassRow]:
    """Time each radix-2 stage and each terminal fused block in isolation.

    Pass k (1-based) is the radix-2 stage at s = k - 1, whose butterfly
    stride is n >> k.  Fused blocks report their span-scaled GFLOPS so all
    rows share one scale.
    """
    L = log2_size(n)
    tw = make_twiddles(n)
    rows = []
    for s in range(L):
        res = _measure_edge_detailed(EdgeType.R2, s, "start", n, cfg, backend, tw)
        rows.append(
            PassRow(
                label=f"pass {s + 1}",
                pass_index=s + 1,
                stride=n >> (s + 1),
                time_ns=res.ns,
                gflops=pass_gflops(res.ns, n, 1),
            )
        )
    for kind in (EdgeType.F8, EdgeType.F16, EdgeType.F32):
        s = L - kind.span
        if s < 0:
            continue
        res = _measure_edge_detailed(kind, s, "start", n, cfg, backend, tw)
        rows.append(
            PassRow(
                label=kind.name,
                pass_index=None,
                stride=None,
                time_ns=res.ns,
                gflops=pass_gflops(res.ns, n, kind.span),
            )
        )
    return rows


def sample_arrangements(n: int, count: int, seed: int) -> list[tuple[str, Arrangement]]:
    """Deterministic random walks over the edge types valid at each stage."""
    L = log2_size(n)
    rng = random.Random(seed)
    out = []
    for i in range(count):
        kinds = []
        s = 0
        while s < L:
            kind = rng.choice(edge_types_at(s, L))
            kinds.append(kind)
            s += kind.span
        arr = make_arrangement(kinds)
        out.append((f"sample {i}: {arr.describe()}", arr))
    return out


def _verification_set(n: int) -> list[tuple[str, Arrangement]]:
    L = log2_size(n)
    if n <= 64:
        return [
            (f"path {i}: {arr.describe()}", arr)
            for i, arr in enumerate(enumerate_paths(build_graph(L, 0)))
        ]
    named = named_arrangements(10) if L == 10 else []
    generic = [("all radix-2", make_arrangement([EdgeType.R2] * L))]
    return named + generic + sample_arrangements(n, 20, seed=20)


def verify_arrangements(
    n: int,
    seeds,
    arrangements: list[tuple[str, Arrangement]] | None = None,
    backend: str | None = None,
    twiddles: TwiddleTable | None = None,
    tolerance: float = VERIFY_TOLERANCE,
) -> tuple[float, list[tuple[str, int, float]]]:
    """Check plans against the direct-DFT oracle.

    Returns (max error, failures) where each failure is (arrangement name,
    seed, error).  ``twiddles`` overrides the table every plan uses, which
    lets tests inject a corrupted table and watch verification catch it.
    ``arrangements`` defaults to every enumerated path for n <= 64 and to
    the named set plus 20 deterministic samples above that.
    """
    if arrangements is None:
        arrangements = _verification_set(n)
    worst = 0.0
    failures = []
    references = {}
    for seed in seeds:
        references[seed] = kernels.reference_dft(init_signal(n, seed))
    for name, arr in arrangements:
        plan = compile_plan(arr, n)
        if twiddles is not None:
            plan.twiddles = twiddles
        for seed in seeds:
            buf = init_signal(n, seed)
            execute_plan(plan, buf, backend)
            err = rel_l2_error(buf, references[seed])
            worst = max(worst, err)
            if not err <= tolerance:
                failures.append((name, seed, err))
    return worst, failures
