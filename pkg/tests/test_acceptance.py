"""Acceptance suite: one test per exit criterion, run at the stated
tolerances.  Each criterion prints a PASS/FAIL line via conftest.
"""

import json
import random

import pytest

from fftpath.cli import EXIT_OK, main
from fftpath.errors import CostModelError
from fftpath.graph import (
    EdgeType,
    build_graph,
    enumerate_paths,
    named_arrangements,
    shortest_path,
)
from fftpath.measure import (
    CostModel,
    FakeClock,
    TimingConfig,
    load_builtin_model,
    load_cost_model,
    measure_all_edges,
    measure_edge,
    save_cost_model,
)
from fftpath.numerics import init_signal, rel_l2_error
from fftpath.kernels import reference_dft
from fftpath.planner import (
    compare_arrangements,
    compile_plan,
    execute_plan,
    gflops,
    pass_gflops,
    sample_arrangements,
    verify_arrangements,
)

SEEDS = [0, 1, 2, 3, 4]
TOL = 1e-5


def _check_arrangements(n, arrangements):
    references = {seed: reference_dft(init_signal(n, seed)) for seed in SEEDS}
    worst = 0.0
    for name, arr in arrangements:
        plan = compile_plan(arr, n)
        for seed in SEEDS:
            buf = init_signal(n, seed)
            execute_plan(plan, buf)
            err = rel_l2_error(buf, references[seed])
            worst = max(worst, err)
            assert err <= TOL, f"{name} at n={n}, seed {seed}: {err:.3e} > {TOL}"
    return worst


def test_c1_oracle_correctness_small_sizes():
    worst = 0.0
    for L in (3, 4, 5, 6):
        n = 1 << L
        paths = [(a.describe(), a) for a in enumerate_paths(build_graph(L, 0))]
        worst = max(worst, _check_arrangements(n, paths))
    print(f"\n  all enumerated paths at n in 8..64, 5 seeds: max err {worst:.2e}")


def test_c1_oracle_correctness_n1024():
    model1 = load_builtin_model("m1-qualitative")
    g0, g1 = build_graph(10, 0), build_graph(10, 1)
    fixed = named_arrangements(10) + [
        ("Dijkstra (context-free)", shortest_path(g0, model1.collapse())),
        ("Dijkstra (context-aware)", shortest_path(g1, model1)),
    ]
    assert len(fixed) == 10
    sampled = sample_arrangements(1024, 20, seed=20)
    worst = _check_arrangements(1024, fixed + sampled)
    print(f"\n  10 fixed + 20 sampled arrangements at n=1024, 5 seeds: max err {worst:.2e}")


def test_c2_graph_structure():
    g0 = build_graph(10, 0)
    assert len(g0.nodes) == 11
    assert len(g0.edges) == 30
    g1 = build_graph(10, 1)
    assert g1.full_product_node_count == 77


def test_c3_search_optimality():
    for L in (3, 5, 8, 10):
        g = build_graph(L, 0)
        paths = enumerate_paths(g)
        for seed in range(100):
            rng = random.Random((L << 20) | seed)
            entries = {
                (e.kind.name, e.u.s, "*"): rng.uniform(10.0, 1000.0) for e in g.edges
            }
            model = CostModel(L, 0, entries)
            first = shortest_path(g, model)
            second = shortest_path(g, model)
            best = min(model.path_cost(p) for p in paths)
            assert first.cost == best  # exact float equality
            assert model.path_cost(first) == first.cost
            assert first.steps == second.steps and first.cost == second.cost
    print("\n  400 random models (L in {3,5,8,10}): search cost == enumeration min, reruns identical")


def test_c4_context_sensitivity_reproduction(capsys):
    code = main(["plan", "--n", "1024", "--context-order", "1",
                 "--cost-model", "m1-qualitative", "--output", "json"])
    aware = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert aware["arrangement"] == "R4 R2 R4 R4 F8"

    code = main(["plan", "--n", "1024", "--context-order", "0",
                 "--cost-model", "m1-qualitative", "--output", "json"])
    free = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert free["arrangement"] != aware["arrangement"]

    model1 = load_builtin_model("m1-qualitative")
    g1 = build_graph(10, 1)
    aware_arr = shortest_path(g1, model1)
    free_arr = shortest_path(build_graph(10, 0), model1.collapse())
    assert model1.path_cost(free_arr) > model1.path_cost(aware_arr)


# fixed reference (time, GFLOPS) pairs; times in ns
TRANSFORM_PAIRS = [
    (9014, 5.7), (6903, 7.4), (6792, 7.5), (6889, 7.4), (6861, 7.5),
    (6889, 7.4), (2569, 19.9), (1764, 29.1), (2320, 22.1), (1722, 29.8),
]
PASS_PAIRS = [
    ("pass 1", 3580, 1, 1.4),
    ("pass 4", 750, 1, 6.8),
    ("pass 7", 380, 1, 13.7),
    ("pass 10", 4250, 1, 1.2),
    ("F8", 460, 3, 33.5),
    ("F16", 670, 4, 30.7),
]


def test_c5_gflops_arithmetic():
    # Known red: the reference pairs record times at 0.01 us granularity,
    # and for the stride-8 pass the (0.38 us, 13.7) pair is mutually
    # inconsistent at that precision: 5*1024/380ns = 13.474, off by 0.226.
    # Every other pair recomputes within the required +-0.15.  The check
    # stays strict rather than loosened to fit.
    violations = []
    for time_ns, printed in TRANSFORM_PAIRS:
        got = gflops(time_ns, 1024)
        if abs(got - printed) > 0.15:
            violations.append(f"full transform {time_ns} ns -> {got:.3f} vs printed {printed}")
    for label, time_ns, span, printed in PASS_PAIRS:
        got = pass_gflops(time_ns, 1024, span)
        if abs(got - printed) > 0.15:
            violations.append(f"{label}: {time_ns} ns -> {got:.3f} vs printed {printed}")
    anchor = gflops(1722, 1024)
    assert anchor == pytest.approx(29.73, abs=0.005)
    assert not violations, (
        "reference (time, GFLOPS) pairs recompute outside +-0.15: "
        + "; ".join(violations)
        + " -- the recorded time is rounded too coarsely to reproduce the recorded"
        " GFLOPS for this row (a consistent unrounded time would be ~374 ns),"
        " so this sub-check cannot pass from the recorded values"
    )


def _median_oracle(durations, trials, warmup, runs):
    medians = []
    i = 0
    for _ in range(runs):
        window = durations[i : i + warmup + trials]
        i += warmup + trials
        kept = sorted(window[warmup:])
        k = len(kept)
        med = kept[k // 2] if k % 2 else (kept[k // 2 - 1] + kept[k // 2]) / 2.0
        medians.append(med)
    return sum(medians) / len(medians)


def test_c6_measurement_protocol_logic():
    rng = random.Random(6)
    for case in range(20):
        trials = rng.randint(1, 8)
        warmup = rng.randint(0, 3)
        runs = rng.randint(1, 3)
        durations = [rng.randint(1, 10_000) for _ in range(runs * (warmup + trials))]
        cfg = TimingConfig(
            trials=trials, warmup=warmup, runs=runs, seed=case,
            clock=FakeClock(durations), clobber_bytes=0,
        )
        got = measure_edge(EdgeType.R2, 0, "start", 8, cfg, backend="python")
        assert got == _median_oracle(durations, trials, warmup, runs), f"case {case}"

    counts = {}
    for order, expected in ((0, 30), (1, 75)):
        g = build_graph(10, order)
        seen = []
        cfg = TimingConfig(
            trials=1, warmup=0, runs=1, seed=1,
            clock=FakeClock([5] * 200), clobber_bytes=0,
        )
        model = measure_all_edges(
            g, 1024, cfg, on_measurement=lambda key, res: seen.append(key)
        )
        assert len(seen) == len(model.entries) == len(g.edges) == expected
        counts[order] = len(seen)
    print(f"\n  20 fabricated sequences exact; measurement counts {counts}")


def _random_valid_model(seed):
    rng = random.Random(seed)
    L = rng.randint(1, 12)
    order = rng.choice((0, 1))
    g = build_graph(L, order)
    edges = list(g.edges)
    rng.shuffle(edges)
    keep = edges[: rng.randint(1, len(edges))]
    entries = {}
    for e in keep:
        prev = e.u.prev if order == 1 else "*"
        entries[(e.kind.name, e.u.s, prev)] = rng.uniform(0.001, 50_000.0)
    return CostModel(L, order, entries)


INVALID_DOCS = {
    "bad-json": "{ not json",
    "bad-L": '{"L": 0, "context_order": 0, "entries": []}',
    "bad-order": '{"L": 3, "context_order": 2, "entries": []}',
    "bad-edge": '{"L": 3, "context_order": 0, "entries": [{"edge": "R3", "stage": 0, "prev": "*", "ns": 1.0}]}',
    "bad-stage": '{"L": 3, "context_order": 0, "entries": [{"edge": "R2", "stage": -1, "prev": "*", "ns": 1.0}]}',
    "bad-placement": '{"L": 3, "context_order": 0, "entries": [{"edge": "R8", "stage": 1, "prev": "*", "ns": 1.0}]}',
    "bad-prev": '{"L": 3, "context_order": 1, "entries": [{"edge": "R2", "stage": 1, "prev": "R3", "ns": 1.0}]}',
    "prev-mismatch": '{"L": 3, "context_order": 0, "entries": [{"edge": "R2", "stage": 0, "prev": "start", "ns": 1.0}]}',
    "duplicate-entry": (
        '{"L": 3, "context_order": 0, "entries": ['
        '{"edge": "R2", "stage": 0, "prev": "*", "ns": 1.0},'
        '{"edge": "R2", "stage": 0, "prev": "*", "ns": 2.0}]}'
    ),
    "bad-ns": '{"L": 3, "context_order": 0, "entries": [{"edge": "R2", "stage": 0, "prev": "*", "ns": -1.0}]}',
}


def test_c7_cost_model_round_trip_and_rejection():
    for seed in range(50):
        model = _random_valid_model(seed)
        assert load_cost_model(save_cost_model(model)) == model

    assert len(INVALID_DOCS) == 10
    seen_codes = set()
    for expected_code, doc in INVALID_DOCS.items():
        with pytest.raises(CostModelError) as info:
            load_cost_model(doc)
        assert info.value.code == expected_code
        seen_codes.add(info.value.code)
    assert len(seen_codes) == 10  # ten documents, ten distinct errors


def test_c8_informational_hardware_comparison():
    # Non-gating: real clock, vectorized kernels; logs the fused vs
    # non-fused ordering for eyeballing.  No numeric assertions because
    # absolute performance is machine-dependent.
    cfg = TimingConfig(trials=3, warmup=1, runs=1, seed=7, clobber_bytes=0)
    report = compare_arrangements(
        named_arrangements(10), 1024, cfg, synthetic=False, backend="numpy"
    )
    assert len(report.rows) == 10
    assert all(row.time_ns > 0 for row in report.rows)
    fused = [r for r in report.rows if any(k in r.arrangement for k in ("F8", "F16", "F32"))]
    plain = [r for r in report.rows if r not in fused]
    best_fused = min(fused, key=lambda r: r.time_ns)
    best_plain = min(plain, key=lambda r: r.time_ns)
    print("\n  observed (informational, this host):")
    for row in report.rows:
        print(f"    {row.name:<34} {row.time_ns:>12.0f} ns  {row.gflops:>6.2f} GFLOPS")
    print(
        f"  best fused {best_fused.time_ns:.0f} ns vs best non-fused "
        f"{best_plain.time_ns:.0f} ns ({best_plain.time_ns / best_fused.time_ns:.2f}x)"
    )
