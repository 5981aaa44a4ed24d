import json

import pytest

from fftpath.errors import ConfigError, CostModelError, ShapeError, StageError
from fftpath.graph import EdgeType, build_graph, make_arrangement
from fftpath.measure import (
    CostModel,
    FakeClock,
    TimingConfig,
    builtin_model_names,
    load_builtin_model,
    load_cost_model,
    measure_all_edges,
    measure_edge,
    save_cost_model,
)


def fast_cfg(clock, **kw):
    defaults = dict(trials=3, warmup=0, runs=1, seed=1, clock=clock, clobber_bytes=0)
    defaults.update(kw)
    return TimingConfig(**defaults)


class TestTimingConfig:
    def test_defaults_follow_protocol(self):
        cfg = TimingConfig()
        assert (cfg.trials, cfg.warmup, cfg.runs) == (50, 5, 3)

    @pytest.mark.parametrize("kw", [{"trials": 0}, {"warmup": -1}, {"runs": 0}])
    def test_validation(self, kw):
        with pytest.raises(ConfigError):
            TimingConfig(**kw)


class TestMeasureEdge:
    def test_median_of_three(self):
        cfg = fast_cfg(FakeClock([9, 1, 5]))
        assert measure_edge(EdgeType.R2, 0, "start", 8, cfg, backend="python") == 5.0

    def test_warmup_discard(self):
        cfg = fast_cfg(FakeClock([7, 7, 7, 7, 7]), trials=3, warmup=2)
        assert measure_edge(EdgeType.R2, 0, "start", 8, cfg, backend="python") == 7.0

    def test_warmup_never_contributes(self):
        cfg = fast_cfg(FakeClock([1000, 1000, 5, 6, 7]), trials=3, warmup=2)
        assert measure_edge(EdgeType.R2, 1, "R2", 8, cfg, backend="python") == 6.0

    def test_even_trials_average_middle_pair(self):
        cfg = fast_cfg(FakeClock([4, 1, 9, 2]), trials=4)
        assert measure_edge(EdgeType.R2, 0, "start", 8, cfg, backend="python") == 3.0

    def test_runs_average_of_medians(self):
        cfg = fast_cfg(FakeClock([10, 10, 10, 20, 20, 20]), trials=3, runs=2)
        assert measure_edge(EdgeType.R4, 0, "start", 8, cfg, backend="python") == 15.0

    def test_pure_given_deterministic_clock(self):
        a = measure_edge(EdgeType.R8, 0, "start", 8, fast_cfg(FakeClock([3, 1, 2])), backend="python")
        b = measure_edge(EdgeType.R8, 0, "start", 8, fast_cfg(FakeClock([3, 1, 2])), backend="python")
        assert a == b == 2.0

    def test_context_free_measurement_at_any_stage(self):
        cfg = fast_cfg(FakeClock([5, 5, 5]))
        assert measure_edge(EdgeType.R2, 2, "start", 8, cfg, backend="python") == 5.0

    @pytest.mark.parametrize(
        "kind,s,prev",
        [
            (EdgeType.R2, 3, "start"),   # overflows L=3
            (EdgeType.F8, 1, "start"),   # fused must end at L
            (EdgeType.R2, 1, "R4"),      # predecessor span exceeds stage
            (EdgeType.R2, 1, "F8"),      # fused edges cannot precede
            (EdgeType.R2, 1, "bogus"),
        ],
    )
    def test_placement_errors(self, kind, s, prev):
        cfg = fast_cfg(FakeClock([1] * 10))
        with pytest.raises(StageError):
            measure_edge(kind, s, prev, 8, cfg, backend="python")


class TestMeasureAllEdges:
    def test_l1_single_measurement(self):
        cfg = fast_cfg(FakeClock([5] * 10), trials=1)
        model = measure_all_edges(build_graph(1, 0), 2, cfg, backend="python")
        assert len(model.entries) == 1
        assert model.provenance == "measured"

    def test_l3_order0_counts_and_keys(self):
        g = build_graph(3, 0)
        cfg = fast_cfg(FakeClock([5] * 50), trials=1)
        seen = []
        model = measure_all_edges(
            g, 8, cfg, backend="python", on_measurement=lambda k, r: seen.append(k)
        )
        assert len(seen) == len(model.entries) == 7
        expected = {(e.kind.name, e.u.s, "*") for e in g.edges}
        assert set(model.entries) == expected

    def test_graph_size_mismatch(self):
        cfg = fast_cfg(FakeClock([5] * 10), trials=1)
        with pytest.raises(ShapeError):
            measure_all_edges(build_graph(3, 0), 16, cfg, backend="python")

    def test_order1_keys_cover_reachable_pairs(self):
        g = build_graph(4, 1)
        cfg = fast_cfg(FakeClock([5] * 200), trials=1)
        model = measure_all_edges(g, 16, cfg, backend="python")
        expected = {(e.kind.name, e.u.s, e.u.prev) for e in g.edges}
        assert set(model.entries) == expected


class TestCostModel:
    def test_wildcard_weight_is_context_mean(self):
        model = CostModel(
            2, 1, {("R2", 1, "R2"): 30.0, ("R2", 0, "start"): 10.0, ("R4", 0, "start"): 25.0}
        )
        assert model.wildcard_weight("R2", 1) == 30.0
        collapsed = model.collapse()
        assert collapsed.context_order == 0
        assert collapsed.weight("R4", 0, "*") == 25.0

    def test_collapse_averages(self):
        model = CostModel(
            4, 1, {("R2", 2, "R2"): 10.0, ("R2", 2, "R4"): 30.0, ("R2", 2, "R8"): 20.0}
        )
        assert model.collapse().weight("R2", 2, "*") == 20.0

    def test_path_cost_tracks_context(self):
        entries = {
            ("R4", 0, "start"): 170.0,
            ("R2", 2, "R4"): 55.0,
            ("R2", 3, "R2"): 105.0,
        }
        model = CostModel(4, 1, entries)
        arr = make_arrangement([EdgeType.R4, EdgeType.R2, EdgeType.R2])
        assert model.path_cost(arr) == 170.0 + 55.0 + 105.0


class TestDocumentFormat:
    def test_minimal_valid_document(self):
        doc = json.dumps(
            {
                "L": 1,
                "context_order": 1,
                "entries": [{"edge": "R2", "stage": 0, "prev": "start", "ns": 10.0}],
            }
        )
        model = load_cost_model(doc)
        assert len(model.entries) == 1
        assert model.weight("R2", 0, "start") == 10.0

    def test_negative_weight_rejected(self):
        doc = json.dumps(
            {
                "L": 1,
                "context_order": 0,
                "entries": [{"edge": "R2", "stage": 0, "prev": "*", "ns": -1}],
            }
        )
        with pytest.raises(CostModelError) as info:
            load_cost_model(doc)
        assert info.value.code == "bad-ns"

    def test_round_trip_identity(self):
        entries = {("R2", 0, "*"): 10.5, ("R2", 1, "*"): 3.25, ("R4", 0, "*"): 17.125}
        model = CostModel(2, 0, entries)
        loaded = load_cost_model(save_cost_model(model))
        assert loaded == model

    def test_single_entry_document_has_one_record(self):
        model = CostModel(1, 0, {("R2", 0, "*"): 10.0})
        doc = json.loads(save_cost_model(model))
        assert len(doc["entries"]) == 1

    def test_canonical_serialization_is_byte_stable(self):
        entries = {
            ("R4", 0, "start"): 170.0,
            ("R2", 0, "start"): 100.0,
            ("R2", 1, "R2"): 105.0,
        }
        text = save_cost_model(CostModel(2, 1, entries))
        assert save_cost_model(load_cost_model(text)) == text

    def test_parse_error_carries_line_context(self):
        with pytest.raises(CostModelError) as info:
            load_cost_model("{\n  broken\n}")
        assert info.value.code == "bad-json"
        assert "line" in str(info.value)


class TestBuiltinFixture:
    def test_registry(self):
        assert "m1-qualitative" in builtin_model_names()
        with pytest.raises(ConfigError):
            load_builtin_model("nope")

    def test_fixture_loads_with_expected_shape(self):
        model = load_builtin_model("m1-qualitative")
        assert model.L == 10
        assert model.context_order == 1
        assert len(model.entries) == 75

    def test_fixture_round_trips_byte_stable(self):
        from importlib import resources

        text = resources.files("fftpath.data").joinpath("m1_qualitative.json").read_text("utf-8")
        model = load_cost_model(text)
        assert save_cost_model(model) == text


class TestFakeClock:
    def test_exhaustion_raises(self):
        clock = FakeClock([5])
        clock(), clock()
        clock()
        with pytest.raises(RuntimeError):
            clock()

    def test_monotonic(self):
        clock = FakeClock([3, 4])
        stamps = [clock() for _ in range(4)]
        assert stamps == [0, 3, 3, 7]
