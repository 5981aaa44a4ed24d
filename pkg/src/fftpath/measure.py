"""Edge-weight acquisition: the timing protocol, cost models, and their
on-disk JSON document format.

Protocol for one weight: per trial, rewrite the buffer from the seed, sweep
a large scratch region to push everything out of cache, replay a canonical
all-R2 prefix up to where the (optional) predecessor starts, run the
predecessor untimed, then time the edge under test.  The reported value is
the median of the trials that survive warmup, averaged over independent
runs.  Median convention: odd trial counts give the exact middle order
statistic, even counts the mean of the two middle ones.

The clock is injectable, so the whole protocol is testable without
hardware timing (see FakeClock).
"""

from __future__ import annotations

import json
import math
import statistics
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, NamedTuple

import numpy as np

from . import kernels
from .errors import (
    ConfigError,
    CostModelError,
    IncompleteModelError,
    ShapeError,
    StageError,
)
from .graph import CONTEXT_TAGS, DecompositionGraph, EdgeType, Arrangement
from .numerics import fill_signal, init_signal, log2_size, make_twiddles

__all__ = [
    "TimingConfig",
    "FakeClock",
    "TimingResult",
    "CostModel",
    "measure_edge",
    "measure_all_edges",
    "time_protocol",
    "load_cost_model",
    "save_cost_model",
    "builtin_model_names",
    "load_builtin_model",
]

EDGE_NAMES = tuple(kind.name for kind in EdgeType)
PREV_NAMES = CONTEXT_TAGS + ("*",)


@dataclass(frozen=True)
class TimingConfig:
    """Knobs for the timing protocol.

    clobber_bytes sizes the scratch sweep that defines the cold baseline;
    it should be at least 4x the last-level cache (the 64 MiB default
    covers typical desktop parts) and 0 disables the sweep entirely, which
    unit tests use.  clock must be a monotonic nanosecond source.
    """

    trials: int = 50
    warmup: int = 5
    runs: int = 3
    seed: int = 42
    clock: Callable[[], int] = time.perf_counter_ns
    clobber_bytes: int = 1 << 26

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.warmup < 0:
            raise ConfigError(f"warmup must be >= 0, got {self.warmup}")
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")


class FakeClock:
    """Scripted clock: the i-th timed interval lasts durations[i] ns.

    The harness calls the clock exactly twice per timed region, so pairs of
    calls consume one scripted duration.  Running out of durations is a
    test authoring error and raises.
    """

    def __init__(self, durations):
        self._durations = [int(d) for d in durations]
        self._next = 0
        self._calls = 0
        self._now = 0

    def __call__(self) -> int:
        if self._calls % 2 == 1:
            if self._next >= len(self._durations):
                raise RuntimeError("FakeClock exhausted its scripted durations")
            self._now += self._durations[self._next]
            self._next += 1
        self._calls += 1
        return self._now


class TimingResult(NamedTuple):
    ns: float
    run_medians: tuple[float, ...]

    @property
    def spread(self) -> float:
        """min-max range across runs as a fraction of the mean (metadata)."""
        if self.ns == 0:
            return 0.0
        return (max(self.run_medians) - min(self.run_medians)) / self.ns


_scratch = np.zeros(0, np.uint8)


def _clobber(nbytes: int) -> None:
    global _scratch
    if nbytes <= 0:
        return
    if _scratch.size < nbytes:
        _scratch = np.zeros(nbytes, np.uint8)
    _scratch += 1  # touches every cache line, read + write


def time_protocol(prepare: Callable[[], None], timed: Callable[[], None], cfg: TimingConfig) -> TimingResult:
    """Run the warmup/median/runs protocol around an arbitrary callable."""
    medians = []
    for _ in range(cfg.runs):
        durations = []
        for _ in range(cfg.warmup + cfg.trials):
            prepare()
            t0 = cfg.clock()
            timed()
            t1 = cfg.clock()
            durations.append(t1 - t0)
        medians.append(statistics.median(durations[cfg.warmup :]))
    return TimingResult(statistics.fmean(medians), tuple(float(m) for m in medians))


def _validate_placement(kind: EdgeType, s: int, prev: str, L: int) -> int:
    """Check (edge, s, prev) is feasible; return the prefix stage count."""
    if kind.is_fused:
        if s + kind.span != L:
            raise StageError(f"{kind.name} must end at L={L}, got start {s}")
    elif s < 0 or s + kind.span > L:
        raise StageError(f"{kind.name} does not fit at stage {s} with L={L}")
    if prev == "start":
        return s
    if prev not in EDGE_NAMES:
        raise StageError(f"unknown predecessor tag {prev!r}")
    pkind = EdgeType[prev]
    if pkind.is_fused:
        raise StageError(f"{prev} cannot precede anything: fused edges are terminal")
    if pkind.span > s:
        raise StageError(f"predecessor {prev} cannot end at stage {s}")
    return s - pkind.span


def measure_edge(
    kind: EdgeType,
    s: int,
    prev: str,
    n: int,
    cfg: TimingConfig,
    backend: str | None = None,
) -> float:
    """Measured cost in ns of one edge at stage s after predecessor prev.

    prev == "start" measures the edge from the canonical cold state with an
    all-R2 prefix bringing the buffer up to stage s; any other tag replays
    that prefix up to the predecessor's start and then runs the predecessor
    untimed immediately before the timed edge.
    """
    return _measure_edge_detailed(kind, s, prev, n, cfg, backend).ns


def _measure_edge_detailed(kind, s, prev, n, cfg, backend=None, tw=None) -> TimingResult:
    L = log2_size(n)
    prefix_stages = _validate_placement(kind, s, prev, L)
    if tw is None:
        tw = make_twiddles(n)
    buf = init_signal(n, cfg.seed)

    def prepare():
        fill_signal(buf, cfg.seed)
        _clobber(cfg.clobber_bytes)
        for ps in range(prefix_stages):
            kernels.radix2_pass(buf, ps, tw, backend)
        if prev != "start":
            kernels.run_pass(buf, EdgeType[prev], prefix_stages, tw, backend)

    def timed():
        kernels.run_pass(buf, kind, s, tw, backend)

    return time_protocol(prepare, timed, cfg)


@dataclass
class CostModel:
    """Map from (edge type, start stage, predecessor tag) to nanoseconds.

    Context order 0 stores one entry per (edge, stage) under the wildcard
    tag "*"; order 1 stores one entry per feasible predecessor.  Weights
    are positive and finite.
    """

    L: int
    context_order: int
    entries: dict[tuple[str, int, str], float]
    provenance: str = field(default="synthetic", compare=False)

    def weight(self, kind, s: int, prev: str) -> float:
        name = kind.name if isinstance(kind, EdgeType) else str(kind)
        if self.context_order == 0:
            prev = "*"
        try:
            return self.entries[(name, s, prev)]
        except KeyError:
            raise IncompleteModelError(
                f"no weight for edge {name} at stage {s} after {prev!r}"
            ) from None

    def wildcard_weight(self, kind, s: int) -> float:
        """Context-free weight: the stored entry, or the mean over contexts."""
        name = kind.name if isinstance(kind, EdgeType) else str(kind)
        if self.context_order == 0:
            return self.weight(name, s, "*")
        values = [w for (e, st, _), w in self.entries.items() if e == name and st == s]
        if not values:
            raise IncompleteModelError(f"no weight for edge {name} at stage {s}")
        return statistics.fmean(values)

    def collapse(self) -> "CostModel":
        """Context-free view: per (edge, stage), the mean over predecessors."""
        if self.context_order == 0:
            return self
        grouped: dict[tuple[str, int], list[float]] = {}
        for (name, s, _), w in self.entries.items():
            grouped.setdefault((name, s), []).append(w)
        entries = {
            (name, s, "*"): statistics.fmean(values)
            for (name, s), values in grouped.items()
        }
        return CostModel(self.L, 0, entries, provenance=self.provenance)

    def path_cost(self, arrangement: Arrangement) -> float:
        """Cost of a path under this model, accumulated left to right."""
        total = 0.0
        prev = "start"
        for kind, s in arrangement.steps:
            if self.context_order == 0:
                total += self.weight(kind, s, "*")
            else:
                total += self.weight(kind, s, prev)
            prev = kind.name
        return total


def measure_all_edges(
    g: DecompositionGraph,
    n: int,
    cfg: TimingConfig,
    backend: str | None = None,
    on_measurement: Callable[[tuple[str, int, str], TimingResult], None] | None = None,
) -> CostModel:
    """One measurement per reachable edge of g; exactly len(entries) total.

    on_measurement, when given, observes every (key, TimingResult) pair as
    it lands, which exposes both the measurement count and the cross-run
    spread metadata without widening the cost-model schema.
    """
    L = log2_size(n)
    if L != g.L:
        raise ShapeError(f"graph is for L={g.L} but n={n} has L={L}")
    tw = make_twiddles(n)
    entries: dict[tuple[str, int, str], float] = {}
    for edge in g.edges:
        prev = edge.u.prev if g.context_order == 1 else "start"
        key = (edge.kind.name, edge.u.s, prev if g.context_order == 1 else "*")
        if key in entries:  # pragma: no cover - graph edges are unique
            continue
        result = _measure_edge_detailed(edge.kind, edge.u.s, prev, n, cfg, backend, tw)
        entries[key] = result.ns
        if on_measurement is not None:
            on_measurement(key, result)
    return CostModel(g.L, g.context_order, entries, provenance="measured")


# --- document format -------------------------------------------------------
#
# A single JSON object:
#   {"L": int, "context_order": 0|1,
#    "entries": [{"edge": "R2", "stage": 0, "prev": "start", "ns": 105.0}, ...]}
# prev is "*" exactly when context_order is 0.  Entries are serialized in
# ascending (stage, edge, prev) order, which makes saving canonical: a
# loaded document re-saves byte-identically.


def save_cost_model(model: CostModel) -> str:
    records = [
        {"edge": name, "stage": stage, "prev": prev, "ns": float(ns)}
        for (name, stage, prev), ns in sorted(
            model.entries.items(), key=lambda kv: (kv[0][1], kv[0][0], kv[0][2])
        )
    ]
    doc = {"L": model.L, "context_order": model.context_order, "entries": records}
    return json.dumps(doc, indent=2) + "\n"


def _reject(code: str, message: str):
    raise CostModelError(code, message)


def load_cost_model(document: str) -> CostModel:
    """Parse and validate a cost-model document.

    Rejections carry a stable error code; parse errors include the line and
    column from the JSON decoder, semantic errors the entry index.
    """
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        _reject("bad-json", f"not valid JSON: {exc}")
    if not isinstance(doc, dict):
        _reject("bad-structure", "top level must be an object")
    missing = {"L", "context_order", "entries"} - doc.keys()
    if missing:
        _reject("bad-structure", f"missing top-level fields: {sorted(missing)}")
    L = doc["L"]
    if not isinstance(L, int) or isinstance(L, bool) or not 1 <= L <= 30:
        _reject("bad-L", f"L must be an integer in 1..30, got {L!r}")
    order = doc["context_order"]
    if order not in (0, 1) or isinstance(order, bool):
        _reject("bad-order", f"context_order must be 0 or 1, got {order!r}")
    raw = doc["entries"]
    if not isinstance(raw, list):
        _reject("bad-structure", "entries must be an array")

    entries: dict[tuple[str, int, str], float] = {}
    for i, rec in enumerate(raw):
        where = f"entries[{i}]"
        if not isinstance(rec, dict):
            _reject("bad-structure", f"{where}: must be an object")
        missing = {"edge", "stage", "prev", "ns"} - rec.keys()
        if missing:
            _reject("bad-structure", f"{where}: missing fields {sorted(missing)}")
        name = rec["edge"]
        if name not in EDGE_NAMES:
            _reject("bad-edge", f"{where}: unknown edge {name!r}")
        stage = rec["stage"]
        if not isinstance(stage, int) or isinstance(stage, bool) or stage < 0:
            _reject("bad-stage", f"{where}: stage must be an integer >= 0, got {stage!r}")
        kind = EdgeType[name]
        if stage + kind.span > L or (kind.is_fused and stage + kind.span != L):
            _reject("bad-placement", f"{where}: {name} cannot start at stage {stage} with L={L}")
        prev = rec["prev"]
        if prev not in PREV_NAMES:
            _reject("bad-prev", f"{where}: unknown prev {prev!r}")
        if (prev == "*") != (order == 0):
            _reject(
                "prev-mismatch",
                f"{where}: prev must be '*' exactly when context_order is 0",
            )
        ns = rec["ns"]
        if isinstance(ns, bool) or not isinstance(ns, (int, float)):
            _reject("bad-ns", f"{where}: ns must be a number, got {ns!r}")
        ns = float(ns)
        if not math.isfinite(ns) or ns <= 0:
            _reject("bad-ns", f"{where}: ns must be positive and finite, got {ns!r}")
        key = (name, stage, prev)
        if key in entries:
            _reject("duplicate-entry", f"{where}: duplicate key {key}")
        entries[key] = ns
    return CostModel(L, order, entries, provenance="loaded")


_BUILTIN_MODELS = {"m1-qualitative": "m1_qualitative.json"}


def builtin_model_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILTIN_MODELS))


def load_builtin_model(name: str) -> CostModel:
    """Load one of the cost models shipped with the package."""
    try:
        filename = _BUILTIN_MODELS[name]
    except KeyError:
        known = ", ".join(builtin_model_names())
        raise ConfigError(f"unknown builtin model {name!r} (known: {known})") from None
    text = resources.files("fftpath.data").joinpath(filename).read_text("utf-8")
    return load_cost_model(text)
