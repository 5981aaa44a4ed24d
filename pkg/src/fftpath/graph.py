"""Decomposition graphs, exhaustive path enumeration, and shortest-path
search with deterministic tie-breaking.

A node means "s stages of the transform already computed".  Edges are the
executable passes: R2/R4/R8 advance 1/2/3 stages anywhere they fit, and the
fused blocks F8/F16/F32 advance 3/4/5 stages but only into the final node.
With context order 1 each node also carries the type of the edge that
reached it, so weights can depend on what ran immediately before.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from .errors import ConfigError, IncompleteModelError, ModelError

__all__ = [
    "EdgeType",
    "CONTEXT_TAGS",
    "Node",
    "Edge",
    "Arrangement",
    "DecompositionGraph",
    "build_graph",
    "edge_types_at",
    "enumerate_paths",
    "shortest_path",
    "named_arrangements",
    "make_arrangement",
    "format_graph",
]


class EdgeType(Enum):
    """The six pass types.  Definition order is also the tie-break order."""

    R2 = (1, False)
    R4 = (2, False)
    R8 = (3, False)
    F8 = (3, True)
    F16 = (4, True)
    F32 = (5, True)

    def __init__(self, span: int, is_fused: bool):
        self.span = span
        self.is_fused = is_fused

    @property
    def rank(self) -> int:
        return _EDGE_RANK[self]

    def __repr__(self):
        return self.name


_EDGE_RANK = {kind: i for i, kind in enumerate(EdgeType)}

CONTEXT_TAGS = ("start", "R2", "R4", "R8", "F8", "F16", "F32")


class Node(NamedTuple):
    """Graph node: stage count plus (for context order 1) the incoming tag."""

    s: int
    prev: str | None

    def describe(self) -> str:
        return str(self.s) if self.prev is None else f"{self.s}|{self.prev}"


class Edge(NamedTuple):
    u: Node
    v: Node
    kind: EdgeType


@dataclass(frozen=True)
class Arrangement:
    """A root-to-sink path: (edge type, start stage) steps plus total cost."""

    steps: tuple[tuple[EdgeType, int], ...]
    cost: float | None = None

    @property
    def spans(self) -> tuple[int, ...]:
        return tuple(kind.span for kind, _ in self.steps)

    @property
    def kinds(self) -> tuple[EdgeType, ...]:
        return tuple(kind for kind, _ in self.steps)

    def describe(self) -> str:
        return " ".join(kind.name for kind, _ in self.steps)

    def with_cost(self, cost: float) -> "Arrangement":
        return Arrangement(self.steps, cost)


def make_arrangement(kinds, cost: float | None = None) -> Arrangement:
    """Build an arrangement from edge types, accumulating start stages."""
    steps = []
    s = 0
    for kind in kinds:
        steps.append((kind, s))
        s += kind.span
    return Arrangement(tuple(steps), cost)


def edge_types_at(s: int, L: int) -> list[EdgeType]:
    """Edge types that may start at stage s, in canonical order."""
    kinds = []
    for kind in EdgeType:
        if kind.is_fused:
            if s + kind.span == L:
                kinds.append(kind)
        elif s + kind.span <= L:
            kinds.append(kind)
    return kinds


@dataclass
class DecompositionGraph:
    L: int
    context_order: int
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    adjacency: dict[Node, tuple[Edge, ...]] = field(init=False, repr=False)

    def __post_init__(self):
        adj: dict[Node, list[Edge]] = {node: [] for node in self.nodes}
        for edge in self.edges:
            adj[edge.u].append(edge)
        self.adjacency = {node: tuple(out) for node, out in adj.items()}

    @property
    def start(self) -> Node:
        return Node(0, "start") if self.context_order == 1 else Node(0, None)

    @property
    def sinks(self) -> tuple[Node, ...]:
        return tuple(node for node in self.nodes if node.s == self.L)

    @property
    def full_product_node_count(self) -> int:
        """(L+1) * |tags|: the node count before reachability pruning."""
        return (self.L + 1) * len(CONTEXT_TAGS)


def build_graph(L: int, context_order: int) -> DecompositionGraph:
    """Materialize the decomposition graph for a 2**L-point transform.

    Context order 0 keeps one node per stage.  Context order 1 expands each
    stage by the incoming edge type, materializing reachable nodes only;
    the unpruned product count is available as full_product_node_count.
    """
    if not isinstance(L, int) or not 1 <= L <= 30:
        raise ConfigError(f"L must be an integer in 1..30, got {L!r}")
    if context_order not in (0, 1):
        raise ConfigError(f"context_order must be 0 or 1, got {context_order!r}")

    if context_order == 0:
        nodes = [Node(s, None) for s in range(L + 1)]
        edges = [
            Edge(Node(s, None), Node(s + kind.span, None), kind)
            for s in range(L)
            for kind in edge_types_at(s, L)
        ]
        return DecompositionGraph(L, 0, tuple(nodes), tuple(edges))

    nodes: set[Node] = {Node(0, "start")}
    edges: list[Edge] = []
    for s in range(L):
        here = sorted(
            (node for node in nodes if node.s == s),
            key=lambda node: CONTEXT_TAGS.index(node.prev),
        )
        for u in here:
            for kind in edge_types_at(s, L):
                v = Node(s + kind.span, kind.name)
                nodes.add(v)
                edges.append(Edge(u, v, kind))
    ordered = sorted(nodes, key=lambda node: (node.s, CONTEXT_TAGS.index(node.prev)))
    return DecompositionGraph(L, 1, tuple(ordered), tuple(edges))


def enumerate_paths(g: DecompositionGraph) -> list[Arrangement]:
    """Every root-to-sink path exactly once, depth-first in canonical order.

    Enumeration runs over the stage skeleton: context tags change weights,
    never reachability, so both context orders admit the same path set.
    Exponential in L; refused above L = 20.
    """
    if g.L > 20:
        raise ConfigError(f"path enumeration is capped at L <= 20, got L={g.L}")
    out: list[Arrangement] = []
    acc: list[tuple[EdgeType, int]] = []

    def rec(s: int) -> None:
        if s == g.L:
            out.append(Arrangement(tuple(acc)))
            return
        for kind in edge_types_at(s, g.L):
            acc.append((kind, s))
            rec(s + kind.span)
            acc.pop()

    rec(0)
    return out


def _weight_fn(g: DecompositionGraph, costs):
    """Adapt a cost model to this graph's context order."""
    if costs.context_order == 0:
        return lambda kind, s, prev: costs.weight(kind, s, "*")
    if g.context_order == 1:
        return lambda kind, s, prev: costs.weight(kind, s, prev)
    return lambda kind, s, prev: costs.wildcard_weight(kind, s)


def shortest_path(g: DecompositionGraph, costs) -> Arrangement:
    """Minimum-total-cost root-to-sink path.

    Ties break deterministically: fewer edges first, then the
    lexicographically smallest edge-type sequence under
    R2 < R4 < R8 < F8 < F16 < F32.  Dijkstra labels carry
    (cost, edge count, type sequence), which extends monotonically along
    edges, so the usual relaxation argument applies unchanged.
    """
    weight = _weight_fn(g, costs)
    for edge in g.edges:
        w = weight(edge.kind, edge.u.s, edge.u.prev)
        if not math.isfinite(w):
            raise ModelError(f"non-finite weight for {edge.kind.name}@{edge.u.s}: {w!r}")
        if w < 0:
            raise ModelError(f"negative weight for {edge.kind.name}@{edge.u.s}: {w!r}")

    start = g.start
    best: dict[Node, tuple] = {start: (0.0, 0, ())}
    parent: dict[Node, tuple[Node, EdgeType]] = {}
    heap = [(0.0, 0, (), start)]
    while heap:
        cost, nedges, seq, u = heapq.heappop(heap)
        if (cost, nedges, seq) > best.get(u, (float("inf"),)):
            continue
        for edge in g.adjacency[u]:
            w = weight(edge.kind, u.s, u.prev)
            label = (cost + w, nedges + 1, seq + (edge.kind.rank,))
            if label < best.get(edge.v, (float("inf"),)):
                best[edge.v] = label
                parent[edge.v] = (u, edge.kind)
                heapq.heappush(heap, label + (edge.v,))

    sink = min(g.sinks, key=lambda node: best.get(node, (float("inf"),)))
    if sink not in best:  # pragma: no cover - every stage is reachable by R2
        raise IncompleteModelError("sink unreachable")
    kinds_rev: list[EdgeType] = []
    node = sink
    while node != start:
        node, kind = parent[node]
        kinds_rev.append(kind)
    return make_arrangement(reversed(kinds_rev), cost=best[sink][0])


_NAMED_ROWS = (
    ("R2 x 10 (pure radix-2)", ("R2",) * 10),
    ("R4 x 5 (pure radix-4)", ("R4",) * 5),
    ("R8 x 3 + R2 (pure radix-8)", ("R8", "R8", "R8", "R2")),
    ("R8,R8,R8,R2 (max radix)", ("R8", "R8", "R8", "R2")),
    ("R8,R8,R4,R4", ("R8", "R8", "R4", "R4")),
    ("R4,R8,R8,R4", ("R4", "R8", "R8", "R4")),
    ("R2 x 5 + F32", ("R2",) * 5 + ("F32",)),
    ("R4 x 3 + F16", ("R4", "R4", "R4", "F16")),
)


def named_arrangements(L: int = 10) -> list[tuple[str, Arrangement]]:
    """The eight fixed comparison arrangements for 1024-point transforms."""
    if L != 10:
        raise ConfigError(f"named arrangements are defined for L=10 only, got {L}")
    return [
        (name, make_arrangement(EdgeType[key] for key in keys))
        for name, keys in _NAMED_ROWS
    ]


def format_graph(g: DecompositionGraph, costs=None) -> str:
    """Text form: one node per line ("s" or "s|prev"), then one edge per
    line ("u -> v [type]" or "u -> v [type, ns]")."""
    lines = [
        f"# decomposition graph: L={g.L} context_order={g.context_order}"
        f" nodes={len(g.nodes)} edges={len(g.edges)}"
    ]
    if g.context_order == 1:
        lines.append(f"# full-product nodes: {g.full_product_node_count}")
    weight = _weight_fn(g, costs) if costs is not None else None
    for node in g.nodes:
        lines.append(node.describe())
    for edge in g.edges:
        label = edge.kind.name
        if weight is not None:
            label += f", {weight(edge.kind, edge.u.s, edge.u.prev)!r}"
        lines.append(f"{edge.u.describe()} -> {edge.v.describe()} [{label}]")
    return "\n".join(lines) + "\n"
