"""Simple-cycle enumeration on the underlying multigraph of a fat graph."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .errors import CycleCapExceeded, NotACycle
from .fatgraph import FatGraph, require_valid

DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class SimpleCycle:
    """A simple cycle given by its length variables.

    ``key`` is the sorted tuple of length variables and identifies the cycle;
    ``nodes`` is one traversal of it (empty for a circle component).
    """

    key: tuple[int, ...]
    nodes: tuple[int, ...]
    standard: bool

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(self.key)

    @property
    def classification(self) -> str:
        return "Standard" if self.standard else "NonStandard"

    def __len__(self):
        return len(self.key)


def _incident_halves(graph: FatGraph, edge_set: Iterable[int]) -> dict[int, list[int]]:
    at: dict[int, list[int]] = {}
    for e in edge_set:
        for h in graph.edges[e]:
            at.setdefault(graph.node_of(h), []).append(h)
    return at


def _is_standard(graph: FatGraph, at: dict[int, list[int]]) -> bool:
    return all(graph.opposite(a) == b for a, b in at.values())


def classify_cycle(graph: FatGraph, edge_set: Iterable[int]) -> str:
    """``"Standard"`` if the cycle goes straight through every node it visits."""
    edge_set = frozenset(edge_set)
    if not edge_set or any(not 0 <= e < graph.num_edges for e in edge_set):
        raise NotACycle("edge set is empty or names unknown edges")
    at = _incident_halves(graph, edge_set)
    if any(len(hs) != 2 for hs in at.values()):
        raise NotACycle("support is not 2-regular")
    # connectivity of the support
    start = next(iter(at))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for e in edge_set:
            a, b = graph.edge_nodes(e)
            for y, z in ((a, b), (b, a)):
                if y == x and z not in seen:
                    seen.add(z)
                    stack.append(z)
    if len(seen) != len(at):
        raise NotACycle("support is not connected")
    return "Standard" if _is_standard(graph, at) else "NonStandard"


def enumerate_simple_cycles(graph: FatGraph, cap: int = DEFAULT_CAP) -> list[SimpleCycle]:
    """Every simple cycle exactly once, reversal identified, in canonical order.

    Each cycle is found from its least edge ``(u, v)`` by a depth-first search
    for paths ``v -> u`` that only use larger edges and never revisit a node.
    Loops and parallel-edge bigons are included; circle components come last.
    """
    require_valid(graph)
    adj: list[list[tuple[int, int]]] = [[] for _ in graph.nodes]
    loops = []
    for e in range(graph.num_edges):
        a, b = graph.edge_nodes(e)
        if a == b:
            loops.append(e)
            continue
        adj[a].append((e, b))
        adj[b].append((e, a))
    for lst in adj:
        lst.sort()

    found: list[tuple[tuple[int, ...], tuple[int, ...]]] = [((e,), (graph.edge_nodes(e)[0],)) for e in loops]

    def check_cap():
        if len(found) > cap:
            raise CycleCapExceeded(cap)

    check_cap()
    for e0 in range(graph.num_edges):
        u, v = graph.edge_nodes(e0)
        if u == v:
            continue
        on_path = [False] * len(graph.nodes)
        on_path[v] = True
        path_nodes = [v]
        path_edges = [e0]
        # explicit stack of adjacency iterators keeps deep graphs off the C stack
        iters = [iter(adj[v])]
        while iters:
            advanced = False
            for e, y in iters[-1]:
                if e <= e0:
                    continue
                if y == u:
                    found.append((tuple(sorted(path_edges + [e])), tuple([u] + path_nodes)))
                    check_cap()
                    continue
                if on_path[y]:
                    continue
                on_path[y] = True
                path_nodes.append(y)
                path_edges.append(e)
                iters.append(iter(adj[y]))
                advanced = True
                break
            if not advanced:
                iters.pop()
                x = path_nodes.pop()
                on_path[x] = False
                path_edges.pop()

    out = []
    for key, nodes in found:
        out.append(SimpleCycle(key, nodes, _is_standard(graph, _incident_halves(graph, key))))
    for ci in range(graph.num_circles):
        out.append(SimpleCycle((graph.circle_variable(ci),), (), True))
    if len(out) > cap:
        raise CycleCapExceeded(cap)
    out.sort(key=lambda c: (len(c.key), c.key))
    return out

