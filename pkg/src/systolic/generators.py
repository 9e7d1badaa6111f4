"""Graph families: the wheel family, the eight-node example, and girth graphs."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import BadParameter
from .fatgraph import FatGraph

# Rotations of the eight-node example, exactly as printed.
EXAMPLE_G8_ROTATIONS = (
    ("v1", ("v2", "v4", "v3", "v8")),
    ("v2", ("v1", "v4", "v3", "v6")),
    ("v3", ("v1", "v7", "v2", "v6")),
    ("v4", ("v1", "v2", "v8", "v5")),
    ("v5", ("v4", "v8", "v6", "v7")),
    ("v6", ("v2", "v3", "v5", "v7")),
    ("v7", ("v3", "v5", "v6", "v8")),
    ("v8", ("v1", "v7", "v4", "v5")),
)


def gen_wheel_family(n: int) -> FatGraph:
    """The minimal non-admissible graph with a hub cycle and ``n`` triangles.

    Hub nodes ``p1..pn`` form the hub cycle; ring node ``wi`` is where
    triangle ``i`` meets triangle ``i+1``.  Triangle ``i`` runs through
    ``p_i``, ``w_{i-1}`` and ``w_i``.  Slots 0,2 carry one strand and 1,3 the
    other at every node.
    """
    if not isinstance(n, int) or n < 3:
        raise BadParameter(f"wheel family needs n >= 3, got {n!r}")

    def p(i):
        return f"p{(i - 1) % n + 1}"

    def w(i):
        return f"w{(i - 1) % n + 1}"

    rotations = []
    for i in range(1, n + 1):
        rotations.append((p(i), (p(i + 1), w(i), p(i - 1), w(i - 1))))
    for i in range(1, n + 1):
        rotations.append((w(i), (p(i), p(i + 1), w(i - 1), w(i + 1))))
    return FatGraph.from_rotations(rotations)


def gen_example_g8() -> FatGraph:
    """The eight-node 4-regular example with five standard cycles."""
    return FatGraph.from_rotations(EXAMPLE_G8_ROTATIONS)


@dataclass(frozen=True)
class PlainGraph:
    """Undirected multigraph without rotation data; loops are ``(a, a)``."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_named_edges(cls, edges, vertices=()):
        names = list(vertices)
        index = {v: i for i, v in enumerate(names)}
        out = []
        for a, b in edges:
            for v in (a, b):
                if v not in index:
                    index[v] = len(names)
                    names.append(v)
            out.append((index[a], index[b]))
        return cls(tuple(names), tuple(out))

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * len(self.vertices)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return tuple(deg)

    def degree_sequence(self) -> list[int]:
        return sorted(self.degrees)

    def named_edges(self) -> list[tuple[str, str]]:
        return [(self.vertices[a], self.vertices[b]) for a, b in self.edges]


def gen_trivalent_girth(n0: int) -> PlainGraph:
    """Cubic graph on ``2(n0^2 - 3 n0)`` vertices built to have girth ``n0``.

    A base cycle ``v1..vm`` with a pendant ``u_j`` on each ``v_j``; then for
    every residue class ``i`` modulo ``n0 - 3`` the pendants
    ``u_i, u_{i+s}, ..., u_{i+(n0-1)s}`` (``s = n0 - 3``) are closed into a cycle.
    """
    if not isinstance(n0, int) or n0 < 4:
        raise BadParameter(f"girth construction needs n0 >= 4, got {n0!r}")
    m = n0 * n0 - 3 * n0
    step = n0 - 3
    vs = [f"v{i}" for i in range(1, m + 1)]
    us = [f"u{i}" for i in range(1, m + 1)]
    edges = [(vs[i], vs[(i + 1) % m]) for i in range(m)]
    edges += [(vs[j], us[j]) for j in range(m)]
    for i in range(step):
        members = [i + k * step for k in range(n0)]
        edges += [(us[members[k]], us[members[(k + 1) % n0]]) for k in range(n0)]
    return PlainGraph.from_named_edges(edges, vs + us)


def gen_unitrivalent_girth(n0: int) -> PlainGraph:
    """Cut the least edge ``(x, y)`` of the cubic graph and hang a leaf off it.

    Adds ``u0`` adjacent to ``x``, ``y`` and the new leaf ``v0``.
    """
    base = gen_trivalent_girth(n0)
    least = min(range(len(base.edges)), key=lambda k: (min(base.edges[k]), max(base.edges[k]), k))
    x, y = base.edges[least]
    names = base.vertices + ("u0", "v0")
    u, v = len(base.vertices), len(base.vertices) + 1
    edges = base.edges[:least] + base.edges[least + 1:] + ((u, x), (u, y), (u, v))
    return PlainGraph(names, edges)


def girth(graph: PlainGraph) -> float | int:
    """Shortest cycle length by BFS from every vertex; ``math.inf`` for forests.

    Works on multigraphs: a loop is a cycle of length 1 and two parallel edges
    a cycle of length 2.
    """
    best = math.inf
    adj: list[list[tuple[int, int]]] = [[] for _ in graph.vertices]
    for k, (a, b) in enumerate(graph.edges):
        if a == b:
            return 1
        adj[a].append((b, k))
        adj[b].append((a, k))
    for root in range(len(graph.vertices)):
        dist = {root: 0}
        via = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y, k in adj[x]:
                if k == via[x]:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    via[y] = k
                    queue.append(y)
                else:
                    best = min(best, dist[x] + dist[y] + 1)
    return best
