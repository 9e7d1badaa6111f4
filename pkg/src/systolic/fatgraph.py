"""Decorated fat graphs as half-edge combinatorial maps.

A half-edge is identified by an integer ``h``.  It sits at slot
``half_edges[h][1]`` of node ``half_edges[h][0]``; slots run ``0..valence-1``
around the node and encode the cyclic ordering.  ``pairing`` glues half-edges
into edges.  Circle components carry no half-edges at all.

Lengths are indexed by *length variables*: edges ``0..num_edges-1`` followed by
circles ``num_edges..num_edges+num_circles-1``.  Edge ``e`` is the pairing orbit
whose smaller half-edge comes ``e``-th in increasing half-edge order.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import DeletingEverything, InvalidGraph, UnknownCycleId


@dataclass(frozen=True)
class Node:
    name: str
    valence: int


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    orbit: tuple[int, ...] = ()

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


@dataclass(frozen=True)
class StandardCycle:
    """A standard cycle, stored in its canonical direction and rotation.

    ``darts`` are the half-edges through which the cycle leaves each visited
    node, so ``nodes[k]`` owns ``darts[k]`` and ``edges[k]`` is its edge.
    """

    id: int
    edges: tuple[int, ...]
    nodes: tuple[int, ...]
    darts: tuple[int, ...]
    variables: tuple[int, ...]
    circle: str | None = None

    @property
    def is_circle(self) -> bool:
        return self.circle is not None

    def __len__(self):
        return len(self.variables)


@dataclass(frozen=True)
class FatGraph:
    nodes: tuple[Node, ...]
    half_edges: tuple[tuple[int, int], ...]
    pairing: tuple[int, ...]
    circles: tuple[str, ...] = ()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_pairs(
        cls,
        nodes: Sequence[tuple[str, int]],
        pairs: Iterable[tuple[tuple[str, int], tuple[str, int]]],
        circles: Sequence[str] = (),
    ) -> FatGraph:
        """Build a graph from ``(name, valence)`` nodes and slot pairs.

        Half-edges are numbered node by node in slot order.  Nothing is
        checked here beyond name lookup; call :func:`validate` on the result.
        Slots referenced by ``pairs`` but outside ``0..valence-1`` are kept so
        that validation can report them.
        """
        node_list = tuple(Node(str(n), int(v)) for n, v in nodes)
        index = {n.name: i for i, n in enumerate(node_list)}
        if len(index) != len(node_list):
            raise ValueError("duplicate node name")
        pairs = [tuple(p) for p in pairs]
        slots = [list(range(n.valence)) for n in node_list]
        for pair in pairs:
            for name, slot in pair:
                if name not in index:
                    raise KeyError(f"unknown node {name!r}")
                if slot not in slots[index[name]]:
                    slots[index[name]].append(slot)
        half_edges = []
        where = {}
        for i, ss in enumerate(slots):
            for s in sorted(ss):
                where[(i, s)] = len(half_edges)
                half_edges.append((i, s))
        pairing = [-1] * len(half_edges)
        for (a, sa), (b, sb) in pairs:
            ha = where[(index[a], sa)]
            hb = where[(index[b], sb)]
            pairing[ha] = hb
            pairing[hb] = ha
        return cls(node_list, tuple(half_edges), tuple(pairing), tuple(circles))

    @classmethod
    def from_rotations(cls, rotations: Sequence[tuple[str, Sequence[str]]], circles: Sequence[str] = ()) -> FatGraph:
        """Build a graph from neighbour lists ``a: [b, c, ...]`` in rotation order.

        Repeated neighbours pair by occurrence: the k-th mention of ``b`` in the
        list of ``a`` is glued to the k-th mention of ``a`` in the list of ``b``.
        A node listed in its own rotation gets loops, pairing mentions 1-2, 3-4...
        Raises ``ValueError`` when the mention counts do not match.
        """
        rotations = [(str(a), [str(b) for b in nbrs]) for a, nbrs in rotations]
        table = dict(rotations)
        if len(table) != len(rotations):
            raise ValueError("node listed twice")
        mentions: dict[tuple[str, str], list[int]] = {}
        for a, nbrs in rotations:
            for slot, b in enumerate(nbrs):
                if b not in table:
                    raise KeyError(f"{a} lists unknown neighbour {b!r}")
                mentions.setdefault((a, b), []).append(slot)
        pairs = []
        for (a, b), slots in mentions.items():
            if a == b:
                if len(slots) % 2:
                    raise ValueError(f"node {a} lists itself an odd number of times")
                pairs.extend(((a, slots[k]), (a, slots[k + 1])) for k in range(0, len(slots), 2))
            elif a < b:
                other = mentions.get((b, a), [])
                if len(other) != len(slots):
                    raise ValueError(f"{a} lists {b} {len(slots)} times but {b} lists {a} {len(other)} times")
                pairs.extend(((a, s), (b, t)) for s, t in zip(slots, other))
            elif (b, a) not in mentions:
                raise ValueError(f"{a} lists {b} {len(slots)} times but {b} lists {a} 0 times")
        return cls.from_pairs([(a, len(nbrs)) for a, nbrs in rotations], pairs, circles)

    # -- basic queries ----------------------------------------------------

    @cached_property
    def node_index(self) -> dict[str, int]:
        return {n.name: i for i, n in enumerate(self.nodes)}

    @cached_property
    def slot_table(self) -> tuple[tuple[int, ...], ...]:
        table = [[-1] * n.valence for n in self.nodes]
        for h, (node, slot) in enumerate(self.half_edges):
            table[node][slot] = h
        return tuple(tuple(row) for row in table)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((h, p) for h, p in enumerate(self.pairing) if h < p)

    @cached_property
    def edge_of_half(self) -> tuple[int, ...]:
        out = [-1] * len(self.half_edges)
        for e, (a, b) in enumerate(self.edges):
            out[a] = out[b] = e
        return tuple(out)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_circles(self) -> int:
        return len(self.circles)

    @property
    def num_lengths(self) -> int:
        return self.num_edges + self.num_circles

    def circle_variable(self, index: int) -> int:
        return self.num_edges + index

    def node_of(self, h: int) -> int:
        return self.half_edges[h][0]

    def edge_nodes(self, e: int) -> tuple[int, int]:
        a, b = self.edges[e]
        return self.half_edges[a][0], self.half_edges[b][0]

    def opposite(self, h: int) -> int:
        node, slot = self.half_edges[h]
        val = self.nodes[node].valence
        return self.slot_table[node][(slot + val // 2) % val]

    def standard_successor(self, h: int) -> int:
        """Leave through ``h``, cross the edge, continue straight through."""
        return self.opposite(self.pairing[h])

    def half_label(self, h: int) -> str:
        node, slot = self.half_edges[h]
        return f"{self.nodes[node].name}.{slot}"

    def edge_label(self, e: int) -> str:
        a, b = self.edges[e]
        return f"{self.half_label(a)}-{self.half_label(b)}"

    def variable_label(self, var: int) -> str:
        if var < self.num_edges:
            return self.edge_label(var)
        return f"circle:{self.circles[var - self.num_edges]}"

    def structure(self):
        """Numbering-independent description used for round-trip equality."""
        pairs = set()
        for a, b in self.edges:
            x = (self.nodes[self.half_edges[a][0]].name, self.half_edges[a][1])
            y = (self.nodes[self.half_edges[b][0]].name, self.half_edges[b][1])
            pairs.add(tuple(sorted((x, y))))
        return (
            tuple(sorted((n.name, n.valence) for n in self.nodes)),
            frozenset(pairs),
            tuple(sorted(self.circles)),
        )

    # -- derived combinatorics --------------------------------------------

    @cached_property
    def standard_cycles(self) -> tuple[StandardCycle, ...]:
        return _trace_standard_cycles(self)

    def is_four_regular(self) -> bool:
        return all(n.valence == 4 for n in self.nodes)


def _structural_violations(g: FatGraph) -> list[Violation]:
    out = []
    n_half = len(g.half_edges)
    if len(g.pairing) != n_half:
        out.append(Violation("pairing size", f"{len(g.pairing)} entries for {n_half} half-edges"))
        return out
    for h, p in enumerate(g.pairing):
        if p == h:
            out.append(Violation("pairing fixed point", f"half-edge {h} is paired with itself"))
        elif p < 0 or p >= n_half:
            out.append(Violation("unpaired half-edge", f"half-edge {h} has no partner"))
        elif g.pairing[p] != h:
            out.append(Violation("pairing not an involution", f"{h} -> {p} -> {g.pairing[p]}"))
    owned: dict[int, list[int]] = {i: [] for i in range(len(g.nodes))}
    for h, (node, slot) in enumerate(g.half_edges):
        if not 0 <= node < len(g.nodes):
            out.append(Violation("unknown node", f"half-edge {h} names node {node}"))
            continue
        owned[node].append(slot)
    for i, node in enumerate(g.nodes):
        slots = owned[i]
        if len(set(slots)) != len(slots):
            out.append(Violation("slot duplicate", f"node {node.name} repeats a slot index"))
        if sorted(set(slots)) != list(range(len(set(slots)))) or len(set(slots)) != node.valence:
            out.append(
                Violation("slot gap", f"node {node.name} has slots {sorted(slots)} for valence {node.valence}")
            )
        if node.valence % 2:
            out.append(Violation("odd valence", f"node {node.name} has valence {node.valence}"))
        if node.valence < 4:
            out.append(Violation("valence < 4", f"node {node.name} has valence {node.valence}"))
    if len(set(g.circles)) != len(g.circles):
        out.append(Violation("duplicate circle", "circle names must be distinct"))
    return out


def validate(graph: FatGraph) -> ValidationReport:
    """Check every fat-graph invariant; violations are returned, not raised."""
    violations = _structural_violations(graph)
    structural_kinds = {v.kind for v in violations} - {"valence < 4"}
    if not structural_kinds:
        seen = set()
        for start in range(len(graph.half_edges)):
            if start in seen:
                continue
            orbit = _orbit(graph, start)
            seen.update(orbit)
            nodes = [graph.node_of(h) for h in orbit]
            if len(set(nodes)) != len(nodes):
                repeated = sorted({graph.nodes[n].name for n in nodes if nodes.count(n) > 1})
                violations.append(
                    Violation(
                        "non-simple standard orbit",
                        f"orbit revisits {', '.join(repeated)}",
                        tuple(orbit),
                    )
                )
    return ValidationReport(tuple(violations))


def require_valid(graph: FatGraph) -> None:
    report = validate(graph)
    if not report.ok:
        raise InvalidGraph(report)


def _orbit(g: FatGraph, start: int) -> list[int]:
    orbit = [start]
    h = g.standard_successor(start)
    while h != start:
        orbit.append(h)
        h = g.standard_successor(h)
    return orbit


def _trace_standard_cycles(g: FatGraph) -> tuple[StandardCycle, ...]:
    require_valid(g)
    seen = set()
    found = []
    for start in range(len(g.half_edges)):
        if start in seen:
            continue
        darts = _orbit(g, start)
        back = [g.pairing[h] for h in reversed(darts)]
        seen.update(darts)
        seen.update(back)
        best = None
        for seq in (darts, back):
            for k in range(len(seq)):
                rot = seq[k:] + seq[:k]
                key = (tuple(g.edge_of_half[h] for h in rot), tuple(rot))
                if best is None or key < best:
                    best = key
        found.append(best)
    found.sort()
    cycles = []
    for i, (edge_seq, darts) in enumerate(found):
        cycles.append(
            StandardCycle(
                id=i,
                edges=edge_seq,
                nodes=tuple(g.node_of(h) for h in darts),
                darts=darts,
                variables=edge_seq,
            )
        )
    for ci, name in enumerate(g.circles):
        cycles.append(
            StandardCycle(
                id=len(cycles),
                edges=(),
                nodes=(),
                darts=(),
                variables=(g.circle_variable(ci),),
                circle=name,
            )
        )
    return tuple(cycles)


def standard_cycles(graph: FatGraph) -> tuple[StandardCycle, ...]:
    """All standard cycles, each orbit and its reversal reported once."""
    return graph.standard_cycles


def find_standard_cycle(graph: FatGraph, node_names: Iterable[str]) -> StandardCycle:
    """Return the unique standard cycle visiting exactly ``node_names``."""
    wanted = {graph.node_index[n] for n in node_names}
    hits = [c for c in graph.standard_cycles if set(c.nodes) == wanted and not c.is_circle]
    if len(hits) != 1:
        raise UnknownCycleId(f"{len(hits)} standard cycles visit exactly {sorted(node_names)}")
    return hits[0]


def delete_with_origins(graph: FatGraph, subset: Iterable[int]) -> tuple[FatGraph, tuple[tuple[int, ...], ...]]:
    """Delete standard cycles; also report where each new length variable came from.

    ``origins[v]`` lists the old length variables whose lengths add up to new
    variable ``v`` (several old edges when valence-2 nodes were smoothed).
    """
    cycles = graph.standard_cycles
    subset = set(subset)
    unknown = [c for c in subset if not isinstance(c, int) or not 0 <= c < len(cycles)]
    if unknown:
        raise UnknownCycleId(f"no standard cycles with ids {sorted(map(str, unknown))}")
    if len(subset) >= len(cycles):
        raise DeletingEverything("the subset must leave at least one standard cycle")

    removed = set()
    for c in subset:
        removed.update(cycles[c].edges)

    kept_slots = []
    for i, node in enumerate(graph.nodes):
        kept_slots.append([s for s in range(node.valence) if graph.edge_of_half[graph.slot_table[i][s]] not in removed])
    smoothed = {i for i, ks in enumerate(kept_slots) if len(ks) == 2}
    kept_nodes = [i for i, ks in enumerate(kept_slots) if len(ks) >= 4]

    new_index = {}
    new_nodes = []
    new_halves = []
    for i in kept_nodes:
        new_nodes.append(Node(graph.nodes[i].name, len(kept_slots[i])))
        for rank, s in enumerate(kept_slots[i]):
            new_index[graph.slot_table[i][s]] = len(new_halves)
            new_halves.append((len(new_nodes) - 1, rank))

    def other_kept(h):
        node = graph.node_of(h)
        a, b = (graph.slot_table[node][s] for s in kept_slots[node])
        return b if h == a else a

    pairing = [-1] * len(new_halves)
    paths = {}
    for h in new_index:
        path = [graph.edge_of_half[h]]
        q = graph.pairing[h]
        while graph.node_of(q) in smoothed:
            r = other_kept(q)
            path.append(graph.edge_of_half[r])
            q = graph.pairing[r]
        a, b = new_index[h], new_index[q]
        pairing[a] = b
        if a < b:
            paths[a] = tuple(path)

    new_circles = []
    circle_origins = []
    n_old_edges = graph.num_edges
    for c in cycles:
        if c.id in subset:
            continue
        if c.is_circle:
            new_circles.append(c.circle)
            circle_origins.append(c.variables)
        elif all(n in smoothed for n in c.nodes):
            new_circles.append(graph.nodes[c.nodes[0]].name + "~")
            circle_origins.append(c.edges)
    taken = set()
    for k, name in enumerate(new_circles):
        while name in taken:
            name += "~"
        taken.add(name)
        new_circles[k] = name

    result = FatGraph(tuple(new_nodes), tuple(new_halves), tuple(pairing), tuple(new_circles))
    edge_origins = tuple(paths[a] for a, _ in result.edges)
    assert all(v < n_old_edges for p in edge_origins for v in p)
    return result, edge_origins + tuple(circle_origins)


def delete_standard_cycles(graph: FatGraph, subset: Iterable[int]) -> FatGraph:
    """Remove the given standard cycles, smoothing nodes left with valence 2."""
    return delete_with_origins(graph, subset)[0]


def connected_components(graph: FatGraph) -> list[tuple[list[int], list[int]]]:
    """Node-index and circle-index lists of each connected component."""
    parent = list(range(len(graph.nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(graph.num_edges):
        a, b = graph.edge_nodes(e)
        parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for i in range(len(graph.nodes)):
        groups.setdefault(find(i), []).append(i)
    comps = [(nodes, []) for nodes in sorted(groups.values())]
    comps.extend(([], [ci]) for ci in range(graph.num_circles))
    return comps
