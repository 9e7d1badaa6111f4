"""Intersection ribbon graphs, face tracing, and Euler-characteristic bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cycles import SimpleCycle
from .errors import NotFourRegular
from .fatgraph import FatGraph, connected_components, require_valid


@dataclass(frozen=True)
class RibbonGraph:
    """One vertex per standard cycle, one edge per crossing node.

    Edge ``k`` joins ``ends[k][0]`` and ``ends[k][1]``; its darts are
    ``2k`` (at the first end) and ``2k + 1`` (at the second).  ``rotation[v]``
    is the cyclic order of darts at vertex ``v``.
    """

    num_vertices: int
    ends: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]
    crossing: tuple[int, ...]  # source node of each edge
    orientation: tuple[int, ...]  # +1 forward along the cycle, -1 reversed

    @property
    def num_edges(self) -> int:
        return len(self.ends)

    def dart_vertex(self, d: int) -> int:
        return self.ends[d >> 1][d & 1]

    def successor(self) -> dict[int, int]:
        nxt = {}
        for rot in self.rotation:
            for k, d in enumerate(rot):
                nxt[d] = rot[(k + 1) % len(rot)]
        return nxt


@dataclass(frozen=True)
class FaceTrace:
    faces: tuple[tuple[int, ...], ...]  # dart orbits; () for an isolated vertex
    components: tuple[tuple[int, int, int, int], ...]  # (v, e, f, genus)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return sum(v - e + f for v, e, f, _ in self.components)

    @property
    def genus(self) -> int:
        return sum(g for *_, g in self.components)


@dataclass(frozen=True)
class FaceCycle:
    """Closed walk in the source graph attached to one face."""

    edges: tuple[int, ...]
    nodes: tuple[int, ...]

    @property
    def simple(self) -> bool:
        return len(set(self.nodes)) == len(self.nodes)

    def as_simple_cycle(self) -> SimpleCycle | None:
        if not self.simple:
            return None
        return SimpleCycle(tuple(sorted(self.edges)), self.nodes, False)


@dataclass(frozen=True)
class ObstructionCertificate:
    v: int
    f: int
    face_cycles: tuple[FaceCycle, ...]
    orientation: tuple[int, ...]

    @property
    def average_face_length(self) -> Fraction:
        """The average face-cycle length when every standard cycle has length 1."""
        return Fraction(self.v, self.f)


@dataclass(frozen=True)
class GenusReport:
    boundary_count: int
    genus: int
    chi: int
    components: tuple[tuple[int, int, int], ...]  # (chi, boundaries, genus)


def _require_four_regular(graph: FatGraph) -> None:
    require_valid(graph)
    if not graph.is_four_regular():
        bad = [n.name for n in graph.nodes if n.valence != 4]
        raise NotFourRegular(f"nodes {', '.join(bad)} are not 4-valent")


def intersection_graph(graph: FatGraph, orientation=None) -> RibbonGraph:
    """The intersection ribbon graph of a 4-regular fat graph.

    The rotation at a vertex lists the crossings in the order the standard
    cycle meets them, forward in its canonical direction unless
    ``orientation`` flips it.
    """
    _require_four_regular(graph)
    cycles = graph.standard_cycles
    if orientation is None:
        orientation = (1,) * len(cycles)
    through: dict[int, list[int]] = {}
    for c in cycles:
        for n in c.nodes:
            through.setdefault(n, []).append(c.id)
    ends = []
    dart_of = {}
    for n in range(len(graph.nodes)):
        a, b = through[n]
        dart_of[(n, a)] = 2 * len(ends)
        dart_of[(n, b)] = 2 * len(ends) + 1
        ends.append((a, b))
    rotation = []
    for c in cycles:
        order = [dart_of[(n, c.id)] for n in c.nodes]
        if orientation[c.id] < 0:
            order.reverse()
        rotation.append(tuple(order))
    return RibbonGraph(len(cycles), tuple(ends), tuple(rotation), tuple(range(len(graph.nodes))), tuple(orientation))


def _ribbon_components(ribbon: RibbonGraph) -> list[list[int]]:
    parent = list(range(ribbon.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in ribbon.ends:
        parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for v in range(ribbon.num_vertices):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def trace_faces(ribbon: RibbonGraph) -> FaceTrace:
    """Faces as orbits of ``dart -> rotation successor of its partner``."""
    nxt = ribbon.successor()
    seen = set()
    faces = []
    face_of = {}
    for d in sorted(nxt):
        if d in seen:
            continue
        orbit = [d]
        seen.add(d)
        x = nxt[d ^ 1]
        while x != d:
            orbit.append(x)
            seen.add(x)
            x = nxt[x ^ 1]
        for x in orbit:
            face_of[x] = len(faces)
        faces.append(tuple(orbit))
    comps = []
    for verts in _ribbon_components(ribbon):
        vs = set(verts)
        darts = [d for d in nxt if ribbon.dart_vertex(d) in vs]
        e = len(darts) // 2
        f = len({face_of[d] for d in darts}) if darts else 1
        if not darts:
            faces.append(())
        chi = len(verts) - e + f
        comps.append((len(verts), e, f, (2 - chi) // 2))
    return FaceTrace(tuple(faces), tuple(comps))


def face_walks(graph: FatGraph, ribbon: RibbonGraph, trace: FaceTrace) -> tuple[FaceCycle, ...]:
    """Closed walks in ``graph`` running along the arcs cut out by each face."""
    cycles = graph.standard_cycles
    out = []
    for face in trace.faces:
        if not face:
            continue
        edges = []
        nodes = []
        for d in face:
            arrive = d ^ 1
            c = cycles[ribbon.dart_vertex(arrive)]
            k = c.nodes.index(ribbon.crossing[arrive >> 1])
            nodes.append(c.nodes[k])
            if ribbon.orientation[c.id] > 0:
                edges.append(c.edges[k])
            else:
                edges.append(c.edges[k - 1])
        out.append(FaceCycle(tuple(edges), tuple(nodes)))
    return tuple(out)


def face_nonstandard_cycles(graph: FatGraph, orientation=None) -> dict[int, FaceCycle]:
    """Map each face of the intersection ribbon graph to its cycle in ``graph``.

    Face cycles are pairwise edge-disjoint and cover every edge once; a face
    cycle that revisits a node is still returned (check ``FaceCycle.simple``).
    """
    ribbon = intersection_graph(graph, orientation)
    trace = trace_faces(ribbon)
    return dict(enumerate(face_walks(graph, ribbon, trace)))


def _planar_orientation(graph: FatGraph, ribbon: RibbonGraph, max_vertices: int):
    """An orientation making the connected ribbon graph planar, or ``None``."""
    if trace_faces(ribbon).genus == 0:
        return ribbon.orientation
    k = ribbon.num_vertices
    if k > max_vertices:
        return None
    # vertex 0 stays fixed: a global reversal never changes the genus
    for mask in range(1, 1 << (k - 1)):
        orientation = tuple([1] + [-1 if mask >> i & 1 else 1 for i in range(k - 1)])
        flipped = intersection_graph(graph, orientation)
        if trace_faces(flipped).genus == 0:
            return orientation
    return None


def vf_obstruction(graph: FatGraph, search_limit: int = 16) -> ObstructionCertificate | None:
    """Certificate of non-admissibility when the intersection graph is planar with v <= f.

    Each face yields a closed walk turning at every node; the walks partition
    the edges, so with all standard cycles of length 1 their average length is
    v/f <= 1 and one of them is no longer than a standard cycle.  Returns
    ``None`` when the test is inconclusive.

    The canonical orientation is tried first; if it is not planar, orientations
    of graphs with at most ``search_limit`` standard cycles are searched.
    """
    ribbon = intersection_graph(graph)
    if ribbon.num_vertices == 0 or len(_ribbon_components(ribbon)) != 1 or ribbon.num_edges == 0:
        return None
    orientation = _planar_orientation(graph, ribbon, search_limit)
    if orientation is None:
        return None
    ribbon = intersection_graph(graph, orientation)
    trace = trace_faces(ribbon)
    v, f = ribbon.num_vertices, trace.num_faces
    if v > f:
        return None
    return ObstructionCertificate(v, f, face_walks(graph, ribbon, trace), orientation)


def ribbon_genus(graph: FatGraph) -> GenusReport:
    """Boundary count and genus of the closed surface the fat graph fills.

    Boundaries of the thickened graph are the orbits of ``h -> next slot after
    pairing(h)``; a circle thickens to an annulus with two boundaries.
    """
    require_valid(graph)
    seen = set()
    orbit_node = {}
    for start in range(len(graph.half_edges)):
        if start in seen:
            continue
        h = start
        while h not in seen:
            seen.add(h)
            orbit_node[h] = start
            p = graph.pairing[h]
            node, slot = graph.half_edges[p]
            h = graph.slot_table[node][(slot + 1) % graph.nodes[node].valence]
    comps = []
    for nodes, circles in connected_components(graph):
        if circles:
            comps.append((0, 2, 0))
            continue
        ns = set(nodes)
        halves = [h for h in range(len(graph.half_edges)) if graph.node_of(h) in ns]
        chi = len(nodes) - len(halves) // 2
        b = len({orbit_node[h] for h in halves})
        comps.append((chi, b, (2 - chi - b) // 2))
    return GenusReport(
        boundary_count=sum(b for _, b, _ in comps),
        genus=sum(g for *_, g in comps),
        chi=sum(c for c, _, _ in comps),
        components=tuple(comps),
    )


@dataclass(frozen=True)
class MinGenusReport:
    chi: int
    boundary_count: int
    min_genus: int
    statement: str


def min_genus_report(graph: FatGraph) -> MinGenusReport:
    """Lower bound on the genus of any closed surface with this systolic graph.

    The complement of the graph in such a surface has at most one region per
    boundary of the thickening, each of Euler characteristic at most 1, so
    chi(F) <= chi(graph) + boundaries = 2 - 2g, with equality exactly when
    every region is a disc.
    """
    rg = ribbon_genus(graph)
    statement = (
        f"chi(F) <= chi(graph) + b = {rg.chi} + {rg.boundary_count} = {rg.chi + rg.boundary_count}"
        f" for every closed surface F with this systolic graph, so genus(F) >= {rg.genus};"
        " equality iff every complementary region is a disc"
    )
    return MinGenusReport(rg.chi, rg.boundary_count, rg.genus, statement)
