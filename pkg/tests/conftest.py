import random

from systolic.fatgraph import FatGraph, delete_standard_cycles
from systolic.generators import gen_example_g8, gen_wheel_family

from oracles import random_fatgraph

# Rotations of the two admissible five-node graphs obtained from the
# eight-node example, exactly as printed (occurrence-order pairing).
G_MINUS_C3 = (
    ("v1", ("v2", "v4", "v2", "v5")),
    ("v2", ("v1", "v3", "v1", "v4")),
    ("v3", ("v2", "v5", "v4", "v5")),
    ("v4", ("v1", "v3", "v5", "v2")),
    ("v5", ("v1", "v3", "v4", "v3")),
)
G_MINUS_C4 = (
    ("v1", ("v2", "v5", "v4", "v5")),
    ("v2", ("v1", "v3", "v4", "v3")),
    ("v3", ("v2", "v5", "v2", "v4")),
    ("v4", ("v1", "v5", "v2", "v3")),
    ("v5", ("v1", "v4", "v1", "v3")),
)


def build_corpus():
    """Named fat graphs shared by the cross-module tests."""
    out = []
    for n in range(3, 7):
        g = gen_wheel_family(n)
        out.append((f"G{n}", g))
        for c in g.standard_cycles:
            out.append((f"G{n}-C{c.id}", delete_standard_cycles(g, {c.id})))
    g8 = gen_example_g8()
    out.append(("G8", g8))
    for c in g8.standard_cycles:
        out.append((f"G8-c{c.id}", delete_standard_cycles(g8, {c.id})))
    out.append(("G-c3 printed", FatGraph.from_rotations(G_MINUS_C3)))
    out.append(("G-c4 printed", FatGraph.from_rotations(G_MINUS_C4)))
    out.append(("circle", FatGraph.from_pairs([], [], ["a"])))
    out.append(("two circles", FatGraph.from_pairs([], [], ["a", "b"])))
    rng = random.Random(7)
    k = 0
    while k < 12:
        g = random_fatgraph(rng, rng.randint(1, 4), valences=(4, 4, 6))
        if g is not None:
            out.append((f"random{k}", g))
            k += 1
    return out


CORPUS = build_corpus()

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def metric_by_node_pairs(graph, values):
    """Lengths keyed by unordered node-name pairs; parallel edges share a value."""
    from systolic.admissibility import MetricAssignment

    lengths = {}
    for e in range(graph.num_edges):
        a, b = graph.edge_nodes(e)
        lengths[e] = values[frozenset((graph.nodes[a].name, graph.nodes[b].name))]
    return MetricAssignment(lengths)


def wheel_minus_triangle(n):
    """The wheel graph with the triangle through p1 deleted."""
    from systolic.fatgraph import find_standard_cycle

    g = gen_wheel_family(n)
    tri = find_standard_cycle(g, ["p1", f"w{n}", "w1"])
    return delete_standard_cycles(g, {tri.id})


def printed_triangle_deleted_metric(n, eps):
    """The metric printed for the wheel graph minus one triangle, transcribed as is."""
    from fractions import Fraction

    n1 = Fraction(1, n - 1)
    side = Fraction(1, 2) + eps / 2 - n1 / 2
    values = {}
    hub = [f"p{i}" for i in range(2, n + 1)]
    for a, b in zip(hub, hub[1:] + hub[:1]):
        values[frozenset((a, b))] = n1
    values[frozenset(("p2", "w2"))] = Fraction(1, 2)
    values[frozenset((f"p{n}", f"w{n - 1}"))] = Fraction(1, 2)
    for j in range(3, n):
        values[frozenset((f"p{j}", f"w{j - 1}"))] = side
        values[frozenset((f"p{j}", f"w{j}"))] = side
        values[frozenset((f"w{j - 1}", f"w{j}"))] = Fraction(1, n) - eps
    return metric_by_node_pairs(wheel_minus_triangle(n), values)
