"""Text formats for fat graphs, metrics and plain graphs, plus JSON reports.

Fat graphs come in two formats, never mixed in one file::

    node v1 4               rot v1: v2 v4 v3 v8
    edge v1.0 v2.0          rot v2: v1 v4 v3 v6
    circle c                ...

Metrics are ``len <node>.<slot> <p/q>``, ``len <a>-<b>[#k] <p/q>`` or
``len <circle> <p/q>``.  Plain graphs are ``edge a b`` (and optional
``vertex a``) lines.  A ``#`` at the start of a token begins a comment.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction

from .admissibility import MetricAssignment
from .errors import DanglingSlot, MismatchedOccurrenceCounts, NonPositiveLength, ParseError
from .fatgraph import FatGraph
from .generators import PlainGraph

_COMMENT = re.compile(r"(^|\s)#.*")


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), 1):
        # a comment starts at a token boundary, so a-b#2 survives
        line = _COMMENT.sub("", raw).strip()
        if line:
            yield number, line


def _int(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", number) from None


def _half(token: str, number: int) -> tuple[str, int]:
    name, dot, slot = token.rpartition(".")
    if not dot or not name:
        raise ParseError(f"expected <node>.<slot>, got {token!r}", number)
    return name, _int(slot, number, "slot")


def parse_fatgraph(text: str) -> FatGraph:
    """Parse either the explicit ``node``/``edge`` format or ``rot`` lines."""
    nodes: list[tuple[str, int]] = []
    node_line: dict[str, int] = {}
    pairs = []
    used: dict[tuple[str, int], int] = {}
    circles: list[str] = []
    rotations: list[tuple[str, list[str]]] = []
    rot_line: dict[str, int] = {}
    style = None
    for number, line in _lines(text):
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        kind = "B" if keyword == "rot" else "A" if keyword in ("node", "edge") else None
        if kind:
            if style and style != kind:
                raise ParseError("node/edge lines and rot lines cannot be mixed", number)
            style = kind
        if keyword == "node":
            parts = rest.split()
            if len(parts) != 2:
                raise ParseError("expected: node <name> <valence>", number)
            name = parts[0]
            if name in node_line:
                raise ParseError(f"node {name} declared twice (first on line {node_line[name]})", number)
            node_line[name] = number
            nodes.append((name, _int(parts[1], number, "valence")))
        elif keyword == "edge":
            parts = rest.split()
            if len(parts) != 2:
                raise ParseError("expected: edge <node>.<slot> <node>.<slot>", number)
            a, b = _half(parts[0], number), _half(parts[1], number)
            for h in (a, b):
                if h in used:
                    raise ParseError(f"half-edge {h[0]}.{h[1]} already used on line {used[h]}", number)
                used[h] = number
            if a == b:
                raise ParseError("an edge needs two distinct half-edges", number)
            pairs.append((a, b))
        elif keyword == "circle":
            if len(rest.split()) != 1:
                raise ParseError("expected: circle <name>", number)
            circles.append(rest)
        elif keyword == "rot":
            name, colon, nbrs = rest.partition(":")
            name = name.strip()
            if not colon or not name:
                raise ParseError("expected: rot <name>: <neighbour> ...", number)
            if name in rot_line:
                raise ParseError(f"rotation of {name} given twice (first on line {rot_line[name]})", number)
            rot_line[name] = number
            rotations.append((name, nbrs.replace(",", " ").split()))
        else:
            raise ParseError(f"unknown keyword {keyword!r}", number)

    if style == "B":
        return _from_rotations(rotations, rot_line, circles)

    valence = dict(nodes)
    for (name, slot), number in sorted(used.items(), key=lambda kv: kv[1]):
        if name not in valence:
            raise DanglingSlot(f"edge uses undeclared node {name!r}", number)
        if not 0 <= slot < valence[name]:
            raise DanglingSlot(f"slot {name}.{slot} is outside 0..{valence[name] - 1}", number)
    for name, val in nodes:
        for slot in range(val):
            if (name, slot) not in used:
                raise DanglingSlot(f"slot {name}.{slot} is not on any edge", node_line[name])
    return FatGraph.from_pairs(nodes, pairs, circles)


def _from_rotations(rotations, rot_line, circles) -> FatGraph:
    count: dict[tuple[str, str], int] = {}
    for a, nbrs in rotations:
        for b in nbrs:
            if b not in rot_line:
                raise DanglingSlot(f"{a} lists {b!r}, which has no rot line", rot_line[a])
            count[(a, b)] = count.get((a, b), 0) + 1
    for (a, b), k in count.items():
        if a == b and k % 2:
            raise MismatchedOccurrenceCounts(f"{a} lists itself {k} times", rot_line[a])
        if a != b and count.get((b, a), 0) != k:
            raise MismatchedOccurrenceCounts(
                f"{a} lists {b} {k} times but {b} lists {a} {count.get((b, a), 0)} times", rot_line[a]
            )
    return FatGraph.from_rotations(rotations, circles)


def serialize_fatgraph(graph: FatGraph) -> str:
    out = [f"node {n.name} {n.valence}" for n in graph.nodes]
    out += [f"edge {graph.half_label(a)} {graph.half_label(b)}" for a, b in graph.edges]
    out += [f"circle {c}" for c in graph.circles]
    return "\n".join(out) + "\n"


def fraction_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(token: str, number: int | None = None) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{token!r} is not a rational number", number) from None


def variable_key(graph: FatGraph, var: int) -> str:
    """Metric-file name of a length variable: ``node.slot`` of its first half-edge, or the circle name."""
    if var < graph.num_edges:
        return graph.half_label(graph.edges[var][0])
    return graph.circles[var - graph.num_edges]


def _parallel_edges(graph: FatGraph, a: str, b: str) -> list[int]:
    ia, ib = graph.node_index[a], graph.node_index[b]
    found = []
    for h in graph.slot_table[ia]:
        e = graph.edge_of_half[h]
        x, y = graph.edge_nodes(e)
        if {x, y} == {ia, ib} and e not in found:
            found.append(e)
    return found


def parse_metric(text: str, graph: FatGraph) -> MetricAssignment:
    """Parse ``len`` lines against ``graph``.

    ``a-b`` without ``#k`` sets every edge between ``a`` and ``b``;
    ``#k`` picks the k-th of them (1-based) in slot order at ``a``.
    """
    lengths: dict[int, Fraction] = {}
    where: dict[int, int] = {}
    for number, line in _lines(text):
        parts = line.split()
        if len(parts) != 3 or parts[0] != "len":
            raise ParseError("expected: len <edge> <p/q>", number)
        target, value = parts[1], parse_fraction(parts[2], number)
        if value <= 0:
            raise NonPositiveLength(f"line {number}: length {fraction_str(value)} is not positive")
        targets = _resolve(graph, target, number)
        for var in targets:
            if var in lengths and lengths[var] != value:
                raise ParseError(f"{target} already has length {fraction_str(lengths[var])} (line {where[var]})", number)
            lengths[var] = value
            where[var] = number
    return MetricAssignment(lengths)


def _resolve(graph: FatGraph, target: str, number: int) -> list[int]:
    if target in graph.circles:
        return [graph.circle_variable(graph.circles.index(target))]
    if "-" in target:
        pair, _, k = target.partition("#")
        a, _, b = pair.partition("-")
        if a not in graph.node_index or b not in graph.node_index:
            raise ParseError(f"unknown node in {target!r}", number)
        edges = _parallel_edges(graph, a, b)
        if not edges:
            raise ParseError(f"no edge between {a} and {b}", number)
        if not k:
            return edges
        idx = _int(k, number, "parallel index")
        if not 1 <= idx <= len(edges):
            raise ParseError(f"{a}-{b} has {len(edges)} parallel edges, not {idx}", number)
        return [edges[idx - 1]]
    name, slot = _half(target, number)
    if name not in graph.node_index or not 0 <= slot < graph.nodes[graph.node_index[name]].valence:
        raise ParseError(f"unknown half-edge {target!r}", number)
    return [graph.edge_of_half[graph.slot_table[graph.node_index[name]][slot]]]


def serialize_metric(graph: FatGraph, metric: MetricAssignment) -> str:
    return "".join(f"len {variable_key(graph, v)} {fraction_str(x)}\n" for v, x in sorted(metric.lengths.items()))


def parse_plain_graph(text: str) -> PlainGraph:
    vertices: list[str] = []
    edges = []
    for number, line in _lines(text):
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "edge" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
        else:
            raise ParseError("expected: edge <a> <b> or vertex <a>", number)
    return PlainGraph.from_named_edges(edges, dict.fromkeys(vertices))


def serialize_plain_graph(graph: PlainGraph) -> str:
    used = {v for e in graph.edges for v in e}
    out = [f"vertex {name}" for i, name in enumerate(graph.vertices) if i not in used]
    out += [f"edge {a} {b}" for a, b in graph.named_edges()]
    return "\n".join(out) + "\n"


def input_digest(data: str | bytes | None) -> str | None:
    if data is None:
        return None
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


def _jsonable(x):
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    return x


def report_document(command, input_sha=None, result=None, witness=None, certificate=None, diagnostics=None) -> str:
    doc = {
        "command": command,
        "input_sha": input_sha,
        "result": result,
        "witness": witness,
        "certificate": certificate,
        "diagnostics": diagnostics or {},
    }
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"
