import random

import pytest

from systolic.admissibility import check_admissibility
from systolic.cycles import classify_cycle
from systolic.errors import NotFourRegular
from systolic.fatgraph import FatGraph, delete_standard_cycles, find_standard_cycle
from systolic.generators import gen_example_g8, gen_wheel_family
from systolic.topology import (
    face_nonstandard_cycles,
    intersection_graph,
    min_genus_report,
    ribbon_genus,
    trace_faces,
    vf_obstruction,
)

from conftest import CORPUS
from oracles import boundary_count, random_fatgraph


def four_regular(corpus=CORPUS):
    return [(n, g) for n, g in corpus if g.is_four_regular()]


def test_wheel_intersection_graph():
    for n in range(3, 9):
        g = gen_wheel_family(n)
        r = intersection_graph(g)
        assert r.num_vertices == n + 1 and r.num_edges == 2 * n
        hub = find_standard_cycle(g, [f"p{i}" for i in range(1, n + 1)]).id
        spokes = sum(hub in e for e in r.ends)
        assert spokes == n
        for rot in r.rotation:
            assert len(rot) == len(set(rot))


def test_g8_intersection_graph():
    r = intersection_graph(gen_example_g8())
    assert (r.num_vertices, r.num_edges) == (5, 8)


def test_two_circles():
    r = intersection_graph(FatGraph.from_pairs([], [], ["a", "b"]))
    assert (r.num_vertices, r.num_edges) == (2, 0)
    t = trace_faces(r)
    assert t.components == ((1, 0, 1, 0), (1, 0, 1, 0))


def test_single_vertex_face():
    t = trace_faces(intersection_graph(FatGraph.from_pairs([], [], ["a"])))
    assert t.num_faces == 1 and t.euler_characteristic == 2 and t.genus == 0
    assert face_nonstandard_cycles(FatGraph.from_pairs([], [], ["a"])) == {}


def test_not_four_regular():
    six = next(g for n, g in CORPUS if not g.is_four_regular())
    with pytest.raises(NotFourRegular):
        intersection_graph(six)
    with pytest.raises(NotFourRegular):
        vf_obstruction(six)


def test_wheel_obstruction():
    for n in range(3, 9):
        g = gen_wheel_family(n)
        cert = vf_obstruction(g)
        assert cert is not None and cert.v == cert.f == n + 1
        assert cert.average_face_length == 1
        ribbon = intersection_graph(g, cert.orientation)
        t = trace_faces(ribbon)
        assert t.genus == 0 and t.num_faces == n + 1


def test_g8_obstruction():
    cert = vf_obstruction(gen_example_g8())
    assert cert.v == cert.f == 5
    assert sum(len(fc.edges) for fc in cert.face_cycles) == 16


def test_g8_minus_c2_inconclusive():
    g = gen_example_g8()
    c2 = find_standard_cycle(g, ["v2", "v4", "v5", "v6"])
    smaller = delete_standard_cycles(g, {c2.id})
    assert trace_faces(intersection_graph(smaller)).num_faces == 2
    assert vf_obstruction(smaller) is None


def test_face_cycles_partition_edges():
    for name, g in four_regular():
        for orientation in (None, tuple(-1 for _ in g.standard_cycles)):
            faces = face_nonstandard_cycles(g, orientation)
            used = sorted(e for fc in faces.values() for e in fc.edges)
            assert used == list(range(g.num_edges)), name


def test_face_cycles_are_closed_turning_walks():
    for name, g in four_regular():
        for fc in face_nonstandard_cycles(g).values():
            k = len(fc.edges)
            for i in range(k):
                a, b = g.edge_nodes(fc.edges[i])
                nxt = fc.nodes[(i + 1) % k]
                assert nxt in (a, b) and fc.nodes[i] in (a, b), name
            simple = fc.as_simple_cycle()
            if simple is not None and k > 0:
                assert classify_cycle(g, simple.key) == "NonStandard", name


def test_euler_identity_for_all_orientations():
    rng = random.Random(5)
    for name, g in four_regular():
        k = len(g.standard_cycles)
        for _ in range(4):
            orientation = tuple(rng.choice((1, -1)) for _ in range(k))
            r = intersection_graph(g, orientation)
            t = trace_faces(r)
            for v, e, f, genus in t.components:
                assert v - e + f == 2 - 2 * genus, name
                assert genus >= 0
            darts = sorted(d for face in t.faces for d in face)
            assert darts == list(range(2 * r.num_edges)), name


def test_obstruction_agrees_with_lp():
    fired = 0
    for name, g in four_regular():
        cert = vf_obstruction(g)
        if cert is not None:
            fired += 1
            assert check_admissibility(g).margin <= 0, name
    assert fired >= 5


def test_ribbon_genus_examples():
    circle = ribbon_genus(FatGraph.from_pairs([], [], ["a"]))
    assert (circle.boundary_count, circle.genus, circle.chi) == (2, 0, 0)
    g3 = ribbon_genus(gen_wheel_family(3))
    assert g3.chi == -6 and g3.chi + g3.boundary_count == 2 - 2 * g3.genus
    g8 = ribbon_genus(gen_example_g8())
    assert g8.chi == -8 and g8.chi + g8.boundary_count == 2 - 2 * g8.genus


def test_ribbon_genus_matches_oracle():
    rng = random.Random(9)
    graphs = [g for _, g in CORPUS]
    graphs += [g for g in (random_fatgraph(rng, rng.randint(1, 6), (4, 6)) for _ in range(40)) if g]
    for g in graphs:
        rg = ribbon_genus(g)
        assert rg.boundary_count == boundary_count(g)
        for chi, b, genus in rg.components:
            assert chi + b == 2 - 2 * genus and genus >= 0


def test_ribbon_genus_monotone_under_deletion():
    for name, g in CORPUS:
        base = ribbon_genus(g).genus
        for c in g.standard_cycles if len(g.standard_cycles) > 1 else ():
            assert ribbon_genus(delete_standard_cycles(g, {c.id})).genus <= base, name


def test_min_genus_report():
    rep = min_genus_report(gen_example_g8())
    assert rep.chi == -8 and rep.min_genus == ribbon_genus(gen_example_g8()).genus
    assert f"genus(F) >= {rep.min_genus}" in rep.statement
    circle = min_genus_report(FatGraph.from_pairs([], [], ["a"]))
    assert (circle.chi, circle.boundary_count, circle.min_genus) == (0, 2, 0)
