import random
from fractions import Fraction

import pytest

from systolic.admissibility import (
    ADMISSIBLE,
    MINIMAL,
    NOT_ADMISSIBLE,
    MetricAssignment,
    check_admissibility,
    check_minimality,
    restrict_metric,
    verify_metric,
)
from systolic.errors import MissingLength, NonPositiveLength
from systolic.fatgraph import FatGraph, delete_standard_cycles, find_standard_cycle
from systolic.generators import gen_example_g8, gen_wheel_family

from conftest import (
    CORPUS,
    G_MINUS_C3,
    G_MINUS_C4,
    metric_by_node_pairs,
    printed_triangle_deleted_metric,
    wheel_minus_triangle,
)
from oracles import relabel

F = Fraction


def pairs(table):
    return {frozenset(k.split("-")): F(v) for k, v in table.items()}


G_C3_VALUES = pairs(
    {"v1-v4": "1/2", "v3-v4": "1/2", "v4-v5": "1/8", "v2-v4": "1/8",
     "v1-v5": "3/8", "v3-v5": "1/2", "v1-v2": "1/2", "v2-v3": "3/8"}
)
G_C4_VALUES = pairs(
    {"v1-v4": "3/4", "v4-v5": "3/8", "v2-v4": "1/8", "v3-v4": "1/2",
     "v1-v5": "1/2", "v3-v5": "1/8", "v1-v2": "1/8", "v2-v3": "1/2"}
)


def test_metric_rejects_nonpositive():
    with pytest.raises(NonPositiveLength):
        MetricAssignment({0: F(0)})


def test_missing_length():
    g = gen_wheel_family(3)
    with pytest.raises(MissingLength):
        verify_metric(g, MetricAssignment({0: F(1)}))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_wheel_not_admissible(n):
    v = check_admissibility(gen_wheel_family(n))
    assert v.status == NOT_ADMISSIBLE and v.margin <= 0 and v.witness is None


def test_g_minus_c3_admissible_and_printed_witness():
    g = FatGraph.from_rotations(G_MINUS_C3)
    v = check_admissibility(g)
    assert v.status == ADMISSIBLE and v.margin > 0
    assert verify_metric(g, v.witness).passed
    report = verify_metric(g, metric_by_node_pairs(g, G_C3_VALUES))
    assert report.passed and report.systole == 1 and report.min_slack == F(1, 8)


def test_g_minus_c4_printed_witness():
    g = FatGraph.from_rotations(G_MINUS_C4)
    report = verify_metric(g, metric_by_node_pairs(g, G_C4_VALUES))
    assert report.passed and report.deviations == ()
    sums = sorted(len(c) for c in g.standard_cycles)
    assert sums == [2, 2, 3, 3]


def test_single_circle():
    g = FatGraph.from_pairs([], [], ["a"])
    v = check_admissibility(g)
    assert v.status == ADMISSIBLE and v.witness.lengths == {0: F(1)} and v.margin == 1
    assert check_minimality(g).status == ADMISSIBLE


def test_hub_deleted_half_metric():
    for n in range(3, 7):
        g = gen_wheel_family(n)
        hub = find_standard_cycle(g, [f"p{i}" for i in range(1, n + 1)])
        smaller = delete_standard_cycles(g, {hub.id})
        r = verify_metric(smaller, MetricAssignment.uniform(smaller, F(1, 2)))
        assert r.passed and r.systole == 1 and r.min_slack >= F(1, 2)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_printed_triangle_metric_discrepancy(n):
    g = wheel_minus_triangle(n)
    r = verify_metric(g, printed_triangle_deleted_metric(n, F(1, 4 * n * n)))
    cycles = g.standard_cycles
    triangles = [
        s for cid, s in r.standard_sums
        if sum(g.nodes[x].name.startswith("w") for x in cycles[cid].nodes) == 2
    ]
    assert len(triangles) == n - 3
    assert triangles and all(s == 1 - F(1, n * (n - 1)) for s in triangles)
    assert not r.passed


@pytest.mark.parametrize("n", [4, 5, 6])
def test_corrected_triangle_metric_passes(n):
    # ring edge 1/(n-1) - eps instead of 1/n - eps
    g = wheel_minus_triangle(n)
    eps = F(1, 4 * n * n)
    printed = printed_triangle_deleted_metric(n, eps)
    fixed = {}
    for v, x in printed.lengths.items():
        a, b = g.edge_nodes(v)
        ring = g.nodes[a].name.startswith("w") and g.nodes[b].name.startswith("w")
        fixed[v] = F(1, n - 1) - eps if ring else x
    assert verify_metric(g, MetricAssignment(fixed)).passed


def test_minimality_g8():
    r = check_minimality(gen_example_g8())
    assert r.status == MINIMAL
    assert len(r.deletions) == 5 and all(v.admissible for _, v in r.deletions)


def test_witness_soundness_on_corpus():
    for name, g in CORPUS:
        v = check_admissibility(g)
        assert (v.margin > 0) == (v.status == ADMISSIBLE), name
        if v.witness is not None:
            assert verify_metric(g, v.witness).passed, name


def test_margin_invariant_under_relabeling():
    rng = random.Random(11)
    for name, g in CORPUS[:12] + CORPUS[-14:]:
        h = relabel(g, rng)
        assert check_admissibility(h).margin == check_admissibility(g).margin, name


def test_scale_invariance():
    g = FatGraph.from_rotations(G_MINUS_C3)
    m = metric_by_node_pairs(g, G_C3_VALUES)
    for factor in (F(1, 3), F(7, 2), F(100)):
        r = verify_metric(g, m.scaled(factor))
        assert r.passed and r.systole == factor


def test_restriction_keeps_witness():
    g = FatGraph.from_rotations(G_MINUS_C3)
    m = metric_by_node_pairs(g, G_C3_VALUES)
    for c in g.standard_cycles:
        smaller, restricted = restrict_metric(g, {c.id}, m)
        assert verify_metric(smaller, restricted).passed
