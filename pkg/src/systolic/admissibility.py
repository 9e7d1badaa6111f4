"""Combinatorial admissibility decided by an exact margin program.

A metric is admissible when every standard cycle has the same length and every
other simple cycle is strictly longer.  After normalising the common length
to 1 the strict system is open, so we maximise the margin ``t`` in::

    sum over a standard cycle      = 1
    sum over a non-standard cycle >= 1 + t
    every length                  >= t

and the graph is admissible exactly when the optimum is positive.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from .cycles import DEFAULT_CAP, SimpleCycle, enumerate_simple_cycles
from .errors import InternalError, MissingLength, NonPositiveLength
from .fatgraph import FatGraph, delete_standard_cycles, delete_with_origins, require_valid
from .lp import solve_feasibility

ADMISSIBLE = "Admissible"
NOT_ADMISSIBLE = "NotAdmissible"
MINIMAL = "MinimalNonAdmissible"
NOT_MINIMAL = "NonAdmissibleNotMinimal"


@dataclass(frozen=True)
class MetricAssignment:
    """Positive rational length for each length variable of a graph."""

    lengths: Mapping[int, Fraction]

    def __post_init__(self):
        clean = {}
        for var, value in self.lengths.items():
            value = Fraction(value)
            if value <= 0:
                raise NonPositiveLength(f"length of variable {var} is {value}")
            clean[int(var)] = value
        object.__setattr__(self, "lengths", clean)

    @classmethod
    def uniform(cls, graph: FatGraph, value) -> MetricAssignment:
        return cls({v: Fraction(value) for v in range(graph.num_lengths)})

    def __getitem__(self, var: int) -> Fraction:
        return self.lengths[var]

    def scaled(self, factor) -> MetricAssignment:
        factor = Fraction(factor)
        return MetricAssignment({v: x * factor for v, x in self.lengths.items()})

    def total(self, variables: Iterable[int]) -> Fraction:
        return sum((self.lengths[v] for v in variables), Fraction(0))


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    systole: Fraction | None
    standard_sums: tuple[tuple[int, Fraction], ...]
    deviations: tuple[tuple[int, Fraction], ...]
    min_slack: Fraction | None
    tightest: tuple[int, ...] | None
    non_standard_count: int


@dataclass(frozen=True)
class AdmissibilityVerdict:
    status: str
    margin: Fraction
    witness: MetricAssignment | None
    constraint_counts: tuple[int, int, int]
    iterations: int = 0

    @property
    def admissible(self) -> bool:
        return self.status == ADMISSIBLE


@dataclass(frozen=True)
class MinimalityReport:
    status: str
    full: AdmissibilityVerdict
    deletions: tuple[tuple[int, AdmissibilityVerdict], ...] = field(default=())

    @property
    def minimal(self) -> bool:
        return self.status == MINIMAL


def _verify(graph: FatGraph, metric: MetricAssignment, cycles: list[SimpleCycle]) -> VerificationReport:
    missing = [v for v in range(graph.num_lengths) if v not in metric.lengths]
    if missing:
        raise MissingLength(f"no length for {graph.variable_label(missing[0])}")
    std = [(c.id, metric.total(c.variables)) for c in graph.standard_cycles]
    counts = Counter(s for _, s in std)
    # the common value is the most frequent standard sum, ties to the smaller
    systole = min(counts, key=lambda s: (-counts[s], s))
    deviations = tuple((cid, s - systole) for cid, s in std if s != systole)
    min_slack = None
    tightest = None
    non_std = [c for c in cycles if not c.standard]
    for c in non_std:
        slack = metric.total(c.key) - systole
        if min_slack is None or slack < min_slack:
            min_slack, tightest = slack, c.key
    passed = not deviations and (min_slack is None or min_slack > 0)
    return VerificationReport(passed, systole, tuple(std), deviations, min_slack, tightest, len(non_std))


def verify_metric(graph: FatGraph, metric: MetricAssignment, cap: int = DEFAULT_CAP) -> VerificationReport:
    """Exact check that standard cycles tie and every other cycle is longer."""
    require_valid(graph)
    return _verify(graph, metric, enumerate_simple_cycles(graph, cap))


def margin_program(graph: FatGraph, cycles: list[SimpleCycle]):
    """Equalities, inequalities, bounds and a dual-feasible start for ``graph``."""
    std = graph.standard_cycles
    equalities = [({v: 1 for v in c.variables}, 1) for c in std]
    inequalities = [({v: 1 for v in c.key}, 1) for c in cycles if not c.standard]
    bounds = list(range(graph.num_lengths))
    # All lengths on the longest standard cycle tight at t, and all but one on
    # every other: this vertex has t = 1/longest and nonpositive multipliers.
    longest = max(std, key=lambda c: (len(c.variables), -c.id))
    start = list(longest.variables)
    for c in std:
        if c.id != longest.id:
            start.extend(c.variables[1:])
    return equalities, inequalities, bounds, start


def check_admissibility(graph: FatGraph, cap: int = DEFAULT_CAP) -> AdmissibilityVerdict:
    """Decide combinatorial admissibility; the margin is exact."""
    require_valid(graph)
    cycles = enumerate_simple_cycles(graph, cap)
    equalities, inequalities, bounds, start = margin_program(graph, cycles)
    result = solve_feasibility(graph.num_lengths, equalities, inequalities, bounds, start_bounds=start)
    counts = (len(equalities), len(inequalities), graph.num_edges)
    if result.optimum > 0:
        witness = MetricAssignment(dict(enumerate(result.assignment)))
        if not _verify(graph, witness, cycles).passed:
            raise InternalError("optimal point failed exact verification")
        return AdmissibilityVerdict(ADMISSIBLE, result.optimum, witness, counts, result.iterations)
    return AdmissibilityVerdict(NOT_ADMISSIBLE, result.optimum, None, counts, result.iterations)


def check_minimality(graph: FatGraph, cap: int = DEFAULT_CAP) -> MinimalityReport:
    """Full verdict plus the verdict after deleting each single standard cycle.

    Deleting one cycle at a time is enough: a witness metric restricts to any
    union of standard cycles (lengths add across smoothed nodes).
    """
    full = check_admissibility(graph, cap)
    if full.admissible:
        return MinimalityReport(ADMISSIBLE, full)
    std = graph.standard_cycles
    if len(std) < 2:
        return MinimalityReport(NOT_MINIMAL, full)
    deletions = tuple((c.id, check_admissibility(delete_standard_cycles(graph, {c.id}), cap)) for c in std)
    status = MINIMAL if all(v.admissible for _, v in deletions) else NOT_MINIMAL
    return MinimalityReport(status, full, deletions)


def restrict_metric(graph: FatGraph, subset: Iterable[int], metric: MetricAssignment) -> tuple[FatGraph, MetricAssignment]:
    """Delete standard cycles and carry the metric along."""
    smaller, origins = delete_with_origins(graph, subset)
    return smaller, MetricAssignment({v: metric.total(src) for v, src in enumerate(origins)})
