import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from systolic.errors import InconsistentEqualities
from systolic.lp import solve_feasibility


def test_single_variable():
    r = solve_feasibility(1, [({0: 1}, 1)], [], [0])
    assert r.optimum == 1 and r.assignment == (Fraction(1),)


def test_margin_rows():
    # x + y = 1, x >= t, y >= t, x - y >= 0 + t: best is t = 1/3 at x = 2/3
    r = solve_feasibility(2, [({0: 1, 1: 1}, 1)], [({0: 1, 1: -1}, 0)], [0, 1])
    assert r.optimum == Fraction(1, 3)
    assert r.assignment == (Fraction(2, 3), Fraction(1, 3))


def test_redundant_equalities_are_dropped():
    r = solve_feasibility(2, [({0: 1, 1: 1}, 1), ({0: 2, 1: 2}, 2)], [], [0, 1])
    assert r.optimum == Fraction(1, 2)


def test_inconsistent_equalities():
    with pytest.raises(InconsistentEqualities):
        solve_feasibility(2, [({0: 1, 1: 1}, 1), ({0: 1, 1: 1}, 2)], [], [0, 1])


def scipy_margin(num_vars, equalities, inequalities, bounds):
    n = num_vars + 1
    c = np.zeros(n)
    c[-1] = -1
    a_ub, b_ub = [], []
    for coeffs, rhs in inequalities:
        row = np.zeros(n)
        for i, a in coeffs.items():
            row[i] -= a
        row[-1] = 1
        a_ub.append(row)
        b_ub.append(-rhs)
    for i in bounds:
        row = np.zeros(n)
        row[i], row[-1] = -1, 1
        a_ub.append(row)
        b_ub.append(0)
    a_eq = [[coeffs.get(i, 0) for i in range(num_vars)] + [0] for coeffs, _ in equalities]
    b_eq = [rhs for _, rhs in equalities]
    res = linprog(
        c, A_ub=a_ub or None, b_ub=b_ub or None, A_eq=a_eq or None, b_eq=b_eq or None,
        bounds=[(None, None)] * n, method="highs",
    )
    return res


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_random_programs_agree_with_scipy(seed):
    rng = random.Random(seed)
    num_vars = rng.randint(2, 6)
    groups = list(range(num_vars))
    rng.shuffle(groups)
    cut = sorted(rng.sample(range(1, num_vars), rng.randint(0, min(2, num_vars - 1))))
    parts = [groups[a:b] for a, b in zip([0] + cut, cut + [num_vars])]
    equalities = [({v: 1 for v in part}, 1) for part in parts]
    inequalities = []
    for _ in range(rng.randint(0, 12)):
        support = rng.sample(range(num_vars), rng.randint(1, num_vars))
        inequalities.append(({v: rng.randint(1, 3) for v in support}, rng.choice([1, 2])))
    bounds = list(range(num_vars))
    exact = solve_feasibility(num_vars, equalities, inequalities, bounds)
    ref = scipy_margin(num_vars, equalities, inequalities, bounds)
    assert ref.status == 0
    assert abs(float(exact.optimum) - (-ref.fun)) < 1e-7
    x = exact.assignment
    t = exact.optimum
    for coeffs, rhs in equalities:
        assert sum(a * x[i] for i, a in coeffs.items()) == rhs
    for coeffs, rhs in inequalities:
        assert sum(a * x[i] for i, a in coeffs.items()) >= rhs + t
    assert all(x[i] >= t for i in bounds)


def test_deterministic():
    eq = [({0: 1, 1: 1, 2: 1}, 1)]
    ineq = [({0: 1, 1: 1}, 1), ({1: 1, 2: 1}, 1)]
    a = solve_feasibility(3, eq, ineq, [0, 1, 2])
    b = solve_feasibility(3, eq, ineq, [0, 1, 2])
    assert a == b
