"""Exact rational dual simplex for margin programs.

The programs solved here all have the shape::

    maximize t
    subject to  a . x  = b        (equalities)
                x_i   >= t        (bounds)
                a . x >= b + t    (margin rows)

over free variables ``x`` and ``t``.  There are few variables and possibly
tens of thousands of margin rows, so the solver keeps an exact inverse of the
``n x n`` basis made of tight rows and walks vertices with the dual simplex
method.  Violated rows are located with a floating-point prefilter and every
candidate is confirmed in exact arithmetic before it is used, so the float
pass only affects speed, never the answer.

Pivoting takes the most violated row while progress is strict and switches to
Bland's smallest-index rule after a degenerate pivot, which rules out cycling.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import sparse

from .errors import InconsistentEqualities, InternalError

EQ, GE, BOX = 0, 1, 2

# Magnitude of the artificial box used when no dual-feasible start is supplied.
BIG_M = Fraction(2) ** 64

Coeffs = Mapping[int, "Fraction | int"]


@dataclass(frozen=True)
class LPResult:
    optimum: Fraction
    assignment: tuple[Fraction, ...]
    iterations: int
    tight_rows: tuple[int, ...]


def _row_reduce(num_vars: int, equalities: Sequence[tuple[Coeffs, object]]) -> list[int]:
    """Indices of a maximal independent subset of the equalities, in input order.

    Raises :class:`InconsistentEqualities` if a dependent row disagrees on its
    right-hand side.
    """
    pivots: list[tuple[int, list[Fraction]]] = []
    keep = []
    for k, (coeffs, rhs) in enumerate(equalities):
        row = [Fraction(0)] * (num_vars + 1)
        for i, a in coeffs.items():
            row[i] += Fraction(a)
        row[num_vars] = Fraction(rhs)
        for col, prow in pivots:
            f = row[col]
            if f:
                row = [x - f * y for x, y in zip(row, prow)]
        lead = next((i for i in range(num_vars) if row[i]), None)
        if lead is None:
            if row[num_vars]:
                raise InconsistentEqualities(f"equality {k} contradicts the earlier ones")
            continue
        inv = 1 / row[lead]
        row = [x * inv for x in row]
        for j, (col, prow) in enumerate(pivots):
            f = prow[lead]
            if f:
                pivots[j] = (col, [x - f * y for x, y in zip(prow, row)])
        pivots.append((lead, row))
        keep.append(k)
    return keep


def _invert(mat: list[list[Fraction]]) -> list[list[Fraction]] | None:
    n = len(mat)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [r[n:] for r in aug]


class _Simplex:
    def __init__(self, n, rows, kinds, rhs):
        self.n = n
        self.rows = rows  # list of tuple[(index, Fraction), ...]
        self.kinds = kinds
        self.rhs = rhs
        data, ind, ptr = [], [], [0]
        for r in rows:
            for i, a in r:
                ind.append(i)
                data.append(float(a))
            ptr.append(len(ind))
        self.float_rows = sparse.csr_matrix((data, ind, ptr), shape=(len(rows), n))
        self.float_rhs = np.array([float(b) for b in rhs])
        self.abs_rows = abs(self.float_rows)

    def activity(self, j, z):
        return sum(a * z[i] for i, a in self.rows[j])

    def start(self, basis, signs=None):
        mat = [[Fraction(0)] * self.n for _ in basis]
        for p, j in enumerate(basis):
            s = signs[p] if signs else 1
            for i, a in self.rows[j]:
                mat[p][i] = s * a
        inv = _invert(mat)
        if inv is None:
            return False
        self.basis = list(basis)
        self.bsign = list(signs) if signs else [1] * len(basis)
        # column p of inv belongs to basis position p
        self.inv = inv
        return True

    def point(self):
        b = [s * self.rhs[j] for j, s in zip(self.basis, self.bsign)]
        return [sum((self.inv[i][p] * b[p] for p in range(self.n) if b[p]), Fraction(0)) for i in range(self.n)]

    def multipliers(self):
        # objective is e_t with t the last variable
        return self.inv[self.n - 1]

    def dual_feasible(self):
        y = self.multipliers()
        return all(y[p] <= 0 for p, j in enumerate(self.basis) if self.kinds[j] != EQ)

    def _violation(self, j, z):
        """Signed orientation making row ``j`` violated, or 0 if satisfied."""
        act = self.activity(j, z)
        if act < self.rhs[j]:
            return 1
        if self.kinds[j] == EQ and act > self.rhs[j]:
            return -1
        return 0

    def choose(self, z, bland):
        zf = np.array([float(v) for v in z])
        slack = self.float_rows @ zf - self.float_rhs
        tol = 1e-9 * (1.0 + np.abs(self.float_rhs) + self.abs_rows @ np.abs(zf))
        in_basis = np.zeros(len(self.rows), dtype=bool)
        in_basis[self.basis] = True
        eq = np.array([k == EQ for k in self.kinds])
        near = (slack < tol) | eq
        near &= ~in_basis
        cand = np.flatnonzero(near)
        if not bland:
            score = np.where(eq[cand], -np.abs(slack[cand]), slack[cand])
            cand = cand[np.argsort(score, kind="stable")]
        for j in cand:
            s = self._violation(int(j), z)
            if s:
                return int(j), s
        return None, 0

    def pivot(self, j, s):
        n = self.n
        alpha = [Fraction(0)] * n
        for i, a in self.rows[j]:
            if a:
                ri = self.inv[i]
                for p in range(n):
                    if ri[p]:
                        alpha[p] += s * a * ri[p]
        y = self.multipliers()
        best = None
        for p, r in enumerate(self.basis):
            if self.kinds[r] == EQ or alpha[p] <= 0:
                continue
            ratio = -y[p] / alpha[p]
            key = (ratio, r)
            if best is None or key < best[0]:
                best = (key, p)
        if best is None:
            return None
        (ratio, _), p = best
        inv = self.inv
        ap = alpha[p]
        for i in range(n):
            row = inv[i]
            piv = row[p] / ap
            if piv:
                for q in range(n):
                    if q != p and alpha[q]:
                        row[q] -= alpha[q] * piv
            row[p] = piv
        self.basis[p] = j
        self.bsign[p] = s
        return ratio

    def run(self, max_iter=1_000_000):
        bland = False
        it = 0
        while True:
            z = self.point()
            j, s = self.choose(z, bland)
            if j is None:
                return z, it
            ratio = self.pivot(j, s)
            if ratio is None:
                return None, it
            bland = ratio == 0
            it += 1
            if it > max_iter:
                raise InternalError("simplex iteration limit reached")


def solve_feasibility(
    num_vars: int,
    equalities: Iterable[tuple[Coeffs, object]] = (),
    inequalities: Iterable[tuple[Coeffs, object]] = (),
    bounds: Iterable[int] = (),
    start_bounds: Sequence[int] | None = None,
) -> LPResult:
    """Maximize the margin ``t`` exactly.

    ``equalities`` are ``(coeffs, rhs)`` pairs meaning ``coeffs . x == rhs``;
    ``inequalities`` mean ``coeffs . x >= rhs + t``; ``bounds`` lists
    variables with ``x_i >= t``.  ``coeffs`` maps variable index to a rational.

    ``start_bounds`` may name bound variables which, together with all the
    equalities, form a dual-feasible starting basis; if it does not, or is not
    given, an artificial box ``|z_i| <= 2**64`` supplies one, and the box
    must be slack at the optimum.

    Returns the optimum and one optimal assignment of ``x``.
    """
    equalities = [(dict(c), Fraction(b)) for c, b in equalities]
    inequalities = [(dict(c), Fraction(b)) for c, b in inequalities]
    bounds = list(bounds)
    n = num_vars + 1
    t = num_vars

    def clean(coeffs):
        return tuple(sorted((int(i), Fraction(a)) for i, a in coeffs.items() if a))

    keep = _row_reduce(num_vars, equalities)
    rows, kinds, rhs = [], [], []
    for k in keep:
        c, b = equalities[k]
        rows.append(clean(c))
        kinds.append(EQ)
        rhs.append(b)
    first_bound = len(rows)
    for i in bounds:
        rows.append(clean({i: 1, t: -1}))
        kinds.append(GE)
        rhs.append(Fraction(0))
    for c, b in inequalities:
        c = dict(c)
        c[t] = c.get(t, 0) - 1
        rows.append(clean(c))
        kinds.append(GE)
        rhs.append(b)

    solver = None
    if start_bounds is not None:
        where = {v: first_bound + k for k, v in enumerate(bounds)}
        basis = list(range(len(keep))) + [where[v] for v in start_bounds]
        if len(basis) == n:
            cand = _Simplex(n, rows, kinds, rhs)
            if cand.start(basis) and cand.dual_feasible():
                solver = cand
    boxed = solver is None
    if boxed:
        first_box = len(rows)
        for i in range(n):
            rows.append(((i, Fraction(1)),))
            kinds.append(BOX)
            rhs.append(-BIG_M)
            rows.append(((i, Fraction(-1)),))
            kinds.append(BOX)
            rhs.append(-BIG_M)
        solver = _Simplex(n, rows, kinds, rhs)
        basis = [first_box + 2 * i + (1 if i == t else 0) for i in range(n)]
        ok = solver.start(basis)
        assert ok and solver.dual_feasible()

    z, iterations = solver.run()
    if z is None:
        if boxed:
            raise InternalError("margin program infeasible inside the artificial box")
        raise InconsistentEqualities("margin program is infeasible")
    if boxed:
        y = solver.multipliers()
        if any(y[p] and kinds[r] == BOX for p, r in enumerate(solver.basis)):
            raise InternalError("margin program is unbounded")
    return LPResult(
        optimum=z[t],
        assignment=tuple(z[:num_vars]),
        iterations=iterations,
        tight_rows=tuple(sorted(r for r in solver.basis if kinds[r] != BOX)),
    )
