"""Knapsack-cover LP relaxation of flexible connectivity.

The LP minimizes total cost over x in [0,1]^E subject to, for every
nontrivial cut R and every J inside delta(R),

    (p-|J&S|)+ . x(K) + (q-|J&U|)+ . x(K&S)  >=  (p-|J&S|)+ . (p+q-|J|)+

with K = delta(R) minus J.  Separation works on the capacitated view
u_x(e) = (p + q.[e safe]) . x_e: a minimum cut below p(p+q) yields a
violated J-empty row, and otherwise only cuts of capacity below 2p(p+q)
can carry a violated row, each checked against the J_{a,b} candidate
family (top-a safe and top-b unsafe edges by x value), which is enough
to certify all J.  A cutting-plane loop drives the LP to optimality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import IterationLimitError, LpSolveError
from .graph import CUT_REL_TOL, DEFAULT_EXHAUSTIVE_LIMIT, Cut, cut_edges, enumerate_cuts_below, min_cut
from .model import FgcInstance

# Absolute tolerance on row violations; rhs values are small integers.
DEFAULT_EPS = 1e-7

# x vectors may carry solver noise this far outside the box before we reject.
BOX_SLACK = 1e-6


def capacities(inst: FgcInstance, x: Sequence) -> list:
    """Per-edge capacities u_x(e) = (p + q.[e safe]) . x_e."""
    if len(x) != inst.m:
        raise ValueError(f"expected {inst.m} coordinates, got {len(x)}")
    p, q = inst.p, inst.q
    return [(p + q if inst.safe[e] else p) * x[e] for e in range(inst.m)]


@dataclass(frozen=True)
class ConstraintRow:
    """One linearized covering inequality for a (cut, J) pair.

    Coefficients: safe edges of K get alpha1+alpha2, unsafe edges of K get
    alpha1, everything else 0.  rhs = alpha1 . (p+q-a-b)+.  All quantities
    are integers.  A row with rhs 0 is trivial and never enters the LP.
    """

    cut: Cut
    j_edges: frozenset[int]
    a: int
    b: int
    alpha1: int
    alpha2: int
    rhs: int
    k_safe: frozenset[int]
    k_unsafe: frozenset[int]

    @property
    def trivial(self) -> bool:
        return self.rhs == 0

    def coefficient(self, e: int):
        if e in self.k_safe:
            return self.alpha1 + self.alpha2
        if e in self.k_unsafe:
            return self.alpha1
        return 0

    def lhs(self, x: Sequence):
        total = 0
        for e in self.k_safe:
            total += (self.alpha1 + self.alpha2) * x[e]
        for e in self.k_unsafe:
            total += self.alpha1 * x[e]
        return total

    def key(self) -> tuple:
        return (self.cut.n, self.cut.side_mask, self.j_edges)


def constraint_row(inst: FgcInstance, r: Cut, j_edges: Iterable[int]) -> ConstraintRow:
    """Build the covering row for cut ``r`` and partial selection ``j_edges``.

    With J empty this is the plain covering inequality
    p.x(delta(R)) + q.x(delta(R)&S) >= p(p+q) after regrouping.
    """
    delta = cut_edges(inst.graph, r)
    j = frozenset(int(e) for e in j_edges)
    if not j <= delta:
        raise ValueError("j_edges must lie inside the cut's edge set")
    a = sum(1 for e in j if inst.safe[e])
    b = len(j) - a
    p, q = inst.p, inst.q
    alpha1 = max(p - a, 0)
    alpha2 = max(q - b, 0)
    rhs = alpha1 * max(p + q - a - b, 0)
    k = delta - j
    k_safe = frozenset(e for e in k if inst.safe[e])
    return ConstraintRow(
        cut=r,
        j_edges=j,
        a=a,
        b=b,
        alpha1=alpha1,
        alpha2=alpha2,
        rhs=rhs,
        k_safe=k_safe,
        k_unsafe=frozenset(k - k_safe),
    )


def violation(row: ConstraintRow, x: Sequence):
    """rhs minus the row's left-hand side at x; positive means violated."""
    return row.rhs - row.lhs(x)


def candidate_j_sets(
    inst: FgcInstance, r: Cut, x: Sequence
) -> list[tuple[int, int, frozenset[int]]]:
    """The J_{a,b} candidate family for a cut.

    Safe and unsafe edges of delta(r) are ordered by nonincreasing x value
    (ties by ascending edge id); J_{a,b} takes the first a safe and first b
    unsafe, for a in 0..min(p-1, #safe) and b in 0..min(p+q-1, #unsafe).
    If some J is violated, one of these is.
    """
    delta = cut_edges(inst.graph, r)
    ls = sorted((e for e in delta if inst.safe[e]), key=lambda e: (-x[e], e))
    lu = sorted((e for e in delta if not inst.safe[e]), key=lambda e: (-x[e], e))
    out = []
    for a in range(min(inst.p - 1, len(ls)) + 1):
        for b in range(min(inst.p + inst.q - 1, len(lu)) + 1):
            out.append((a, b, frozenset(ls[:a] + lu[:b])))
    return out


def _check_box(x: Sequence) -> tuple:
    cleaned = []
    for e, v in enumerate(x):
        if v < -BOX_SLACK or v > 1 + BOX_SLACK:
            raise ValueError(f"x[{e}] = {v} is outside [0, 1]")
        if isinstance(v, Fraction):
            cleaned.append(min(Fraction(1), max(Fraction(0), v)))
        else:
            cleaned.append(min(1.0, max(0.0, float(v))))
    return tuple(cleaned)


def separate(
    inst: FgcInstance,
    x: Sequence,
    eps: float = DEFAULT_EPS,
    mode: str = "exhaustive",
    *,
    j_family: str = "full",
    delta: float = 1e-6,
    seed: int = 0,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    rel_tol: float = CUT_REL_TOL,
) -> ConstraintRow | None:
    """Most violated covering row at x, or None if all hold within eps.

    Exhaustive mode scans every cut of u_x capacity below 2p(p+q) (no other
    cut can carry a violation) with the full candidate family and returns
    the global maximizer, so the reported violation matches a brute-force
    scan.  Contraction mode first checks the capacitated minimum cut: if it
    falls below p(p+q).(1-eps) its J-empty row is returned immediately,
    which keeps the near-minimum-cut enumeration ratio bounded in the
    remaining case.

    With j_family="basic" only J-empty rows are considered; among those the
    minimum cut's row is always the most violated (they share rhs p(p+q)
    and their lhs is u_x of the cut), so no enumeration is needed.
    """
    x = _check_box(x)
    ux = capacities(inst, x)
    p, q = inst.p, inst.q
    need = p * (p + q)
    if j_family not in ("full", "basic"):
        raise ValueError(f"unknown j_family {j_family!r}")

    wcut, lam = min_cut(inst.graph, ux)
    if j_family == "basic":
        row = constraint_row(inst, wcut, frozenset())
        return row if violation(row, x) > eps else None

    if mode == "contraction" and lam < need * (1 - eps):
        return constraint_row(inst, wcut, frozenset())

    cuts = enumerate_cuts_below(
        inst.graph,
        ux,
        2 * need,
        mode,
        delta=delta,
        seed=seed,
        exhaustive_limit=exhaustive_limit,
        rel_tol=rel_tol,
    )
    best = None
    best_violation = eps
    for r in cuts:
        for _, _, j in candidate_j_sets(inst, r, x):
            row = constraint_row(inst, r, j)
            if row.trivial:
                continue
            v = violation(row, x)
            if v > best_violation:
                best = row
                best_violation = v
    return best


def _lp_matrix(rows: Sequence[ConstraintRow], m: int):
    active = [row for row in rows if not row.trivial]
    a = np.zeros((len(active), m))
    b = np.zeros(len(active))
    for i, row in enumerate(active):
        for e in row.k_safe:
            a[i, e] = -(row.alpha1 + row.alpha2)
        for e in row.k_unsafe:
            a[i, e] = -row.alpha1
        b[i] = -row.rhs
    return a, b


def lp_solve(
    rows: Sequence[ConstraintRow], objective: Sequence[float], m: int
) -> tuple[tuple[float, ...], float]:
    """Minimize objective . x over the box [0,1]^m subject to the rows.

    Deterministic; primal feasibility within 1e-9 per row.  The row system
    is always satisfiable (x = 1 satisfies every covering row), so failures
    are numerical and reported with the row set attached.
    """
    c = np.asarray(objective, dtype=float)
    if c.shape != (m,):
        raise ValueError(f"expected {m} objective coefficients")
    if any(c < 0):
        raise ValueError("objective coefficients must be nonnegative")
    if not rows or all(row.trivial for row in rows):
        return (0.0,) * m, 0.0
    a_ub, b_ub = _lp_matrix(rows, m)
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=[(0.0, 1.0)] * m, method="highs")
    if not res.success:
        raise LpSolveError(f"LP subsolver failed: {res.message}", rows)
    x = np.clip(res.x, 0.0, 1.0) + 0.0  # also turns -0.0 into 0.0
    return tuple(float(v) for v in x), float(c @ x)


# ---------------------------------------------------------------------------
# Exact rational LP, used in tests to cross-check the floating-point route.


def _simplex_min(tableau, basis, cost, limit):
    """Bland-rule primal simplex on an equality tableau; minimizes cost.

    Only columns below ``limit`` may enter the basis, which locks
    artificials out during phase 2.
    """
    n_rows = len(tableau)
    while True:
        # reduced costs against the current basis
        entering = -1
        for j in range(limit):
            if j in basis:
                continue
            red = cost[j]
            for i in range(n_rows):
                coef = tableau[i][j]
                if coef:
                    red -= cost[basis[i]] * coef
            if red < 0:
                entering = j
                break
        if entering < 0:
            return
        leaving = -1
        best_ratio = None
        for i in range(n_rows):
            coef = tableau[i][entering]
            if coef > 0:
                ratio = tableau[i][-1] / coef
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            raise LpSolveError("exact LP is unbounded, which the box forbids")
        _pivot(tableau, basis, leaving, entering)


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    for i, line in enumerate(tableau):
        if i != row and line[col]:
            factor = line[col]
            tableau[i] = [v - factor * w for v, w in zip(line, tableau[row])]
    basis[row] = col


def lp_solve_exact(
    rows: Sequence[ConstraintRow], objective: Sequence, m: int
) -> tuple[tuple[Fraction, ...], Fraction]:
    """Exact rational optimum of the same LP as lp_solve.

    Two-phase simplex over Fractions with Bland's rule; intended for small
    test instances where it certifies the floating-point route.
    """
    active = [row for row in rows if not row.trivial]
    if not active:
        return (Fraction(0),) * m, Fraction(0)
    n_ge = len(active)
    # columns: x_0..x_{m-1}, surplus s_i per covering row, box slack t_j,
    # then one artificial per covering row
    n_real = m + n_ge + m
    n_cols = n_real + n_ge
    tableau = []
    basis = []
    for i, row in enumerate(active):
        line = [Fraction(0)] * (n_cols + 1)
        for e in range(m):
            line[e] = Fraction(row.coefficient(e))
        line[m + i] = Fraction(-1)
        line[n_real + i] = Fraction(1)
        line[-1] = Fraction(row.rhs)
        tableau.append(line)
        basis.append(n_real + i)
    for j in range(m):
        line = [Fraction(0)] * (n_cols + 1)
        line[j] = Fraction(1)
        line[m + n_ge + j] = Fraction(1)
        line[-1] = Fraction(1)
        tableau.append(line)
        basis.append(m + n_ge + j)

    phase1 = [Fraction(0)] * n_cols
    for i in range(n_ge):
        phase1[n_real + i] = Fraction(1)
    _simplex_min(tableau, basis, phase1, n_cols)
    total = sum(
        tableau[i][-1] for i in range(len(tableau)) if basis[i] >= n_real
    )
    if total != 0:
        raise LpSolveError("exact LP reported infeasible rows", active)
    # drive leftover (degenerate) artificials out of the basis
    for i in range(len(tableau)):
        if basis[i] >= n_real:
            for j in range(n_real):
                if tableau[i][j]:
                    _pivot(tableau, basis, i, j)
                    break

    cost = [Fraction(0)] * n_cols
    for j in range(m):
        cost[j] = Fraction(objective[j])
    _simplex_min(tableau, basis, cost, n_real)

    x = [Fraction(0)] * m
    for i, var in enumerate(basis):
        if var < m:
            x[var] = tableau[i][-1]
    value = sum(Fraction(objective[j]) * x[j] for j in range(m))
    return tuple(x), value


@dataclass(frozen=True)
class RelaxationResult:
    """Optimal fractional solution with the rows that were active at the end."""

    x: tuple
    value: float
    active_rows: tuple[ConstraintRow, ...]
    iterations: int
    separation_mode: str


def solve_relaxation(
    inst: FgcInstance,
    eps: float = DEFAULT_EPS,
    *,
    mode: str = "exhaustive",
    j_family: str = "full",
    numeric: str = "float",
    max_iterations: int | None = None,
    delta: float = 1e-6,
    seed: int = 0,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    on_iterate: Callable[[int, tuple, float], None] | None = None,
) -> RelaxationResult:
    """Cutting-plane solve of the covering LP.

    Seeds the pool with the J-empty rows of all singleton cuts, then
    alternates LP solves with separation, adding the most violated row,
    until separation certifies no violation beyond eps.  The value is a
    lower bound on the optimal integral cost.  numeric="exact" runs the
    rational subsolver (small instances only); pass eps=0 with it for the
    exact LP optimum.
    """
    if numeric not in ("float", "exact"):
        raise ValueError(f"unknown numeric mode {numeric!r}")
    solver = lp_solve if numeric == "float" else lp_solve_exact
    rel_tol = CUT_REL_TOL if numeric == "float" else 0.0
    cap = max_iterations if max_iterations is not None else 10 * inst.m * inst.n

    rows: list[ConstraintRow] = []
    seen = set()
    for v in range(inst.n):
        row = constraint_row(inst, Cut.from_vertices(inst.n, {v}), frozenset())
        if row.key() not in seen:
            seen.add(row.key())
            rows.append(row)

    iterations = 0
    while True:
        if iterations >= cap:
            raise IterationLimitError(
                f"cutting-plane loop exceeded {cap} iterations", iterations, None
            )
        iterations += 1
        x, value = solver(rows, inst.cost, inst.m)
        if on_iterate is not None:
            on_iterate(iterations, x, value)
        row = separate(
            inst,
            x,
            eps,
            mode,
            j_family=j_family,
            delta=delta,
            seed=seed,
            exhaustive_limit=exhaustive_limit,
            rel_tol=rel_tol,
        )
        if row is None:
            return RelaxationResult(
                x=x,
                value=value,
                active_rows=tuple(rows),
                iterations=iterations,
                separation_mode=mode,
            )
        if row.key() in seen:
            raise IterationLimitError(
                "separation returned a row already in the pool; "
                "LP and separation tolerances are inconsistent",
                iterations,
                float(value),
            )
        seen.add(row.key())
        rows.append(row)
