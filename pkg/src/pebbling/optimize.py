"""Distribution/flow optimization models solved in exact rational arithmetic.

The model for a graph has one variable per vertex (pebbles placed there)
plus, for every root choice and every directed edge, a flow variable for the
moves sent across that edge while delivering to that root. Net-gain rows say
each root collects t pebbles and no other vertex is overdrawn. The
continuous relaxation is solved by a Fraction-arithmetic simplex (largest
reduced cost pivoting, falling back to Bland's rule after an iteration cap
so termination is guaranteed); the integer problem by depth-first branch and
bound on that relaxation. No floating point enters anywhere, so optima like
16/9 come out exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from pebbling.engine import PebbleDistribution
from pebbling.errors import BudgetExceededError
from pebbling.exact import Budget, is_solvable_distribution
from pebbling.graphs import Graph, is_vertex_transitive

__all__ = [
    "LinearProgram",
    "LpSolution",
    "build_opt_model",
    "solve_lp",
    "solve_ip",
    "optimal_fractional_pebbling",
    "vertex_transitive_m",
    "rationalize_to_integer",
    "export_lp",
]


@dataclass(frozen=True)
class LinearProgram:
    """Minimize objective . x subject to rows[i] . x >= rhs[i], x >= 0.

    All coefficients are integers. The first dist_vars variables are the
    per-vertex placement counts; the rest are flows named p_{root}_{from}_{to}.
    """

    var_names: tuple[str, ...]
    objective: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]
    integral: tuple[bool, ...]
    t: int
    dist_vars: int
    graph: Graph | None = None

    def check(self, x: tuple[Fraction, ...]) -> bool:
        """Exact feasibility of an assignment against every row and x >= 0."""
        if len(x) != len(self.var_names):
            return False
        if any(v < 0 for v in x):
            return False
        return all(
            sum(a * v for a, v in zip(row, x)) >= b
            for row, b in zip(self.rows, self.rhs)
        )


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    objective: Fraction | None = None
    assignment: tuple[Fraction, ...] | None = None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "objective": None if self.objective is None else str(self.objective),
            "assignment": None
            if self.assignment is None
            else [str(v) for v in self.assignment],
        }


def build_opt_model(g: Graph, t: int, integral: bool) -> LinearProgram:
    """Net-gain model: for each root i and vertex v, placed pebbles plus
    incoming flow minus twice the outgoing flow is at least t at the root
    and at least 0 elsewhere."""
    g.require_connected()
    if t < 1:
        raise ValueError("t must be >= 1")
    n = g.n
    arcs = [(u, v) for u in range(n) for v in g.neighbors(u)]
    names = [f"D_{k}" for k in range(n)]
    col = {}
    for i in range(n):
        for u, v in arcs:
            col[(i, u, v)] = len(names)
            names.append(f"p_{i}_{u}_{v}")
    nv = len(names)
    rows, rhs = [], []
    for i in range(n):
        for v in range(n):
            coeffs = [0] * nv
            coeffs[v] = 1
            for x in g.neighbors(v):
                coeffs[col[(i, x, v)]] += 1
                coeffs[col[(i, v, x)]] -= 2
            rows.append(tuple(coeffs))
            rhs.append(t if v == i else 0)
    return LinearProgram(
        var_names=tuple(names),
        objective=tuple(1 if k < n else 0 for k in range(nv)),
        rows=tuple(rows),
        rhs=tuple(rhs),
        integral=tuple(integral for _ in range(nv)),
        t=t,
        dist_vars=n,
        graph=g,
    )


# --- exact simplex -----------------------------------------------------------

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(tab, basis, row, colj):
    piv = tab[row][colj]
    inv = _ONE / piv
    tab[row] = [a * inv for a in tab[row]]
    prow = tab[row]
    for i, r in enumerate(tab):
        if i != row and r[colj] != 0:
            f = r[colj]
            tab[i] = [a - f * b for a, b in zip(r, prow)]
    basis[row] = colj


def _entering(zrow, ncols, allowed, bland):
    best, bestval = None, _ZERO
    for j in range(ncols):
        if not allowed[j]:
            continue
        v = zrow[j]
        if v < 0:
            if bland:
                return j
            if best is None or v < bestval:
                best, bestval = j, v
    return best


def _leaving(tab, basis, colj, m):
    best_ratio, best_row = None, None
    for i in range(m):
        a = tab[i][colj]
        if a > 0:
            ratio = tab[i][-1] / a
            if (
                best_ratio is None
                or ratio < best_ratio
                or (ratio == best_ratio and basis[i] < basis[best_row])
            ):
                best_ratio, best_row = ratio, i
    return best_row


def _run_simplex(tab, basis, zrow, ncols, allowed):
    """Pivot to optimality in place; returns 'optimal' or 'unbounded'."""
    m = len(tab)
    dantzig_budget = 200 + 20 * (m + ncols)
    iters = 0
    while True:
        iters += 1
        colj = _entering(zrow, ncols, allowed, bland=iters > dantzig_budget)
        if colj is None:
            return "optimal"
        row = _leaving(tab, basis, colj, m)
        if row is None:
            return "unbounded"
        _pivot(tab, basis, row, colj)
        f = zrow[colj]
        if f != 0:
            prow = tab[row]
            for j in range(len(zrow)):
                zrow[j] -= f * prow[j]


def _solve_rows(
    rows, rhs, objective, nvars
) -> tuple[str, Fraction | None, list[Fraction] | None]:
    """Two-phase simplex for: minimize objective . x, rows . x >= rhs, x >= 0."""
    m = len(rows)
    # Equality form with one surplus per row (sign-flipped so rhs >= 0), plus
    # one artificial per row for a trivially feasible starting basis.
    ncols = nvars + 2 * m
    tab = []
    for i in range(m):
        coeffs = list(rows[i])
        b = rhs[i]
        s = -1
        if b < 0:
            coeffs = [-a for a in coeffs]
            b = -b
            s = 1
        line = [Fraction(a) for a in coeffs] + [_ZERO] * (2 * m) + [Fraction(b)]
        line[nvars + i] = Fraction(s)
        line[nvars + m + i] = _ONE
        tab.append(line)
    basis = [nvars + m + i for i in range(m)]

    # Phase one: drive the artificial total to zero.
    zrow = [_ZERO] * (ncols + 1)
    for line in tab:
        for j in range(ncols + 1):
            zrow[j] -= line[j]
    for i in range(m):
        zrow[nvars + m + i] = _ZERO
    allowed = [True] * ncols
    status = _run_simplex(tab, basis, zrow, ncols, allowed)
    assert status == "optimal", "phase one is always bounded"
    if -zrow[-1] != 0:
        return "infeasible", None, None
    for i in range(m):
        if basis[i] >= nvars + m:
            # Degenerate artificial still basic at zero: swap it for any real
            # column, or drop the redundant row.
            for j in range(nvars + m):
                if tab[i][j] != 0:
                    _pivot(tab, basis, i, j)
                    break
    live = [i for i in range(m) if basis[i] < nvars + m]
    tab = [tab[i] for i in live]
    basis = [basis[i] for i in live]
    for j in range(nvars + m, ncols):
        allowed[j] = False

    # Phase two: the real objective, priced from the current basis.
    cost = [Fraction(c) for c in objective] + [_ZERO] * (2 * m + 1)
    zrow = list(cost)
    for i, line in enumerate(tab):
        f = cost[basis[i]]
        if f != 0:
            for j in range(ncols + 1):
                zrow[j] -= f * line[j]
    status = _run_simplex(tab, basis, zrow, ncols, allowed)
    if status == "unbounded":
        return "unbounded", None, None
    x = [_ZERO] * nvars
    for i, bj in enumerate(basis):
        if bj < nvars:
            x[bj] = tab[i][-1]
    value = sum(Fraction(c) * v for c, v in zip(objective, x))
    # Termination left no improving column, and the basic solution must
    # satisfy the original system exactly.
    assert all(zrow[j] >= 0 for j in range(ncols) if allowed[j])
    assert all(
        sum(a * v for a, v in zip(row, x)) >= b for row, b in zip(rows, rhs)
    )
    assert all(v >= 0 for v in x)
    return "optimal", value, x


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Exact optimum of the continuous relaxation."""
    if any(lp.integral):
        raise ValueError("solve_lp expects a fully relaxed model")
    status, value, x = _solve_rows(
        lp.rows, lp.rhs, lp.objective, len(lp.var_names)
    )
    if status != "optimal":
        return LpSolution(status=status)
    sol = LpSolution(status="optimal", objective=value, assignment=tuple(x))
    assert lp.check(sol.assignment)
    return sol


def _flows_from_moves(lp: LinearProgram, g: Graph, D: PebbleDistribution):
    """Integral flow assignment realizing D, one move-search witness per
    root. Only used to report the incumbent; feasibility is re-checked."""
    from pebbling.engine import is_reachable

    x = [_ZERO] * len(lp.var_names)
    for v in range(g.n):
        x[v] = Fraction(D[v])
    name_to_col = {name: j for j, name in enumerate(lp.var_names)}
    for i in range(g.n):
        ok, moves = is_reachable(
            g, D, PebbleDistribution.point(g.n, i, lp.t), want_moves=True
        )
        assert ok
        for u, v in moves.moves:
            x[name_to_col[f"p_{i}_{u}_{v}"]] += 1
    return tuple(x)


def solve_ip(
    lp: LinearProgram,
    node_budget: int = 1_000_000,
    budget: Budget | None = None,
) -> LpSolution:
    """Exact integer optimum by depth-first branch and bound over placements.

    The relaxation is solved exactly, so ceil(bound) prunes without any
    tolerance; the all-vertices placement (every count equal to t, no flow)
    seeds the incumbent. Branching fixes placement variables only: once a
    node pins the whole placement, integral flows exist for it exactly when
    the move engine can deliver t pebbles to every root, so that decision
    settles the node and flow variables never need branching. The reported
    assignment carries integral flows reconstructed from move witnesses.
    """
    if not all(lp.integral):
        raise ValueError("solve_ip expects an integral model")
    g = lp.graph
    if g is None:
        raise ValueError("model carries no graph; build it with build_opt_model")
    nvars = len(lp.var_names)
    nd = lp.dist_vars
    trivial = tuple(
        Fraction(lp.t) if j < nd else _ZERO for j in range(nvars)
    )
    assert lp.check(trivial), "all-vertices placement must be feasible"
    best_obj = sum(Fraction(c) * v for c, v in zip(lp.objective, trivial))
    best_x = trivial
    verify_budget = budget if budget is not None else Budget()

    # Bounding works on a placement-only relaxation: delivering along
    # shortest paths shows a fractional flow for root r exists exactly when
    # the weighted mass toward r reaches t, and that mass never increases
    # under integer moves either, so these rows relax the integer problem.
    # Scaling by 2^(max distance) keeps every coefficient integral.
    dist = g.distances
    maxd = int(dist.max())
    scale = 1 << maxd
    weight_rows = tuple(
        tuple(1 << (maxd - int(dist[v, r])) for v in range(nd))
        for r in range(nd)
    )
    weight_rhs = tuple(lp.t * scale for _ in range(nd))
    objective = tuple(1 for _ in range(nd))

    def bound_rows(bounds, cap):
        rows, rhs = [], []
        for j, (lo, hi) in bounds.items():
            if lo > 0:
                r = [0] * nd
                r[j] = 1
                rows.append(tuple(r))
                rhs.append(lo)
            if hi is not None:
                r = [0] * nd
                r[j] = -1
                rows.append(tuple(r))
                rhs.append(-hi)
        rows.append(tuple(-1 for _ in range(nd)))
        rhs.append(-cap)
        return tuple(rows), tuple(rhs)

    stack = [{}]
    nodes = 0
    while stack:
        bounds = stack.pop()
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(
                f"branch-and-bound node budget {node_budget} exhausted",
                best_upper=int(best_obj),
                nodes=nodes,
            )
        # Only improvements matter, so cap the placement total at one less
        # than the incumbent.
        extra_rows, extra_rhs = bound_rows(bounds, int(best_obj) - 1)
        status, value, x = _solve_rows(
            weight_rows + extra_rows, weight_rhs + extra_rhs, objective, nd
        )
        if status != "optimal":
            continue
        if math.ceil(value) >= best_obj:
            continue
        fixed = all(
            j in bounds and bounds[j][0] == bounds[j][1] for j in range(nd)
        )
        if fixed:
            D = PebbleDistribution(tuple(bounds[j][0] for j in range(nd)))
            if is_solvable_distribution(g, D, lp.t, verify_budget):
                cand = Fraction(D.size)
                if cand < best_obj:
                    best_obj = cand
                    best_x = _flows_from_moves(lp, g, D)
                    assert lp.check(best_x)
            continue
        # Branch on the first unpinned placement variable, preferring a
        # fractional one; three-way split (equal / below / above) so every
        # child strictly shrinks the box.
        frac_j = next(
            (j for j in range(nd) if x[j].denominator != 1), None
        )
        j = frac_j
        if j is None:
            j = next(
                jj
                for jj in range(nd)
                if jj not in bounds or bounds[jj][0] != bounds[jj][1]
            )
        v = int(x[j]) if x[j].denominator == 1 else math.floor(x[j])
        lo, hi = bounds.get(j, (0, None))
        if hi is not None and v > hi:
            v = hi
        if v < lo:
            v = lo
        if v + 1 <= (hi if hi is not None else v + 1):
            up = dict(bounds)
            up[j] = (v + 1, hi)
            stack.append(up)
        if v - 1 >= lo:
            down = dict(bounds)
            down[j] = (lo, v - 1)
            stack.append(down)
        eq = dict(bounds)
        eq[j] = (v, v)
        stack.append(eq)
    return LpSolution(status="optimal", objective=best_obj, assignment=best_x)


def vertex_transitive_m(g: Graph, r: int) -> Fraction:
    """Total pebble mass a uniform unit placement aims at r: the sum over
    vertices of 2^-dist(v, r). Constant over r exactly on vertex-transitive
    graphs."""
    g.require_connected()
    dist = g.distances
    return sum(
        (Fraction(1, 1 << int(dist[v, r])) for v in range(g.n)), _ZERO
    )


def optimal_fractional_pebbling(g: Graph) -> Fraction:
    """Optimum of the continuous relaxation at t = 1; cross-checked against
    the uniform-placement value n/m whenever the graph is vertex-transitive."""
    sol = solve_lp(build_opt_model(g, 1, integral=False))
    assert sol.status == "optimal"
    if is_vertex_transitive(g):
        expected = Fraction(g.n) / vertex_transitive_m(g, 0)
        if sol.objective != expected:
            raise AssertionError(
                f"transitive cross-check failed: solver {sol.objective}, "
                f"uniform placement gives {expected}"
            )
    return sol.objective


def rationalize_to_integer(
    g: Graph, sol: LpSolution, budget: Budget = Budget()
) -> tuple[int, PebbleDistribution]:
    """Scale a fractional optimum to integers: t is the least common multiple
    of every assignment denominator (flows included, so the scaled flow
    certificate stays integral), and the placement scales by t. The result
    is verified t-fold solvable by the move engine; failure is a hard error."""
    if sol.status != "optimal" or sol.assignment is None:
        raise ValueError("need an optimal solution with an assignment")
    t = 1
    for v in sol.assignment:
        t = math.lcm(t, v.denominator)
    n = g.n
    D = PebbleDistribution(tuple(int(v * t) for v in sol.assignment[:n]))
    wide = Budget(
        max_n=max(budget.max_n, n),
        max_t=max(budget.max_t, t),
        max_pebbles=max(budget.max_pebbles, D.size),
        scan_nodes=budget.scan_nodes,
        dfs_nodes=budget.dfs_nodes,
        memo_bits=budget.memo_bits,
    )
    if not is_solvable_distribution(g, D, t, wide):
        raise AssertionError(
            f"scaled distribution {D.counts} is not {t}-fold solvable; "
            "the flow certificate did not survive scaling"
        )
    if Fraction(D.size, t) != sol.objective:
        raise AssertionError("scaled size disagrees with the optimum")
    return t, D


def _terms(coeffs, names) -> str:
    parts = []
    for a, name in zip(coeffs, names):
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        body = name if mag == 1 else f"{mag} {name}"
        parts.append(f"{sign} {body}")
    if not parts:
        return "0"
    lead = parts[0]
    lead = lead[2:] if lead.startswith("+ ") else "-" + lead[2:]
    return " ".join([lead] + parts[1:])


def export_lp(lp: LinearProgram, path) -> Path:
    """Write the model in the plain LP text format (Minimize / Subject To /
    Bounds / General / End) so external solvers can ingest it."""
    out = Path(path)
    lines = ["Minimize", f" obj: {_terms(lp.objective, lp.var_names)}", "Subject To"]
    for idx, (row, b) in enumerate(zip(lp.rows, lp.rhs)):
        lines.append(f" c{idx}: {_terms(row, lp.var_names)} >= {b}")
    lines.append("Bounds")
    for name in lp.var_names:
        lines.append(f" {name} >= 0")
    if any(lp.integral):
        lines.append("General")
        for name, flag in zip(lp.var_names, lp.integral):
            if flag:
                lines.append(f" {name}")
    lines.append("End")
    out.write_text("\n".join(lines) + "\n")
    return out
