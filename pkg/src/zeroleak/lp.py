"""Exact linear programming over rationals.

A small two-phase primal simplex with Bland's anti-cycling rule.  Every
number is a `fractions.Fraction`; there is no floating point anywhere in the
optimization path, so optima are exact and runs are deterministic.  Intended
for the desk-scale programs this package builds (tens of variables), not for
general-purpose solving.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ZeroleakError
from .rationals import format_ratio

LESS_EQUAL = "<="
EQUAL = "="
GREATER_EQUAL = ">="
_RELATIONS = (LESS_EQUAL, EQUAL, GREATER_EQUAL)


@dataclass(frozen=True)
class LinearProgram:
    sense: str  # "min" or "max"
    objective: tuple[Fraction, ...]
    constraints: tuple[tuple[tuple[Fraction, ...], str, Fraction], ...]
    bounds: tuple[tuple[Fraction | None, Fraction | None], ...]

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise DomainError("bad_lp", f"sense must be 'min' or 'max', got {self.sense!r}")
        width = len(self.objective)
        if len(self.bounds) != width:
            raise DomainError("dimension_mismatch", f"{len(self.bounds)} bounds for {width} variables")
        for coeffs, rel, _rhs in self.constraints:
            if len(coeffs) != width:
                raise DomainError(
                    "dimension_mismatch",
                    f"constraint width {len(coeffs)} does not match objective width {width}",
                )
            if rel not in _RELATIONS:
                raise DomainError("bad_lp", f"unknown relation {rel!r}")


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal", "infeasible", "unbounded"
    value: Fraction | None
    assignment: tuple[Fraction, ...] | None


def make_lp(sense, objective, constraints, bounds=None) -> LinearProgram:
    """Coerce plain numbers into a LinearProgram; default bound is [0, +inf)."""
    objective = tuple(Fraction(c) for c in objective)
    rows = []
    for coeffs, rel, rhs in constraints:
        rows.append((tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs)))
    if bounds is None:
        bounds = [(Fraction(0), None)] * len(objective)
    fixed = tuple(
        (None if lo is None else Fraction(lo), None if hi is None else Fraction(hi)) for lo, hi in bounds
    )
    return LinearProgram(sense, objective, tuple(rows), fixed)


def _validate(program: LinearProgram, assignment: tuple[Fraction, ...], value: Fraction) -> None:
    # exact re-validation is part of solve_lp's contract
    for k, (lo, hi) in enumerate(program.bounds):
        if lo is not None and assignment[k] < lo:
            raise ZeroleakError("internal_error", f"solver broke lower bound on variable {k}")
        if hi is not None and assignment[k] > hi:
            raise ZeroleakError("internal_error", f"solver broke upper bound on variable {k}")
    for coeffs, rel, rhs in program.constraints:
        lhs = sum(c * x for c, x in zip(coeffs, assignment))
        ok = lhs <= rhs if rel == LESS_EQUAL else lhs >= rhs if rel == GREATER_EQUAL else lhs == rhs
        if not ok:
            raise ZeroleakError("internal_error", f"solver broke constraint {rel} {rhs}")
    achieved = sum(c * x for c, x in zip(program.objective, assignment))
    if achieved != value:
        raise ZeroleakError("internal_error", "solver value does not match assignment")


def solve_lp(program: LinearProgram) -> LpSolution:
    """Exact optimum with deterministic pivoting.

    Infeasible and unbounded programs are reported through the status field,
    never as exceptions.  Optimal solutions are re-checked against every
    constraint and bound before being returned.
    """
    width = len(program.objective)

    # --- substitute every variable into a nonnegative one -----------------
    # entries: ("shift", k, lo) x_k = lo + u      | ("mirror", k, hi) x_k = hi - u
    #          ("free", k)      x_k = u - w (two columns, w right after u)
    plan: list[tuple] = []
    col_of_var: list[int] = []
    ncols = 0
    upper_rows: list[tuple[int, Fraction]] = []  # (column, cap) for finite [lo, hi]
    for k, (lo, hi) in enumerate(program.bounds):
        col_of_var.append(ncols)
        if lo is not None:
            if hi is not None:
                if hi < lo:
                    return LpSolution("infeasible", None, None)
                upper_rows.append((ncols, hi - lo))
            plan.append(("shift", k, lo))
            ncols += 1
        elif hi is not None:
            plan.append(("mirror", k, hi))
            ncols += 1
        else:
            plan.append(("free", k))
            ncols += 2

    def to_cols(coeffs) -> list[Fraction]:
        row = [Fraction(0)] * ncols
        for entry in plan:
            kind, k = entry[0], entry[1]
            c = coeffs[k]
            if c == 0:
                continue
            col = col_of_var[k]
            if kind == "shift":
                row[col] += c
            elif kind == "mirror":
                row[col] -= c
            else:
                row[col] += c
                row[col + 1] -= c
        return row

    def shift_constant(coeffs) -> Fraction:
        total = Fraction(0)
        for entry in plan:
            kind, k = entry[0], entry[1]
            if kind == "shift":
                total += coeffs[k] * entry[2]
            elif kind == "mirror":
                total += coeffs[k] * entry[2]
        return total

    rows: list[tuple[list[Fraction], str, Fraction]] = []
    for coeffs, rel, rhs in program.constraints:
        rows.append((to_cols(coeffs), rel, rhs - shift_constant(coeffs)))
    for col, cap in upper_rows:
        row = [Fraction(0)] * ncols
        row[col] = Fraction(1)
        rows.append((row, LESS_EQUAL, cap))

    # Degenerate case: no variables at all.
    if ncols == 0:
        for _, rel, rhs in rows:
            ok = rhs >= 0 if rel == LESS_EQUAL else rhs <= 0 if rel == GREATER_EQUAL else rhs == 0
            if not ok:
                return LpSolution("infeasible", None, None)
        value = sum(c * Fraction(0) for c in program.objective) + _objective_constant(program, plan)
        return LpSolution("optimal", value, tuple(_recover(plan, col_of_var, [Fraction(0)] * 0, width)))

    # --- build tableau with slack/surplus/artificial columns --------------
    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    slack_cols = 0
    art_cols = 0
    specs = []
    for coeffs, rel, rhs in rows:
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            rel = {LESS_EQUAL: GREATER_EQUAL, GREATER_EQUAL: LESS_EQUAL, EQUAL: EQUAL}[rel]
        specs.append((coeffs, rel, rhs))
        if rel == LESS_EQUAL:
            slack_cols += 1
        elif rel == GREATER_EQUAL:
            slack_cols += 1
            art_cols += 1
        else:
            art_cols += 1
    total_cols = ncols + slack_cols + art_cols
    art_start = ncols + slack_cols
    slack_at = ncols
    art_at = art_start
    artificial: set[int] = set(range(art_start, total_cols))
    for coeffs, rel, rhs in specs:
        row = list(coeffs) + [Fraction(0)] * (slack_cols + art_cols) + [rhs]
        if rel == LESS_EQUAL:
            row[slack_at] = Fraction(1)
            basis.append(slack_at)
            slack_at += 1
        elif rel == GREATER_EQUAL:
            row[slack_at] = Fraction(-1)
            slack_at += 1
            row[art_at] = Fraction(1)
            basis.append(art_at)
            art_at += 1
        else:
            row[art_at] = Fraction(1)
            basis.append(art_at)
            art_at += 1
        tableau.append(row)

    def run(costs: list[Fraction], allowed) -> str:
        # objective row: reduced costs d_j = c_j - sum_i c_basis[i] * a_ij
        obj = [Fraction(0)] * (total_cols + 1)
        for j in range(total_cols):
            obj[j] = costs[j] - sum(costs[basis[i]] * tableau[i][j] for i in range(len(tableau)))
        obj[total_cols] = -sum(costs[basis[i]] * tableau[i][total_cols] for i in range(len(tableau)))
        while True:
            entering = -1
            for j in range(total_cols):
                if j in allowed and obj[j] < 0:
                    entering = j
                    break  # Bland: lowest-index negative reduced cost
            if entering < 0:
                return "optimal"
            leave = -1
            best_ratio: Fraction | None = None
            for i, row in enumerate(tableau):
                a = row[entering]
                if a > 0:
                    ratio = row[total_cols] / a
                    if best_ratio is None or ratio < best_ratio or (
                        ratio == best_ratio and basis[i] < basis[leave]
                    ):
                        best_ratio = ratio
                        leave = i
            if leave < 0:
                return "unbounded"
            _pivot(tableau, obj, basis, leave, entering, total_cols)

    # --- phase 1 ----------------------------------------------------------
    if artificial:
        costs1 = [Fraction(0)] * total_cols
        for j in artificial:
            costs1[j] = Fraction(1)
        allowed1 = set(range(total_cols)) - artificial
        run(costs1, allowed1)
        infeas = sum(tableau[i][total_cols] for i in range(len(tableau)) if basis[i] in artificial)
        if infeas != 0:
            return LpSolution("infeasible", None, None)
        # pivot surviving artificials out of the (degenerate) basis
        for i in range(len(tableau) - 1, -1, -1):
            if basis[i] not in artificial:
                continue
            entering = -1
            for j in range(art_start):
                if tableau[i][j] != 0:
                    entering = j
                    break
            if entering < 0:
                del tableau[i]
                del basis[i]
            else:
                _pivot(tableau, None, basis, i, entering, total_cols)

    # --- phase 2 ----------------------------------------------------------
    sign = Fraction(1) if program.sense == "min" else Fraction(-1)
    costs2 = [Fraction(0)] * total_cols
    base_costs = to_cols(program.objective)
    for j in range(ncols):
        costs2[j] = sign * base_costs[j]
    allowed2 = set(range(art_start))
    status = run(costs2, allowed2)
    if status == "unbounded":
        return LpSolution("unbounded", None, None)

    u = [Fraction(0)] * total_cols
    for i, b in enumerate(basis):
        u[b] = tableau[i][total_cols]
    assignment = tuple(_recover(plan, col_of_var, u, width))
    value = sum(c * x for c, x in zip(program.objective, assignment))
    _validate(program, assignment, value)
    return LpSolution("optimal", value, assignment)


def _pivot(tableau, obj, basis, leave: int, entering: int, last: int) -> None:
    row = tableau[leave]
    factor = row[entering]
    tableau[leave] = [a / factor for a in row]
    for i, other in enumerate(tableau):
        if i == leave:
            continue
        a = other[entering]
        if a != 0:
            pivot_row = tableau[leave]
            tableau[i] = [x - a * y for x, y in zip(other, pivot_row)]
    if obj is not None:
        a = obj[entering]
        if a != 0:
            pivot_row = tableau[leave]
            for j in range(last + 1):
                obj[j] -= a * pivot_row[j]
    basis[leave] = entering


def _objective_constant(program: LinearProgram, plan) -> Fraction:
    total = Fraction(0)
    for entry in plan:
        kind, k = entry[0], entry[1]
        if kind in ("shift", "mirror"):
            total += program.objective[k] * entry[2]
    return total


def _recover(plan, col_of_var, u, width):
    values = [Fraction(0)] * width
    for entry in plan:
        kind, k = entry[0], entry[1]
        col = col_of_var[k]
        if kind == "shift":
            values[k] = entry[2] + u[col] if col < len(u) else entry[2]
        elif kind == "mirror":
            values[k] = entry[2] - (u[col] if col < len(u) else Fraction(0))
        else:
            a = u[col] if col < len(u) else Fraction(0)
            b = u[col + 1] if col + 1 < len(u) else Fraction(0)
            values[k] = a - b
    return values


# ---------------------------------------------------------------------------
# Debug serialization ("debug-v1"; not a public wire format)
# ---------------------------------------------------------------------------

def lp_to_debug_obj(program: LinearProgram) -> dict:
    return {
        "format": "debug-v1",
        "sense": program.sense,
        "objective": [format_ratio(c) for c in program.objective],
        "constraints": [
            {"coeffs": [format_ratio(c) for c in coeffs], "rel": rel, "rhs": format_ratio(rhs)}
            for coeffs, rel, rhs in program.constraints
        ],
        "bounds": [
            [None if lo is None else format_ratio(lo), None if hi is None else format_ratio(hi)]
            for lo, hi in program.bounds
        ],
    }


def solution_to_debug_obj(solution: LpSolution) -> dict:
    return {
        "format": "debug-v1",
        "status": solution.status,
        "value": None if solution.value is None else format_ratio(solution.value),
        "assignment": None
        if solution.assignment is None
        else [format_ratio(x) for x in solution.assignment],
    }
