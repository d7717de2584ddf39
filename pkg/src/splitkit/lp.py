"""Exact linear programming over the rationals.

A dense two-phase tableau simplex with Bland's rule.  Problem sizes in this
package are a few dozen rows, so exactness wins over speed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import rat, rat_vector

RELATIONS = {"=": "=", "==": "=", ">=": ">=", "≥": ">=", ">": ">"}


@dataclass(frozen=True)
class LinConstraint:
    """``coeffs . x  rel  rhs`` with ``rel`` one of ``=``, ``>=``, ``>``."""

    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "rel", RELATIONS[self.rel])
        object.__setattr__(self, "coeffs", rat_vector(self.coeffs))
        object.__setattr__(self, "rhs", rat(self.rhs))

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((a * b for a, b in zip(self.coeffs, x)), Fraction(0))
        if self.rel == "=":
            return lhs == self.rhs
        if self.rel == ">=":
            return lhs >= self.rhs
        return lhs > self.rhs


def eq(coeffs, rhs=0) -> LinConstraint:
    return LinConstraint(coeffs, "=", rhs)


def ge(coeffs, rhs=0) -> LinConstraint:
    return LinConstraint(coeffs, ">=", rhs)


def gt(coeffs, rhs=0) -> LinConstraint:
    return LinConstraint(coeffs, ">", rhs)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    witness: tuple[Fraction, ...] | None = field(default=None)

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int], ncols: int):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = 1 / row[c]
        self.rows[r] = row = [x * inv for x in row]
        self.rhs[r] *= inv
        b = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[c]
                if f:
                    self.rows[i] = [x - f * y if y else x for x, y in zip(other, row)]
                    self.rhs[i] -= f * b
        self.basis[r] = c

    def optimize(self, cost: list[Fraction], allowed: list[bool]) -> str:
        """Maximize ``cost . z``; returns "optimal" or "unbounded"."""
        while True:
            cb = [cost[b] for b in self.basis]
            basic = set(self.basis)
            entering = None
            for j in range(self.ncols):
                if not allowed[j] or j in basic:
                    continue
                red = cost[j] - sum((c * row[j] for c, row in zip(cb, self.rows) if c and row[j]), Fraction(0))
                if red > 0:
                    entering = j
                    break
            if entering is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering)


def _solve(constraints: Sequence[LinConstraint], objective: Sequence[Fraction]) -> LPResult:
    """Maximize ``objective . x`` subject to non-strict constraints, x free."""
    n = len(objective)
    nonneg = [False] * n
    kept = []
    for con in constraints:
        nz = [i for i, a in enumerate(con.coeffs) if a]
        if con.rel == ">=" and con.rhs == 0 and len(nz) == 1 and con.coeffs[nz[0]] > 0:
            nonneg[nz[0]] = True
        else:
            kept.append(con)
    # column layout: x_i -> (+col[, -col]), then one surplus per ">=" row
    colmap: list[list[tuple[int, int]]] = []
    ncols = 0
    for i in range(n):
        if nonneg[i]:
            colmap.append([(ncols, 1)])
            ncols += 1
        else:
            colmap.append([(ncols, 1), (ncols + 1, -1)])
            ncols += 2
    surplus_of = {}
    for k, con in enumerate(kept):
        if con.rel == ">=":
            surplus_of[k] = ncols
            ncols += 1
    nrows = len(kept)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for k, con in enumerate(kept):
        row = [Fraction(0)] * ncols
        for i, a in enumerate(con.coeffs):
            if a:
                for c, s in colmap[i]:
                    row[c] = a * s
        if k in surplus_of:
            row[surplus_of[k]] = Fraction(-1)
        b = con.rhs
        if b < 0:
            row = [-x for x in row]
            b = -b
        rows.append(row)
        rhs.append(b)
    basis = []
    art_cols = []
    for k in range(nrows):
        s = surplus_of.get(k)
        if s is not None and rows[k][s] == 1:
            basis.append(s)
        else:
            basis.append(None)
    total = ncols + sum(1 for b in basis if b is None)
    for k in range(nrows):
        rows[k].extend([Fraction(0)] * (total - ncols))
    c = ncols
    for k in range(nrows):
        if basis[k] is None:
            rows[k][c] = Fraction(1)
            basis[k] = c
            art_cols.append(c)
            c += 1
    tab = _Tableau(rows, rhs, basis, total)
    allowed = [True] * total
    if art_cols:
        cost1 = [Fraction(0)] * total
        for a in art_cols:
            cost1[a] = Fraction(-1)
        tab.optimize(cost1, allowed)
        art = set(art_cols)
        if any(tab.rhs[i] != 0 for i, b in enumerate(tab.basis) if b in art):
            return LPResult("infeasible")
        for a in art_cols:
            allowed[a] = False
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] in art:
                j = next((j for j in range(ncols) if tab.rows[i][j] != 0), None)
                if j is None:
                    del tab.rows[i]
                    del tab.rhs[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1
    cost = [Fraction(0)] * total
    for i, a in enumerate(objective):
        for col, s in colmap[i]:
            cost[col] = a * s
    status = tab.optimize(cost, allowed)
    if status == "unbounded":
        return LPResult("unbounded")
    z = [Fraction(0)] * total
    for i, b in enumerate(tab.basis):
        z[b] = tab.rhs[i]
    x = tuple(sum((z[col] * s for col, s in colmap[i]), Fraction(0)) for i in range(n))
    value = sum((a * b for a, b in zip(objective, x)), Fraction(0))
    return LPResult("optimal", value, x)


def lp_optimize(constraints: Sequence[LinConstraint], objective: Sequence, sense: str = "max") -> LPResult:
    """Optimize a linear objective over free variables.

    Constraints of the form ``x_i >= 0`` are recognised and turn ``x_i`` into a
    sign-restricted column instead of a split free variable.

    Strict rows (``>``) are supported for feasibility only: the objective must
    be zero, and the system is decided by maximizing ``t`` subject to
    ``lhs >= rhs + t`` on the strict rows and ``t <= 1``.  A feasible strict
    system reports ``optimal`` with value 0 and an interior witness.
    """
    objective = rat_vector(objective)
    n = len(objective)
    for con in constraints:
        if len(con.coeffs) != n:
            raise ValueError("constraint width does not match the objective")
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    if any(con.rel == ">" for con in constraints):
        if any(objective):
            raise ValueError("strict constraints are only supported with a zero objective")
        aux = []
        for con in constraints:
            if con.rel == ">":
                aux.append(LinConstraint(con.coeffs + (Fraction(-1),), ">=", con.rhs))
            else:
                aux.append(LinConstraint(con.coeffs + (Fraction(0),), con.rel, con.rhs))
        aux.append(LinConstraint((Fraction(0),) * n + (Fraction(-1),), ">=", -1))
        res = _solve(aux, (Fraction(0),) * n + (Fraction(1),))
        if res.status != "optimal" or res.value <= 0:
            return LPResult("infeasible")
        return LPResult("optimal", Fraction(0), res.witness[:n])
    if sense == "min":
        res = _solve(constraints, tuple(-a for a in objective))
        if res.status == "optimal":
            return LPResult("optimal", -res.value, res.witness)
        return res
    return _solve(constraints, objective)


def is_feasible(constraints: Sequence[LinConstraint], width: int) -> bool:
    return lp_optimize(constraints, (0,) * width).feasible
