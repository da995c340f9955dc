"""Exact two-phase simplex over the rationals with Bland's rule.

The tableau is stored row-sparse (one dict per row), which suits the flow-like
certificate LPs: their columns have two nonzeros each and the tableau stays
sparse for a long time.

An infeasible phase 1 yields row multipliers u with u'M <= 0 on every column
and u'c > 0, the classical Farkas certificate that {y >= 0 : My = c} is empty.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence

from .lp_build import LpProblem

Row = Dict[int, Fraction]
ZERO = Fraction(0)


class Status(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LpOutcome:
    status: Status
    point: Optional[List[Fraction]] = None
    infeasibility_ray: Optional[List[Fraction]] = None
    objective: Optional[Fraction] = None
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE


class _Tableau:
    def __init__(self, rows: List[Row], rhs: List[Fraction], basis: List[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.cost: Row = {}
        self.value = ZERO
        self.pivots = 0

    def set_objective(self, cost: Mapping[int, Fraction]) -> None:
        """Install minimization costs and price out the current basis."""
        d: Row = {k: Fraction(v) for k, v in cost.items() if v}
        value = ZERO
        for i, bv in enumerate(self.basis):
            cb = cost.get(bv, 0)
            if not cb:
                continue
            value += cb * self.rhs[i]
            for k, a in self.rows[i].items():
                nv = d.get(k, ZERO) - cb * a
                if nv:
                    d[k] = nv
                else:
                    d.pop(k, None)
        self.cost = d
        self.value = value

    def pivot(self, r: int, e: int) -> None:
        row = self.rows[r]
        piv = row[e]
        if piv != 1:
            inv = 1 / piv
            for k in row:
                row[k] *= inv
            self.rhs[r] *= inv
        rr = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other.get(e)
            if f is None:
                continue
            _axpy(other, row, f)
            if rr:
                self.rhs[i] -= f * rr
        f = self.cost.get(e)
        if f is not None:
            _axpy(self.cost, row, f)
            self.value += f * rr
        self.basis[r] = e
        self.pivots += 1

    def run(self) -> bool:
        """Bland's rule to optimality; False if the objective is unbounded below."""
        while True:
            e = min(
                (k for k, d in self.cost.items() if d < 0),
                default=None,
            )
            if e is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(e)
                if a is not None and a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], e)


def _axpy(target: Row, row: Row, f: Fraction) -> None:
    # target -= f * row, keeping target sparse
    for k, v in row.items():
        nv = target.get(k, ZERO) - f * v
        if nv:
            target[k] = nv
        else:
            del target[k]


def _solve(
    rows: Sequence[Mapping[int, object]],
    rhs: Sequence[object],
    nvars: int,
    objective: Optional[Mapping[int, object]] = None,
) -> LpOutcome:
    """Phase 1 on {My = c, y >= 0}; then maximize ``objective`` if given."""
    nrows = len(rows)
    signs = [1 if Fraction(c) >= 0 else -1 for c in rhs]
    trows: List[Row] = []
    for i, row in enumerate(rows):
        r = {k: Fraction(v) * signs[i] for k, v in row.items() if v}
        r[nvars + i] = Fraction(1)
        trows.append(r)
    t = _Tableau(trows, [Fraction(c) * sg for c, sg in zip(rhs, signs)], [nvars + i for i in range(nrows)])
    t.set_objective({nvars + i: 1 for i in range(nrows)})
    t.run()
    if t.value > 0:
        ray = [sg * (1 - t.cost.get(nvars + i, ZERO)) for i, sg in enumerate(signs)]
        return LpOutcome(Status.INFEASIBLE, infeasibility_ray=ray, pivots=t.pivots)

    # drive zero-level artificials out of the basis; drop redundant rows
    keep = []
    for i in range(nrows):
        if t.basis[i] >= nvars:
            k = min((k for k in t.rows[i] if k < nvars), default=None)
            if k is None:
                continue
            t.pivot(i, k)
        keep.append(i)
    t.rows = [{k: v for k, v in t.rows[i].items() if k < nvars} for i in keep]
    t.rhs = [t.rhs[i] for i in keep]
    t.basis = [t.basis[i] for i in keep]

    if objective is not None:
        t.set_objective({k: -Fraction(v) for k, v in objective.items() if v})
        if not t.run():
            return LpOutcome(Status.UNBOUNDED, pivots=t.pivots)
    point = [ZERO] * nvars
    for i, bv in enumerate(t.basis):
        point[bv] = t.rhs[i]
    value = None
    if objective is not None:
        value = sum((Fraction(c) * point[k] for k, c in objective.items()), ZERO)
    return LpOutcome(Status.FEASIBLE, point=point, objective=value, pivots=t.pivots)


def solve_feasibility(p: LpProblem) -> LpOutcome:
    """Decide {y >= 0 : My = c} exactly for an assembled certificate LP."""
    return _solve(p.rows(), p.rhs, p.num_vars)


def feasibility(rows: Sequence[Mapping[int, object]], rhs: Sequence[object], nvars: int) -> LpOutcome:
    """Same as :func:`solve_feasibility` for a plain sparse system."""
    return _solve(rows, rhs, nvars)


def maximize(
    objective: Sequence[object],
    A_eq: Sequence[Sequence[object]],
    b_eq: Sequence[object],
    upper: Optional[Sequence[Optional[object]]] = None,
) -> LpOutcome:
    """Maximize objective'x subject to A_eq x = b_eq, 0 <= x (<= upper).

    Upper bounds become slack columns appended after the original ones; the
    returned point is cut back to the original variables. An infeasibility ray
    covers the equality rows followed by one entry per finite upper bound.
    """
    n = len(objective)
    rows: List[Dict[int, object]] = [{k: v for k, v in enumerate(r) if v} for r in A_eq]
    rhs = list(b_eq)
    nvars = n
    if upper is not None:
        for j, ub in enumerate(upper):
            if ub is None:
                continue
            rows.append({j: 1, nvars: 1})
            rhs.append(ub)
            nvars += 1
    out = _solve(rows, rhs, nvars, objective={k: v for k, v in enumerate(objective) if v})
    if out.point is not None:
        out.point = out.point[:n]
    return out


# -- independent re-checks -----------------------------------------------------


def check_point(rows: Sequence[Mapping[int, object]], rhs: Sequence[object], point: Sequence[Fraction]) -> bool:
    """Exact substitution: point >= 0 and every row holds."""
    if any(v < 0 for v in point):
        return False
    return all(
        sum((Fraction(a) * point[k] for k, a in row.items()), ZERO) == Fraction(c)
        for row, c in zip(rows, rhs)
    )


def check_ray(
    rows: Sequence[Mapping[int, object]],
    rhs: Sequence[object],
    nvars: int,
    u: Sequence[Fraction],
) -> bool:
    """True iff u'M <= 0 on every column and u'c > 0 (so My = c has no y >= 0)."""
    colsum = [ZERO] * nvars
    for ui, row in zip(u, rows):
        if ui:
            for k, a in row.items():
                colsum[k] += ui * Fraction(a)
    return all(v <= 0 for v in colsum) and sum((ui * Fraction(c) for ui, c in zip(u, rhs)), ZERO) > 0


def verify_outcome(p: LpProblem, out: LpOutcome) -> bool:
    rows = p.rows()
    if out.status is Status.FEASIBLE:
        return check_point(rows, p.rhs, out.point)
    if out.status is Status.INFEASIBLE:
        return check_ray(rows, p.rhs, p.num_vars, out.infeasibility_ray)
    return False
