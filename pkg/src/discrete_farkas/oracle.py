"""Reference answers that do not go through the certificate LP.

``enumerate_solutions`` scans a box, ``count_series`` reads f(b) off the
product of geometric series prod_j sum_t z^{t A_j}, and ``reachable`` searches
lattice paths 0 -> b inside [0, b].
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Dict, List, Optional, Tuple

from .core import Instance, Mode, MultiIndex, NoncompactColumn, NoncompactInstance, add_idx, box, leq, sub_idx
from .simplex import feasibility


@dataclass
class CountResult:
    count: int
    witnesses: List[Tuple[int, ...]] = field(default_factory=list)


def _nonzero_columns(inst: Instance) -> None:
    for j, col in enumerate(inst.columns):
        if not any(col):
            raise NoncompactColumn(f"column {j + 1} of A is zero")


def positive_direction(inst: Instance) -> Optional[Tuple[Fraction, ...]]:
    """Some lambda with A'lambda > 0, or None if the recession cone is nontrivial.

    Solved as A'(p - q) - s = 1 with p, q, s >= 0.
    """
    m, n = inst.m, inst.n
    rows = []
    for j in range(n):
        row = {}
        for i in range(m):
            a = inst.A[i][j]
            if a:
                row[i] = a
                row[m + i] = -a
        row[2 * m + j] = -1
        rows.append(row)
    out = feasibility(rows, [1] * n, 2 * m + n)
    if not out.feasible:
        return None
    return tuple(out.point[i] - out.point[m + i] for i in range(m))


def box_bounds(inst: Instance, lam: Optional[Tuple[Fraction, ...]] = None) -> Tuple[int, ...]:
    """Upper bounds x_j <= lambda'b / (A'lambda)_j valid for every solution."""
    if lam is None:
        if inst.mode is Mode.NONNEG:
            _nonzero_columns(inst)
            lam = (Fraction(1),) * inst.m
        else:
            lam = positive_direction(inst)
            if lam is None:
                raise NoncompactInstance("no lambda with A'lambda > 0")
    top = sum((Fraction(l) * bi for l, bi in zip(lam, inst.b)), Fraction(0))
    bounds = []
    for col in inst.columns:
        w = sum((Fraction(l) * a for l, a in zip(lam, col)), Fraction(0))
        if w <= 0:
            raise NoncompactInstance("lambda does not satisfy A'lambda > 0")
        bounds.append(max(floor(top / w), 0))
    return tuple(bounds)


def box_volume(bounds) -> int:
    v = 1
    for u in bounds:
        v *= u + 1
    return v


def enumerate_solutions(inst: Instance, cap: int = 100, bounds=None) -> CountResult:
    """Count every x in the box with Ax = b, keeping at most ``cap`` of them."""
    if bounds is None:
        bounds = box_bounds(inst)
    cols = inst.columns
    n = inst.n
    prune = inst.mode is Mode.NONNEG
    result = CountResult(0)
    x = [0] * n

    def rec(j: int, resid: MultiIndex) -> None:
        if j == n:
            if not any(resid):
                result.count += 1
                if len(result.witnesses) < cap:
                    result.witnesses.append(tuple(x))
            return
        r = resid
        for t in range(bounds[j] + 1):
            if prune and any(v < 0 for v in r):
                break
            x[j] = t
            rec(j + 1, r)
            r = sub_idx(r, cols[j])
        x[j] = 0

    rec(0, inst.b)
    return result


def count_series(inst: Instance) -> int:
    """f(b) as the z^b coefficient of prod_j 1/(1 - z^{A_j}), truncated to [0, b].

    Column by column, g_j(gamma) = sum_t g_{j-1}(gamma - t A_j), computed with
    the equivalent recurrence g_j(gamma) = g_{j-1}(gamma) + g_j(gamma - A_j)
    over the box in graded order.
    """
    if inst.mode is not Mode.NONNEG:
        raise ValueError("count_series needs a nonnegative instance")
    _nonzero_columns(inst)
    pts = list(box(inst.b))
    g: Dict[MultiIndex, int] = {p: 0 for p in pts}
    g[(0,) * inst.m] = 1
    for col in inst.columns:
        for p in pts:
            prev = sub_idx(p, col)
            if all(v >= 0 for v in prev):
                g[p] += g[prev]
    return g[inst.b]


def reachable(inst: Instance) -> bool:
    """Breadth-first search over steps A_j inside the box [0, b]."""
    if inst.mode is not Mode.NONNEG:
        raise ValueError("reachable needs a nonnegative instance")
    _nonzero_columns(inst)
    start = (0,) * inst.m
    seen = {start}
    todo = deque([start])
    while todo:
        cur = todo.popleft()
        if cur == inst.b:
            return True
        for col in inst.columns:
            nxt = add_idx(cur, col)
            if nxt not in seen and leq(nxt, inst.b):
                seen.add(nxt)
                todo.append(nxt)
    return False
