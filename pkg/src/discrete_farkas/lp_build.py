"""Assembly of the certificate LP.

Unknowns are the coefficients Q[j, alpha] of the weight polynomials; each row
matches the coefficient of one monomial gamma on both sides of

    z^b - 1 = sum_j Q_j(z) * (z^{A_j} - 1).

Read as a flow problem, Q[j, alpha] moves mass along the edge
alpha -> alpha + A_j, with a unit source at 0 and a unit sink at b.

Pruned mode keeps only variables with alpha + A_j <= b and rows gamma <= b
(componentwise). This loses nothing: the telescoping certificate built from a
witness walks a monotone lattice path from 0 to b, so its whole support sits
inside the box [0, b].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .core import (
    Instance,
    InstanceError,
    Mode,
    MultiIndex,
    NoncompactColumn,
    FarkasError,
    add_idx,
    box,
    format_monomial,
    leq,
    monomials_up_to,
    s,
)


DEFAULT_MAX_ROWS = 50_000


class LpTooLarge(FarkasError):
    """The requested LP exceeds the row budget."""


@dataclass(frozen=True)
class LpDims:
    num_vars: int
    num_rows: int
    degree_bound_used: int


@dataclass(frozen=True)
class LpProblem:
    """Sparse equality system M y = c, y >= 0, with entries in {-1, 0, +1}."""

    num_vars: int
    num_rows: int
    columns: Tuple[Tuple[Tuple[int, int], ...], ...]
    rhs: Tuple[int, ...]
    var_labels: Tuple[Tuple[int, MultiIndex], ...]
    row_labels: Tuple[MultiIndex, ...]
    degree_bound_used: int
    pruned: bool

    @property
    def dims(self) -> LpDims:
        return LpDims(self.num_vars, self.num_rows, self.degree_bound_used)

    def rows(self) -> List[Dict[int, int]]:
        """Row-major view: one {var index: coefficient} dict per row."""
        out: List[Dict[int, int]] = [{} for _ in range(self.num_rows)]
        for v, col in enumerate(self.columns):
            for r, c in col:
                out[r][v] = c
        return out

    def dump(self) -> str:
        """One line per row: ``gamma: signed terms = rhs``."""
        lines = []
        for r, row in enumerate(self.rows()):
            terms = " ".join(
                f"{'+' if c > 0 else '-'} Q{self.var_labels[v][0] + 1}[{format_monomial(self.var_labels[v][1])}]"
                for v, c in sorted(row.items())
            )
            lines.append(f"{format_monomial(self.row_labels[r])}: {terms or '0'} = {self.rhs[r]}")
        return "\n".join(lines)


def _require_nonneg(inst: Instance) -> None:
    if inst.mode is not Mode.NONNEG:
        raise InstanceError("nonnegative instance required; lift general instances first")


def degree_bound(inst: Instance) -> int:
    """b* = sum(b) - min_k (column sum k). May be negative."""
    _require_nonneg(inst)
    sums = inst.column_sums()
    for j, cs in enumerate(sums):
        if cs == 0:
            raise NoncompactColumn(f"column {j + 1} of A is zero")
    return sum(inst.b) - min(sums)


def dims(inst: Instance) -> LpDims:
    """Full-mode variable and row counts: n*s(b*) and s(b* + max column sum)."""
    bstar = degree_bound(inst)
    if bstar < 0:
        raise ValueError(f"b* = {bstar} < 0: no LP is built for this instance")
    return LpDims(
        num_vars=inst.n * s(bstar, inst.m),
        num_rows=s(bstar + max(inst.column_sums()), inst.m),
        degree_bound_used=bstar,
    )


def pruned_rows(inst: Instance) -> int:
    """Row count in pruned mode: the number of points of the box [0, b]."""
    out = 1
    for v in inst.b:
        out *= v + 1
    return out


def assemble(inst: Instance, pruned: bool = True, max_rows: int = DEFAULT_MAX_ROWS) -> LpProblem:
    bstar = degree_bound(inst)
    if not any(inst.b):
        raise ValueError("b = 0 is decided without an LP (x = 0)")
    if bstar < 0:
        raise ValueError(f"b* = {bstar} < 0: infeasible without an LP")
    cols = inst.columns
    m, n = inst.m, inst.n
    nrows = pruned_rows(inst) if pruned else s(bstar + max(inst.column_sums()), m)
    if max_rows is not None and nrows > max_rows:
        raise LpTooLarge(f"LP would have {nrows} rows (limit {max_rows})")
    if pruned:
        row_labels = list(box(inst.b))
        alphas = row_labels
    else:
        row_labels = list(monomials_up_to(bstar + max(inst.column_sums()), m))
        alphas = list(monomials_up_to(bstar, m))
    row_of = {g: i for i, g in enumerate(row_labels)}

    var_labels = []
    columns = []
    for j in range(n):
        for alpha in alphas:
            top = add_idx(alpha, cols[j])
            if pruned and not leq(top, inst.b):
                continue
            var_labels.append((j, alpha))
            columns.append(((row_of[alpha], -1), (row_of[top], 1)))

    rhs = [0] * len(row_labels)
    rhs[row_of[inst.b]] = 1
    rhs[row_of[(0,) * m]] = -1
    return LpProblem(
        num_vars=len(var_labels),
        num_rows=len(row_labels),
        columns=tuple(columns),
        rhs=tuple(rhs),
        var_labels=tuple(var_labels),
        row_labels=tuple(row_labels),
        degree_bound_used=bstar,
        pruned=pruned,
    )
