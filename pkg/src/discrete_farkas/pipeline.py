"""Decide Ax = b, x in N^n, for nonnegative data via the certificate LP."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .certificate import Certificate, extract_witness, from_lp_solution, instance_hash, verify
from .core import Instance, InstanceError, Mode
from .lp_build import DEFAULT_MAX_ROWS, LpDims, assemble, degree_bound, dims
from .simplex import LpOutcome, solve_feasibility, verify_outcome

log = logging.getLogger(__name__)


@dataclass
class Verdict:
    feasible: bool
    witness: Optional[Tuple[int, ...]] = None
    certificate: Optional[Certificate] = None
    short_circuit: Optional[str] = None
    lp_dims: Optional[LpDims] = None
    formula_dims: Optional[LpDims] = None
    b_star: Optional[int] = None
    outcome: Optional[LpOutcome] = None
    evidence: Optional[List[Fraction]] = None
    dropped_columns: Tuple[int, ...] = ()
    notes: List[str] = field(default_factory=list)


def drop_zero_columns(inst: Instance) -> Tuple[Optional[Instance], Tuple[int, ...]]:
    """Remove zero columns (they never change Ax). None if nothing is left."""
    keep = [j for j, col in enumerate(inst.columns) if any(col)]
    dropped = tuple(j for j in range(inst.n) if j not in keep)
    if not keep:
        return None, dropped
    if not dropped:
        return inst, ()
    A = [[row[j] for j in keep] for row in inst.A]
    return Instance(A, inst.b, inst.mode), dropped


def _pad(values, n, dropped, fill):
    out = []
    it = iter(values)
    for j in range(n):
        out.append(fill() if j in dropped else next(it))
    return out


def check(inst: Instance, pruned: bool = True, max_rows: int = DEFAULT_MAX_ROWS) -> Verdict:
    if inst.mode is not Mode.NONNEG:
        raise InstanceError("negative entries need the general (lifted) path")
    if not any(inst.b):
        cert = Certificate(tuple({} for _ in range(inst.n)), 0, instance_hash(inst))
        return Verdict(True, (0,) * inst.n, cert, short_circuit="b=0")

    work, dropped = drop_zero_columns(inst)
    if dropped:
        log.warning("dropping zero columns %s of A", [j + 1 for j in dropped])
    if work is None:
        return Verdict(False, short_circuit="all columns zero", dropped_columns=dropped)

    bstar = degree_bound(work)
    if bstar < 0:
        return Verdict(False, short_circuit="b*<0", b_star=bstar, dropped_columns=dropped)

    p = assemble(work, pruned=pruned, max_rows=max_rows)
    out = solve_feasibility(p)
    if not verify_outcome(p, out):
        raise AssertionError("simplex outcome failed its exact re-check")
    verdict = Verdict(
        out.feasible,
        lp_dims=p.dims,
        formula_dims=dims(work),
        b_star=bstar,
        outcome=out,
        dropped_columns=dropped,
    )
    if not out.feasible:
        verdict.evidence = out.infeasibility_ray
        return verdict

    cert = from_lp_solution(p, out.point, work.n, work)
    check_ = verify(work, cert)
    if not check_:
        raise AssertionError(f"LP certificate does not verify: {check_.reason}")
    x = extract_witness(work, cert)
    verdict.witness = tuple(_pad(x, inst.n, dropped, int))
    verdict.certificate = Certificate(
        tuple(_pad(cert.Q, inst.n, dropped, dict)), cert.degree_bound_used, instance_hash(inst)
    )
    if not inst.is_solution(verdict.witness):
        raise AssertionError("extracted witness does not solve Ax = b")
    return verdict
