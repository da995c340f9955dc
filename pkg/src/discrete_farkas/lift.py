"""Reduction of a general integer system to the nonnegative case.

With alpha_k = max(0, -min_i A_ik) and an integer beta >= rho*(alpha) =
max{alpha'x : Ax = b, x >= 0}, the system Ax = b, x in N^n has a solution
iff the nonnegative system

    [A + e alpha' | e] [x]   [b + beta e]
    [   alpha'    | 1] [u] = [   beta   ]

has one in N^{n+1}. Its certificate lives in m + 1 variables; the extra one
belongs to the last row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import List, Optional, Tuple

from .core import FarkasError, Instance, InstanceError, Mode, NoncompactInstance
from .lp_build import DEFAULT_MAX_ROWS, degree_bound
from .pipeline import Verdict, check
from .simplex import Status, maximize


class EmptyRelaxation(FarkasError):
    """{x >= 0 : Ax = b} is empty over the reals."""

    def __init__(self, msg: str, ray: Optional[List[Fraction]] = None):
        super().__init__(msg)
        self.ray = ray


@dataclass(frozen=True)
class LiftedInstance:
    B: Tuple[Tuple[int, ...], ...]
    rhs: Tuple[int, ...]
    alpha: Tuple[int, ...]
    beta: int
    rho_star: Fraction
    original: Instance

    def instance(self) -> Instance:
        return Instance(self.B, self.rhs, Mode.NONNEG)

    def to_json(self) -> dict:
        return {
            "B": [list(r) for r in self.B],
            "rhs": list(self.rhs),
            "alpha": list(self.alpha),
            "beta": self.beta,
            "rho_star": f"{self.rho_star.numerator}/{self.rho_star.denominator}",
            "degree_bound": degree_bound(self.instance()),
        }


def recession_cone_trivial(inst: Instance) -> bool:
    """True iff Ax = 0, x >= 0 forces x = 0 (max sum x over the unit box is 0)."""
    out = maximize([1] * inst.n, inst.A, [0] * inst.m, upper=[1] * inst.n)
    return out.objective == 0


def compute_alpha(A) -> Tuple[int, ...]:
    n = len(A[0])
    return tuple(max(0, -min(row[k] for row in A)) for k in range(n))


def rho_star(inst: Instance, alpha) -> Fraction:
    """max alpha'x over the real polytope {x >= 0 : Ax = b}."""
    out = maximize(list(alpha), inst.A, inst.b)
    if out.status is Status.INFEASIBLE:
        raise EmptyRelaxation("no real x >= 0 with Ax = b", out.infeasibility_ray)
    if out.status is Status.UNBOUNDED:
        raise NoncompactInstance("alpha'x is unbounded over {x >= 0 : Ax = b}")
    return out.objective


def build_lifted(inst: Instance) -> LiftedInstance:
    alpha = compute_alpha(inst.A)
    rho = rho_star(inst, alpha)
    beta = max(ceil(rho), max(max(0, -v) for v in inst.b))
    B = [[a + alpha[k] for k, a in enumerate(row)] + [1] for row in inst.A]
    B.append(list(alpha) + [1])
    rhs = tuple(v + beta for v in inst.b) + (beta,)
    return LiftedInstance(tuple(map(tuple, B)), rhs, alpha, beta, rho, inst)


def theorem3_degree_bound(lifted: LiftedInstance) -> int:
    """Closed form (m+1)beta + sum(b) - min(m+1, min_k((m+1)alpha_k + colsum_k))."""
    inst = lifted.original
    m1 = inst.m + 1
    inner = min(m1 * a + cs for a, cs in zip(lifted.alpha, inst.column_sums()))
    return m1 * lifted.beta + sum(inst.b) - min(m1, inner)


def check_general(
    inst: Instance, pruned: bool = True, max_rows: int = DEFAULT_MAX_ROWS
) -> Tuple[Verdict, Optional[LiftedInstance]]:
    """Decide a general instance through the lifted nonnegative system.

    Returns the verdict on the original unknowns (certificate and LP data are
    those of the lifted system) together with the lifted instance.
    """
    for j, col in enumerate(inst.columns):
        if not any(col):
            raise InstanceError(f"column {j + 1} of A is zero")
    if not recession_cone_trivial(inst):
        raise NoncompactInstance("{x >= 0 : Ax = 0} contains a nonzero direction")
    try:
        lifted = build_lifted(inst)
    except EmptyRelaxation as exc:
        return Verdict(False, short_circuit="empty relaxation", evidence=exc.ray), None

    v = check(lifted.instance(), pruned=pruned, max_rows=max_rows)
    if v.feasible:
        xu = v.witness
        x, u = xu[:-1], xu[-1]
        if sum(a * xj for a, xj in zip(lifted.alpha, x)) + u != lifted.beta:
            raise AssertionError("lifted witness breaks alpha'x + u = beta")
        if not inst.is_solution(x):
            raise AssertionError("lifted witness does not map back to a solution")
        v.notes.append(f"lifted witness {tuple(xu)}")
        v.witness = tuple(x)
    return v, lifted
