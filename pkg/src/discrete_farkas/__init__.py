"""Nonnegative integer feasibility of Ax = b through an explicit certificate LP.

``z^b - 1 = sum_j Q_j(z) (z^{A_j} - 1)`` has a solution with nonnegative
polynomials Q_j exactly when Ax = b has a solution x in N^n; the Q_j are
found by an exact rational LP whose size is fixed by (A, b).
"""

from .certificate import (
    Certificate,
    eval_check,
    extract_witness,
    from_lp_solution,
    from_witness,
    verify,
)
from .core import Instance, Mode, NoncompactColumn, NoncompactInstance, rank, s, unrank
from .lift import LiftedInstance, build_lifted, check_general
from .lp_build import LpDims, LpProblem, assemble, degree_bound, dims
from .oracle import count_series, enumerate_solutions, reachable
from .pipeline import Verdict, check
from .simplex import LpOutcome, Status, maximize, solve_feasibility

__all__ = [
    "Certificate",
    "Instance",
    "LiftedInstance",
    "LpDims",
    "LpOutcome",
    "LpProblem",
    "Mode",
    "NoncompactColumn",
    "NoncompactInstance",
    "Status",
    "Verdict",
    "assemble",
    "build_lifted",
    "check",
    "check_general",
    "count_series",
    "degree_bound",
    "dims",
    "enumerate_solutions",
    "eval_check",
    "extract_witness",
    "from_lp_solution",
    "from_witness",
    "maximize",
    "rank",
    "reachable",
    "s",
    "solve_feasibility",
    "unrank",
    "verify",
]
