"""Certificates z^b - 1 = sum_j Q_j(z)(z^{A_j} - 1) with nonnegative Q_j.

Three ways in (LP solution, integer witness, JSON) and three ways to use one
(exact verification, witness extraction, evaluation at rational points).
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import (
    FarkasError,
    Instance,
    InstanceError,
    Mode,
    MultiIndex,
    Poly,
    add_idx,
    graded_key,
    monomial_eval,
    nonneg_poly,
    poly_add_into,
    poly_degree,
    poly_eval,
    poly_mul_binomial,
)
from .lp_build import LpProblem


class NotAWitness(FarkasError, ValueError):
    pass


class Stuck(FarkasError, RuntimeError):
    """Witness walk found no outgoing flow; cannot happen for a valid certificate."""


def instance_hash(inst: Instance) -> str:
    payload = json.dumps({"A": inst.A, "b": inst.b}, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Certificate:
    Q: Tuple[Poly, ...]
    degree_bound_used: int
    instance_hash: str = ""

    @property
    def n(self) -> int:
        return len(self.Q)

    def max_degree(self) -> int:
        return max((poly_degree(q) for q in self.Q), default=0)

    def term_counts(self) -> List[int]:
        return [len(q) for q in self.Q]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "Q": [
                [
                    {"alpha": list(a), "coeff": f"{c.numerator}/{c.denominator}"}
                    for a, c in sorted(q.items(), key=lambda t: graded_key(t[0]))
                ]
                for q in self.Q
            ],
            "degree_bound": self.degree_bound_used,
            "instance_hash": self.instance_hash,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        Q = tuple(
            nonneg_poly({tuple(t["alpha"]): Fraction(t["coeff"]) for t in terms})
            for terms in data["Q"]
        )
        if len(Q) != data["n"]:
            raise ValueError(f"certificate declares n={data['n']} but has {len(Q)} polynomials")
        return cls(Q, int(data["degree_bound"]), data.get("instance_hash", ""))


def _bound(inst: Instance) -> int:
    # b* over the nonzero columns; zero columns carry Q_j = 0 and are irrelevant
    sums = [c for c in inst.column_sums() if c]
    return sum(inst.b) - min(sums) if sums else 0


def from_lp_solution(p: LpProblem, point: Sequence[Fraction], n: int, inst: Optional[Instance] = None) -> Certificate:
    """Group the LP values by weight polynomial: y[(j, alpha)] -> Q_j[alpha]."""
    Q: List[Poly] = [{} for _ in range(n)]
    for (j, alpha), v in zip(p.var_labels, point):
        if v < 0:
            raise ValueError(f"negative LP value {v} for Q{j + 1}[{alpha}]")
        if v:
            Q[j][alpha] = Fraction(v)
    return Certificate(tuple(Q), p.degree_bound_used, instance_hash(inst) if inst else "")


def from_witness(inst: Instance, x: Sequence[int]) -> Certificate:
    """Telescoping certificate of a witness.

    Q_j = z^{A_1 x_1 + ... + A_{j-1} x_{j-1}} * (1 + z^{A_j} + ... + z^{A_j (x_j - 1)}),
    so every coefficient is 0 or 1.
    """
    if not inst.is_solution(x):
        raise NotAWitness(f"A x != b for x = {tuple(x)}")
    base = (0,) * inst.m
    Q: List[Poly] = []
    for j, col in enumerate(inst.columns):
        q: Poly = {}
        cur = base
        for _ in range(x[j]):
            q[cur] = Fraction(1)
            cur = add_idx(cur, col)
        Q.append(q)
        base = cur
    bound = max(_bound(inst), 0) if any(inst.b) else 0
    return Certificate(tuple(Q), bound, instance_hash(inst))


def expand(inst: Instance, cert: Certificate) -> Poly:
    """sum_j Q_j(z)(z^{A_j} - 1), expanded exactly."""
    total: Poly = {}
    for q, col in zip(cert.Q, inst.columns):
        poly_add_into(total, poly_mul_binomial(q, col))
    return total


def target(inst: Instance) -> Poly:
    """z^b - 1 (the zero polynomial when b = 0)."""
    if not any(inst.b):
        return {}
    return {inst.b: Fraction(1), (0,) * inst.m: Fraction(-1)}


@dataclass(frozen=True)
class VerifyResult:
    valid: bool
    reason: str = ""
    monomial: Optional[MultiIndex] = None
    mismatches: Tuple[MultiIndex, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.valid


def verify(inst: Instance, cert: Certificate) -> VerifyResult:
    """Exact term-by-term check of the identity, signs and degree bound.

    On a mismatch the reported monomial is the first one in graded order.
    """
    if inst.mode is not Mode.NONNEG:
        raise InstanceError("verify needs a nonnegative instance; verify the lifted one")
    if cert.n != inst.n:
        return VerifyResult(False, f"expected {inst.n} polynomials, got {cert.n}")
    for j, q in enumerate(cert.Q):
        for alpha, c in q.items():
            if c < 0:
                return VerifyResult(False, f"Q{j + 1} has negative coefficient at {alpha}", alpha)
    if any(inst.b):
        bound = _bound(inst)
        for j, q in enumerate(cert.Q):
            if q and poly_degree(q) > bound:
                return VerifyResult(False, f"deg Q{j + 1} = {poly_degree(q)} exceeds b* = {bound}")
    lhs = target(inst)
    rhs = expand(inst, cert)
    bad = sorted(
        (g for g in set(lhs) | set(rhs) if lhs.get(g, 0) != rhs.get(g, 0)),
        key=graded_key,
    )
    if bad:
        g = bad[0]
        return VerifyResult(
            False,
            f"coefficient of z^{g}: left {lhs.get(g, 0)}, right {rhs.get(g, 0)}",
            g,
            tuple(bad),
        )
    return VerifyResult(True)


def extract_witness(inst: Instance, cert: Certificate) -> Tuple[int, ...]:
    """Walk the positive-flow edges from 0 to b and count steps per column.

    Edge alpha -> alpha + A_j carries Q_j[alpha]. Conservation gives every
    visited node other than b positive outflow, and each step raises the
    degree, so the walk ends at b. Ties go to the smallest j.
    """
    x = [0] * inst.n
    if not any(inst.b):
        return tuple(x)
    cols = inst.columns
    cur = (0,) * inst.m
    limit = sum(inst.b)
    while cur != inst.b:
        for j, q in enumerate(cert.Q):
            if q.get(cur, 0) > 0:
                x[j] += 1
                cur = add_idx(cur, cols[j])
                break
        else:
            raise Stuck(f"no outgoing flow at {cur}")
        if sum(cur) > limit:
            raise Stuck(f"walk overshot b at {cur}")
    if inst.apply(x) != inst.b:
        raise Stuck(f"walk ended with A x != b for x = {x}")
    return tuple(x)


@dataclass(frozen=True)
class EvalResult:
    passed: bool
    z: Tuple[Fraction, ...]
    lhs: Fraction
    rhs: Fraction
    dominant: bool  # z^{A_j} >= 1 for every j

    def __bool__(self) -> bool:
        return self.passed


def eval_check(inst: Instance, cert: Certificate, z: Sequence[object]) -> EvalResult:
    """Evaluate both sides of the identity at a positive rational point.

    When z^{A_j} >= 1 for all j the left side must also be >= 0: with
    nonnegative Q_j every term on the right is then >= 0.
    """
    z = tuple(Fraction(v) for v in z)
    if any(v <= 0 for v in z):
        raise ValueError("evaluation point must be positive")
    lhs = monomial_eval(inst.b, z) - 1
    powers = [monomial_eval(col, z) for col in inst.columns]
    rhs = sum((poly_eval(q, z) * (p - 1) for q, p in zip(cert.Q, powers)), Fraction(0))
    dominant = all(p >= 1 for p in powers)
    ok = lhs == rhs and (not dominant or lhs >= 0)
    return EvalResult(ok, z, lhs, rhs, dominant)


def random_point(m: int, rng: random.Random, max_num: int = 7, max_den: int = 5) -> Tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(1, max_num), rng.randint(1, max_den)) for _ in range(m))
