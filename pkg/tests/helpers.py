"""Instance generators and brute-force oracles shared by the tests."""

import itertools
import random
from fractions import Fraction
from fractions import Fraction as F

from discrete_farkas.core import Instance, Mode


def random_nonneg(rng, max_m=3, max_n=4, max_entry=4, max_b=12):
    """Random instance without zero columns, entries <= max_entry, sum(b) <= max_b."""
    m = rng.randint(1, max_m)
    n = rng.randint(1, max_n)
    while True:
        A = [[rng.randint(0, max_entry) for _ in range(n)] for _ in range(m)]
        if all(any(A[i][j] for i in range(m)) for j in range(n)):
            break
    if rng.random() < 0.5:
        # bias towards feasible right-hand sides
        while True:
            x = [rng.randint(0, 3) for _ in range(n)]
            b = [sum(A[i][j] * x[j] for j in range(n)) for i in range(m)]
            if sum(b) <= max_b:
                break
    else:
        b = [0] * m
        for _ in range(rng.randint(0, max_b)):
            b[rng.randrange(m)] += 1
    return Instance(A, b, Mode.NONNEG)


def brute_solutions(inst, bound=None):
    """Every x in N^n with Ax = b, scanning each x_j up to ``bound``."""
    if bound is None:
        bound = max(abs(v) for v in inst.b) + 1
    return [
        x
        for x in itertools.product(range(bound + 1), repeat=inst.n)
        if inst.apply(x) == inst.b
    ]


def solve_exact(rows, rhs, cols):
    """Unique solution of the column-restricted system, or None.

    Returns None when the chosen columns are dependent or the system is
    inconsistent. Plain Gauss-Jordan over Fractions.
    """
    k = len(cols)
    M = [[Fraction(r.get(c, 0)) for c in cols] + [Fraction(v)] for r, v in zip(rows, rhs)]
    piv_row = 0
    for c in range(k):
        p = next((i for i in range(piv_row, len(M)) if M[i][c] != 0), None)
        if p is None:
            return None
        M[piv_row], M[p] = M[p], M[piv_row]
        pv = M[piv_row][c]
        M[piv_row] = [v / pv for v in M[piv_row]]
        for i in range(len(M)):
            if i != piv_row and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[piv_row])]
        piv_row += 1
    if any(M[i][k] != 0 for i in range(piv_row, len(M))):
        return None
    return [M[i][k] for i in range(k)]


def basic_solutions(rows, rhs, nvars):
    """All basic nonnegative solutions of {My = c, y >= 0} (vertex enumeration)."""
    out = []
    for size in range(0, min(len(rows), nvars) + 1):
        for cols in itertools.combinations(range(nvars), size):
            sol = solve_exact(rows, rhs, cols)
            if sol is None or any(v < 0 for v in sol):
                continue
            y = [Fraction(0)] * nvars
            for c, v in zip(cols, sol):
                y[c] = v
            out.append(y)
    return out


def seeded(seed):
    return random.Random(seed)


def dict_rows(A):
    return [{k: v for k, v in enumerate(r) if v} for r in A]


# Degenerate problems on which textbook pivoting rules cycle.
BEALE = (
    [[1, 0, 0, F(1, 4), -8, -1, 9], [0, 1, 0, F(1, 2), -12, F(-1, 2), 3], [0, 0, 1, 0, 0, 1, 0]],
    [0, 0, 1],
    [0, 0, 0, F(3, 4), -20, F(1, 2), -6],
)
KUHN = (
    [[-2, -9, 1, 9, 1, 0, 0], [F(1, 3), 1, F(-1, 3), -2, 0, 1, 0], [2, 3, -1, -12, 0, 0, 1]],
    [0, 0, 2],
    [2, 3, -1, -12, 0, 0, 0],
)
# Marshall and Suurballe, slacks appended
MARSHALL = (
    [[F(1, 2), F(-11, 2), F(-5, 2), 9, 1, 0, 0], [F(1, 2), F(-3, 2), F(-1, 2), 1, 0, 1, 0], [1, 0, 0, 0, 0, 0, 1]],
    [0, 0, 1],
    [10, -57, -9, -24, 0, 0, 0],
)

CYCLING = {"beale": BEALE, "kuhn": KUHN, "marshall": MARSHALL}
