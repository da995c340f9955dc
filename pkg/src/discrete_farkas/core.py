"""Exact building blocks: instances, multi-indices, graded ranking, sparse polynomials.

Monomials z^alpha are exponent tuples. Polynomials are dicts mapping exponent
tuples to ``Fraction`` coefficients; zero coefficients are never stored.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterator, Mapping, Sequence, Tuple

MultiIndex = Tuple[int, ...]
Poly = Dict[MultiIndex, Fraction]


class FarkasError(Exception):
    """Base class for errors raised by this package."""


class InstanceError(FarkasError, ValueError):
    """Malformed instance data."""


class NoncompactColumn(FarkasError):
    """A zero column of A: e_j is a recession direction."""


class NoncompactInstance(FarkasError):
    """The recession cone {x >= 0 : Ax = 0} is not {0}."""


class Mode(enum.Enum):
    NONNEG = "nonneg"
    GENERAL = "general"


@dataclass(frozen=True)
class Instance:
    """The system Ax = b, x in N^n, with A stored row-major as tuples."""

    A: Tuple[Tuple[int, ...], ...]
    b: Tuple[int, ...]
    mode: Mode = Mode.NONNEG

    def __post_init__(self):
        A = tuple(tuple(int(v) for v in row) for row in self.A)
        b = tuple(int(v) for v in self.b)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        if not A or not A[0]:
            raise InstanceError("need m >= 1 and n >= 1")
        n = len(A[0])
        if any(len(row) != n for row in A):
            raise InstanceError("ragged matrix A")
        if len(b) != len(A):
            raise InstanceError(f"b has length {len(b)}, expected {len(A)}")
        if self.mode is Mode.NONNEG and (
            any(v < 0 for row in A for v in row) or any(v < 0 for v in b)
        ):
            raise InstanceError("negative entry in nonneg mode")

    @classmethod
    def create(cls, A, b, mode=None) -> "Instance":
        """Build an instance, inferring the mode from the signs when not given."""
        if mode is None:
            neg = any(v < 0 for row in A for v in row) or any(v < 0 for v in b)
            mode = Mode.GENERAL if neg else Mode.NONNEG
        return cls(A, b, Mode(mode))

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    def column(self, j: int) -> MultiIndex:
        return tuple(row[j] for row in self.A)

    @property
    def columns(self) -> Tuple[MultiIndex, ...]:
        return tuple(self.column(j) for j in range(self.n))

    def column_sums(self) -> Tuple[int, ...]:
        return tuple(sum(col) for col in self.columns)

    def apply(self, x: Sequence[int]) -> Tuple[int, ...]:
        """Return Ax."""
        return tuple(sum(a * xj for a, xj in zip(row, x)) for row in self.A)

    def is_solution(self, x: Sequence[int]) -> bool:
        return (
            len(x) == self.n
            and all(int(v) == v and v >= 0 for v in x)
            and self.apply(x) == self.b
        )


def s(u: int, m: int) -> int:
    """Number of monomials of degree <= u in m variables, binomial(m+u, u)."""
    if u < 0:
        return 0
    if m < 1:
        raise ValueError("m must be >= 1")
    return comb(m + u, u)


def _count_eq(d: int, r: int) -> int:
    # monomials of degree exactly d in r variables
    if r == 0:
        return 1 if d == 0 else 0
    return comb(d + r - 1, r - 1)


def rank(alpha: Sequence[int]) -> int:
    """Position of ``alpha`` in the graded order (degree first, then lex ascending).

    >>> [rank(a) for a in [(0, 0), (0, 1), (1, 0), (0, 2)]]
    [0, 1, 2, 3]
    """
    m = len(alpha)
    if any(a < 0 for a in alpha):
        raise ValueError("negative exponent")
    d = sum(alpha)
    k = s(d - 1, m)
    rest = d
    for i, a in enumerate(alpha[:-1]):
        # monomials in this band that share the prefix but have a smaller entry i
        for t in range(a):
            k += _count_eq(rest - t, m - i - 1)
        rest -= a
    return k


def unrank(k: int, m: int) -> MultiIndex:
    """Inverse of :func:`rank` for ``m`` variables."""
    if k < 0:
        raise ValueError("negative rank")
    d = 0
    while s(d, m) <= k:
        d += 1
    k -= s(d - 1, m)
    out = []
    rest = d
    for i in range(m - 1):
        t = 0
        while True:
            c = _count_eq(rest - t, m - i - 1)
            if k < c:
                break
            k -= c
            t += 1
        out.append(t)
        rest -= t
    out.append(rest)
    return tuple(out)


def graded_key(alpha: Sequence[int]) -> Tuple[int, ...]:
    """Sort key equivalent to :func:`rank` but without the arithmetic."""
    return (sum(alpha), *alpha)


def monomials_up_to(d: int, m: int) -> Iterator[MultiIndex]:
    """All exponent vectors of degree <= d in graded order."""
    for deg in range(d + 1):
        yield from _band(deg, m)


def _band(d: int, m: int) -> Iterator[MultiIndex]:
    if m == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _band(d - first, m - 1):
            yield (first, *rest)


def box(upper: Sequence[int]) -> Iterator[MultiIndex]:
    """All exponent vectors componentwise <= ``upper``, in graded order."""
    pts = list(_box(tuple(upper)))
    pts.sort(key=graded_key)
    return iter(pts)


def _box(upper):
    if not upper:
        yield ()
        return
    for v in range(upper[0] + 1):
        for rest in _box(upper[1:]):
            yield (v, *rest)


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def add_idx(a: Sequence[int], b: Sequence[int]) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def sub_idx(a: Sequence[int], b: Sequence[int]) -> MultiIndex:
    return tuple(x - y for x, y in zip(a, b))


# -- polynomials ---------------------------------------------------------------


def nonneg_poly(terms: Mapping[Sequence[int], object]) -> Poly:
    """Build a nonnegative-coefficient polynomial, dropping zero terms."""
    out: Poly = {}
    for alpha, c in terms.items():
        c = Fraction(c)
        if c < 0:
            raise ValueError(f"negative coefficient {c} at {tuple(alpha)}")
        if c:
            out[tuple(alpha)] = out.get(tuple(alpha), Fraction(0)) + c
    return out


def poly_degree(p: Mapping[MultiIndex, Fraction]) -> int:
    return max((sum(a) for a in p), default=0)


def poly_add_into(acc: Poly, p: Mapping[MultiIndex, Fraction], scale=1) -> None:
    for alpha, c in p.items():
        v = acc.get(alpha, 0) + scale * c
        if v:
            acc[alpha] = Fraction(v)
        else:
            acc.pop(alpha, None)


def poly_mul_binomial(Q: Mapping[MultiIndex, Fraction], shift: Sequence[int]) -> Poly:
    """Expand Q(z) * (z^shift - 1) exactly; the result has signed coefficients."""
    out: Poly = {}
    poly_add_into(out, {add_idx(a, shift): c for a, c in Q.items()})
    poly_add_into(out, Q, scale=-1)
    return out


def poly_eval(p: Mapping[MultiIndex, Fraction], z: Sequence[Fraction]) -> Fraction:
    return sum((c * monomial_eval(a, z) for a, c in p.items()), Fraction(0))


def monomial_eval(alpha: Sequence[int], z: Sequence[Fraction]) -> Fraction:
    """z^alpha for an integer (possibly negative) exponent vector."""
    out = Fraction(1)
    for e, zi in zip(alpha, z):
        out *= Fraction(zi) ** e
    return out


def format_monomial(alpha: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(alpha, start=1):
        if e == 1:
            parts.append(f"z{i}" if len(alpha) > 1 else "z")
        elif e:
            parts.append(f"z{i}^{e}" if len(alpha) > 1 else f"z^{e}")
    return "*".join(parts) or "1"
