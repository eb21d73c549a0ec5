"""
Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction`.  Matrices live either over Q
(entries are Fractions) or over a prime field GF(p) (entries are ints in
``[0, p)``).  The prime-field elimination is vectorised with numpy int64,
which is exact as long as ``p < 2**31``.

The conic feasibility solver is a phase-1 simplex with Bland's rule run on
an integer tableau (fraction-free "integer pivoting"), so every number it
touches is an exact integer minor of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, EffconeError, InvalidModulusError

DEFAULT_PRIME = 65521
_MAX_PRIME = 2**31


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: nothing in this package is allowed to round.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def fraction_str(x: Fraction) -> str:
    return str(Fraction(x))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % f for f in range(3, isqrt(n) + 1, 2))


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise InvalidModulusError(f"modulus {p} is not prime")
    if p >= _MAX_PRIME:
        raise InvalidModulusError(f"modulus {p} too large for int64 elimination")
    return p


def primitive(v: Iterable) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray.

    The zero vector is returned unchanged (as ints).
    """
    v = [as_fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class MatrixQ:
    """Dense matrix over Q, or over GF(p) when ``prime`` is set."""

    rows: int
    cols: int
    entries: tuple
    prime: int | None = None

    def __post_init__(self):
        if self.rows * self.cols != len(self.entries):
            raise DimensionMismatchError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], prime: int | None = None) -> "MatrixQ":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatchError("ragged rows")
        if prime is None:
            entries = tuple(as_fraction(x) for r in rows for x in r)
        else:
            p = check_prime(prime)
            entries = tuple(int(x) % p for r in rows for x in r)
        return cls(len(rows), ncols, entries, prime)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_numpy(self) -> np.ndarray:
        if self.prime is None:
            raise TypeError("only prime-field matrices convert to int64 arrays")
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatchError("vector length does not match column count")
        out = [dot(self.row(i), v) for i in range(self.rows)]
        if self.prime is not None:
            out = [int(x) % self.prime for x in out]
        return tuple(out)


# --------------------------------------------------------------------------
# Elimination over Q

def rref_q(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; pivots chosen top-down, left-to-right."""
    A = [[as_fraction(x) for x in r] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank_q(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref_q(rows)[1])


# --------------------------------------------------------------------------
# Elimination over GF(p)

def rref_mod_p(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an int64 array over GF(p)."""
    A = np.array(A, dtype=np.int64) % p
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        f = A[:, c].copy()
        f[r] = 0
        rows = np.flatnonzero(f)
        if rows.size:
            A[rows] = (A[rows] - np.outer(f[rows], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod_p(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return len(rref_mod_p(A, p)[1])


def _nullspace_from_rref(R, pivots: list[int], ncols: int, neg) -> list[list]:
    basis = []
    pivot_set = set(pivots)
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = neg(R[i][f])
        basis.append(v)
    return basis


def nullspace_mod_p(A: np.ndarray, p: int) -> tuple[int, list[list[int]]]:
    A = np.asarray(A, dtype=np.int64)
    R, pivots = rref_mod_p(A, p)
    basis = _nullspace_from_rref(R, pivots, A.shape[1], lambda x: int(-x) % p)
    return len(pivots), basis


def rank_nullspace(M: MatrixQ) -> tuple[int, list[tuple]]:
    """Rank and a nullspace basis of ``M`` (over its field).

    Basis vectors are indexed by the free columns of the reduced row echelon
    form, so the result does not depend on anything but ``M``.
    """
    if M.rows == 0 or M.cols == 0:
        raise EffconeError("rank_nullspace needs a nonempty matrix")
    if M.prime is not None:
        p = check_prime(M.prime)
        rank, basis = nullspace_mod_p(M.to_numpy(), p)
        return rank, [tuple(v) for v in basis]
    R, pivots = rref_q(M.to_rows())
    basis = _nullspace_from_rref(R, pivots, M.cols, lambda x: -x)
    return len(pivots), [tuple(Fraction(x) for x in v) for v in basis]


# --------------------------------------------------------------------------
# Conic feasibility

@dataclass(frozen=True)
class ConicCertificate:
    """Outcome of :func:`nonneg_combination`.

    Exactly one of ``coefficients`` (one per generator, all >= 0) and
    ``separator`` (integer functional, >= 0 on generators, < 0 on target)
    is set.
    """

    target: tuple[Fraction, ...]
    coefficients: tuple[Fraction, ...] | None = None
    separator: tuple[int, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.coefficients is not None


def _integer_rows(target, generators) -> tuple[list[list[int]], list[int], list[int]]:
    """Per-coordinate equations sum_g c_g g_i = t_i, scaled to integers.

    Returns (G rows, rhs, row scale factors).
    """
    n = len(target)
    if all(x.denominator == 1 for x in target) and all(
            x.denominator == 1 for g in generators for x in g):
        G = [[int(g[i]) for g in generators] for i in range(n)]
        return G, [int(x) for x in target], [1] * n
    G, b, scale = [], [], []
    for i in range(n):
        row = [g[i] for g in generators] + [target[i]]
        den = reduce(lcm, (x.denominator for x in row), 1)
        ints = [int(x * den) for x in row]
        G.append(ints[:-1])
        b.append(ints[-1])
        scale.append(den)
    return G, b, scale


def nonneg_combination(target: Sequence, generators: Sequence[Sequence]) -> ConicCertificate:
    """Write ``target`` as a nonnegative combination of ``generators`` or
    return a Farkas separating functional.

    Phase-1 simplex: minimise the sum of artificial variables in
    ``G c + a = b`` (rows sign-flipped so ``b >= 0``), Bland's lowest-index
    rule for entering and leaving variables.
    """
    t = tuple(as_fraction(x) for x in target)
    gens = [tuple(as_fraction(x) for x in g) for g in generators]
    n = len(t)
    for g in gens:
        if len(g) != n:
            raise DimensionMismatchError(
                f"generator of length {len(g)} against target of length {n}"
            )
    k = len(gens)
    G, b, scale = _integer_rows(t, gens)
    sign = [1 if bi >= 0 else -1 for bi in b]

    # tableau columns: k generator columns, n artificial columns, rhs
    width = k + n + 1
    T = []
    for i in range(n):
        row = [sign[i] * x for x in G[i]] + [0] * n + [sign[i] * b[i]]
        row[k + i] = 1
        T.append(row)
    basis = [k + i for i in range(n)]
    D = 1  # common denominator of the tableau

    def is_artificial(j):
        return j >= k

    while True:
        # reduced costs (times D) under phase-1 costs: D*c_j - sum of artificial rows
        art_rows = [T[i] for i in range(n) if is_artificial(basis[i])]
        in_basis = set(basis)
        entering = None
        for j in range(k + n):
            if j in in_basis:
                continue
            rc = (D if j >= k else 0) - sum(row[j] for row in art_rows)
            if rc < 0:
                entering = j
                break
        if entering is None:
            break
        leave = None
        for i in range(n):
            a = T[i][entering]
            if a <= 0:
                continue
            if leave is None:
                leave = i
                continue
            # compare T[i][rhs]/a with T[leave][rhs]/T[leave][entering]
            lhs = T[i][-1] * T[leave][entering]
            rhs = T[leave][-1] * a
            if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                leave = i
        if leave is None:  # cannot happen: phase-1 objective is bounded below
            raise AssertionError("unbounded phase-1 problem")
        r, c = leave, entering
        piv = T[r][c]
        prow = T[r]
        for i in range(n):
            if i == r:
                continue
            f = T[i][c]
            row = T[i]
            T[i] = [(x * piv - f * y) // D for x, y in zip(row, prow)]
        D = piv
        basis[r] = c

    infeasibility = sum(T[i][-1] for i in range(n) if is_artificial(basis[i]))
    if infeasibility == 0:
        coeffs = [Fraction(0)] * k
        for i in range(n):
            if basis[i] < k:
                coeffs[basis[i]] = Fraction(T[i][-1], D)
        return ConicCertificate(target=t, coefficients=tuple(coeffs))

    # dual values y_j = 1 - reduced cost of artificial j; scaled by D
    art_rows = [i for i in range(n) if is_artificial(basis[i])]
    y = [sum(T[i][k + j] for i in art_rows) for j in range(n)]
    # undo row sign flips and integer row scaling
    phi = [Fraction(-sign[j] * y[j] * scale[j]) for j in range(n)]
    return ConicCertificate(target=t, separator=primitive(phi))


def verify_combination(target: Sequence, generators: Sequence[Sequence],
                       coefficients: Sequence) -> bool:
    """Exact re-substitution check for a nonnegative combination."""
    if len(coefficients) != len(generators):
        return False
    if any(as_fraction(c) < 0 for c in coefficients):
        return False
    n = len(target)
    total = [Fraction(0)] * n
    for c, g in zip(coefficients, generators):
        if len(g) != n:
            return False
        c = as_fraction(c)
        for i in range(n):
            total[i] += c * as_fraction(g[i])
    return total == [as_fraction(x) for x in target]


def verify_separator(target: Sequence, generators: Sequence[Sequence],
                     separator: Sequence) -> bool:
    if any(dot(separator, [as_fraction(x) for x in g]) < 0 for g in generators):
        return False
    return dot(separator, [as_fraction(x) for x in target]) < 0
