"""
Brute-force h^0 of L_d(m_1, ..., m_s) over a prime field.

Lines are sampled at random over GF(p).  A degree-d form F has
multiplicity >= m along a line l iff every partial derivative of F of
order <= m - 1 vanishes on l.  Each such partial restricted to l is a
binary form of degree <= d, so it vanishes on l as soon as it vanishes at
d + 1 distinct points of l.  The condition matrix therefore has one row per
(line, point, multi-index) with ``d + 1`` points per line and
``C(m + 3, 4)`` multi-indices per point, and ``h^0 = C(d + 3, 3) - rank``.

Rank over GF(p) can only drop relative to rank over Q, so a single trial
can only overestimate h^0; the generic estimate is the minimum over seeds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from .errors import ConfigDegenerateError, DegenerateFieldError, EffconeError, PreconditionError
from .kernel import DEFAULT_PRIME, check_prime, nullspace_mod_p, rank_mod_p, rank_q

MIN_PRIME = 1000
DEFAULT_SEEDS = (0, 1, 2)

Point = tuple[int, int, int, int]


@dataclass(frozen=True)
class LineConfig:
    prime: int
    seed: int
    lines: tuple[tuple[Point, Point], ...]

    @property
    def s(self) -> int:
        return len(self.lines)

    def subconfig(self, indices: Sequence[int]) -> "LineConfig":
        """Lines picked by 1-based index."""
        return LineConfig(self.prime, self.seed, tuple(self.lines[i - 1] for i in indices))


@dataclass(frozen=True)
class InterpolationProblem:
    d: int
    mults: tuple[int, ...]
    config: LineConfig

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))
        if self.d < 0 or any(m < 0 for m in self.mults):
            raise EffconeError("degree and multiplicities must be nonnegative integers")
        if len(self.mults) != self.config.s:
            raise EffconeError(
                f"{len(self.mults)} multiplicities for {self.config.s} lines"
            )

    @property
    def n_monomials(self) -> int:
        return comb(self.d + 3, 3)


# --------------------------------------------------------------------------
# polynomial plumbing

@lru_cache(maxsize=None)
def monomials(d: int) -> np.ndarray:
    """Exponent vectors of the degree-d monomials in 4 variables, shape (N, 4)."""
    exps = []
    for combo in itertools.combinations_with_replacement(range(4), d):
        e = [0, 0, 0, 0]
        for v in combo:
            e[v] += 1
        exps.append(e)
    return np.array(exps, dtype=np.int64).reshape(-1, 4)


@lru_cache(maxsize=None)
def multi_indices(max_order: int) -> tuple[tuple[int, int, int, int], ...]:
    """All multi-indices in 4 variables of total order <= max_order."""
    out = []
    for k in range(max_order + 1):
        for combo in itertools.combinations_with_replacement(range(4), k):
            a = [0, 0, 0, 0]
            for v in combo:
                a[v] += 1
            out.append(tuple(a))
    return tuple(out)


def _falling_table(d: int, p: int) -> np.ndarray:
    """``ff[n, a] = n (n-1) ... (n-a+1) mod p`` for 0 <= a, n <= d."""
    ff = np.zeros((d + 1, d + 1), dtype=np.int64)
    for n in range(d + 1):
        acc = 1
        for a in range(n + 1):
            ff[n, a] = acc % p
            acc *= n - a
    return ff


def derivative_rows(d: int, point: Sequence[int], alphas, p: int) -> np.ndarray:
    """Row ``r`` holds d^alpha_r(x^beta) evaluated at ``point``, for every monomial beta."""
    mon = monomials(d)
    ff = _falling_table(d, p)
    powers = np.ones((4, d + 1), dtype=np.int64)
    for v in range(4):
        for k in range(1, d + 1):
            powers[v, k] = powers[v, k - 1] * (int(point[v]) % p) % p
    rows = np.zeros((len(alphas), len(mon)), dtype=np.int64)
    for r, alpha in enumerate(alphas):
        alpha = np.asarray(alpha, dtype=np.int64)
        mask = np.all(mon >= alpha, axis=1)
        if not mask.any():
            continue  # order exceeds d: the derivative vanishes identically
        sub = mon[mask]
        val = np.ones(len(sub), dtype=np.int64)
        for v in range(4):
            val = val * ff[sub[:, v], alpha[v]] % p
            val = val * powers[v, sub[:, v] - alpha[v]] % p
        rows[r, mask] = val
    return rows


def evaluate(coeffs: Sequence[int], d: int, point: Sequence[int], p: int) -> int:
    row = derivative_rows(d, point, [(0, 0, 0, 0)], p)[0]
    return int(np.dot(row, np.asarray(coeffs, dtype=np.int64) % p) % p)


def _mat_rank_p(rows, p) -> int:
    return rank_mod_p(np.array(rows, dtype=np.int64), p)


# --------------------------------------------------------------------------
# line configurations

def _random_point(rng, p) -> Point:
    return tuple(int(x) for x in rng.integers(0, p, size=4))


def _lines_generic(lines, p) -> bool:
    for P, Q in lines:
        if _mat_rank_p([P, Q], p) < 2:
            return False
    for (P1, Q1), (P2, Q2) in itertools.combinations(lines, 2):
        if _mat_rank_p([P1, Q1, P2, Q2], p) < 4:
            return False
    s = len(lines)
    cfg = LineConfig(p, 0, tuple(lines))
    if s >= 3:
        for t in itertools.combinations(range(1, s + 1), 3):
            if h0(InterpolationProblem(2, (1, 1, 1), cfg.subconfig(t))) != 1:
                return False
    if s >= 4:
        for q in itertools.combinations(range(1, s + 1), 4):
            if h0(InterpolationProblem(2, (1, 1, 1, 1), cfg.subconfig(q))) != 0:
                return False
    return True


@lru_cache(maxsize=256)
def sample_lines(s: int, p: int = DEFAULT_PRIME, seed: int = 0,
                 max_tries: int = 100) -> LineConfig:
    """s random lines over GF(p), each spanned by two random points.

    The configuration is rejected and resampled unless each line is really a
    line, the lines are pairwise skew, every three lie on exactly one
    quadric and no four lie on a common quadric.
    """
    if s < 0:
        raise EffconeError("line count must be nonnegative")
    p = check_prime(p)
    if p <= MIN_PRIME:
        raise PreconditionError(f"prime {p} is below the genericity floor {MIN_PRIME}")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        lines = tuple((_random_point(rng, p), _random_point(rng, p)) for _ in range(s))
        if _lines_generic(lines, p):
            return LineConfig(prime=p, seed=seed, lines=lines)
    raise DegenerateFieldError(f"no general configuration of {s} lines after {max_tries} tries")


def points_on_line(line: tuple[Point, Point], count: int, p: int, rng) -> list[Point]:
    """``count`` projectively distinct points P + t Q."""
    P, Q = line
    ts = rng.choice(p, size=count, replace=False)
    return [tuple((P[v] + int(t) * Q[v]) % p for v in range(4)) for t in ts]


# --------------------------------------------------------------------------
# h^0

def _point_rng(prob: InterpolationProblem):
    return np.random.default_rng([prob.config.seed, prob.d, 0x5eed])


def condition_matrix(prob: InterpolationProblem) -> np.ndarray:
    p = prob.config.prime
    rng = _point_rng(prob)
    blocks = []
    for line, m in zip(prob.config.lines, prob.mults):
        if m == 0:
            continue
        alphas = multi_indices(m - 1)
        for x in points_on_line(line, prob.d + 1, p, rng):
            blocks.append(derivative_rows(prob.d, x, alphas, p))
    if not blocks:
        return np.zeros((0, prob.n_monomials), dtype=np.int64)
    return np.vstack(blocks)


def condition_matrix_exact(prob: InterpolationProblem) -> list[list[int]]:
    """The same conditions with the line data lifted to integers (no reduction)."""
    mon = [tuple(int(e) for e in row) for row in monomials(prob.d)]
    rng = _point_rng(prob)
    rows = []
    p = prob.config.prime
    for line, m in zip(prob.config.lines, prob.mults):
        if m == 0:
            continue
        P, Q = line
        ts = rng.choice(p, size=prob.d + 1, replace=False)
        for t in ts:
            x = [P[v] + int(t) * Q[v] for v in range(4)]
            for alpha in multi_indices(m - 1):
                row = []
                for beta in mon:
                    if any(b < a for a, b in zip(alpha, beta)):
                        row.append(0)
                        continue
                    val = 1
                    for v in range(4):
                        for j in range(alpha[v]):
                            val *= beta[v] - j
                        val *= x[v] ** (beta[v] - alpha[v])
                    row.append(val)
                rows.append(row)
    return rows


def h0(prob: InterpolationProblem, exact: bool = False) -> int:
    """Dimension of the space of degree-d forms with the prescribed multiplicities.

    ``exact=True`` computes the rank over Q of the integer lift instead of
    over GF(p); it is only practical for small instances.
    """
    if exact:
        rows = condition_matrix_exact(prob)
        return prob.n_monomials - (rank_q(rows) if rows else 0)
    A = condition_matrix(prob)
    return prob.n_monomials - (rank_mod_p(A, prob.config.prime) if len(A) else 0)


def solution_basis(prob: InterpolationProblem) -> list[list[int]]:
    """Coefficient vectors (over ``monomials(d)``) spanning the solution space."""
    A = condition_matrix(prob)
    p = prob.config.prime
    if len(A) == 0:
        n = prob.n_monomials
        return [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    _, basis = nullspace_mod_p(A, p)
    return basis


@dataclass(frozen=True)
class OracleResult:
    d: int
    mults: tuple[int, ...]
    prime: int
    seeds: tuple[int, ...]
    h0_per_trial: tuple[int, ...]

    @property
    def h0_generic_estimate(self) -> int:
        return min(self.h0_per_trial)

    def to_dict(self) -> dict:
        return {"d": self.d, "mults": list(self.mults), "prime": self.prime,
                "seeds": list(self.seeds), "h0_per_trial": list(self.h0_per_trial),
                "h0_generic_estimate": self.h0_generic_estimate}


def h0_generic(d: int, mults: Sequence[int], prime: int = DEFAULT_PRIME,
               seeds: Sequence[int] = DEFAULT_SEEDS) -> OracleResult:
    """h^0 over one random configuration per seed; the estimate is the minimum."""
    seeds = tuple(int(x) for x in seeds)
    if not seeds:
        raise EffconeError("need at least one seed")
    mults = tuple(int(m) for m in mults)
    trials = []
    for seed in seeds:
        cfg = sample_lines(len(mults), prime, seed)
        trials.append(h0(InterpolationProblem(d, mults, cfg)))
    return OracleResult(d=d, mults=mults, prime=prime, seeds=seeds,
                        h0_per_trial=tuple(trials))


# --------------------------------------------------------------------------
# quadric containment

def _normalise(x: Sequence[int], p: int) -> Point:
    lead = next(v for v in x if v % p)
    inv = pow(lead, p - 2, p)
    return tuple(v * inv % p for v in x)


def quadric_points(q: Sequence[int], line: tuple[Point, Point], count: int,
                   p: int, rng, max_tries: int = 1000) -> list[Point]:
    """Random points on the quadric ``q`` (coefficients over ``monomials(2)``).

    ``line`` lies on the quadric.  A point A on it and a random B give
    q(A + tB) = t (grad q(A) . B) + t^2 q(B), whose nonzero root is a new point.
    """
    out: dict[Point, None] = {}
    unit = [tuple(int(i == v) for i in range(4)) for v in range(4)]
    for _ in range(max_tries):
        if len(out) == count:
            break
        (A,) = points_on_line(line, 1, p, rng)
        B = _random_point(rng, p)
        qB = evaluate(q, 2, B, p)
        grad = derivative_rows(2, A, unit, p) @ (np.asarray(q, dtype=np.int64) % p) % p
        beta = int(np.dot(grad, B) % p)
        if qB == 0 or beta == 0:
            continue
        t = (-beta) * pow(qB, p - 2, p) % p
        X = tuple((A[v] + t * B[v]) % p for v in range(4))
        if not any(X):
            continue
        if evaluate(q, 2, X, p) != 0:
            raise AssertionError("sampled point is not on the quadric")
        out[_normalise(X, p)] = None
    if len(out) < count:
        raise DegenerateFieldError(f"found only {len(out)} of {count} points on the quadric")
    return list(out)


def containment_check(prob: InterpolationProblem, triple: Sequence[int],
                      samples: int = 20, seed: int | None = None) -> bool:
    """Does every member of the linear system vanish on the quadric through ``triple``?"""
    t = tuple(sorted(int(i) for i in triple))
    if len(set(t)) != 3 or not all(1 <= i <= prob.config.s for i in t):
        raise EffconeError(f"invalid triple {triple} for {prob.config.s} lines")
    if sum(prob.mults[i - 1] for i in t) - prob.d <= 0:
        raise PreconditionError(f"triple {t} has no positive excess for degree {prob.d}")
    basis = solution_basis(prob)
    if not basis:
        raise PreconditionError("the linear system is empty")
    p = prob.config.prime
    quad = solution_basis(InterpolationProblem(2, (1, 1, 1), prob.config.subconfig(t)))
    if len(quad) != 1:
        raise ConfigDegenerateError(
            f"lines {t} lie on {len(quad)} independent quadrics instead of one"
        )
    rng = np.random.default_rng([prob.config.seed if seed is None else seed, *t, 0xC0DE])
    points = quadric_points(quad[0], prob.config.lines[t[0] - 1], samples, p, rng)
    return all(evaluate(f, prob.d, x, p) == 0 for f in basis for x in points)
