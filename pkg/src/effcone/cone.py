"""
Exact rational polyhedral cones.

A cone is held by integer ray generators (V-representation) and/or integer
inequality normals ``phi`` meaning ``phi . x >= 0`` (H-representation).
Conversion in either direction is the incremental double description
method; V -> H runs the same routine on the dual cone.

Canonical form: every vector primitive (gcd 1), duplicates removed, list
sorted lexicographically.  Two cones are equal iff their canonical forms
are equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import ConeError, DimensionMismatchError, RayNotInConeError
from .kernel import as_fraction, dot, primitive, rank_q, rref_q

Vector = tuple[int, ...]


def canonical(vectors) -> tuple[Vector, ...]:
    """Primitive, deduplicated, lexicographically sorted; zero vectors dropped."""
    out = set()
    for v in vectors:
        p = primitive(v)
        if any(p):
            out.add(p)
    return tuple(sorted(out))


@dataclass(frozen=True)
class ConeDesc:
    dim: int
    rays: tuple[Vector, ...] = ()
    inequalities: tuple[Vector, ...] = ()
    rays_known: bool = False
    inequalities_known: bool = False

    @classmethod
    def from_rays(cls, rays, dim: int | None = None) -> "ConeDesc":
        rays = [tuple(r) for r in rays]
        dim = _infer_dim(rays, dim)
        return cls(dim=dim, rays=canonical(rays), rays_known=True)

    @classmethod
    def from_inequalities(cls, normals, dim: int | None = None) -> "ConeDesc":
        normals = [tuple(r) for r in normals]
        dim = _infer_dim(normals, dim)
        return cls(dim=dim, inequalities=canonical(normals), inequalities_known=True)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "rays": [list(r) for r in self.rays],
                "inequalities": [list(f) for f in self.inequalities]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "ConeDesc":
        rays = [tuple(r) for r in data.get("rays", [])]
        ineqs = [tuple(f) for f in data.get("inequalities", [])]
        dim = int(data["dim"])
        for v in rays + ineqs:
            if len(v) != dim:
                raise DimensionMismatchError(f"vector {v} is not of dimension {dim}")
        return cls(dim=dim, rays=canonical(rays), inequalities=canonical(ineqs),
                   rays_known=bool(rays), inequalities_known=bool(ineqs))

    @classmethod
    def from_json(cls, text: str) -> "ConeDesc":
        return cls.from_dict(json.loads(text))

    def same_cone(self, other: "ConeDesc") -> bool:
        a, b = dd_convert(self), dd_convert(other)
        return a.dim == b.dim and a.rays == b.rays and a.inequalities == b.inequalities


def _infer_dim(vectors, dim):
    if dim is None:
        if not vectors:
            raise ConeError("cannot infer the dimension of an empty vector list")
        dim = len(vectors[0])
    for v in vectors:
        if len(v) != dim:
            raise DimensionMismatchError(f"vector {v} is not of dimension {dim}")
    return dim


# --------------------------------------------------------------------------
# double description

def extreme_rays(normals: Sequence[Sequence], dim: int) -> tuple[Vector, ...]:
    """Extreme rays of the pointed cone ``{x : phi . x >= 0 for phi in normals}``.

    Constraints are inserted in input order, starting from the simplicial
    cone cut out by the first ``dim`` linearly independent ones.  Two rays
    are combined only if they are adjacent, decided by the rank of the
    constraints tight at both (``dim - 2``).
    """
    if dim <= 0:
        raise ConeError("zero-dimensional cone")
    rows = [primitive(r) for r in normals]
    rows = [r for r in rows if any(r)]
    seen, uniq = set(), []
    for r in rows:
        if r not in seen:
            seen.add(r)
            uniq.append(r)
    rows = uniq

    basis: list[int] = []
    for i, r in enumerate(rows):
        if rank_q([rows[j] for j in basis] + [r]) > len(basis):
            basis.append(i)
        if len(basis) == dim:
            break
    if len(basis) < dim:
        raise ConeError("inequalities do not cut out a pointed cone")

    # rays of the simplicial start cone: columns of the inverse of the basis rows
    B = [rows[i] for i in basis]
    aug = [list(B[i]) + [1 if j == i else 0 for j in range(dim)] for i in range(dim)]
    R, _ = rref_q(aug)
    inv = [row[dim:] for row in R]
    rays = [primitive([inv[r][c] for r in range(dim)]) for c in range(dim)]

    processed = list(basis)

    def tight(ray):
        return frozenset(i for i in processed if dot(rows[i], ray) == 0)

    ray_tight = [tight(r) for r in rays]

    for idx in range(len(rows)):
        if idx in basis:
            continue
        a = rows[idx]
        vals = [dot(a, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos + zero]
        new_tight = [ray_tight[k] for k in pos + zero]
        for p in pos:
            for q in neg:
                common = ray_tight[p] & ray_tight[q]
                if len(common) < dim - 2:
                    continue
                if rank_q([rows[i] for i in common]) != dim - 2:
                    continue
                v = [vals[p] * y - vals[q] * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(primitive(v))
                new_tight.append(common)
        processed.append(idx)
        rays = new_rays
        ray_tight = [frozenset(t | ({idx} if dot(a, r) == 0 else set()))
                     for r, t in zip(rays, new_tight)]

    return canonical(rays)


def _check_nonempty(c: ConeDesc) -> None:
    if c.dim <= 0:
        raise ConeError("zero-dimensional cone")


def dd_convert(c: ConeDesc) -> ConeDesc:
    """Return ``c`` with both representations, each irredundant.

    The ray list is authoritative when flagged, otherwise the inequality
    list.  The cone must be pointed and full-dimensional.
    """
    _check_nonempty(c)
    if c.rays_known:
        if not c.rays:
            raise ConeError("the zero cone has no facet description")
        if rank_q(c.rays) < c.dim:
            raise ConeError("ray generators do not span the ambient space")
        facets = extreme_rays(c.rays, c.dim)
        rays = extreme_rays(facets, c.dim)
    elif c.inequalities_known:
        rays = extreme_rays(c.inequalities, c.dim)
        if rank_q(rays) < c.dim:
            raise ConeError("inequalities cut out a cone that is not full-dimensional")
        facets = extreme_rays(rays, c.dim)
    else:
        raise ConeError("cone has neither rays nor inequalities")
    return ConeDesc(dim=c.dim, rays=rays, inequalities=facets,
                    rays_known=True, inequalities_known=True)


def facets_of(c: ConeDesc) -> tuple[Vector, ...]:
    if c.inequalities_known:
        return c.inequalities
    return dd_convert(c).inequalities


def member(c: ConeDesc, x: Sequence) -> bool:
    """True iff every inequality of ``c`` holds at ``x``."""
    if len(x) != c.dim:
        raise DimensionMismatchError(f"point of length {len(x)} in a cone of dimension {c.dim}")
    x = [as_fraction(v) for v in x]
    return all(dot(phi, x) >= 0 for phi in facets_of(c))


def extremality_check(c: ConeDesc, ray: Sequence, claimed_facets: Sequence[Sequence]) -> bool:
    """Does ``claimed_facets`` witness that ``ray`` spans an extremal ray of ``c``?

    True iff the ray lies on every claimed hyperplane and those hyperplanes
    alone pin down a one-dimensional space.
    """
    if not member(c, ray):
        raise RayNotInConeError(f"{tuple(ray)} is not in the cone")
    ray = [as_fraction(v) for v in ray]
    if not any(ray):
        return False
    claimed = [tuple(phi) for phi in claimed_facets]
    for phi in claimed:
        if len(phi) != c.dim:
            raise DimensionMismatchError("claimed facet has the wrong dimension")
        if dot(phi, ray) != 0:
            return False
    if not claimed:
        return c.dim == 1
    return rank_q(claimed) == c.dim - 1


def tight_inequalities(normals: Sequence[Sequence], x: Sequence) -> list[int]:
    """Indices of the normals vanishing at ``x``."""
    x = [as_fraction(v) for v in x]
    return [i for i, phi in enumerate(normals) if dot(phi, x) == 0]
