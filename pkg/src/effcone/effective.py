"""
Effective cones of X_s for s <= 5.

Coordinates are ``(d, m_1, ..., m_s)``.  The inequality lists are kept
verbatim, including members that are redundant, and each carries a label
``(family)[indices]`` such as ``(3.4)[1,2]``.  The families are

    s <= 3   (1.3) 0 <= d, (2.3) m_i <= d, (3.3) m_i + m_j <= d
    s = 4    (1.4), (2.4), (3.4) as above, (5.4) sum(m) + m_i <= 2d,
             (4.4) 2 sum(m) <= 3d
    s = 5    (1.5), (2.5), (3.5) as above, (4.5) sum(m) + m_i - m_j <= 2d,
             (5.5) sum(m) + m_i <= 2d, (6.5) 2 sum(m) <= 3d

The lists describe effective classes after the fixed exceptional part has
been removed: when ``m_i < 0`` the divisor E_i is a fixed component and
``D`` is effective iff ``D + m_i E_i`` is.  :func:`is_effective` applies
that reduction before evaluating the list.  For s = 5 this matters: the
list alone, read over all sign patterns, cuts out a strictly larger cone
(see :func:`facet_audit`).

Extremal rays: E_i, H - E_i and the quadrics Q_ijk = 2H - E_i - E_j - E_k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .cone import ConeDesc, canonical, dd_convert, extremality_check
from .divisor import DivisorClass, pencil_class, quadric_class
from .errors import EffconeError, NotEffectiveError, UnsupportedError
from .kernel import as_fraction, dot, fraction_str, nonneg_combination, primitive

MAX_LINES = 5


def _require_known(s: int) -> None:
    if s < 0:
        raise EffconeError("line count must be nonnegative")
    if s > MAX_LINES:
        raise UnsupportedError(
            f"unsupported: effective cone known only for s <= {MAX_LINES} (got s={s})"
        )


# --------------------------------------------------------------------------
# inequalities

@dataclass(frozen=True)
class NamedInequality:
    """``lhs . x <= rhs . x`` with both sides linear in ``(d, m_1..m_s)``."""

    family: str
    indices: tuple[int, ...]
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    text: str

    @property
    def label(self) -> str:
        if not self.indices:
            return self.family
        return f"{self.family}[{','.join(map(str, self.indices))}]"

    @property
    def normal(self) -> tuple[int, ...]:
        """``phi`` with ``phi . x >= 0`` equivalent to the inequality."""
        return tuple(r - l for l, r in zip(self.lhs, self.rhs))

    def sides(self, D: DivisorClass) -> tuple[Fraction, Fraction]:
        x = D.vector()
        return dot(self.lhs, x), dot(self.rhs, x)

    def slack(self, D: DivisorClass) -> Fraction:
        return dot(self.normal, D.vector())

    def holds(self, D: DivisorClass) -> bool:
        return self.slack(D) >= 0


def _unit(s, pairs) -> tuple[int, ...]:
    v = [0] * (s + 1)
    for pos, c in pairs:
        v[pos] += c
    return tuple(v)


def _sum_text(s):
    return f"(m1+..+m{s})"


@lru_cache(maxsize=None)
def inequality_list(s: int) -> tuple[NamedInequality, ...]:
    """The inequality list for X_s in its published order."""
    _require_known(s)
    tag = "3" if s <= 3 else str(s)
    lines = range(1, s + 1)
    d = [(0, 1)]
    all_m = [(i, 1) for i in lines]
    out = [NamedInequality(f"(1.{tag})", (), _unit(s, []), _unit(s, d), "0 <= d")]
    for i in lines:
        out.append(NamedInequality(f"(2.{tag})", (i,), _unit(s, [(i, 1)]), _unit(s, d),
                                   f"m{i} <= d"))
    for i, j in itertools.combinations(lines, 2):
        out.append(NamedInequality(f"(3.{tag})", (i, j), _unit(s, [(i, 1), (j, 1)]),
                                   _unit(s, d), f"m{i} + m{j} <= d"))
    if s == 4:
        for i in lines:
            out.append(NamedInequality("(5.4)", (i,), _unit(s, all_m + [(i, 1)]),
                                       _unit(s, [(0, 2)]), f"{_sum_text(s)} + m{i} <= 2d"))
        out.append(NamedInequality("(4.4)", (), _unit(s, [(i, 2) for i in lines]),
                                   _unit(s, [(0, 3)]), f"2{_sum_text(s)} <= 3d"))
    elif s == 5:
        for i, j in itertools.permutations(lines, 2):
            out.append(NamedInequality("(4.5)", (i, j), _unit(s, all_m + [(i, 1), (j, -1)]),
                                       _unit(s, [(0, 2)]),
                                       f"{_sum_text(s)} + m{i} - m{j} <= 2d"))
        for i in lines:
            out.append(NamedInequality("(5.5)", (i,), _unit(s, all_m + [(i, 1)]),
                                       _unit(s, [(0, 2)]), f"{_sum_text(s)} + m{i} <= 2d"))
        out.append(NamedInequality("(6.5)", (), _unit(s, [(i, 2) for i in lines]),
                                   _unit(s, [(0, 3)]), f"2{_sum_text(s)} <= 3d"))
    return tuple(out)


def inequality_by_label(s: int, label: str) -> NamedInequality:
    for ineq in inequality_list(s):
        if ineq.label == label:
            return ineq
    raise EffconeError(f"no inequality labelled {label!r} for s={s}")


# --------------------------------------------------------------------------
# generators

@dataclass(frozen=True, order=True)
class GeneratorLabel:
    kind: str  # "H", "E", "H-E" or "Q"
    indices: tuple[int, ...] = ()

    @property
    def name(self) -> str:
        if self.kind == "H":
            return "H"
        return f"{self.kind}_{''.join(map(str, self.indices))}"

    def divisor(self, s: int) -> DivisorClass:
        if self.kind == "H":
            return DivisorClass.hyperplane(s)
        if self.kind == "E":
            return DivisorClass.exceptional(self.indices[0], s)
        if self.kind == "H-E":
            return pencil_class(self.indices[0], s)
        if self.kind == "Q":
            return quadric_class(self.indices, s)
        raise EffconeError(f"unknown generator kind {self.kind!r}")

    @classmethod
    def parse(cls, name: str) -> "GeneratorLabel":
        if name == "H":
            return cls("H")
        kind, _, digits = name.partition("_")
        if kind not in ("E", "H-E", "Q") or not digits.isdigit():
            raise EffconeError(f"cannot parse generator name {name!r}")
        idx = tuple(int(c) for c in digits)
        expected = 3 if kind == "Q" else 1
        if len(idx) != expected or len(set(idx)) != len(idx):
            raise EffconeError(f"malformed generator name {name!r}")
        return cls(kind, idx)


@lru_cache(maxsize=None)
def ray_list(s: int) -> tuple[tuple[GeneratorLabel, tuple[int, ...]], ...]:
    _require_known(s)
    if s == 0:
        return ((GeneratorLabel("H"), (1,)),)
    lines = range(1, s + 1)
    labels = [GeneratorLabel("E", (i,)) for i in lines]
    labels += [GeneratorLabel("H-E", (i,)) for i in lines]
    labels += [GeneratorLabel("Q", t) for t in itertools.combinations(lines, 3)]
    return tuple((g, tuple(int(x) for x in g.divisor(s).vector())) for g in labels)


def inequality_cone(s: int) -> ConeDesc:
    return ConeDesc.from_inequalities([q.normal for q in inequality_list(s)], dim=s + 1)


def ray_cone(s: int) -> ConeDesc:
    return ConeDesc.from_rays([v for _, v in ray_list(s)], dim=s + 1)


# --------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class Certificate:
    """Either a nonnegative combination of generators equal to ``target``
    or the inequality that ``target`` (with its fixed exceptional part
    removed) violates."""

    target: DivisorClass
    terms: tuple[tuple[GeneratorLabel, Fraction], ...] = ()
    violated: NamedInequality | None = None

    @property
    def effective(self) -> bool:
        return self.violated is None

    def total(self) -> DivisorClass:
        s = self.target.s
        acc = DivisorClass(0, [0] * s)
        for g, c in self.terms:
            acc = acc + c * g.divisor(s)
        return acc

    def to_dict(self) -> dict:
        return {
            "target": self.target.to_dict(),
            "terms": [{"generator": g.name, "coeff": fraction_str(c)} for g, c in self.terms],
            "violated": None if self.violated is None else self.violated.label,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        target = DivisorClass.from_dict(data["target"])
        terms = tuple((GeneratorLabel.parse(t["generator"]), as_fraction(t["coeff"]))
                      for t in data.get("terms", []))
        violated = data.get("violated")
        if violated is not None:
            violated = inequality_by_label(target.s, violated)
        return cls(target=target, terms=terms, violated=violated)

    def describe(self) -> str:
        if self.violated is not None:
            lhs, rhs = self.violated.sides(fixed_part_removed(self.target))
            return (f"NOT EFFECTIVE: violates {self.violated.text} "
                    f"({fraction_str(lhs)} > {fraction_str(rhs)})  [{self.violated.label}]")
        if not self.terms:
            return "EFFECTIVE: 0"
        body = " + ".join(f"{fraction_str(c)}*({g.name})" for g, c in self.terms)
        return f"EFFECTIVE: {self.target} = {body}"


def fixed_part_removed(D: DivisorClass) -> DivisorClass:
    """Clamp negative multiplicities to zero (drop the fixed E_i components)."""
    return DivisorClass(D.d, [max(m, 0) for m in D.mults])


def _terms(pairs) -> tuple[tuple[GeneratorLabel, Fraction], ...]:
    merged: dict[GeneratorLabel, Fraction] = {}
    for g, c in pairs:
        merged[g] = merged.get(g, Fraction(0)) + as_fraction(c)
    return tuple((g, c) for g, c in sorted(merged.items()) if c != 0)


def worst_violation(D: DivisorClass) -> NamedInequality | None:
    """The most violated inequality at the reduced class, or None.

    Ties go to the earlier entry of the list.
    """
    reduced = fixed_part_removed(D).vector()
    # positive rescaling to integers keeps signs and the ordering of slacks
    den = lcm(*(x.denominator for x in reduced))
    x = [int(v * den) for v in reduced]
    worst, worst_slack = None, 0
    for ineq in inequality_list(D.s):
        sl = dot(ineq.normal, x)
        if sl < worst_slack:
            worst, worst_slack = ineq, sl
    return worst


def is_effective(D: DivisorClass) -> tuple[bool, Certificate]:
    """Decide effectivity of ``D`` by the inequality list.

    A positive answer comes with an exact nonnegative combination of the
    extremal rays found by conic feasibility; a negative one names the
    violated inequality.
    """
    _require_known(D.s)
    bad = worst_violation(D)
    if bad is not None:
        return False, Certificate(target=D, violated=bad)
    rays = ray_list(D.s)
    sol = nonneg_combination(D.vector(), [v for _, v in rays])
    if not sol.feasible:
        raise AssertionError(f"{D} satisfies every inequality but is outside the ray cone")
    cert = Certificate(target=D, terms=_terms(zip((g for g, _ in rays), sol.coefficients)))
    return True, cert


def verify_certificate(cert: Certificate) -> bool:
    """Exact check of a certificate; never raises."""
    try:
        s = cert.target.s
        if cert.violated is not None:
            if cert.terms:
                return False
            if cert.violated not in inequality_list(s):
                return False
            return cert.violated.slack(fixed_part_removed(cert.target)) < 0
        for g, c in cert.terms:
            if c < 0:
                return False
            if any(not 1 <= i <= s for i in g.indices):
                return False
        return cert.total() == cert.target
    except (EffconeError, TypeError, ValueError):
        return False


# --------------------------------------------------------------------------
# constructive recipes for s <= 4

def _E(i):
    return GeneratorLabel("E", (i,))


def _HE(i):
    return GeneratorLabel("H-E", (i,))


def _Q(*t):
    return GeneratorLabel("Q", tuple(sorted(t)))


def _recipe_nonneg(d, m, lines) -> list[tuple[GeneratorLabel, Fraction]]:
    """Decompose a class with nonnegative multiplicities on <= 3 lines.

    ``lines`` are the line indices the entries of ``m`` refer to.
    """
    k = len(lines)
    if k == 0:
        # d H, with H = (H - E_1) + E_1 unavailable when there are no lines
        return [(GeneratorLabel("H"), d)]
    if k == 1:
        (a,), (m1,) = lines, m
        return [(_HE(a), d), (_E(a), d - m1)]
    if k == 2:
        (a, b), (m1, m2) = lines, m
        return [(_HE(a), d - m2), (_HE(b), m2), (_E(a), d - m1 - m2)]
    (a, b, c), (m1, m2, m3) = lines, m
    excess = m1 + m2 + m3 - d
    if excess <= 0:
        return [(_E(a), d - m1 - m2 - m3), (_HE(a), d - m2 - m3),
                (_HE(b), m2), (_HE(c), m3)]
    return [(_Q(a, b, c), excess), (_HE(a), d - m2 - m3),
            (_HE(b), d - m1 - m3), (_HE(c), d - m1 - m2)]


def decompose_paper_recipe(D: DivisorClass) -> Certificate:
    """Constructive decomposition following the case analysis for s <= 4.

    Negative multiplicities become E_i terms.  For s = 4 every quadric
    whose triple excess ``m_i + m_j + m_k - d`` is positive is split off at
    that excess (two distinct triples share two lines, and splitting one
    off leaves the other's excess unchanged), then ``m_4 (H - E_4)`` is
    peeled and the remaining s = 3 class is handled directly.
    """
    s = D.s
    if s > 4:
        raise UnsupportedError(f"recipe decomposition covers s <= 4 only (got s={s})")
    _require_known(s)
    ok, _ = is_effective(D)
    if not ok:
        raise NotEffectiveError(f"{D} is not effective")

    terms: list[tuple[GeneratorLabel, Fraction]] = []
    for i, m in enumerate(D.mults, start=1):
        if m < 0:
            terms.append((_E(i), -m))
    R = fixed_part_removed(D)
    d, m = R.d, list(R.mults)

    if s == 4:
        excesses = {t: sum(m[i - 1] for i in t) - d
                    for t in itertools.combinations(range(1, 5), 3)}
        for t, k in excesses.items():
            if k > 0:
                terms.append((_Q(*t), k))
                d -= 2 * k
                for i in t:
                    m[i - 1] -= k
        terms.append((_HE(4), m[3]))
        terms += _recipe_nonneg(d - m[3], m[:3], (1, 2, 3))
    else:
        terms += _recipe_nonneg(d, m, tuple(range(1, s + 1)))

    cert = Certificate(target=D, terms=_terms(terms))
    if any(c < 0 for _, c in cert.terms) or not verify_certificate(cert):
        raise AssertionError(f"recipe produced an invalid decomposition of {D}")
    return cert


# --------------------------------------------------------------------------
# facet / ray incidences

def _listed_hyperplanes(s: int, g: GeneratorLabel) -> list[str] | None:
    """Hyperplane sets written out for each ray when s = 2, 3, 4."""
    lines = list(range(1, s + 1))
    tag = "3" if s <= 3 else "4"
    (i1,) = g.indices if g.kind in ("E", "H-E") else (None,)
    if s == 2:
        other = [i for i in lines if i != i1]
        if g.kind == "E":
            return ["(1.3)", f"(2.3)[{other[0]}]"]
        if g.kind == "H-E":
            return [f"(2.3)[{i1}]", "(3.3)[1,2]"]
        return None
    if s in (3, 4):
        others = [i for i in lines if i != i1]
        pair = lambda a, b: f"(3.{tag})[{min(a, b)},{max(a, b)}]"
        if g.kind == "E":
            out = [f"(1.{tag})"] + [f"(2.{tag})[{i}]" for i in others]
            out += [pair(a, b) for a, b in itertools.combinations(others, 2)]
            return out
        if g.kind == "H-E":
            out = [f"(2.{tag})[{i1}]"] + [pair(i1, i) for i in others]
            if s == 4:
                out.append(f"(5.4)[{i1}]")
            return out
        if g.kind == "Q" and s == 4:
            t = g.indices
            out = [pair(a, b) for a, b in itertools.combinations(t, 2)]
            out += [f"(5.4)[{i}]" for i in t]
            out.append("(4.4)")
            return out
    return None


@dataclass(frozen=True)
class IncidenceEntry:
    generator: GeneratorLabel
    vector: tuple[int, ...]
    tight: tuple[str, ...]
    extremal: bool
    listed: tuple[str, ...] | None
    listed_subset_of_tight: bool | None
    listed_pins_ray: bool | None

    def to_dict(self) -> dict:
        return {"generator": self.generator.name, "vector": list(self.vector),
                "tight": list(self.tight), "extremal": self.extremal,
                "listed": None if self.listed is None else list(self.listed),
                "listed_subset_of_tight": self.listed_subset_of_tight,
                "listed_pins_ray": self.listed_pins_ray}


def incidence_report(s: int) -> list[IncidenceEntry]:
    """Tight inequalities at each ray and whether they pin the ray down."""
    if not 2 <= s <= MAX_LINES:
        raise UnsupportedError(f"incidence report covers 2 <= s <= {MAX_LINES} (got s={s})")
    ineqs = inequality_list(s)
    cone = inequality_cone(s)
    by_label = {q.label: q for q in ineqs}
    out = []
    for g, v in ray_list(s):
        tight = [q for q in ineqs if dot(q.normal, v) == 0]
        extremal = extremality_check(cone, v, [q.normal for q in tight])
        listed = _listed_hyperplanes(s, g)
        subset = pins = None
        if listed is not None:
            tight_labels = {q.label for q in tight}
            subset = set(listed) <= tight_labels
            pins = subset and extremality_check(cone, v, [by_label[l].normal for l in listed])
        out.append(IncidenceEntry(generator=g, vector=v, tight=tuple(q.label for q in tight),
                                  extremal=extremal,
                                  listed=None if listed is None else tuple(listed),
                                  listed_subset_of_tight=subset, listed_pins_ray=pins))
    return out


# --------------------------------------------------------------------------
# duality audit

@dataclass(frozen=True)
class FacetAudit:
    s: int
    facets: tuple[tuple[int, ...], ...]
    genuine: tuple[str, ...]
    redundant: tuple[str, ...]
    missing: tuple[tuple[int, ...], ...]
    rays_from_inequalities: tuple[tuple[int, ...], ...]
    rays_match: bool
    facets_match: bool

    def to_dict(self) -> dict:
        return {"s": self.s, "facets": [list(f) for f in self.facets],
                "genuine": list(self.genuine), "redundant": list(self.redundant),
                "missing": [list(f) for f in self.missing],
                "rays_from_inequalities": [list(r) for r in self.rays_from_inequalities],
                "rays_match": self.rays_match, "facets_match": self.facets_match}


@lru_cache(maxsize=None)
def facet_audit(s: int) -> FacetAudit:
    """Compare the inequality list with the cone spanned by the ray list.

    ``genuine`` are listed inequalities that are facets of the ray cone,
    ``redundant`` the listed ones that are not, ``missing`` the facets of
    the ray cone that the list lacks.
    """
    from_rays = dd_convert(ray_cone(s))
    from_ineqs = dd_convert(inequality_cone(s))
    facet_set = set(from_rays.inequalities)
    ineqs = inequality_list(s)
    genuine = tuple(q.label for q in ineqs if primitive(q.normal) in facet_set)
    redundant = tuple(q.label for q in ineqs if primitive(q.normal) not in facet_set)
    listed = {primitive(q.normal) for q in ineqs}
    missing = tuple(f for f in from_rays.inequalities if f not in listed)
    return FacetAudit(
        s=s, facets=from_rays.inequalities, genuine=genuine, redundant=redundant,
        missing=missing, rays_from_inequalities=from_ineqs.rays,
        rays_match=from_ineqs.rays == canonical(v for _, v in ray_list(s)),
        facets_match=from_rays.inequalities == from_ineqs.inequalities,
    )
