"""Comparing the inequality description of the effective cone with its rays.

Double description converts each side into the other.  For s <= 4 they
agree exactly.  For s = 5 the 42 stored inequalities are all facets, but
the ray cone has five more: the four-line bound 3d >= 2(m_i+m_j+m_k+m_l)
for each choice of four lines.  They only bite when some m is negative,
which is why membership (which first drops fixed E_i parts) stays right.

    python demos/02_duality_audit.py
"""

from __future__ import annotations

from effcone import DivisorClass, facet_audit, inequality_list, is_effective, ray_list
from effcone.kernel import nonneg_combination

for s in range(6):
    a = facet_audit(s)
    print(f"s={s}: {len(ray_list(s)):>2} rays, {len(inequality_list(s)):>2} inequalities, "
          f"{len(a.facets):>2} facets of the ray cone, "
          f"{len(a.rays_from_inequalities):>2} rays of the inequality cone, "
          f"match={a.rays_match and a.facets_match}")

audit = facet_audit(5)
print("\nfacets missing from the s=5 list:")
for f in audit.missing:
    print("  ", f)
listed = set(v for _, v in ray_list(5))
print("extra rays of the s=5 inequality cone:")
for r in audit.rays_from_inequalities:
    if r not in listed:
        print("  ", r)

w = (5, 2, 2, 2, 2, -1)
D = DivisorClass(w[0], list(w[1:]))
print(f"\n{D} satisfies all 42 inequalities: {all(q.holds(D) for q in inequality_list(5))}")
print(f"but is a combination of the 20 rays: "
      f"{nonneg_combination(w, [v for _, v in ray_list(5)]).feasible}")
print(f"membership after removing the fixed part: {is_effective(D)[1].describe()}")
