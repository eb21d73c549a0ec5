"""Forced base components, checked against actual polynomials.

The base-locus report predicts that cubics double along one line and
through two others must contain the quadric through the three lines.  The
oracle samples three random lines over GF(65521), solves the interpolation
problem, and tests the prediction on points of that quadric.

    python demos/03_base_locus_oracle.py
"""

from __future__ import annotations

from effcone import DivisorClass, base_locus
from effcone.oracle import InterpolationProblem, containment_check, h0_generic, sample_lines

D = DivisorClass(3, [2, 1, 1])
rep = base_locus(D)
for t, k in rep.quadrics:
    print(f"{D}: quadric Q_{''.join(map(str, t))} forced with multiplicity {k}")
print(f"residual after removing it: {rep.residual}")

res = h0_generic(3, [2, 1, 1])
print(f"\nh0 per seed {list(res.seeds)}: {list(res.h0_per_trial)}")
res_residual = h0_generic(1, [1, 0, 0])
print(f"h0 of the residual (planes through one line): {res_residual.h0_generic_estimate}")

for seed in range(3):
    prob = InterpolationProblem(3, (2, 1, 1), sample_lines(3, 65521, seed))
    print(f"seed {seed}: every section vanishes on Q_123 at 20 sampled points: "
          f"{containment_check(prob, (1, 2, 3), samples=20)}")

print("\nSome reference values:")
for d, m in [(1, ()), (2, (1, 1, 1)), (3, (1, 1, 1, 1)), (3, (1, 1, 1, 1, 1)), (6, (2, 2, 2, 2))]:
    print(f"  h0(L_{d}({','.join(map(str, m))})) = {h0_generic(d, m).h0_generic_estimate}")

D4 = DivisorClass(3, [1, 1, 1, 1])
print(f"\n{D4}: transversal pairs {[(q, str(k)) for q, k in base_locus(D4).transversal_pairs]}")
