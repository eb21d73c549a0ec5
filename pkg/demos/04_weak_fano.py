"""Anticanonical degree of the blow-up and where weak Fano stops.

    python demos/04_weak_fano.py
"""

from __future__ import annotations

from effcone.divisor import (anticanonical_class, anticanonical_splittings, triple_product,
                             weak_fano_report)

for s in range(9):
    r = weak_fano_report(s)
    print(f"s={s}: (-K)^3 = {str(r.anticanonical_cube):>3}  weak Fano: {r.is_weak_fano}")

K = anticanonical_class(3)
print(f"\n(-K)^3 for s=3 by direct expansion: {triple_product(K, K, K)}")

print("\n-K splits into effective pieces for s=6:")
for parts in anticanonical_splittings(6)[:3]:
    print("   " + " + ".join(map(str, parts)))
print("and for s=5:")
for parts in anticanonical_splittings(5)[:3]:
    print("   " + " + ".join(map(str, parts)))
