"""Deciding effectivity of divisor classes, with certificates.

A class D = dH - sum m_i E_i on the blow-up of P^3 along s general lines is
written (d; m_1, ..., m_s).  Each answer comes with proof: a nonnegative
combination of extremal rays, or an inequality the class breaks.

    python demos/01_membership.py
"""

from __future__ import annotations

from fractions import Fraction

from effcone import DivisorClass, decompose_paper_recipe, is_effective, verify_certificate


def show(d, mults):
    D = DivisorClass(d, mults)
    ok, cert = is_effective(D)
    print(f"{str(D):<24} {cert.describe()}")
    assert verify_certificate(cert)
    return ok


print("The quadric through three lines is itself a generator:")
show(2, [1, 1, 1])

print("\nFour double lines cannot lie on a cubic:")
show(3, [2, 2, 2, 2])

print("\nNor can five simple lines:")
show(3, [1, 1, 1, 1, 1])

print("\nNegative multiplicities are fixed exceptional components:")
show(1, [-3, 1])
show(1, [-3, 2])

print("\nRational classes are fine, the cone is a rational object:")
show(Fraction(5, 2), [Fraction(1, 2), Fraction(1, 2), Fraction(3, 2)])
show(Fraction(7, 2), [Fraction(3, 2)] * 4)

print("\nThe constructive recipe for s <= 4 gives a second, independent decomposition:")
for d, mults in [(2, [1, 1]), (3, [1, 1, 1, 1]), (8, [4, 3, 3, 2])]:
    cert = decompose_paper_recipe(DivisorClass(d, mults))
    print(f"  {cert.describe()}")
