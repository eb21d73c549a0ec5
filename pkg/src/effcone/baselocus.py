"""
Forced components of the base locus of |D| for D = dH - sum m_i E_i.

* The quadric Q_ijk through three lines splits off at least
  ``k_ijk = max(m_i + m_j + m_k - d, 0)`` times.
* The two transversals t, t' to four lines lie in the base locus with
  multiplicity at least ``k_t = max(m_i + m_j + m_k + m_l - d, 0)``.

Only the quadrics are divisorial; the residual subtracts each of them once
at its full multiplicity.  Transversals are reported by their quadruple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .divisor import DivisorClass, quadric_class
from .errors import EffconeError
from .kernel import fraction_str

TRANSVERSALS_PER_QUADRUPLE = 2


@dataclass(frozen=True)
class BaseLocusReport:
    target: DivisorClass
    quadrics: tuple[tuple[tuple[int, int, int], Fraction], ...]
    transversal_pairs: tuple[tuple[tuple[int, int, int, int], Fraction], ...]
    residual: DivisorClass

    @property
    def is_empty(self) -> bool:
        return not self.quadrics and not self.transversal_pairs

    def to_dict(self) -> dict:
        return {
            "target": self.target.to_dict(),
            "quadrics": [{"lines": list(t), "multiplicity": fraction_str(k)}
                         for t, k in self.quadrics],
            "transversals": [{"lines": list(q), "multiplicity": fraction_str(k),
                              "count": TRANSVERSALS_PER_QUADRUPLE}
                             for q, k in self.transversal_pairs],
            "residual": self.residual.to_dict(),
        }


def _check_linear_system(D: DivisorClass) -> None:
    if D.d < 0 or any(m < 0 for m in D.mults):
        raise EffconeError(
            f"{D} has a negative coefficient and is not a linear system of surfaces"
        )


def excess(D: DivisorClass, lines) -> Fraction:
    """``sum(m_i for i in lines) - d`` (unclamped); ``lines`` are 1-based."""
    return sum((D.mults[i - 1] for i in lines), Fraction(0)) - D.d


def quadric_multiplicities(D: DivisorClass) -> list[tuple[tuple[int, int, int], Fraction]]:
    return [(t, excess(D, t)) for t in itertools.combinations(range(1, D.s + 1), 3)
            if excess(D, t) > 0]


def base_locus(D: DivisorClass) -> BaseLocusReport:
    _check_linear_system(D)
    lines = range(1, D.s + 1)
    quadrics = quadric_multiplicities(D)
    transversals = [(q, excess(D, q)) for q in itertools.combinations(lines, 4)
                    if excess(D, q) > 0]
    return BaseLocusReport(target=D, quadrics=tuple(quadrics),
                           transversal_pairs=tuple(transversals),
                           residual=_subtract(D, quadrics))


def _subtract(D, quadrics) -> DivisorClass:
    out = D
    for t, k in quadrics:
        out = out - k * quadric_class(t, D.s)
    return out


def divisorial_residual(D: DivisorClass) -> DivisorClass:
    """D minus every forced quadric at its full multiplicity (one round)."""
    _check_linear_system(D)
    return _subtract(D, quadric_multiplicities(D))
