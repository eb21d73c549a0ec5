"""Effective cones of divisors on P^3 blown up along general lines.

Exact rational cone computations, constructive effectivity certificates,
base-locus bookkeeping and a finite-field interpolation oracle.
"""

from .baselocus import BaseLocusReport, base_locus, divisorial_residual
from .cone import ConeDesc, dd_convert, extremality_check, member
from .divisor import (DivisorClass, FanoReport, anticanonical_splittings, canonical_class,
                      triple_product, weak_fano_report)
from .effective import (Certificate, GeneratorLabel, NamedInequality, decompose_paper_recipe,
                        facet_audit, incidence_report, inequality_list, is_effective, ray_list,
                        verify_certificate)
from .errors import EffconeError, UnsupportedError
from .kernel import MatrixQ, nonneg_combination, rank_nullspace
from .oracle import InterpolationProblem, LineConfig, containment_check, h0, h0_generic, sample_lines

__version__ = "0.1.0"
