"""Exact cohomology of symplectic torus reductions of the Grassmannian G(n,2).

Given a regular value of the standard moment map (or a Hassett weight
vector), the package produces a graded presentation and Betti numbers of
the reduction's cohomology ring and cross-validates them against three
independent oracle presentations.  All arithmetic is exact rational.
"""

from .algebra import (DivisibilityError, Polynomial, SymmetryError, UnknownVariableError,
                      VariableTable, block_reduce, elem_sym, exact_divide,
                      format_polynomial, parse_polynomial, substitute)
from .weyl import (det_poly, divided_difference, divided_difference_w, inverse, length,
                   reduced_word)
from .hypersimplex import (Chamber, DomainError, GaussianRational, RankError,
                           RegularityError, WeightError, WeightNotSuitableError,
                           chamber_of, enumerate_chambers, hassett_chamber, is_regular,
                           moment_map, orbit_partition, scaled_moment)
from .reduction import (AdmissiblePair, KirwanIdeal, admissible_pairs, build_ideal,
                        relation_poly)
from .groebner import (BettiTable, DimensionError, GradedPresentation, GroebnerBasis,
                       MonomialOrder, betti, buchberger, compare_presentations, contains,
                       normal_form)
from .oracles import (IdentificationReport, heavy_light_presentation, keel_presentation,
                      toric_polygon_presentation, toric_sr, verify_identification)

__version__ = "0.1.0"
