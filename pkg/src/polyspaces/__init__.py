"""Cohomology rings of spatial and planar polygon spaces."""

from .cohomology import (CohomologyClass, IntersectionForm, RingPresentation, build_apol_presentation,
                         build_planar_presentation, build_pol_presentation, build_presentation,
                         build_symmetric_presentation, build_up_presentation, characteristic_classes,
                         cup_product, intersection_form, signature_of_form)
from .errors import (DimensionMismatch, EmptySpace, EvenEdgeCount, GradingMismatch, InexactDivision,
                     Inconsistent, NonGeneric, NonUnitLeadingCoefficient, NotConfluent, OddMiddleDegree,
                     ParityViolation, PolygonSpaceError, TooLarge)
from .groebner import GroebnerBasis, buchberger, quotient_by_r_power, reduce, s_polynomial
from .invariants import PoincarePolynomial, klyachko_poincare, poincare, signature
from .lengths import (LengthVector, SubsetFamily, classify_pair, distinguished_longs,
                      distinguished_subposet, is_generic, long_family, reconstruct_shorts, short_family)
from .polyring import Poly, PolyRing

__version__ = "0.1.0"
