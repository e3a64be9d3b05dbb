"""augtor: exact torsion and Betti numbers of augmented groups."""

from .catalog import CatalogEntry, catalog_lookup
from .cyclotomic import CycloFactorization, cyclo_factorize, cyclotomic_poly, euler_phi, mobius
from .errors import (
    AugtorError,
    CatalogLookupError,
    ConsistencyError,
    DegenerateInputError,
    DivisibilityError,
    DomainError,
    HypothesisError,
    LoadError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    SpecInconsistencyError,
)
from .growth import GrowthReport, complex_roots, mahler_measure, p_component, square_prime_probe
from .linalg import IntMatrix, PresentationMatrix, SnfResult, smith_normal_form, substitute_blocks
from .parsing import load_presentation, parse_poly
from .poly import LaurentPoly, RatPoly
from .recurrence import RecurrenceSpec, eval_recurrence, recurrence_spec, theorem39_spec
from .resultants import res_cyclic, res_nu, resultant
from .torsion import ReducedTorsionProfile, TorsionProfile, reduced_analysis, torsion_formula, torsion_snf

__version__ = "0.1.0"
