"""
Exact computations for nilpotent Lie algebras with a complex structure.

Algebras are given by d of a (1,0)-coframe with Gaussian-rational
coefficients.  The package computes the central series and the filtrations
that measure the nilpotency of J, normalizes coframes when J has maximal
step, and reports the resulting invariants.
"""

from .errors import (NilcplxError, UserError, InternalError, ParseError, ValidationError,
                     NotIntegrable, JacobiViolation, SingularCoframeChange, NotAnIdeal,
                     NotASubalgebra, NotNilpotent, PreconditionFailed, NotMaxN,
                     InternalConsistencyError, InternalContradiction,
                     StructureTheoremViolation, SourceSpan)
from .exact import GaussianRational, gq, Matrix, Subspace, ONE, ZERO, I
from .forms import (OneForm, TwoForm, ThreeForm, DualVector, gen, gen_bar, frame, frame_bar,
                    wedge, conjugate_form, contract, in_wedge_square)
from .dsl import ParsedPresentation, parse, print_canonical
from .algebra import (CoframeAlgebra, validate, change_coframe, quotient_by_ideal,
                      subalgebra_restrict)
from .series import (classify, Classification, SeriesChain, descending_central,
                     ascending_central, v_series, w_series, a_series, h_series)
from .maxn import (AdmissibleCoframe, StructureReport, triangular_coframe,
                   admissible_normalize, dpt, v1_basis, strictly_admissible, structure_report)
from .families import FamilyTag, gen_family, fixture_cfgu_example4, FuzzPlan, fuzz_transform

__version__ = "0.1.0"
