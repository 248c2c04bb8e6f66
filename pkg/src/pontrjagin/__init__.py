"""Loop-space homology of homogeneous spaces from their cohomology presentations."""

from .catalog import SpaceSpec, catalog_space, expected_loop_homology, list_cases, splitting_series_check
from .envelope import (VerificationReport, compare_presentations, enveloping, pbw_series, rank_compare,
                       verify_presentation)
from .errors import *  # noqa: F401,F403
from .graded import (CohomPresentation, GradedGenerator, HilbertSeries, PolyRing, Polynomial,
                     complete_intersection_series, free_graded_series, substitute)
from .groebner import CartanReduction, IdealBasis, cartan_reduce, groebner_basis, is_member, is_regular_sequence
from .integral import integral_presentation
from .newton import SymmetricFunctionVector, newton_sigma_from_y, newton_y_from_sigma
from .noncomm import NCPoly, NCPresentation
from .pipeline import PipelineReport, run_pipeline
from .specfile import parse_spec
from .sullivan import LieAlgebraData, ModelFragment, build_formal_model, homotopy_lie, pairing_eval, quadratic_part

__version__ = "0.1.0"
