"""Exact and numerical tools for primary Hopf manifolds W = (C^n - 0)/<gamma>."""

from .contraction import (
    ResonantMap,
    Verdict,
    deformation_family,
    invert,
    pushforward,
    tangent_cohomology,
    vaisman_status,
    validate,
)
from .errors import (
    ClosureError,
    HopfError,
    NonResonantTermError,
    ParameterError,
    TriangularityError,
    ValidationError,
)
from .exact import GR, GaussianRational
from .invariants import (
    algebraic_dimension,
    betti_numbers,
    bott_chern_numbers,
    hodge_numbers,
    kodaira_report,
    metric_flags,
    truncated_dolbeault_oracle,
)
from .lie_algebra import ResonantField, bracket, build_model, verify_jacobi
from .resonance import Multipliers, ResonanceRelation, enumerate_resonances, resonance_bounds

__version__ = "0.1.0"
