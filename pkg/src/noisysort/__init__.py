"""Noisy tournament sorting with a verification oracle."""

__version__ = "0.1.0"

from .candidate_sort import Process, SortResult, degree_threshold, reference_sort, sort
from .errors import (
    BudgetExhausted,
    ExperimentAbort,
    InsufficientTwoCycles,
    InvalidElement,
    InvalidPair,
    InvalidParameter,
    InvalidTrace,
    ModelViolation,
    NoisySortError,
    Unsupported,
)
from .generators import CorruptionPolicy, LowerBoundInstance, corrupt, gen_banded, gen_jnd, gen_lower_bound
from .graph import (
    AmbiguityParams,
    EdgeState,
    GroundTruth,
    TournamentGraph,
    ValidationReport,
    count_ambiguous_simple,
    count_delta_close,
    validate_nu_ambiguous,
)
from .oracle import Ordering, VerificationOracle
