"""Opinion dynamics with in-group identity and out-group conflict on signed networks."""
from .bias import BiasSpec, bias_injection, bias_response, biased_result, decompose_bias, steady_state_biased
from .dynamics import (
    DegenerateAgentWarning,
    NashReport,
    NumericalError,
    PowerIterationError,
    SingularSystemError,
    SteadyStateResult,
    Trajectory,
    best_response,
    bonacich,
    fixed_point_residual,
    simulate,
    spectral_radius,
    steady_state,
    steady_state_direct,
    step,
    utility,
    verify_nash,
    weighted_bonacich,
)
from .fileio import NetworkFormatError, NetworkProblem, read_network, write_network
from .homogeneous import (
    HomogeneousSociety,
    NoAnchorError,
    Partials,
    comparative_statics,
    reduced_step,
    steady_state_homophily,
    steady_state_no_homophily,
)
from .netgen import complete_network, homogeneous_network, random_balanced_network, ring_network
from .signed_core import (
    BalanceReport,
    GroupAssignment,
    IdentityParams,
    InteractionNetwork,
    InvalidNetworkError,
    OpinionExchangeNetwork,
    ValidationReport,
    build_opinion_exchange,
    check_structural_balance,
    validate,
)

__version__ = "0.1.0"
