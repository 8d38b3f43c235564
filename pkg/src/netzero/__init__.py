"""netzero: invariant-zero analysis for networked discrete-time LTI systems.

Assembles closed-loop networks from agent state-space models and static
coupling matrices, computes finite and infinite invariant zeros from the
system pencil, provides theorem-backed fast paths for homogeneous and
circulant networks, relates blocked (lifted) and unblocked zeros, and
cross-validates everything against an exact rational oracle.
"""

from ._numeric import PoleError, SamplingError
from .blocking import (
    BlockedRealization,
    CorrespondenceReport,
    block_system,
    blocked_homogeneous_zeros,
    blocked_transfer_eval,
    blocked_transfer_structured,
    correspondence_report,
)
from .homogeneous import (
    ApplicabilityError,
    CirculantSpec,
    DesignCheck,
    HomogeneousNetwork,
    HypothesisViolationError,
    MinimumPhaseVerdict,
    circulant_eigenvalues,
    circulant_matrix,
    circulant_zero_report,
    controllable_realization,
    design_check,
    fourier_matrix,
    homogeneous_zero_report,
    minimum_phase_verdict,
    to_network,
)
from .model import (
    AgentSystem,
    Interconnection,
    NetworkRealization,
    ValidationError,
    assemble_nodes,
    close_loop,
    interconnection_transfer_eval,
    network_transfer_eval,
    observability_matrix,
    pbh_observable,
    pbh_reachable,
    reachability_matrix,
    validate_network,
)
from .oracle import (
    QC,
    DegeneratePencilError,
    exact_det,
    exact_matrix,
    exact_rank,
    exact_rank_at,
    exact_solve,
    oracle_zeros_small,
    pencil_det_poly,
)
from .rational import (
    AgentClassification,
    MinimalityError,
    Polynomial,
    RationalSISO,
    classify_agent,
    h_preimage,
    poly_roots,
    relative_degree,
    siso_from_statespace,
)
from .zeros import (
    DegenerateSystemError,
    MatchResult,
    ZeroConfirmation,
    ZeroDiagnostics,
    ZeroReport,
    has_infinite_zero,
    invariant_zeros,
    match_zero_multisets,
    normal_rank,
    rank_at,
    system_pencil,
)

__version__ = "0.1.0"
