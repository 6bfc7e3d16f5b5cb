"""Two-qubit measurement contexts as paths through a beam-splitter interferometer."""
from .analysis import (
    ProbabilityReport,
    UndefinedPostselectionError,
    WeakValueTable,
    WitnessRecord,
    conditional_current_table,
    continuity_residual,
    probabilities,
    visibility_sweep,
    weak_sum_lhs,
    weak_value,
    witness,
)
from .hilbert import TOL, apply_unitary, born_probability, inner_product, validate_density
from .network import (
    Context,
    InterferometerNetwork,
    Stage,
    beam_splitter_unitary,
    build_network,
    context_basis,
    load_network,
    parse_network,
    stage_residuals,
)
from .oracle import NCAssignment, check_statements, enumerate_assignments, nc_max_witness
from .presets import canonical_network, named_state, rho_eta, swap_operator

__version__ = "0.1.0"
