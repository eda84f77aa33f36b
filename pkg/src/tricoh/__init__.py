"""Tripartite coherence concurrence of accelerated observers under noise.

A simulation and verification toolkit built around a GHZ/|000> mixture
shared by one inertial observer and two uniformly accelerated ones.  The
package dilates the accelerated modes into Rindler-mode pairs, applies
single-qubit noise channels, computes coherence measures on the six
three-mode reductions, and cross-checks everything against fast closed
forms, reporting any divergence.
"""

__version__ = "0.1.0"

from .linalg import (
    DensityMatrix,
    PureState,
    Violation,
    ViolationReport,
    partial_trace,
    tensor_product,
    validate_density,
)
from .scenario import (
    ChannelKind,
    NoisePolicy,
    Scenario,
    Subsystem,
    Tolerances,
)
from .dilation import (
    acceleration_parameter,
    dilate,
    initial_state,
    reduce_to_subsystem,
    unruh_isometry,
)
from .channels import KrausChannel, apply_policy, apply_to_qubit, make_channel
from .measures import (
    CoherenceBounds,
    coherence_concurrence,
    convex_roof_upper_bound,
    is_x_shaped,
    l1_coherence,
    pure_concurrence,
    x_concurrence,
)
from .closed_forms import (
    complementarity_residuals,
    concurrence_closed_form,
    evolved_matrix_closed_form,
    reduced_matrix_closed_form,
)
from .verify import (
    DiscrepancyRecord,
    Report,
    VerificationGrid,
    compare_state,
    run_suite,
    simulate_reduced,
    simulated_concurrence,
)

__all__ = [
    "__version__",
    "DensityMatrix",
    "PureState",
    "Violation",
    "ViolationReport",
    "partial_trace",
    "tensor_product",
    "validate_density",
    "ChannelKind",
    "NoisePolicy",
    "Scenario",
    "Subsystem",
    "Tolerances",
    "acceleration_parameter",
    "dilate",
    "initial_state",
    "reduce_to_subsystem",
    "unruh_isometry",
    "KrausChannel",
    "apply_policy",
    "apply_to_qubit",
    "make_channel",
    "CoherenceBounds",
    "coherence_concurrence",
    "convex_roof_upper_bound",
    "is_x_shaped",
    "l1_coherence",
    "pure_concurrence",
    "x_concurrence",
    "complementarity_residuals",
    "concurrence_closed_form",
    "evolved_matrix_closed_form",
    "reduced_matrix_closed_form",
    "DiscrepancyRecord",
    "Report",
    "VerificationGrid",
    "compare_state",
    "run_suite",
    "simulate_reduced",
    "simulated_concurrence",
]
