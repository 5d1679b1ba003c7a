"""Post-selected von Neumann measurement with bosonic pointer states.

A qubit prepared at selection angles ``(theta1, phi1)`` couples through
``g * sigma_x (x) |m><m|`` to a bosonic pointer (coherent, squeezed, or cat
state in a truncated Fock basis) and is post-selected on ``|up>``.  The
package computes the final pointer state two independent ways, plus the
conditional photon distribution, Mandel Q factor, and quadrature
signal-to-noise ratio of the result.
"""

from .measurement_engine import (
    MeasurementConfig,
    PostSelectedPointer,
    PostSelectionError,
    align_global_phase,
    delta_factor,
    equivalence_deviations,
    final_pointer_analytic,
    final_pointer_for_modular_value,
    final_pointer_oracle,
    joint_evolution_operator,
    post_selection_probability,
)
from .numerics import hermite, kron, mat_exp
from .observables import (
    CrossCheckReport,
    QuadratureSpec,
    SnrInput,
    closed_form_check,
    mandel_q,
    mean_photon_number,
    number_distribution,
    quadrature_mean,
    quadrature_operator,
    quadrature_second_moment,
    second_factorial_moment,
    snr,
)
from .pointer_states import (
    Cat,
    Coherent,
    Custom,
    PointerState,
    Squeezed,
    TruncationError,
    annihilation_op,
    build_pointer,
    cat_state,
    coherent_state,
    custom_state,
    displacement_op,
    squeeze_op,
    squeezed_amplitudes_closed_form,
    squeezed_state,
)
from .qubit_system import (
    OrthogonalSelectionError,
    QubitState,
    SelectionConfig,
    generalized_modular_factor,
    modular_from_weak,
    modular_value,
    selection_for_modular_value,
    weak_value,
)
from .sweep_cli import SweepSpec, errata_report, evaluate_point, run_figure, run_sweep

__version__ = "0.1.0"
