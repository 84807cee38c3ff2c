"""Statevector simulation and depth lower bounds for warm-started QAOA with aligned mixers."""

from .bounds import (
    DepthBound,
    PhaseSeparator,
    at_theta_relation,
    f_of_c,
    lemma_check,
    pmin,
    pmin_for_mixer,
    shifted_commutator_relation,
    theorem_bound,
    within_theta_lower,
)
from .core import (
    BlochVector,
    MixerSpec,
    Statevector,
    apply_mixer,
    apply_phase_separator,
    apply_single_qubit_axis_rotation,
    commutator,
    expectation_diag,
    mixer_dense,
    spectral_norm,
)
from .errors import InvalidInputError, ParseError, PreconditionError, SizeGuardError
from .problems import (
    Graph,
    Objective,
    cost_diagonal,
    maxcut_objective,
    parse_graph,
    toy_objective,
)
from .qaoa import QaoaParams, QaoaResult, lambda_of, optimize_params, run_qaoa
from .toy import toy_angle_after, toy_lambda, toy_required_depth, toy_simulator_crosscheck
from .warmstart import (
    WarmStart,
    aligned_mixer,
    from_bitstring,
    to_statevector,
    zero_phase_equivalent,
)

__version__ = "0.1.0"
