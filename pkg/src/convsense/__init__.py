"""Deterministic-sequence convolutional compressed sensing.

Construct circulant sensing operators from sequences with good
autocorrelation properties, audit their coherence and the exponential-sum
bounds behind them, and run sparse-recovery experiments.
"""

from .sequences import (
    Sequence,
    SequenceKind,
    GolayPair,
    ClassifyReport,
    fzc,
    extended_polyphase,
    m_sequence,
    perfect_binary_from_m,
    golay_pair,
    golay,
    extended_golay,
    legendre,
    random_phase,
    random_binary,
    autocorr_periodic,
    autocorr_aperiodic,
    autocorr_periodic_all,
    classify,
    admissible_golay_length,
    PRIMITIVE_POLYNOMIALS,
)
from .gauss_sums import (
    BoundCheckRecord,
    gauss_sum,
    gauss_sum_sweep,
    complete_gauss_closed_form,
    reflection_identity_residual,
    q_identity_residual,
    bound_check,
)
from .operators import (
    CirculantOperator,
    SamplingSet,
    Basis,
    SensingOperator,
    random_sampling,
    deterministic_sampling,
    equispaced_sampling,
    materialize_dense,
    vector_to_csv,
    vector_from_csv,
)
from .coherence import (
    CoherenceReport,
    coherence_circulant,
    mutual_coherence,
    autocorrelation_bound_check,
    bound_table_report,
    dct_coherence_report,
    bound_table_csv,
)
from .recovery import (
    RecoveryProblem,
    RecoveryResult,
    omp,
    subspace_pursuit,
    fista_lasso,
    SOLVERS,
)
from .harness import (
    ChannelModel,
    ExperimentConfig,
    TrialRecord,
    OfdmReport,
    PhaseReport,
    DctReport,
    AuditResult,
    attc_channel,
    papr,
    trial_seed,
    build_circulant,
    run_ofdm_experiment,
    run_phase_transition,
    run_dct_experiment,
    read_pgm,
    audit_coherence_bounds,
    audit_gauss,
    audit_papr,
    ofdm_reference_config,
    REFERENCE_OFDM_OUTPUT_SNR_DB,
)

__version__ = "0.1.0"

__all__ = [
    "Sequence", "SequenceKind", "GolayPair", "ClassifyReport",
    "fzc", "extended_polyphase", "m_sequence", "perfect_binary_from_m",
    "golay_pair", "golay", "extended_golay", "legendre",
    "random_phase", "random_binary",
    "autocorr_periodic", "autocorr_aperiodic", "autocorr_periodic_all",
    "classify", "admissible_golay_length", "PRIMITIVE_POLYNOMIALS",
    "BoundCheckRecord", "gauss_sum", "gauss_sum_sweep",
    "complete_gauss_closed_form", "reflection_identity_residual",
    "q_identity_residual", "bound_check",
    "CirculantOperator", "SamplingSet", "Basis", "SensingOperator",
    "random_sampling", "deterministic_sampling", "equispaced_sampling",
    "materialize_dense", "vector_to_csv", "vector_from_csv",
    "CoherenceReport", "coherence_circulant", "mutual_coherence",
    "autocorrelation_bound_check", "bound_table_report", "dct_coherence_report", "bound_table_csv",
    "RecoveryProblem", "RecoveryResult", "omp", "subspace_pursuit",
    "fista_lasso", "SOLVERS",
    "ChannelModel", "ExperimentConfig", "TrialRecord", "OfdmReport",
    "PhaseReport", "DctReport", "AuditResult",
    "attc_channel", "papr", "trial_seed", "build_circulant",
    "run_ofdm_experiment", "run_phase_transition", "run_dct_experiment",
    "read_pgm", "audit_coherence_bounds", "audit_gauss", "audit_papr",
    "ofdm_reference_config", "REFERENCE_OFDM_OUTPUT_SNR_DB",
    "__version__",
]
