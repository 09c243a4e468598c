"""Trace distance vs Hilbert-Schmidt distance for density matrices.

Distance metrics, the signed decomposition of state differences, rank- and
entropy-based upper/lower bound certificates, seeded random-state ensembles,
and Monte Carlo verification experiments with CSV/JSON/figure output.
"""

from .bounds import (
    BOUND_SLACK,
    BoundReport,
    SignedRankCheck,
    build_report,
    check_signed_rank_bound,
    check_weyl,
    entropy_half_sum_upper,
    entropy_min_upper,
    norm_equivalence_upper,
    rank_sum_upper,
    reduced_rank,
    reduced_rank_upper,
)
from .experiments import (
    ConjectureSearchResult,
    ExampleRow,
    ExperimentSummary,
    SampleRecord,
    conjecture_candidate,
    conjecture_margin,
    examples_table,
    find_conjecture_counterexample,
    record_violations,
    run_figure1,
    verify_sweep,
)
from .metrics import (
    DistancePair,
    SignedDecomposition,
    distances,
    hs_distance,
    q_ratio,
    signed_decomposition,
    trace_distance,
)
from .sampling import (
    EnsembleSpec,
    FixedRank,
    RngStream,
    UniformRank,
    draw_state,
    fig1_rho,
    fig1_sigma,
    fixed_purity_state,
    ginibre_fixed_rank,
    haar_pure,
    haar_unitary,
)
from .states import (
    DEFAULT_RANK_TOL,
    DensityMatrix,
    Spectrum,
    hermitian_eig,
    linear_entropy,
    numerical_rank,
    projector_state,
    purity,
)

__version__ = "0.1.0"
