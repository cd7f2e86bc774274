"""Closure-coefficient statistics of heterogeneous Erdős–Rényi random graphs.

The package samples independent-edge random graphs, computes closure and
clustering coefficients, evaluates the exact variance decomposition of the
average closure coefficient, and verifies its asymptotic normality and the
alpha = 1/2 variance phase change by seeded Monte Carlo and small-graph
enumeration.
"""

from .errors import DegenerateSampleError, EnumerationSizeError, ParameterError
from .expansion import (
    LeadingTerms,
    centered_adjacency,
    cubic_leading_term,
    leading_approximation,
    linear_leading_term,
)
from .experiment import (
    EnumResult,
    McConfig,
    McSummary,
    SweepRow,
    alpha_sweep,
    exact_enumeration,
    normality_stats,
    replicate_seed,
    run_monte_carlo,
    write_replicates_csv,
    write_summary_json,
    write_sweep_csv,
)
from .graphstats import (
    NodeStats,
    closure_coefficients,
    clustering_coefficients,
    node_motif_counts,
)
from .model import (
    EdgeProbMatrix,
    Graph,
    WeightMatrix,
    WeightSpec,
    build_weight_matrix,
    edge_prob_matrix,
    load_weight_matrix,
    sample_graph,
    save_weight_matrix,
)
from .theory import (
    CoefficientTables,
    ErLeadingVariances,
    VarianceComponents,
    coefficient_tables,
    edge_coefficients,
    edge_variance,
    er_exact_variances,
    er_leading_variances,
    regime_for,
    triangle_variance,
    variance_components,
    wedge_means,
)

__version__ = "0.1.0"
