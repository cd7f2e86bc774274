"""Leading terms of the centered average closure coefficient.

Writing Abar_ij = A_ij - mu_ij for the centered edge indicators, the centered
statistic is approximated by two explicit polynomials in Abar:

  cubic  = (2/n) * sum_{i<j<k} (1/nu_i + 1/nu_j + 1/nu_k) Abar_ij Abar_ik Abar_jk
  linear = (1/n) * sum_{i<j} coef_ij Abar_ij

with the pairwise coefficients of :func:`closurecoef.theory.edge_coefficients`.
Which term dominates depends on the sparsity regime: the cubic term for
alpha > 1/2, the linear term for alpha < 1/2, and their sum at alpha = 1/2.
By construction the variance of the cubic term is sigma1^2 and that of the
linear term is sigma2^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import EdgeProbMatrix, Graph
from .theory import VarianceComponents, edge_coefficients, regime_for

__all__ = [
    "LeadingTerms",
    "centered_adjacency",
    "cubic_leading_term",
    "linear_leading_term",
    "leading_approximation",
]


def centered_adjacency(g: Graph, mu: EdgeProbMatrix) -> np.ndarray:
    """Abar = A - mu: symmetric, zero diagonal, entries in [-1, 1]."""
    return g.adj.astype(np.float64) - mu.mu


def cubic_leading_term(g: Graph, mu: EdgeProbMatrix, nu: np.ndarray) -> float:
    """Triangle-fluctuation term of the centered statistic.

    Grouping the triple sum by head node gives
    (1/n) * sum_i (Abar^3)_ii / nu_i, one dense product per graph.
    """
    abar = centered_adjacency(g, mu)
    diag3 = (abar * (abar @ abar)).sum(axis=1)
    return float((diag3 / nu).sum()) / g.n


def linear_leading_term(g: Graph, mu: EdgeProbMatrix, coef: np.ndarray) -> float:
    """Edge-fluctuation term (1/n) * sum_{i<j} coef_ij * Abar_ij.

    ``coef`` is the symmetric pairwise coefficient matrix; the halved full sum
    equals the upper-triangle sum because the diagonal of Abar is zero.
    """
    abar = centered_adjacency(g, mu)
    return 0.5 * float((coef * abar).sum()) / g.n


@dataclass
class LeadingTerms:
    """Both leading terms plus the sparsity regime that selects among them."""

    cubic: float
    linear: float
    regime: str

    @property
    def approximation(self) -> float:
        """The regime-appropriate approximation of the centered statistic."""
        if self.regime == "sparse-side":
            return self.cubic
        if self.regime == "dense":
            return self.linear
        return self.cubic + self.linear


def leading_approximation(
    g: Graph,
    mu: EdgeProbMatrix,
    components: VarianceComponents,
    alpha: float,
) -> LeadingTerms:
    """Evaluate both leading terms for one graph and tag the regime."""
    regime = regime_for(alpha)
    coef = edge_coefficients(components.tables)
    return LeadingTerms(
        cubic=cubic_leading_term(g, mu, components.nu),
        linear=linear_leading_term(g, mu, coef),
        regime=regime,
    )
