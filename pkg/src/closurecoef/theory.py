"""Asymptotic variance of the average closure coefficient.

For independent-edge graphs with edge probabilities mu_ij the variance of the
average closure coefficient splits into two components,

    sigma^2 = sigma1^2 + sigma2^2,

a triangle-fluctuation part summing over node triples and an edge-fluctuation
part summing over node pairs.  Both are exact finite sums in mu; this module
evaluates them with dense matrix products (factorized forms) and also provides
the homogeneous closed forms and their leading-order limits, which exhibit a
phase change at alpha = 1/2 when p = n**(-alpha).

All sums run over the full index ranges; the zero diagonal of mu makes every
coincident-index term vanish, so no explicit distinctness restriction is
needed (the factorizations rely on this).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .model import EdgeProbMatrix

REGIME_DENSE = "dense"            # alpha < 1/2: edge fluctuations dominate
REGIME_CRITICAL = "critical"      # alpha = 1/2: both components contribute
REGIME_SPARSE_SIDE = "sparse-side"  # alpha > 1/2: triangle fluctuations dominate


def regime_for(alpha: float) -> str:
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    if alpha < 0.5:
        return REGIME_DENSE
    if alpha > 0.5:
        return REGIME_SPARSE_SIDE
    return REGIME_CRITICAL


def wedge_means(mu: EdgeProbMatrix) -> np.ndarray:
    """Centering constants nu_i = sum_{j,k} mu_ij * mu_jk.

    This is the full double sum (the k = i term is included), evaluated as
    two matrix-vector products; it approximates the expected head-wedge count
    of node i.  Positive whenever the weights are bounded below by beta > 0.
    """
    g = mu.mu.sum(axis=1)
    return mu.mu @ g


@dataclass
class CoefficientTables:
    """Ingredient tables of the edge-fluctuation variance.

    With nu from :func:`wedge_means` and T_i = (mu^3)_ii the ordered closed
    3-path count at i:

      b[i, j] = sum_k mu_ik * mu_jk / nu_k          (symmetric)
      c[i, j] = sum_k mu_ik * mu_jk / nu_i          (c_ij * nu_i = c_ji * nu_j)
      a[s]    = sum_i (T_i / nu_i^2) * mu_is
      e[i, s] = (T_i / nu_i^2) * sum_t mu_st
    """

    b: np.ndarray
    c: np.ndarray
    a: np.ndarray
    e: np.ndarray


def coefficient_tables(mu: EdgeProbMatrix, nu: np.ndarray) -> CoefficientTables:
    """Evaluate b, c, a, e by factorized matrix products."""
    if np.any(nu <= 0.0):
        raise ParameterError("wedge means must be strictly positive")
    m = mu.mu
    b = (m / nu[None, :]) @ m
    b = 0.5 * (b + b.T)  # the defining sum is symmetric; BLAS blocking is not
    m2 = m @ m
    c = m2 / nu[:, None]
    t = (m * m2).sum(axis=1)  # (mu^3)_ii: ordered closed 3-paths at i
    weight = t / nu**2
    a = m @ weight
    e = np.outer(weight, m.sum(axis=1))
    return CoefficientTables(b=b, c=c, a=a, e=e)


def edge_coefficients(tables: CoefficientTables) -> np.ndarray:
    """Pairwise coefficients 2b_ij + 2c_ij + 2c_ji - (a_i + a_j) - (e_ij + e_ji).

    Symmetric; only the off-diagonal entries are meaningful.
    """
    b, c, a, e = tables.b, tables.c, tables.a, tables.e
    return 2.0 * b + 2.0 * c + 2.0 * c.T - (a[:, None] + a[None, :]) - (e + e.T)


def bernoulli_variances(mu: EdgeProbMatrix) -> np.ndarray:
    """Edge variance matrix q_ij = mu_ij * (1 - mu_ij) (zero diagonal)."""
    return mu.mu * (1.0 - mu.mu)


def triangle_variance(mu: EdgeProbMatrix, nu: np.ndarray) -> float:
    """Triangle-fluctuation component sigma1^2.

    Exact value of

      (4/n^2) * sum_{i<j<k} (1/nu_i + 1/nu_j + 1/nu_k)^2 q_ij q_jk q_ki,

    evaluated by expanding the square: with Q = (q_ij) the triple sum equals
    (1/2) sum_i (Q^3)_ii / nu_i^2  +  sum_{i!=j} q_ij (Q^2)_ij / (nu_i nu_j),
    where the second piece is u^T (Q o Q^2) u with u = 1/nu.  The zero
    diagonal of Q enforces index distinctness.
    """
    n = mu.n
    q = bernoulli_variances(mu)
    u = 1.0 / nu
    qq2 = q * (q @ q)  # Q o Q^2; row sums give diag(Q^3) because Q^2 is symmetric
    term_diag = 0.5 * float(np.dot(u * u, qq2.sum(axis=1)))
    term_cross = float(u @ (qq2 @ u))
    return (4.0 / n**2) * (term_diag + term_cross)


def edge_variance(mu: EdgeProbMatrix, tables: CoefficientTables) -> float:
    """Edge-fluctuation component sigma2^2.

    Exact value of (1/n^2) * sum_{i<j} coef_ij^2 * q_ij with the pairwise
    coefficients of :func:`edge_coefficients`.
    """
    n = mu.n
    coef = edge_coefficients(tables)
    q = bernoulli_variances(mu)
    return (1.0 / n**2) * 0.5 * float((coef * coef * q).sum())


@dataclass
class VarianceComponents:
    """Everything the variance formulas produce for one edge-probability matrix."""

    nu: np.ndarray
    tables: CoefficientTables
    sigma1_sq: float
    sigma2_sq: float

    @property
    def sigma_sq(self) -> float:
        return self.sigma1_sq + self.sigma2_sq

    @property
    def sigma(self) -> float:
        return float(np.sqrt(self.sigma_sq))


def variance_components(mu: EdgeProbMatrix) -> VarianceComponents:
    """Evaluate the full variance decomposition for ``mu``."""
    nu = wedge_means(mu)
    tables = coefficient_tables(mu, nu)
    return VarianceComponents(
        nu=nu,
        tables=tables,
        sigma1_sq=triangle_variance(mu, nu),
        sigma2_sq=edge_variance(mu, tables),
    )


def er_exact_variances(n: int, p: float) -> tuple[float, float]:
    """Finite-n closed forms of (sigma1^2, sigma2^2) for constant weights 1.

    With nu = (n-1)^2 p^2, q = p(1-p) and kappa = (n-2)/(n-1)^2 every
    coefficient table entry equals kappa, so

      sigma1^2 = (4/n^2) * C(n,3) * (3/nu)^2 * q^3
      sigma2^2 = (1/n^2) * C(n,2) * (2*kappa)^2 * q.

    These are exactly what the general evaluation returns for W = 1; they cost
    O(1), which makes large-n sweeps cheap.
    """
    if n < 2:
        raise ParameterError(f"n must be at least 2, got {n}")
    if not 0.0 < p <= 1.0:
        raise ParameterError(f"p must lie in (0, 1], got {p}")
    nu = (n - 1) ** 2 * p * p
    q = p * (1.0 - p)
    triples = n * (n - 1) * (n - 2) / 6.0
    pairs = n * (n - 1) / 2.0
    kappa = (n - 2) / (n - 1) ** 2
    sigma1 = (4.0 / n**2) * triples * (3.0 / nu) ** 2 * q**3
    sigma2 = (1.0 / n**2) * pairs * (2.0 * kappa) ** 2 * q
    return sigma1, sigma2


@dataclass
class ErLeadingVariances:
    """Leading-order variance of the homogeneous model with p = n**(-alpha)."""

    sigma1_leading: float
    sigma2_leading: float
    sigma_leading: float
    regime: str


def er_leading_variances(n: int, alpha: float) -> ErLeadingVariances:
    """Leading-order values 6/n^(3-alpha), 2/n^(2+alpha) and the dominant total.

    The total follows the regime: 6/n^(3-alpha) for alpha > 1/2,
    2/n^(2+alpha) for alpha < 1/2, and 8/n^2.5 exactly at alpha = 1/2.  The
    jump in the constant (6 or 2 away from 1/2, 8 at it) is the phase change.
    """
    if n < 2:
        raise ParameterError(f"n must be at least 2, got {n}")
    regime = regime_for(alpha)
    sigma1 = 6.0 / n ** (3.0 - alpha)
    sigma2 = 2.0 / n ** (2.0 + alpha)
    if regime == REGIME_SPARSE_SIDE:
        total = sigma1
    elif regime == REGIME_DENSE:
        total = sigma2
    else:
        total = 8.0 / n**2.5
    return ErLeadingVariances(
        sigma1_leading=sigma1, sigma2_leading=sigma2, sigma_leading=total, regime=regime
    )
