"""Monte Carlo harness, normality diagnostics, enumeration oracle, alpha sweep.

Replicates are reproducible and order-independent: replicate r draws its graph
from a seed derived by hashing (master_seed, r), so the worker-pool width
never changes any number.  Aggregation is a fold over replicate index order.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict

import numpy as np
from scipy.stats import norm
from threadpoolctl import threadpool_limits

from .errors import DegenerateSampleError, EnumerationSizeError, ParameterError
from .expansion import cubic_leading_term, linear_leading_term
from .graphstats import closure_coefficients, clustering_coefficients, node_motif_counts
from .model import (
    EdgeProbMatrix,
    Graph,
    WeightSpec,
    build_weight_matrix,
    edge_prob_matrix,
    sample_graph,
)
from .theory import edge_coefficients, er_exact_variances, variance_components

ENUM_MAX_NODES = 5

CENTER_SAMPLE_MEAN = "sample-mean"
CENTER_EXACT = "exact-enumeration"


def replicate_seed(master_seed: int, index: int) -> int:
    """Deterministic 64-bit seed for one replicate, hashed from (master, index)."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(index,))
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class McConfig:
    """One Monte Carlo run: model, replicate count, seeding and outputs."""

    weights: WeightSpec
    replicates: int
    master_seed: int
    alpha: float | None = None
    p: float | None = None
    threads: int = 1
    record_clustering: bool = True
    record_leading_terms: bool = False


@dataclass
class McSummary:
    """Replicate values plus distributional diagnostics of the average closure coefficient."""

    config: McConfig
    seeds: np.ndarray
    hbar: np.ndarray
    cbar: np.ndarray | None
    cubic: np.ndarray | None
    linear: np.ndarray | None
    p: float
    sample_mean: float
    sample_variance: float
    sigma1_sq: float
    sigma2_sq: float
    sigma_sq: float
    variance_ratio: float
    center: float
    centering: str
    z: np.ndarray | None
    ks_d: float
    skewness: float
    excess_kurtosis: float
    degenerate: bool


def _replicate_batch(payload: dict, indices: np.ndarray, seeds: np.ndarray) -> dict:
    """Compute per-replicate statistics for one batch of replicate indices.

    Runs with BLAS pinned to one thread so results are identical whether the
    batch executes inline or inside a worker process.
    """
    mu = EdgeProbMatrix(mu=payload["mu"], p=payload["p"], alpha=payload["alpha"])
    nu = payload["nu"]
    coef = payload["coef"]
    out = {
        "indices": indices,
        "hbar": np.empty(len(indices)),
        "cbar": np.empty(len(indices)) if payload["record_clustering"] else None,
        "cubic": np.empty(len(indices)) if coef is not None else None,
        "linear": np.empty(len(indices)) if coef is not None else None,
    }
    with threadpool_limits(limits=1):
        for pos, seed in enumerate(seeds):
            g = sample_graph(mu, int(seed))
            stats = node_motif_counts(g)
            _, hbar = closure_coefficients(stats)
            out["hbar"][pos] = hbar
            if out["cbar"] is not None:
                _, cbar = clustering_coefficients(g, stats)
                out["cbar"][pos] = cbar
            if coef is not None:
                out["cubic"][pos] = cubic_leading_term(g, mu, nu)
                out["linear"][pos] = linear_leading_term(g, mu, coef)
    return out


def run_monte_carlo(cfg: McConfig) -> McSummary:
    """Sample ``cfg.replicates`` graphs and summarize the closure coefficient.

    Standardized scores are z_r = (hbar_r - center) / sigma with sigma from
    the variance formulas; the center is the exact enumeration mean when the
    graph is small enough to enumerate (n <= 5) and the sample mean otherwise.
    """
    if cfg.replicates < 2:
        raise ParameterError(f"replicates must be at least 2, got {cfg.replicates}")
    m = cfg.replicates
    weights = build_weight_matrix(cfg.weights)
    mu = edge_prob_matrix(weights, alpha=cfg.alpha, p=cfg.p)
    comps = variance_components(mu)
    coef = edge_coefficients(comps.tables) if cfg.record_leading_terms else None
    payload = {
        "mu": mu.mu,
        "p": mu.p,
        "alpha": mu.alpha,
        "nu": comps.nu,
        "coef": coef,
        "record_clustering": cfg.record_clustering,
    }
    seeds = np.array([replicate_seed(cfg.master_seed, r) for r in range(m)], dtype=np.uint64)
    indices = np.arange(m)

    hbar = np.empty(m)
    cbar = np.empty(m) if cfg.record_clustering else None
    cubic = np.empty(m) if cfg.record_leading_terms else None
    linear = np.empty(m) if cfg.record_leading_terms else None

    def fold(batch: dict) -> None:
        idx = batch["indices"]
        hbar[idx] = batch["hbar"]
        if cbar is not None:
            cbar[idx] = batch["cbar"]
        if cubic is not None:
            cubic[idx] = batch["cubic"]
            linear[idx] = batch["linear"]

    if cfg.threads <= 1:
        fold(_replicate_batch(payload, indices, seeds))
    else:
        n_batches = min(m, cfg.threads * 4)
        parts = np.array_split(indices, n_batches)
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            futures = [pool.submit(_replicate_batch, payload, part, seeds[part]) for part in parts]
            for future in futures:
                fold(future.result())

    sample_mean = float(hbar.mean())
    sample_variance = float(hbar.var(ddof=1))
    sigma_sq = comps.sigma_sq

    if mu.n <= ENUM_MAX_NODES:
        center = exact_enumeration(mu).mean
        centering = CENTER_EXACT
    else:
        center = sample_mean
        centering = CENTER_SAMPLE_MEAN

    degenerate = sigma_sq <= 0.0 or sample_variance == 0.0
    z = None
    ks_d = skewness = excess_kurtosis = float("nan")
    variance_ratio = float("nan")
    if sigma_sq > 0.0:
        variance_ratio = sample_variance / sigma_sq
        z = (hbar - center) / np.sqrt(sigma_sq)
        if not degenerate and m >= 8:
            ks_d, skewness, excess_kurtosis = normality_stats(z)

    return McSummary(
        config=cfg,
        seeds=seeds,
        hbar=hbar,
        cbar=cbar,
        cubic=cubic,
        linear=linear,
        p=mu.p,
        sample_mean=sample_mean,
        sample_variance=sample_variance,
        sigma1_sq=comps.sigma1_sq,
        sigma2_sq=comps.sigma2_sq,
        sigma_sq=sigma_sq,
        variance_ratio=variance_ratio,
        center=center,
        centering=centering,
        z=z,
        ks_d=ks_d,
        skewness=skewness,
        excess_kurtosis=excess_kurtosis,
        degenerate=degenerate,
    )


def normality_stats(z) -> tuple[float, float, float]:
    """Kolmogorov-Smirnov distance to N(0,1), skewness and excess kurtosis.

    The KS statistic is the largest one-sided gap between the empirical CDF
    (evaluated just before and at each sorted sample point) and the standard
    normal CDF.  Skewness and excess kurtosis are the usual moment ratios
    m3/m2^1.5 and m4/m2^2 - 3.  A zero-variance sample has no standardized
    distribution, so it raises :class:`DegenerateSampleError`.
    """
    z = np.asarray(z, dtype=np.float64)
    if z.size < 8:
        raise ParameterError(f"need at least 8 values for normality diagnostics, got {z.size}")
    m = z.size
    centered = z - z.mean()
    m2 = float((centered**2).mean())
    if m2 == 0.0:
        raise DegenerateSampleError("sample has zero variance")
    zs = np.sort(z)
    cdf = norm.cdf(zs)
    grid = np.arange(1, m + 1) / m
    d_plus = float((grid - cdf).max())
    d_minus = float((cdf - (grid - 1.0 / m)).max())
    ks_d = max(d_plus, d_minus)
    skew = float((centered**3).mean()) / m2**1.5
    exkurt = float((centered**4).mean()) / m2**2 - 3.0
    return ks_d, skew, exkurt


@dataclass
class EnumResult:
    """Exact closure-coefficient moments from summing over every graph."""

    mean: float
    variance: float
    graph_count: int
    prob_mass: float


def exact_enumeration(mu) -> EnumResult:
    """Exact E[hbar] and Var(hbar) by enumerating all 2^C(n,2) graphs.

    Each graph is weighted by the product of its edge probabilities; the total
    probability mass is returned so callers can confirm it sums to one.
    """
    n = mu.n
    if n > ENUM_MAX_NODES:
        raise EnumerationSizeError(
            f"exact enumeration supports n <= {ENUM_MAX_NODES}, got n={n}"
        )
    iu, ju = np.triu_indices(n, 1)
    probs = mu.mu[iu, ju]
    n_pairs = len(probs)
    mean = 0.0
    second = 0.0
    mass = 0.0
    for code in range(1 << n_pairs):
        present = (code >> np.arange(n_pairs)) & 1
        weight = float(np.prod(np.where(present, probs, 1.0 - probs)))
        adj = np.zeros((n, n), dtype=bool)
        adj[iu, ju] = present.astype(bool)
        adj |= adj.T
        _, hbar = closure_coefficients(node_motif_counts(Graph(adj)))
        mass += weight
        mean += weight * hbar
        second += weight * hbar * hbar
    return EnumResult(
        mean=mean,
        variance=second - mean * mean,
        graph_count=1 << n_pairs,
        prob_mass=mass,
    )


@dataclass
class SweepRow:
    """One (n, alpha) cell of the phase-transition sweep (homogeneous weights)."""

    n: int
    alpha: float
    p: float
    sigma1_sq: float
    sigma2_sq: float
    sigma_sq: float
    scaled_sigma1: float
    scaled_sigma2: float
    scaled_sigma: float
    variance_ratio: float


def alpha_sweep(
    n_values,
    alpha_values,
    replicates: int = 0,
    master_seed: int = 0,
    threads: int = 1,
) -> list[SweepRow]:
    """Exact variance components over a grid of (n, alpha), optionally with Monte Carlo.

    For each cell the homogeneous closed forms give sigma1^2 and sigma2^2 in
    O(1); the scaled columns n^(3-alpha) sigma1^2, n^(2+alpha) sigma2^2 and
    n^2.5 sigma^2 approach 6, 2 and (at alpha = 1/2) 8.  With ``replicates``
    >= 2 a Monte Carlo run adds the sample-variance / sigma^2 ratio.
    """
    rows = []
    for row_idx, (n, alpha) in enumerate(
        (n, alpha) for n in n_values for alpha in alpha_values
    ):
        p = float(n) ** (-alpha)
        s1, s2 = er_exact_variances(n, p)
        total = s1 + s2
        ratio = float("nan")
        if replicates >= 2:
            cfg = McConfig(
                weights=WeightSpec(kind="constant", n=n, beta=1.0),
                replicates=replicates,
                master_seed=replicate_seed(master_seed, row_idx),
                alpha=alpha,
                threads=threads,
                record_clustering=False,
            )
            ratio = run_monte_carlo(cfg).variance_ratio
        rows.append(
            SweepRow(
                n=n,
                alpha=alpha,
                p=p,
                sigma1_sq=s1,
                sigma2_sq=s2,
                sigma_sq=total,
                scaled_sigma1=float(n) ** (3.0 - alpha) * s1,
                scaled_sigma2=float(n) ** (2.0 + alpha) * s2,
                scaled_sigma=float(n) ** 2.5 * total,
                variance_ratio=ratio,
            )
        )
    return rows


# ---------------------------------------------------------------------------
# Output formatting: CSV / JSON with 12-significant-digit floats so repeated
# runs are byte-identical.

def fmt(x) -> str:
    return f"{float(x):.12g}"


def _round12(value):
    if isinstance(value, float):
        if np.isnan(value):
            return None
        return float(fmt(value))
    if isinstance(value, np.ndarray):
        return [_round12(float(v)) for v in value]
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return _round12(float(value))
    return value


def config_dict(cfg: McConfig) -> dict:
    return _round12(asdict(cfg))


def summary_dict(summary: McSummary) -> dict:
    """JSON-ready view of a Monte Carlo summary (config echoed, floats rounded)."""
    out = {
        "config": config_dict(summary.config),
        "n": summary.config.weights.n,
        "p": summary.p,
        "replicates": summary.config.replicates,
        "sample_mean": summary.sample_mean,
        "sample_variance": summary.sample_variance,
        "sigma1_sq": summary.sigma1_sq,
        "sigma2_sq": summary.sigma2_sq,
        "sigma_sq": summary.sigma_sq,
        "variance_ratio": summary.variance_ratio,
        "center": summary.center,
        "centering": summary.centering,
        "ks_d": summary.ks_d,
        "skewness": summary.skewness,
        "excess_kurtosis": summary.excess_kurtosis,
        "degenerate": summary.degenerate,
        "seeds": [int(s) for s in summary.seeds],
        "hbar": summary.hbar,
        "cbar": summary.cbar,
        "z": summary.z,
    }
    return _round12(out)


def write_summary_json(summary: McSummary, path) -> None:
    with open(path, "w") as fh:
        json.dump(summary_dict(summary), fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_replicates_csv(summary: McSummary, path) -> None:
    """One row per replicate: replicate, seed, hbar, cbar, cubic_term, linear_term."""
    m = summary.config.replicates
    nanrow = ["nan"] * m

    def col(values):
        return [fmt(v) for v in values] if values is not None else nanrow

    cbar, cubic, linear = col(summary.cbar), col(summary.cubic), col(summary.linear)
    with open(path, "w") as fh:
        fh.write("replicate,seed,hbar,cbar,cubic_term,linear_term\n")
        for r in range(m):
            fh.write(
                f"{r},{summary.seeds[r]},{fmt(summary.hbar[r])},"
                f"{cbar[r]},{cubic[r]},{linear[r]}\n"
            )


def write_sweep_csv(rows: list[SweepRow], path) -> None:
    columns = (
        "n,alpha,p,sigma1_sq,sigma2_sq,sigma_sq,"
        "scaled_sigma1,scaled_sigma2,scaled_sigma,variance_ratio"
    )
    with open(path, "w") as fh:
        fh.write(columns + "\n")
        for row in rows:
            fh.write(
                f"{row.n},{fmt(row.alpha)},{fmt(row.p)},{fmt(row.sigma1_sq)},"
                f"{fmt(row.sigma2_sq)},{fmt(row.sigma_sq)},{fmt(row.scaled_sigma1)},"
                f"{fmt(row.scaled_sigma2)},{fmt(row.scaled_sigma)},{fmt(row.variance_ratio)}\n"
            )
