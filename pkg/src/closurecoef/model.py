"""Heterogeneous Erdős–Rényi model: weight matrices, edge probabilities, sampling.

The model draws an undirected simple graph on n nodes with independent edges,
P(A_ij = 1) = p * w_ij, where the symmetric weight matrix W has zero diagonal
and off-diagonal entries in [beta, 1].  The edge scale p is either given
explicitly or derived from a sparsity exponent alpha as p = n**(-alpha).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

WEIGHT_KINDS = ("constant", "two-block", "uniform-random")


@dataclass(frozen=True)
class WeightSpec:
    """Recipe for a weight matrix.

    kind "constant" fills every off-diagonal entry with ``beta`` (beta = 1
    gives the homogeneous Erdős–Rényi case).  kind "two-block" splits the
    nodes into two groups of ``sizes`` with ``within`` on same-group pairs and
    ``cross`` on mixed pairs.  kind "uniform-random" draws entries uniformly
    from [beta, 1] with the given ``seed``.
    """

    kind: str
    n: int
    beta: float
    sizes: tuple[int, int] | None = None
    within: float | None = None
    cross: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise ParameterError(f"unknown weight kind {self.kind!r}; expected one of {WEIGHT_KINDS}")
        if self.n < 2:
            raise ParameterError(f"n must be at least 2, got {self.n}")
        if not 0.0 < self.beta <= 1.0:
            raise ParameterError(f"beta must lie in (0, 1], got {self.beta}")
        if self.kind == "two-block":
            if self.sizes is None or self.within is None or self.cross is None:
                raise ParameterError("two-block weights need sizes, within and cross")
            if len(self.sizes) != 2 or min(self.sizes) < 1 or sum(self.sizes) != self.n:
                raise ParameterError(f"block sizes {self.sizes} must be positive and sum to n={self.n}")
            for name, value in (("within", self.within), ("cross", self.cross)):
                if not self.beta <= value <= 1.0:
                    raise ParameterError(f"{name}={value} must lie in [beta, 1] = [{self.beta}, 1]")


@dataclass
class WeightMatrix:
    """Symmetric weight matrix with zero diagonal and entries in [beta, 1]."""

    w: np.ndarray
    beta: float

    def __post_init__(self):
        self.w = np.asarray(self.w, dtype=np.float64)
        if self.w.ndim != 2 or self.w.shape[0] != self.w.shape[1]:
            raise ParameterError(f"weight matrix must be square, got shape {self.w.shape}")
        if self.n < 2:
            raise ParameterError("weight matrix needs at least 2 nodes")
        if not np.array_equal(self.w, self.w.T):
            raise ParameterError("weight matrix must be symmetric")
        if np.any(np.diagonal(self.w) != 0.0):
            raise ParameterError("weight matrix diagonal must be zero")
        off = self.w[~np.eye(self.n, dtype=bool)]
        if off.size and (off.min() < self.beta or off.max() > 1.0):
            raise ParameterError(
                f"off-diagonal weights must lie in [beta, 1] = [{self.beta}, 1], "
                f"got range [{off.min()}, {off.max()}]"
            )

    @property
    def n(self) -> int:
        return self.w.shape[0]


@dataclass
class EdgeProbMatrix:
    """Edge probabilities mu_ij = p * w_ij (symmetric, zero diagonal)."""

    mu: np.ndarray
    p: float
    alpha: float | None = None

    @property
    def n(self) -> int:
        return self.mu.shape[0]


def build_weight_matrix(spec: WeightSpec) -> WeightMatrix:
    """Construct the weight matrix described by ``spec``.

    Deterministic: the same spec (including seed) always yields the same
    matrix.
    """
    n = spec.n
    if spec.kind == "constant":
        w = np.full((n, n), spec.beta, dtype=np.float64)
    elif spec.kind == "two-block":
        n1 = spec.sizes[0]
        group = np.zeros(n, dtype=np.int64)
        group[n1:] = 1
        same = group[:, None] == group[None, :]
        w = np.where(same, spec.within, spec.cross).astype(np.float64)
    else:  # uniform-random
        rng = np.random.default_rng(spec.seed)
        upper = rng.uniform(spec.beta, 1.0, size=n * (n - 1) // 2)
        w = np.zeros((n, n), dtype=np.float64)
        iu = np.triu_indices(n, 1)
        w[iu] = upper
        w = w + w.T
    np.fill_diagonal(w, 0.0)
    return WeightMatrix(w=w, beta=spec.beta)


def edge_prob_matrix(
    weights: WeightMatrix,
    alpha: float | None = None,
    p: float | None = None,
) -> EdgeProbMatrix:
    """Scale the weights into edge probabilities.

    Exactly one of ``alpha`` (giving p = n**(-alpha), alpha in (0, 1)) or an
    explicit ``p`` in (0, 1] must be supplied.
    """
    if (alpha is None) == (p is None):
        raise ParameterError("exactly one of alpha or p must be supplied")
    if alpha is not None:
        if not 0.0 < alpha < 1.0:
            raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
        p = float(weights.n) ** (-alpha)
    else:
        if not 0.0 < p <= 1.0:
            raise ParameterError(f"p must lie in (0, 1], got {p}")
    mu = p * weights.w
    return EdgeProbMatrix(mu=mu, p=float(p), alpha=alpha)


class Graph:
    """Sampled simple graph: dense boolean adjacency plus packed bitset rows.

    Row ``i`` of ``rows`` holds the adjacency bits of node i packed into
    64-bit words (big-endian bit order within each byte, zero padded), which
    makes neighborhood intersections a bitwise AND plus popcount.
    """

    __slots__ = ("n", "adj", "rows", "degrees", "edge_count", "_edges")

    def __init__(self, adj: np.ndarray):
        adj = np.asarray(adj)
        if adj.dtype != np.bool_:
            adj = adj.astype(bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ParameterError(f"adjacency must be square, got shape {adj.shape}")
        if not np.array_equal(adj, adj.T):
            raise ParameterError("adjacency must be symmetric")
        if adj.diagonal().any():
            raise ParameterError("adjacency diagonal must be zero")
        self.n = adj.shape[0]
        self.adj = adj
        words = (self.n + 63) // 64
        packed = np.packbits(adj, axis=1)
        if packed.shape[1] < 8 * words:
            pad = np.zeros((self.n, 8 * words - packed.shape[1]), dtype=np.uint8)
            packed = np.hstack([packed, pad])
        self.rows = np.ascontiguousarray(packed).view(np.uint64)
        self.degrees = adj.sum(axis=1, dtype=np.int64)
        self.edge_count = int(self.degrees.sum()) // 2
        self._edges = None

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Upper-triangle edge endpoints (i < j), row-major order. Cached."""
        if self._edges is None:
            self._edges = np.nonzero(np.triu(self.adj, 1))
        return self._edges

    @classmethod
    def from_edges(cls, n: int, pairs) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for i, j in pairs:
            adj[i, j] = adj[j, i] = True
        return cls(adj)


def sample_graph(mu: EdgeProbMatrix, seed: int) -> Graph:
    """Draw a graph with independent Bernoulli(mu_ij) edges.

    The upper triangle is sampled in row-major order from a fresh generator,
    so a given (mu, seed) pair always produces the same graph.
    """
    n = mu.n
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, 1)
    u = rng.random(n * (n - 1) // 2)
    bits = u < mu.mu[iu]
    adj = np.zeros((n, n), dtype=bool)
    adj[iu] = bits
    adj |= adj.T
    return Graph(adj)


def save_weight_matrix(weights: WeightMatrix, path) -> None:
    """Write a weight matrix as text: first line n, then n rows of n reals.

    Entries are written with 17 significant digits so a reload reproduces the
    matrix bit for bit.
    """
    with open(path, "w") as fh:
        fh.write(f"{weights.n}\n")
        for row in weights.w:
            fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def load_weight_matrix(path) -> WeightMatrix:
    """Read a weight matrix written by :func:`save_weight_matrix`.

    The file is validated against the weight-matrix invariants; beta is taken
    to be the smallest off-diagonal entry.
    """
    with open(path) as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ParameterError(f"weight file {path} is empty")
    n = int(tokens[0])
    values = tokens[1:]
    if len(values) != n * n:
        raise ParameterError(f"weight file {path} declares n={n} but holds {len(values)} entries")
    w = np.array([float(v) for v in values], dtype=np.float64).reshape(n, n)
    off = w[~np.eye(n, dtype=bool)]
    if off.size == 0 or off.min() <= 0.0:
        raise ParameterError("off-diagonal weights must be positive")
    return WeightMatrix(w=w, beta=float(off.min()))
