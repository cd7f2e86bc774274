"""Per-node wedge and triangle counts, closure and clustering coefficients.

A wedge headed at node i is an ordered 2-path i-j-k (j adjacent to i, k
adjacent to j, k distinct from i).  The closure coefficient of i is the
fraction of wedges headed at i whose endpoints i and k are themselves
adjacent; the clustering coefficient replaces the denominator with the number
of wedges centered at i.  Nodes with no wedge contribute 0 by convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Graph

_CHUNK = 16384  # edges per popcount batch; keeps temporaries cache-sized


@dataclass
class NodeStats:
    """Degree, head-wedge count and closed-wedge count of every node.

    ``head_wedges[i]`` counts ordered 2-paths starting at i and
    ``closed_wedges[i]`` counts those whose endpoints are adjacent, i.e.
    twice the number of triangles through i.
    """

    degrees: np.ndarray
    head_wedges: np.ndarray
    closed_wedges: np.ndarray


def node_motif_counts(g: Graph) -> NodeStats:
    """Count wedges and closed wedges at every node.

    Head wedges come from the identity V_i = sum_j A_ij * (d_j - 1).  Closed
    wedges are accumulated per edge {i, j} as the popcount of the bitwise AND
    of the two adjacency rows (the common-neighbor count), added to both
    endpoints; summed over the edges at i this counts each triangle twice.
    """
    n = g.n
    d = g.degrees
    ii, jj = g.edges()
    head = np.zeros(n, dtype=np.int64)
    closed = np.zeros(n, dtype=np.int64)
    dm1 = d - 1
    for start in range(0, ii.size, _CHUNK):
        i = ii[start:start + _CHUNK]
        j = jj[start:start + _CHUNK]
        head += np.bincount(i, weights=dm1[j], minlength=n).astype(np.int64)
        head += np.bincount(j, weights=dm1[i], minlength=n).astype(np.int64)
        common = np.bitwise_count(g.rows[i] & g.rows[j]).sum(axis=1, dtype=np.int64)
        closed += np.bincount(i, weights=common, minlength=n).astype(np.int64)
        closed += np.bincount(j, weights=common, minlength=n).astype(np.int64)
    return NodeStats(degrees=d, head_wedges=head, closed_wedges=closed)


def closure_coefficients(stats: NodeStats) -> tuple[np.ndarray, float]:
    """Per-node closure coefficients and their average.

    H_i = closed_wedges_i / head_wedges_i, with 0 whenever the node heads no
    wedge (the zero-denominator convention, not an error).
    """
    V = stats.head_wedges
    H = np.divide(
        stats.closed_wedges, V,
        out=np.zeros(len(V), dtype=np.float64), where=V > 0,
    )
    return H, float(H.mean())


def clustering_coefficients(g: Graph, stats: NodeStats | None = None) -> tuple[np.ndarray, float]:
    """Per-node clustering coefficients and their average.

    C_i = closed_wedges_i / (d_i * (d_i - 1)), with 0 for degree below 2.
    Pass precomputed ``stats`` to avoid recounting motifs.
    """
    if stats is None:
        stats = node_motif_counts(g)
    d = stats.degrees
    centered = d * (d - 1)
    C = np.divide(
        stats.closed_wedges, centered,
        out=np.zeros(len(d), dtype=np.float64), where=centered > 0,
    )
    return C, float(C.mean())
