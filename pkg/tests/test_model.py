"""Weight construction, edge probabilities, sampling, and the weight file format."""

import numpy as np
import pytest

from closurecoef import (
    EdgeProbMatrix,
    Graph,
    ParameterError,
    WeightMatrix,
    WeightSpec,
    build_weight_matrix,
    edge_prob_matrix,
    load_weight_matrix,
    sample_graph,
    save_weight_matrix,
)


def test_constant_weights():
    w = build_weight_matrix(WeightSpec(kind="constant", n=3, beta=1.0)).w
    assert np.array_equal(w, np.ones((3, 3)) - np.eye(3))


def test_two_block_weights():
    spec = WeightSpec(kind="two-block", n=4, beta=0.5, sizes=(2, 2), within=1.0, cross=0.5)
    w = build_weight_matrix(spec).w
    assert w[0, 1] == w[2, 3] == 1.0
    assert w[0, 2] == w[0, 3] == w[1, 2] == w[1, 3] == 0.5
    assert np.all(np.diag(w) == 0.0)


def test_uniform_random_weights_deterministic():
    spec = WeightSpec(kind="uniform-random", n=8, beta=0.3, seed=7)
    w1 = build_weight_matrix(spec).w
    w2 = build_weight_matrix(spec).w
    assert np.array_equal(w1, w2)
    other = build_weight_matrix(WeightSpec(kind="uniform-random", n=8, beta=0.3, seed=8)).w
    assert not np.array_equal(w1, other)


@pytest.mark.parametrize("kind,kwargs", [
    ("constant", {}),
    ("two-block", {"sizes": (3, 4), "within": 0.9, "cross": 0.4}),
    ("uniform-random", {"seed": 11}),
])
def test_weight_matrix_invariants(kind, kwargs):
    beta = 0.4
    spec = WeightSpec(kind=kind, n=7, beta=beta, **kwargs)
    built = build_weight_matrix(spec)
    w = built.w
    assert np.array_equal(w, w.T)
    assert np.all(np.diag(w) == 0.0)
    off = w[~np.eye(7, dtype=bool)]
    assert off.min() >= beta and off.max() <= 1.0


@pytest.mark.parametrize("bad", [
    dict(kind="constant", n=1, beta=0.5),
    dict(kind="constant", n=5, beta=0.0),
    dict(kind="constant", n=5, beta=1.5),
    dict(kind="nope", n=5, beta=0.5),
    dict(kind="two-block", n=5, beta=0.5),  # missing block parameters
    dict(kind="two-block", n=5, beta=0.5, sizes=(2, 2), within=1.0, cross=0.5),  # sizes sum
    dict(kind="two-block", n=4, beta=0.6, sizes=(2, 2), within=1.0, cross=0.5),  # cross < beta
])
def test_weight_spec_validation(bad):
    with pytest.raises(ParameterError):
        WeightSpec(**bad)


def test_edge_prob_alpha_half_n4():
    weights = build_weight_matrix(WeightSpec(kind="constant", n=4, beta=1.0))
    mu = edge_prob_matrix(weights, alpha=0.5)
    assert mu.p == pytest.approx(0.5, abs=0.0)
    off = mu.mu[~np.eye(4, dtype=bool)]
    assert np.all(off == 0.5)


def test_edge_prob_explicit_p_product():
    w = np.full((5, 5), 0.8)
    np.fill_diagonal(w, 0.0)
    mu = edge_prob_matrix(WeightMatrix(w=w, beta=0.8), p=0.25)
    off = mu.mu[~np.eye(5, dtype=bool)]
    assert np.allclose(off, 0.2)
    assert mu.alpha is None


def test_edge_prob_domain_errors():
    weights = build_weight_matrix(WeightSpec(kind="constant", n=4, beta=1.0))
    with pytest.raises(ParameterError):
        edge_prob_matrix(weights, alpha=1.5)
    with pytest.raises(ParameterError):
        edge_prob_matrix(weights, alpha=0.5, p=0.5)
    with pytest.raises(ParameterError):
        edge_prob_matrix(weights)
    with pytest.raises(ParameterError):
        edge_prob_matrix(weights, p=0.0)


def test_sample_extremes():
    n = 6
    empty = sample_graph(EdgeProbMatrix(mu=np.zeros((n, n)), p=1.0), seed=1)
    assert empty.edge_count == 0
    ones = np.ones((n, n))
    np.fill_diagonal(ones, 0.0)
    complete = sample_graph(EdgeProbMatrix(mu=ones, p=1.0), seed=1)
    assert complete.edge_count == n * (n - 1) // 2


def test_sample_seed_determinism():
    weights = build_weight_matrix(WeightSpec(kind="uniform-random", n=30, beta=0.4, seed=2))
    mu = edge_prob_matrix(weights, alpha=0.4)
    g1 = sample_graph(mu, seed=123)
    g2 = sample_graph(mu, seed=123)
    assert np.array_equal(g1.adj, g2.adj)
    g3 = sample_graph(mu, seed=124)
    assert not np.array_equal(g1.adj, g3.adj)


def test_sampled_graph_invariants():
    weights = build_weight_matrix(WeightSpec(kind="uniform-random", n=25, beta=0.3, seed=9))
    mu = edge_prob_matrix(weights, p=0.6)
    for seed in range(5):
        g = sample_graph(mu, seed)
        assert np.array_equal(g.adj, g.adj.T)
        assert not g.adj.diagonal().any()
        assert g.edge_count == int(g.adj.sum()) // 2
        assert np.array_equal(g.degrees, g.adj.sum(axis=1))


def test_mean_edge_count_binomial():
    # C(100,2) pairs at p = 1/2: mean 2475, per-graph standard deviation 35.2
    weights = build_weight_matrix(WeightSpec(kind="constant", n=100, beta=1.0))
    mu = edge_prob_matrix(weights, p=0.5)
    counts = [sample_graph(mu, seed).edge_count for seed in range(200)]
    assert abs(np.mean(counts) - 2475.0) < 3 * 35.2


def test_edge_frequencies_match_mu():
    n, m = 10, 10_000
    weights = build_weight_matrix(WeightSpec(kind="uniform-random", n=n, beta=0.3, seed=4))
    mu = edge_prob_matrix(weights, p=0.5)
    freq = np.zeros((n, n))
    for seed in range(m):
        freq += sample_graph(mu, seed).adj
    freq /= m
    iu = np.triu_indices(n, 1)
    se = np.sqrt(mu.mu[iu] * (1.0 - mu.mu[iu]) / m)
    assert np.all(np.abs(freq[iu] - mu.mu[iu]) < 4.0 * se)


def test_weight_file_round_trip(tmp_path):
    weights = build_weight_matrix(WeightSpec(kind="uniform-random", n=12, beta=0.25, seed=6))
    path = tmp_path / "w.txt"
    save_weight_matrix(weights, path)
    loaded = load_weight_matrix(path)
    assert np.array_equal(loaded.w, weights.w)
    assert loaded.beta == weights.w[~np.eye(12, dtype=bool)].min()


def test_weight_file_validation(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n0 1\n1 0\n0 extra\n")
    with pytest.raises(ParameterError):
        load_weight_matrix(bad)
    asym = tmp_path / "asym.txt"
    asym.write_text("2\n0 0.5\n0.6 0\n")
    with pytest.raises(ParameterError):
        load_weight_matrix(asym)
    zero = tmp_path / "zero.txt"
    zero.write_text("2\n0 0\n0 0\n")
    with pytest.raises(ParameterError):
        load_weight_matrix(zero)


def test_graph_rejects_invalid_adjacency():
    bad = np.zeros((3, 3), dtype=bool)
    bad[0, 1] = True  # not symmetric
    with pytest.raises(ParameterError):
        Graph(bad)
    loop = np.zeros((3, 3), dtype=bool)
    loop[1, 1] = True
    with pytest.raises(ParameterError):
        Graph(loop)
