"""Command-line interface.

Subcommands: sample, stats, theory, mc, enum, sweep.  Every run echoes its
resolved configuration in the JSON it prints, all floats are formatted with
12 significant digits, and identical flags always produce byte-identical
output.  Exit codes: 0 success, 1 invalid parameter domain (the message names
the flag), 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ParameterError
from .experiment import (
    McConfig,
    alpha_sweep,
    exact_enumeration,
    fmt,
    run_monte_carlo,
    summary_dict,
    write_replicates_csv,
    write_summary_json,
    write_sweep_csv,
    _round12,
)
from .graphstats import closure_coefficients, clustering_coefficients, node_motif_counts
from .model import (
    WeightSpec,
    build_weight_matrix,
    edge_prob_matrix,
    load_weight_matrix,
    sample_graph,
    save_weight_matrix,
)
from .theory import er_exact_variances, er_leading_variances, variance_components


def _add_weight_flags(sub, with_file=True):
    sub.add_argument("-n", type=int, default=None, help="number of nodes")
    sub.add_argument("--weights", default="constant",
                     choices=["constant", "two-block", "uniform-random"],
                     help="weight matrix kind (default: constant)")
    sub.add_argument("--er", action="store_true",
                     help="homogeneous model: constant weights with beta = 1")
    sub.add_argument("--beta", type=float, default=1.0,
                     help="weight lower bound; also the constant weight value (default: 1)")
    sub.add_argument("--sizes", default=None,
                     help="two-block sizes, e.g. 50,50")
    sub.add_argument("--within", type=float, default=None, help="two-block within-group weight")
    sub.add_argument("--cross", type=float, default=None, help="two-block cross-group weight")
    sub.add_argument("--weight-seed", type=int, default=0,
                     help="seed for uniform-random weights (default: 0)")
    if with_file:
        sub.add_argument("--weights-file", default=None,
                         help="load the weight matrix from a text file instead")
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--alpha", type=float, default=None,
                       help="sparsity exponent: p = n^(-alpha), alpha in (0,1)")
    group.add_argument("--p", type=float, default=None, help="explicit edge scale p in (0,1]")


def _check(condition, flag, message):
    if not condition:
        raise ParameterError(f"invalid {flag}: {message}")


def _weight_spec(args) -> WeightSpec:
    _check(args.n is not None and args.n >= 2, "-n", "must be an integer >= 2")
    kind = "constant" if args.er else args.weights
    beta = 1.0 if args.er else args.beta
    _check(0.0 < beta <= 1.0, "--beta", "must lie in (0, 1]")
    sizes = None
    if kind == "two-block":
        _check(args.sizes is not None, "--sizes", "required for two-block weights")
        try:
            sizes = tuple(int(s) for s in args.sizes.split(","))
        except ValueError:
            raise ParameterError("invalid --sizes: expected two comma-separated integers")
        _check(args.within is not None, "--within", "required for two-block weights")
        _check(args.cross is not None, "--cross", "required for two-block weights")
    return WeightSpec(kind=kind, n=args.n, beta=beta, sizes=sizes,
                      within=args.within, cross=args.cross, seed=args.weight_seed)


def _validate_alpha_p(args):
    if args.alpha is None and args.p is None:
        raise ParameterError("invalid --alpha/--p: exactly one must be supplied")
    if args.alpha is not None:
        _check(0.0 < args.alpha < 1.0, "--alpha", "must lie in (0, 1)")
    if args.p is not None:
        _check(0.0 < args.p <= 1.0, "--p", "must lie in (0, 1]")


def _edge_probs(args):
    """Resolve the weight matrix and edge probabilities from the flags."""
    if getattr(args, "weights_file", None):
        weights = load_weight_matrix(args.weights_file)
        spec_echo = {"kind": "file", "path": args.weights_file,
                     "n": weights.n, "beta": weights.beta}
    else:
        spec = _weight_spec(args)
        weights = build_weight_matrix(spec)
        spec_echo = {
            "kind": spec.kind, "n": spec.n, "beta": spec.beta, "sizes": spec.sizes,
            "within": spec.within, "cross": spec.cross, "seed": spec.seed,
        }
    _validate_alpha_p(args)
    mu = edge_prob_matrix(weights, alpha=args.alpha, p=args.p)
    return weights, mu, spec_echo


def _emit(obj) -> None:
    print(json.dumps(_round12(obj), indent=2, sort_keys=True))


def _config_echo(args, mu, spec_echo) -> dict:
    return {
        "subcommand": args.command,
        "weights": spec_echo,
        "alpha": mu.alpha,
        "p": mu.p,
    }


def _cmd_sample(args) -> int:
    _check(args.seed >= 0, "--seed", "must be a nonnegative integer")
    weights, mu, spec_echo = _edge_probs(args)
    g = sample_graph(mu, args.seed)
    if args.emit_weights:
        save_weight_matrix(weights, args.emit_weights)
    if args.edges_out:
        ii, jj = g.edges()
        with open(args.edges_out, "w") as fh:
            for i, j in zip(ii, jj):
                fh.write(f"{i} {j}\n")
    config = _config_echo(args, mu, spec_echo)
    config["seed"] = args.seed
    _emit({"config": config, "n": g.n, "edge_count": g.edge_count})
    return 0


def _cmd_stats(args) -> int:
    _check(args.seed >= 0, "--seed", "must be a nonnegative integer")
    _, mu, spec_echo = _edge_probs(args)
    g = sample_graph(mu, args.seed)
    stats = node_motif_counts(g)
    H, hbar = closure_coefficients(stats)
    C, cbar = clustering_coefficients(g, stats)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("node,degree,head_wedges,closed_wedges,closure,clustering\n")
            for i in range(g.n):
                fh.write(f"{i},{stats.degrees[i]},{stats.head_wedges[i]},"
                         f"{stats.closed_wedges[i]},{fmt(H[i])},{fmt(C[i])}\n")
    config = _config_echo(args, mu, spec_echo)
    config["seed"] = args.seed
    _emit({"config": config, "n": g.n, "edge_count": g.edge_count,
           "hbar": hbar, "cbar": cbar})
    return 0


def _cmd_theory(args) -> int:
    _, mu, spec_echo = _edge_probs(args)
    comps = variance_components(mu)
    out = {
        "config": _config_echo(args, mu, spec_echo),
        "n": mu.n,
        "sigma1_sq": comps.sigma1_sq,
        "sigma2_sq": comps.sigma2_sq,
        "sigma_sq": comps.sigma_sq,
    }
    if spec_echo.get("kind") == "constant":
        p_eff = mu.p * spec_echo["beta"]
        s1, s2 = er_exact_variances(mu.n, p_eff)
        out["er_exact"] = {"sigma1_sq": s1, "sigma2_sq": s2, "sigma_sq": s1 + s2}
        if mu.alpha is not None and spec_echo["beta"] == 1.0:
            lead = er_leading_variances(mu.n, mu.alpha)
            out["er_leading"] = {
                "sigma1_sq": lead.sigma1_leading,
                "sigma2_sq": lead.sigma2_leading,
                "sigma_sq": lead.sigma_leading,
                "regime": lead.regime,
            }
    _emit(out)
    return 0


def _cmd_mc(args) -> int:
    _check(args.replicates >= 2, "-m", "must be an integer >= 2")
    _check(args.seed >= 0, "--seed", "must be a nonnegative integer")
    _check(args.threads >= 1, "--threads", "must be a positive integer")
    spec = _weight_spec(args)
    _validate_alpha_p(args)
    cfg = McConfig(
        weights=spec,
        replicates=args.replicates,
        master_seed=args.seed,
        alpha=args.alpha,
        p=args.p,
        threads=args.threads,
        record_leading_terms=args.leading_terms,
    )
    summary = run_monte_carlo(cfg)
    if args.csv:
        write_replicates_csv(summary, args.csv)
    if args.json:
        write_summary_json(summary, args.json)
    brief = summary_dict(summary)
    for key in ("seeds", "hbar", "cbar", "z"):  # per-replicate arrays go to files
        brief.pop(key, None)
    _emit(brief)
    return 0


def _cmd_enum(args) -> int:
    _, mu, spec_echo = _edge_probs(args)
    result = exact_enumeration(mu)
    _emit({
        "config": _config_echo(args, mu, spec_echo),
        "n": mu.n,
        "mean": result.mean,
        "variance": result.variance,
        "graph_count": result.graph_count,
        "prob_mass": result.prob_mass,
    })
    return 0


def _parse_grid(text, flag, cast):
    try:
        values = [cast(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise ParameterError(f"invalid {flag}: expected comma-separated values")
    if not values:
        raise ParameterError(f"invalid {flag}: empty grid")
    return values


def _cmd_sweep(args) -> int:
    n_values = _parse_grid(args.n_list, "--n-list", int)
    alpha_values = _parse_grid(args.alpha_list, "--alpha-list", float)
    for n in n_values:
        _check(n >= 2, "--n-list", "every n must be >= 2")
    for alpha in alpha_values:
        _check(0.0 < alpha < 1.0, "--alpha-list", "every alpha must lie in (0, 1)")
    if args.replicates:
        _check(args.replicates >= 2, "-m", "must be an integer >= 2")
    _check(args.threads >= 1, "--threads", "must be a positive integer")
    rows = alpha_sweep(n_values, alpha_values, replicates=args.replicates,
                       master_seed=args.seed, threads=args.threads)
    if args.csv:
        write_sweep_csv(rows, args.csv)
    _emit({
        "config": {
            "subcommand": "sweep",
            "n_list": n_values,
            "alpha_list": alpha_values,
            "replicates": args.replicates,
            "seed": args.seed,
            "threads": args.threads,
        },
        "rows": [vars(row) for row in rows],
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="closurecoef",
        description="Closure-coefficient statistics of heterogeneous random graphs.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sample = subs.add_parser("sample", help="sample one graph")
    _add_weight_flags(sample)
    sample.add_argument("--seed", type=int, default=0, help="graph seed (default: 0)")
    sample.add_argument("--emit-weights", default=None, help="write the weight matrix to a file")
    sample.add_argument("--edges-out", default=None, help="write the edge list to a file")
    sample.set_defaults(func=_cmd_sample)

    stats = subs.add_parser("stats", help="closure/clustering statistics of one sampled graph")
    _add_weight_flags(stats)
    stats.add_argument("--seed", type=int, default=0, help="graph seed (default: 0)")
    stats.add_argument("--csv", default=None, help="write per-node statistics to a CSV file")
    stats.set_defaults(func=_cmd_stats)

    theory = subs.add_parser("theory", help="exact variance components")
    _add_weight_flags(theory)
    theory.set_defaults(func=_cmd_theory)

    mc = subs.add_parser("mc", help="Monte Carlo study of the average closure coefficient")
    _add_weight_flags(mc, with_file=False)
    mc.add_argument("-m", "--replicates", type=int, default=1000,
                    help="number of replicates (default: 1000)")
    mc.add_argument("--seed", type=int, default=0, help="master seed (default: 0)")
    mc.add_argument("--threads", type=int, default=1,
                    help="replicate worker processes; never changes results (default: 1)")
    mc.add_argument("--leading-terms", action="store_true",
                    help="also record the cubic and linear leading terms per replicate")
    mc.add_argument("--csv", default=None, help="write per-replicate values to a CSV file")
    mc.add_argument("--json", default=None, help="write the full summary to a JSON file")
    mc.set_defaults(func=_cmd_mc)

    enum = subs.add_parser("enum", help="exact moments by enumerating all graphs (n <= 5)")
    _add_weight_flags(enum)
    enum.set_defaults(func=_cmd_enum)

    sweep = subs.add_parser("sweep", help="variance phase-change sweep over (n, alpha)")
    sweep.add_argument("--n-list", required=True, help="comma-separated n grid")
    sweep.add_argument("--alpha-list", required=True, help="comma-separated alpha grid")
    sweep.add_argument("-m", "--replicates", type=int, default=0,
                       help="optional Monte Carlo replicates per cell (default: off)")
    sweep.add_argument("--seed", type=int, default=0, help="master seed for the Monte Carlo cells")
    sweep.add_argument("--threads", type=int, default=1, help="worker processes for Monte Carlo")
    sweep.add_argument("--csv", default=None, help="write the sweep table to a CSV file")
    sweep.set_defaults(func=_cmd_sweep)

    return parser


def dispatch(argv=None) -> int:
    """Parse arguments and run the selected subcommand, returning the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())
