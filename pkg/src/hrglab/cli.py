"""Command-line front end.

Subcommands: ``gen`` samples an instance and writes the edge list plus a
coordinate sidecar at <edges-out>.coords; ``analyze`` re-reads those files
and emits one record; ``sweep`` runs a config-file grid into a CSV;
``validate`` re-checks the invariants of an existing CSV.

Exit codes: 0 on success, 1 when an invariant is violated, 2 on invalid
input.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments, graph_params, samplers
from .geometry import HrgParams, theory_bounds
from .graphs import read_edge_list, write_edge_list


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", required=True, choices=experiments.MODELS)
    parser.add_argument("--alpha", required=True, type=float)
    parser.add_argument("--C", type=float, default=None, help="disk radius offset (disk models)")
    parser.add_argument("--lambda", dest="lam", type=float, default=None, help="edge scale (torus model)")


def _c_or_lambda(args) -> float:
    if args.model == "girg":
        if args.C is not None:
            raise ValueError("the torus model takes --lambda, not --C")
        return 1.0 if args.lam is None else args.lam
    if args.lam is not None:
        raise ValueError("disk models take --C, not --lambda")
    return 0.0 if args.C is None else args.C


def _coords_path(edges_path: str) -> str:
    return edges_path + ".coords"


def _sample(model: str, n: int, alpha: float, c_or_lambda: float, seed: int):
    if model == "girg":
        params = samplers.GirgParams(n=n, beta=2.0 * alpha + 1.0, lam=c_or_lambda)
        return samplers.sample_girg_points(params, seed)
    params = HrgParams(n=n, alpha=alpha, C=c_or_lambda)
    if model == "hrg-poisson":
        return samplers.sample_hrg_poisson(params, seed)
    return samplers.sample_hrg(params, seed)


def _cmd_gen(args) -> int:
    c_or_lambda = _c_or_lambda(args)
    points = _sample(args.model, args.n, args.alpha, c_or_lambda, args.seed)
    if args.model == "girg":
        g = samplers.build_girg_edges(points)
        samplers.write_girg_coords(points, _coords_path(args.edges_out))
    else:
        g = samplers.build_edges_sweep(points)
        samplers.write_hrg_coords(points, _coords_path(args.edges_out))
    write_edge_list(g, args.edges_out)
    print(
        f"wrote {g.vertex_count} vertices, {g.edge_count} edges to "
        f"{args.edges_out} (+ .coords)"
    )
    return 0


def _cmd_analyze(args) -> int:
    c_or_lambda = _c_or_lambda(args)
    g = read_edge_list(args.edges_out)
    coords = _coords_path(args.edges_out)
    if args.model == "girg":
        points = samplers.read_girg_coords(
            coords, beta=2.0 * args.alpha + 1.0, lam=c_or_lambda, n=args.n
        )
    else:
        points = samplers.read_hrg_coords(
            coords, alpha=args.alpha, C=c_or_lambda, n=args.n
        )
    if len(points) != g.vertex_count:
        raise ValueError(
            f"{coords} has {len(points)} rows but the edge list has "
            f"{g.vertex_count} vertices"
        )
    analyses = frozenset(a for a in args.analyses.split(",") if a)
    unknown = analyses - set(experiments.ANALYSES)
    if unknown:
        raise ValueError(f"unknown analyses: {sorted(unknown)}")
    columns = experiments.analyze_cell(points, g, analyses)
    bounds = theory_bounds(args.alpha)
    record = experiments.ExperimentRecord(
        model=args.model,
        n=args.n if args.n is not None else len(points),
        alpha=args.alpha,
        c_or_lambda=c_or_lambda,
        seed=args.seed,
        edges=g.edge_count,
        kappa_lower_const=bounds.kappa_lower_const,
        kappa_upper_const=bounds.kappa_upper_const,
        clique_upper_const=bounds.clique_upper_const,
        girg_ratio_const=bounds.girg_ratio_const,
        **columns,
    )
    experiments.validate_records([record])
    if args.out:
        experiments.write_csv([record], args.out)
    else:
        sys.stdout.write(experiments.records_to_csv_bytes([record]).decode())
    return 0


def _cmd_sweep(args) -> int:
    config = experiments.parse_config(args.config)
    if args.threads is not None:
        from dataclasses import replace

        config = replace(config, thread_count=args.threads)
    out = args.out if args.out is not None else config.out
    if out is None:
        raise ValueError("no output path: set 'out' in the config or pass --out")
    records = experiments.run_sweep(config)
    experiments.write_csv(records, out)
    failed = sum(1 for r in records if r.error is not None)
    print(f"wrote {len(records)} records to {out} ({failed} with errors)")
    return 0


def _cmd_validate(args) -> int:
    records = experiments.read_csv(args.csv)
    experiments.validate_records(records)
    print(f"OK: {len(records)} records")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hrglab",
        description="Threshold random graphs on the hyperbolic disk and the "
        "weighted torus: sampling, exact graph parameters, sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="sample an instance, write edge list + coords")
    _add_model_flags(p_gen)
    p_gen.add_argument("--n", required=True, type=int)
    p_gen.add_argument("--seed", required=True, type=int)
    p_gen.add_argument("--edges-out", required=True)
    p_gen.set_defaults(func=_cmd_gen)

    p_an = sub.add_parser("analyze", help="read edge list + coords, emit one record")
    _add_model_flags(p_an)
    p_an.add_argument("--n", type=int, default=None, help="nominal vertex count (defaults to coord rows)")
    p_an.add_argument("--seed", type=int, default=-1, help="seed column value for the record")
    p_an.add_argument("--edges-out", required=True, help="edge list path; coords read from <path>.coords")
    p_an.add_argument("--analyses", default="degeneracy")
    p_an.add_argument("--out", default=None, help="record CSV path (stdout when omitted)")
    p_an.set_defaults(func=_cmd_analyze)

    p_sw = sub.add_parser("sweep", help="run a config-file grid into a CSV")
    p_sw.add_argument("config")
    p_sw.add_argument("--threads", type=int, default=None)
    p_sw.add_argument("--out", default=None)
    p_sw.set_defaults(func=_cmd_sweep)

    p_va = sub.add_parser("validate", help="re-check the invariants of a records CSV")
    p_va.add_argument("csv")
    p_va.set_defaults(func=_cmd_validate)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (graph_params.CliqueBudgetExceeded, RuntimeError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
