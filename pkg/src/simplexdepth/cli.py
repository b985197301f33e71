"""Command-line interface.

Subcommands: ``depth`` (depth of a composition w.r.t. a CSV point cloud),
``maxdepth`` / ``limit`` (closed-form and Monte Carlo maximal depth),
``probe`` / ``search`` (stochastic-ordering lab), ``fig1`` / ``fig2`` /
``fig3`` / ``validate-median`` (experiment runners).

Exit codes: 0 success, 1 input error, 2 numerical non-convergence. Every
randomized subcommand requires an explicit ``--seed``; results go to stdout,
diagnostics to stderr, and files are written only under ``--out``.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .depth import BudgetExceededError, depth_approx, depth_brute, depth_exact_2d
from .experiments import desk_config, full_config, run_fig1, run_fig2, run_fig3, \
    validate_median
from .geometry import embed_simplex
from .maxdepth import max_depth_gamma, max_depth_limit_gamma, max_depth_mc
from .ordering import counterexample_search, eaton_olshen_probe, \
    write_counterexample_csv
from .sampling import DistributionSpec, load_points_csv
from .special import NonConvergenceError

THETA_SUM_TOL = 1e-9


class CliInputError(Exception):
    """Bad command line or bad input data: exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); keep 2 for numerics
        raise CliInputError(message)


def _parse_floats(text: str, *, name: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v != ""]
    except ValueError as exc:
        raise CliInputError(f"could not parse {name} {text!r}: {exc}") from exc
    if not values:
        raise CliInputError(f"{name} is empty")
    return values


def _parse_ints(text: str, *, name: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v != ""]
    except ValueError as exc:
        raise CliInputError(f"could not parse {name} {text!r}: {exc}") from exc
    if not values:
        raise CliInputError(f"{name} is empty")
    return values


def _composition_or_die(values: list[float], *, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.size < 2:
        raise CliInputError(f"{name} needs at least 2 coordinates")
    if np.any(arr < 0):
        raise CliInputError(f"{name} has negative coordinates")
    if abs(arr.sum() - 1.0) > THETA_SUM_TOL:
        raise CliInputError(
            f"{name} sums to {arr.sum()!r}, outside 1 +/- {THETA_SUM_TOL:g}")
    return arr


def cmd_depth(args) -> int:
    try:
        points = load_points_csv(args.input)
    except OSError as exc:
        raise CliInputError(f"cannot read {args.input}: {exc}") from exc
    theta = _composition_or_die(_parse_floats(args.theta, name="--theta"),
                                name="--theta")
    if points.shape[1] != theta.size:
        raise CliInputError(f"input has {points.shape[1]} columns, "
                            f"theta has {theta.size}")
    try:
        emb_pts = embed_simplex(points)
    except ValueError as exc:
        raise CliInputError(f"input rows are not compositions: {exc}") from exc
    emb_theta = embed_simplex(theta.reshape(1, -1))[0]
    d = emb_pts.shape[1]
    if args.method == "exact":
        if d == 2:
            result = depth_exact_2d(emb_theta, emb_pts)
        elif d == 1:
            result = depth_brute(emb_theta, emb_pts)
        else:
            raise CliInputError(
                f"exact method supports k in {{2, 3}}, got k={theta.size}; "
                "use --method brute or approx")
    elif args.method == "brute":
        result = depth_brute(emb_theta, emb_pts)
    else:
        if args.seed is None:
            raise CliInputError("--method approx requires --seed")
        result = depth_approx(emb_theta, emb_pts, args.directions, args.seed)
    frac = result.depth
    print(f"{frac.numerator}/{frac.denominator} = {float(frac):.12g}")
    return 0


def cmd_maxdepth(args) -> int:
    if args.k < 2:
        raise CliInputError(f"--k must be >= 2, got {args.k}")
    if args.alpha <= 0:
        raise CliInputError(f"--alpha must be positive, got {args.alpha}")
    if args.mc:
        if args.seed is None:
            raise CliInputError("--mc requires --seed")
        value = max_depth_mc(args.k, DistributionSpec.gamma_shape(args.alpha),
                             args.n, args.seed)
        print(f"{value.value:.12g} (mc, n={value.n}, se={value.std_error:.3g})")
    else:
        value = max_depth_gamma(args.k, args.alpha)
        print(f"{value.value:.12g}")
    if not value.within_proved_class:
        print("note: alpha > 1 is outside the proved unimodal-at-zero class; "
              "the value is the barycentre tail probability", file=sys.stderr)
    return 0


def cmd_limit(args) -> int:
    if args.alpha <= 0:
        raise CliInputError(f"--alpha must be positive, got {args.alpha}")
    print(f"{max_depth_limit_gamma(args.alpha).value:.12g}")
    return 0


def cmd_probe(args) -> int:
    a = _parse_floats(args.a, name="--a")
    b = _parse_floats(args.b, name="--b")
    try:
        verdict = eaton_olshen_probe(
            DistributionSpec.gamma_shape(args.alpha_w),
            DistributionSpec.gamma_shape(args.alpha_q),
            a, b, args.n, args.seed, args.confidence)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    print(f"{verdict.status} gap={verdict.gap:.6g} band={verdict.band:.6g} "
          f"worst_t={verdict.worst_t:.6g}")
    return 0


def cmd_search(args) -> int:
    alphas = _parse_floats(args.alphas, name="--alphas")
    try:
        records = counterexample_search(alphas, args.pairs, args.n, args.seed,
                                        confidence=args.confidence)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    print(f"found {len(records)} violation(s)")
    for r in records:
        a = ",".join(f"{v:.4g}" for v in r.a)
        b = ",".join(f"{v:.4g}" for v in r.b)
        print(f"alpha={r.alpha:g} a=({a}) b=({b}) gap={r.gap:.6g} "
              f"worst_t={r.worst_t:.6g} seed={r.seed}")
    if args.out is not None:
        from pathlib import Path

        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "search.csv", "w", encoding="utf-8", newline="\n") as fh:
            write_counterexample_csv(records, fh)
    return 0


def _experiment_config(kind: str, args):
    factory = desk_config if args.scale == "desk" else full_config
    overrides = {}
    if getattr(args, "n", None) is not None:
        overrides["n"] = args.n
    if getattr(args, "m", None) is not None:
        overrides["M"] = args.m
    if getattr(args, "locations", None) is not None:
        overrides["N"] = args.locations
    if getattr(args, "k_max", None) is not None:
        overrides["k_max"] = args.k_max
    if getattr(args, "n_values", None) is not None:
        overrides["n_values"] = tuple(_parse_ints(args.n_values,
                                                  name="--n-values"))
    if getattr(args, "resolution", None) is not None:
        overrides["grid_resolution"] = args.resolution
    if getattr(args, "alphas", None) is not None:
        overrides["alphas"] = tuple(_parse_floats(args.alphas, name="--alphas"))
    try:
        return factory(kind, seed=args.seed, output_dir=args.out, **overrides)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc


def cmd_fig1(args) -> int:
    result = run_fig1(_experiment_config("fig1", args))
    for alpha in result.config.alphas:
        rows = result.rows_for(alpha)
        last = rows[-1]
        print(f"alpha={alpha:g}: h({rows[0].k})={rows[0].h_closed:.6g} .. "
              f"h({last.k})={last.h_closed:.6g}, limit={last.h_limit:.6g}")
    return 0


def cmd_fig2(args) -> int:
    result = run_fig2(_experiment_config("fig2", args))
    for res in result.per_alpha:
        print(f"alpha={res.alpha:g}: mu depth={res.mu_avg_depth:.6g}, "
              f"max location depth={res.summary.max:.6g}, "
              f"min margin={res.min_margin:+.6g}")
    return 0


def cmd_fig3(args) -> int:
    result = run_fig3(_experiment_config("fig3", args))
    for c in result.cells:
        tag = "" if c.asserted else " (reported only)"
        print(f"alpha={c.alpha:g} n={c.n}: median={c.summary.median:.6g} "
              f"iqr={c.summary.iqr:.6g} closed={c.h_reference:.6g}{tag}")
    return 0


def cmd_validate(args) -> int:
    result = validate_median(_experiment_config("validate", args))
    for rep in result.reports:
        pt = ",".join(f"{v:.4g}" for v in rep.argmax_point)
        note = "" if rep.mu_on_lattice else \
            " (barycentre off-lattice; nearest point " + \
            ",".join(f"{v:.4g}" for v in rep.nearest_lattice_point) + ")"
        print(f"alpha={rep.alpha:g}: argmax=({pt}) depth={rep.argmax_depth:.6g} "
              f"mu depth={rep.mu_depth:.6g} gap={rep.gap:+.6g} "
              f"threshold={rep.threshold:.6g} "
              f"{'PASS' if rep.passed else 'FAIL'}{note}")
    return 0 if all(rep.passed for rep in result.reports) else 1


def _add_seed(parser, required: bool = True):
    parser.add_argument("--seed", type=int, required=required,
                        help="stream seed (required: no ambient entropy)")


def _add_experiment_flags(parser):
    parser.add_argument("--out", default=None, metavar="DIR",
                        help="directory for CSV/SVG output")
    parser.add_argument("--scale", choices=("desk", "paper"), default="desk")
    parser.add_argument("--alphas", default=None,
                        help="comma-separated shape values")
    _add_seed(parser)


def build_parser() -> _Parser:
    parser = _Parser(prog="simplexdepth",
                     description="Halfspace depth for compositional data")
    parser.add_argument("--version", action="version",
                        version=f"simplex-depth {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("depth", help="depth of a composition w.r.t. a CSV cloud")
    p.add_argument("--input", required=True, help="headerless CSV, k columns")
    p.add_argument("--theta", required=True, help="comma-separated composition")
    p.add_argument("--method", choices=("exact", "brute", "approx"),
                   default="exact")
    p.add_argument("--directions", type=int, default=1000)
    _add_seed(p, required=False)
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("maxdepth", help="maximal depth of the barycentre")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--mc", action="store_true",
                   help="Monte Carlo estimate instead of closed form")
    p.add_argument("--n", type=int, default=1_000_000)
    _add_seed(p, required=False)
    p.set_defaults(func=cmd_maxdepth)

    p = sub.add_parser("limit", help="large-k limit of the maximal depth")
    p.add_argument("--alpha", type=float, required=True)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("probe", help="empirical ratio-ordering probe")
    p.add_argument("--alpha-w", type=float, required=True, dest="alpha_w")
    p.add_argument("--alpha-q", type=float, default=1.0, dest="alpha_q")
    p.add_argument("--a", required=True, help="comma-separated weights")
    p.add_argument("--b", required=True, help="comma-separated weights")
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--confidence", type=float, default=0.99)
    _add_seed(p)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("search",
                       help="search ordering violations (expected only for "
                            "shapes above 1)")
    p.add_argument("--alphas", default="2,4,8,16")
    p.add_argument("--pairs", type=int, default=40)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--confidence", type=float, default=0.99)
    p.add_argument("--out", default=None, metavar="DIR")
    _add_seed(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("fig1", help="maximal-depth curves by dimension")
    p.add_argument("--k-max", type=int, default=None, dest="k_max")
    p.add_argument("--n", type=int, default=None,
                   help="Monte Carlo compositions per point")
    _add_experiment_flags(p)
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("fig2", help="random-location depths vs barycentre")
    p.add_argument("--locations", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None, help="replicates")
    _add_experiment_flags(p)
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("fig3", help="barycentre depth by sample size")
    p.add_argument("--m", type=int, default=None, help="replicates")
    p.add_argument("--n-values", default=None, dest="n_values",
                   help="comma-separated sample sizes")
    _add_experiment_flags(p)
    p.set_defaults(func=cmd_fig3)

    p = sub.add_parser("validate-median",
                       help="grid check that the barycentre maximizes depth")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--resolution", type=int, default=None)
    _add_experiment_flags(p)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NonConvergenceError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
