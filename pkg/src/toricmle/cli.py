"""Command-line front end.

    toricmle model gen --family scroll --n 4,4,4 [--scaling ones|binomial|file.json]
    toricmle mle --solver ips --model m.json --data u.csv [--eps 1e-11] [--max-iter N]
    toricmle mle --solver homotopy --model m.json --data u.csv --easy-scaling e.json [--trace out.csv]
    toricmle mldegree --family scroll --n 2,2 --scaling ones
    toricmle sigma-test --mode hypersurface|ver2 --model m.json
    toricmle bench [--d 5,10,15] [--k 4-13] [--trials 7] [--seed 0] [--out bench.csv]

Exit status: 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import families, io
from .bench import BenchSpec, parse_range, run_bench
from .errors import DimensionMismatch, InvalidData, ToricError
from .homotopy import solve_homotopy
from .ips import IpsConfig, ips_solve
from .model import birch_residual


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _shape(text: str) -> tuple[int, int]:
    try:
        m, n = text.lower().split("x")
        return int(m), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MxN, got {text!r}")


def _emit(obj, pretty: bool) -> None:
    if pretty:
        print(json.dumps(obj, indent=2, default=str))
    else:
        print(json.dumps(obj, default=str))


def _scaling_arg(value: Optional[str], family: str, build_default):
    if value is None or value == "ones":
        return None
    if value == "binomial":
        return build_default()
    return io.load_scaling(value)


def _gen_model(args):
    fam = args.family
    if fam == "scroll":
        if not args.n:
            raise UsageError("--n is required for scroll")
        spec = families.ScrollSpec(tuple(args.n))
        c = _scaling_arg(args.scaling, fam, lambda: families.binomial_scroll_scaling(spec))
        return families.scroll_model(spec, c)
    if fam == "veronese":
        if args.dim is None or args.deg is None:
            raise UsageError("--dim and --deg are required for veronese")
        c = _scaling_arg(args.scaling, fam,
                         lambda: families.veronese_rank1_scaling(args.dim, args.deg, [1] * (args.dim + 1)))
        return families.veronese_model(args.dim, args.deg, c)
    if fam == "segre":
        if args.shape is None:
            raise UsageError("--shape is required for segre")
        m, n = args.shape
        if args.scaling == "binomial":
            raise InvalidData("binomial scaling is defined for scrolls and Veronese models only")
        c = _scaling_arg(args.scaling, fam, None)
        return families.segre_model(m, n, c)
    if fam == "hierarchical":
        if not args.facets or not args.levels:
            raise UsageError("--facets and --levels are required for hierarchical")
        if args.scaling == "binomial":
            raise InvalidData("binomial scaling is defined for scrolls and Veronese models only")
        facets = [f.strip() for f in args.facets.split(",") if f.strip()]
        c = _scaling_arg(args.scaling, fam, None)
        return families.hierarchical_model(facets, args.levels, c)
    raise UsageError(f"unknown family {fam!r}")


def cmd_model(args):
    model = _gen_model(args)
    _emit(model.to_json(), args.pretty)
    return 0


def cmd_mle(args):
    model = io.load_model(args.model)
    u = io.load_data(args.data)
    if args.solver == "ips":
        result = ips_solve(model, u, IpsConfig(epsilon=args.eps, max_iterations=args.max_iter))
    else:
        if not args.easy_scaling:
            raise UsageError("--easy-scaling is required for the homotopy solver")
        c_easy = io.load_scaling(args.easy_scaling)
        result, trace = solve_homotopy(model, u, c_easy)
        if args.trace:
            trace.write_csv(args.trace)
    resid = birch_residual(model, u, result.p_hat)
    if resid > args.eps:
        raise ToricError(f"Birch residual {resid:.3g} exceeds requested epsilon {args.eps:g}")
    _emit(result.to_json(), args.pretty)
    return 0


def cmd_mldegree(args):
    if args.family != "scroll":
        raise UsageError("mldegree supports --family scroll")
    if not args.n:
        raise UsageError("--n is required")
    spec = families.ScrollSpec(tuple(args.n))
    if args.scaling in (None, "ones"):
        c = [1] * spec.n
    elif args.scaling == "binomial":
        c = families.binomial_scroll_scaling(spec)
    else:
        c = io.load_scaling(args.scaling)
    deg = families.scroll_mldegree(spec, c)
    if args.pretty:
        print(f"ML degree of scroll {spec.n_list}: {deg} (degree of the variety: {spec.degree})")
    else:
        print(json.dumps(deg))
    return 0


def cmd_sigma(args):
    model = io.load_model(args.model)
    if args.mode == "hypersurface":
        in_sigma, value = families.hypersurface_sigma_test(model)
        details = {"in_sigma": in_sigma, "discriminant": str(value),
                   "kernel": list(families.hypersurface_kernel(model).w)}
    else:
        m = model.d - 1
        expected = families.veronese_model(m, 2)
        if not model.same_matrix(expected):
            raise DimensionMismatch(f"model is not Ver({m},2) in the standard column order")
        in_sigma, minors = families.ver2_sigma_test(m, model.c)
        details = {"in_sigma": in_sigma,
                   "minors": {"".join(map(str, k)): str(v) for k, v in minors.items()}}
    if args.pretty:
        _emit(details, True)
    else:
        print(json.dumps(in_sigma))
    return 0


def cmd_bench(args):
    spec = BenchSpec(d_values=parse_range(args.d), k_values=parse_range(args.k),
                     trials=args.trials, seed=args.seed, output=args.out)
    text = run_bench(spec, threads=args.threads)
    if not args.out:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")

    p = argparse.ArgumentParser(prog="toricmle", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    pm = sub.add_parser("model", help="model construction")
    msub = pm.add_subparsers(dest="model_command", required=True)
    g = msub.add_parser("gen", parents=[common], help="generate a model file")
    g.add_argument("--family", required=True, choices=["scroll", "veronese", "segre", "hierarchical"])
    g.add_argument("--n", type=_ints)
    g.add_argument("--dim", type=int)
    g.add_argument("--deg", type=int)
    g.add_argument("--shape", type=_shape)
    g.add_argument("--facets")
    g.add_argument("--levels", type=_ints)
    g.add_argument("--scaling", help="ones, binomial, or a JSON scaling file")
    g.set_defaults(func=cmd_model)

    m = sub.add_parser("mle", parents=[common], help="maximum likelihood estimate")
    m.add_argument("--solver", choices=["ips", "homotopy"], default="ips")
    m.add_argument("--model", required=True)
    m.add_argument("--data", required=True)
    m.add_argument("--eps", type=float, default=1e-11)
    m.add_argument("--max-iter", type=int, default=1_000_000)
    m.add_argument("--easy-scaling")
    m.add_argument("--trace")
    m.set_defaults(func=cmd_mle)

    d = sub.add_parser("mldegree", parents=[common], help="exact ML degree of a scroll")
    d.add_argument("--family", required=True, choices=["scroll"])
    d.add_argument("--n", type=_ints, required=True)
    d.add_argument("--scaling", help="ones, binomial, or a JSON scaling file")
    d.set_defaults(func=cmd_mldegree)

    s = sub.add_parser("sigma-test", parents=[common], help="exact principal A-determinant membership")
    s.add_argument("--mode", required=True, choices=["hypersurface", "ver2"])
    s.add_argument("--model", required=True)
    s.set_defaults(func=cmd_sigma)

    b = sub.add_parser("bench", parents=[common], help="IPS vs homotopy timing grid")
    b.add_argument("--d", default="5,10,15", help="numbers of scroll blocks")
    b.add_argument("--k", default="4-13", help="block sizes n_i = k")
    b.add_argument("--trials", type=int, default=7)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out")
    b.add_argument("--threads", type=int)
    b.set_defaults(func=cmd_bench)
    return p


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ToricError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
