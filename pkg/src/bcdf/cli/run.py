"""
Command line entry point: ``bcdf <subcommand> [flags]``.

Every subcommand writes a CSV table with a header row to standard output, or to ``--out``. Exit codes: 0 on
success, 2 for invalid flags or arguments outside the domain of an operation, 1 for numerical failures.

MIT License
"""

import argparse
import logging
import pathlib as pl
import sys
from typing import Sequence

import numpy as np
import pandas as pd
from pydantic import ValidationError

from ..analysis import exact_mise_decomposition, exact_mse_curve, mise_terms
from ..constants import (
    alpha_grid_size,
    classical_name,
    condition_tol,
    default_estimate_grid,
    default_n,
    default_reps,
    default_seed,
    family_names,
    kernel_names,
)
from ..distributions import BetaMixture, Distribution, Uniform, reference_mixtures, solve_params
from ..errors import NumericalError
from ..estimator import EstimatorConfig, Sample, evaluate_grid
from ..kernels import BaseKernel, BoundaryKernelFamily
from ..simulation import Region, SimConfig, run_ise, summarize
from ..utils import FloatArray, uniform_grid

logger = logging.getLogger(__name__)


def _alpha_grid(m: int) -> FloatArray:
    """alpha = 1/(m+1), ..., m/(m+1): the 99 point default is 0.01, ..., 0.99."""
    return np.arange(1, m + 1, dtype=np.float64) / (m + 1)


def _bandwidth_value(text: str) -> float | str:
    if text == 'optimal':
        return text
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f'bandwidth must be positive, got {text}')
    return value


def _region(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(part) for part in text.split(':'))
    except ValueError:
        raise argparse.ArgumentTypeError(f'region must be written lo:hi, got {text!r}') from None
    return lo, hi


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f'expected a positive integer, got {text}')
    return value


def _families(names: Sequence[str], allow_classical: bool) -> list[str]:
    allowed = (classical_name, *family_names) if allow_classical else family_names
    chosen = list(family_names) if list(names) == ['all'] else list(names)
    for name in chosen:
        if name not in allowed:
            raise ValueError(f'unknown estimator {name!r}, expected one of {allowed}')
    return chosen


def _add_distribution_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('distribution', 'either --w and --b, or --d1-at-0 and --d2-at-0, or --uniform')
    group.add_argument('--w', type=float, help='weight of the B(1,2) component')
    group.add_argument('--b', dest='shape_b', type=float, help='shape parameter of the B(2,b) component')
    group.add_argument('--d1-at-0', type=float, help="target F'(0+) of the mixture")
    group.add_argument('--d2-at-0', type=float, help="target F''(0+) of the mixture")
    group.add_argument('--uniform', action='store_true', help='the uniform distribution on [0, 1]')


def _distribution(args: argparse.Namespace) -> Distribution:
    by_params = args.w is not None or args.shape_b is not None
    by_targets = args.d1_at_0 is not None or args.d2_at_0 is not None
    if sum([by_params, by_targets, args.uniform]) != 1:
        raise ValueError('give exactly one of (--w, --b), (--d1-at-0, --d2-at-0) or --uniform')
    if args.uniform:
        return Uniform()
    if by_params:
        if args.w is None or args.shape_b is None:
            raise ValueError('--w and --b must be given together')
        return BetaMixture(w=args.w, shape_b=args.shape_b)
    if args.d1_at_0 is None or args.d2_at_0 is None:
        raise ValueError('--d1-at-0 and --d2-at-0 must be given together')
    return solve_params(args.d1_at_0, args.d2_at_0)


def _resolve_h(h: float | str, dist: Distribution, base: BaseKernel, n: int) -> float:
    if h == 'optimal':
        h0 = mise_terms(dist, base, n).h0
        logger.info(f'using the optimal bandwidth h0={h0}')
        return h0
    return float(h)


def _read_sample(path: str) -> Sample:
    text = pl.Path(path).read_text()
    values = [float(line) for line in text.split() if line.strip()]
    return Sample(np.array(values, dtype=np.float64))


def cmd_estimate(args: argparse.Namespace) -> pd.DataFrame:
    family = None if args.family == classical_name else BoundaryKernelFamily(args.family, BaseKernel(args.kernel))
    cfg = EstimatorConfig(a=args.a, b=args.b, h=args.h, base=BaseKernel(args.kernel), family=family)
    sample = _read_sample(args.data)
    grid = uniform_grid(args.a, args.b, args.grid)
    return pd.DataFrame({'x': grid, 'Fhat': evaluate_grid(sample, cfg, grid)})


def cmd_coeffs(args: argparse.Namespace) -> pd.DataFrame:
    base = BaseKernel(args.kernel)
    alphas = _alpha_grid(args.alphas)
    tables = [BoundaryKernelFamily(name, base).coefficient_table(alphas) for name in _families(args.family, False)]
    return pd.concat(tables, ignore_index=True)


def cmd_mse_curve(args: argparse.Namespace) -> pd.DataFrame:
    dist = _distribution(args)
    base = BaseKernel(args.kernel)
    h = _resolve_h(args.h, dist, base, args.n)
    a, b = dist.support
    alphas = _alpha_grid(args.alphas)
    rows = []
    for name in _families(args.family, False):
        family = BoundaryKernelFamily(name, base)  # type: ignore[arg-type]
        cfg = EstimatorConfig(a=a, b=b, h=h, base=base, family=family)
        for alpha, record in zip(alphas, exact_mse_curve(dist, cfg, args.n, alphas)):
            rows.append(
                {
                    'family': name,
                    'alpha': alpha,
                    'x': record.x,
                    'bias': record.bias,
                    'variance': record.variance,
                    'mse': record.mse,
                }
            )
    return pd.DataFrame(rows)


def cmd_mise(args: argparse.Namespace) -> pd.DataFrame:
    dist = _distribution(args)
    base = BaseKernel(args.kernel)
    terms = mise_terms(dist, base, args.n)
    a, b = dist.support
    family = None if args.family == classical_name else BoundaryKernelFamily(args.family, base)
    cfg = EstimatorConfig(a=a, b=b, h=args.h[0], base=base, family=family)
    rows = []
    for h in args.h:
        exact = exact_mise_decomposition(dist, cfg.with_bandwidth(h), args.n)
        leading = float(terms.expansion(h))
        rows.append(
            {
                'h': h,
                'exact_variance': exact.integrated_variance,
                'exact_sq_bias': exact.integrated_sq_bias,
                'exact_mise': exact.mise,
                'leading_mise': leading,
                'relative_gap': (exact.mise - leading) / exact.mise,
            }
        )
    return pd.DataFrame(rows)


def cmd_bandwidth(args: argparse.Namespace) -> pd.DataFrame:
    dist = _distribution(args)
    terms = mise_terms(dist, BaseKernel(args.kernel), args.n)
    return pd.DataFrame(
        [{'kernel': args.kernel, 'n': args.n, 'h0': terms.h0, 'delta_k': terms.delta_k, 'roughness': terms.roughness}]
    )


def cmd_simulate(args: argparse.Namespace) -> pd.DataFrame:
    dist = _distribution(args)
    regions = None if not args.region else tuple(Region(lo=lo, hi=hi) for lo, hi in args.region)
    cfg = SimConfig(
        dist=dist,
        n=args.n,
        reps=args.reps,
        seed=args.seed,
        base=BaseKernel(args.kernel),
        families=tuple(_families(args.families, True)),
        h=args.h,
        regions=regions,
    )
    result = run_ise(cfg, threads=args.threads)
    if args.summary is not None:
        summarize(result).to_csv(args.summary, index=False)
    elif args.out is not None:
        out = pl.Path(args.out)
        summarize(result).to_csv(out.with_name(f'{out.stem}_summary.csv'), index=False)
    return result.to_frame()


def cmd_check_kernels(args: argparse.Namespace) -> pd.DataFrame:
    base = BaseKernel(args.kernel)
    alphas = _alpha_grid(alpha_grid_size)
    families = [BoundaryKernelFamily(name, base) for name in _families(args.family, False)]  # type: ignore[arg-type]
    reports = [family.check_conditions(alphas, args.tol) for family in families]
    report = pd.concat(reports, ignore_index=True)
    # K3 satisfies only the weaker condition
    expected_c1 = report['family'] != 'k3'
    failed = (~report['c2']) | (expected_c1 & ~report['c1'])
    if failed.any():
        logger.error(f'{int(failed.sum())} kernel condition checks failed')
        args.failed = True
    return report


def cmd_kernel_shape(args: argparse.Namespace) -> pd.DataFrame:
    base = BaseKernel(args.kernel)
    grid = uniform_grid(-1.0, 1.0, args.grid)
    tables = [BoundaryKernelFamily(name, base).kernel_table(args.alpha, grid) for name in _families(args.family, False)]
    return pd.concat(tables, ignore_index=True)


def cmd_mixtures(args: argparse.Namespace) -> pd.DataFrame:
    base = BaseKernel(args.kernel)
    rows = []
    for mixture in reference_mixtures():
        rows.append(
            {
                'w': mixture.w,
                'b': mixture.shape_b,
                'd1_at_0': mixture.d1_at_0,
                'd2_at_0': mixture.d2_at_0,
                'roughness': mixture.roughness(),
                'h0': mise_terms(mixture, base, args.n).h0,
            }
        )
    return pd.DataFrame(rows)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', type=str, default=None, help='write the CSV table to this file instead of stdout')
    common.add_argument('--kernel', choices=kernel_names, default='epanechnikov', help='base kernel')

    parser = argparse.ArgumentParser(
        prog='bcdf', description='Boundary-corrected kernel estimation of distribution functions.'
    )
    parser.add_argument(
        '--log-level', default='WARNING', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], help='logging level on stderr'
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('estimate', parents=[common], help='evaluate an estimator on a uniform grid')
    p.add_argument('--data', required=True, help='file with one observation per line')
    p.add_argument('--a', type=float, required=True, help='left end of the support')
    p.add_argument('--b', type=float, required=True, help='right end of the support')
    p.add_argument('--h', type=float, required=True, help='bandwidth')
    p.add_argument('--family', choices=(classical_name, *family_names), default='k3', help='estimator')
    p.add_argument('--grid', type=_positive_int, default=default_estimate_grid, help='number of grid points')
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser('coeffs', parents=[common], help='bias and variance coefficients mu_L and nu_L')
    p.add_argument('--family', nargs='+', default=['all'], help="boundary families, or 'all'")
    p.add_argument('--alphas', type=_positive_int, default=alpha_grid_size, help='number of interior alpha values')
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser('mse-curve', parents=[common], help='exact boundary MSE over alpha')
    _add_distribution_flags(p)
    p.add_argument('--n', type=_positive_int, default=default_n, help='sample size')
    p.add_argument('--h', type=_bandwidth_value, default='optimal', help="bandwidth, or 'optimal'")
    p.add_argument('--family', nargs='+', default=['all'], help="boundary families, or 'all'")
    p.add_argument('--alphas', type=_positive_int, default=alpha_grid_size, help='number of interior alpha values')
    p.set_defaults(func=cmd_mse_curve)

    p = sub.add_parser('mise', parents=[common], help='exact MISE against its leading-term expansion')
    _add_distribution_flags(p)
    p.add_argument('--n', type=_positive_int, default=default_n, help='sample size')
    p.add_argument('--family', choices=(classical_name, *family_names), default='k3', help='estimator')
    p.add_argument('--h', type=float, nargs='+', default=[0.2, 0.1, 0.05], help='bandwidths')
    p.set_defaults(func=cmd_mise)

    p = sub.add_parser('bandwidth', parents=[common], help='asymptotically optimal bandwidth h0')
    _add_distribution_flags(p)
    p.add_argument('--n', type=_positive_int, default=default_n, help='sample size')
    p.set_defaults(func=cmd_bandwidth)

    p = sub.add_parser('simulate', parents=[common], help='Monte Carlo integrated squared errors')
    _add_distribution_flags(p)
    p.add_argument('--n', type=_positive_int, default=default_n, help='sample size')
    p.add_argument('--reps', type=_positive_int, default=default_reps, help='number of replicates')
    p.add_argument('--seed', type=int, default=default_seed, help='master seed')
    p.add_argument('--families', nargs='+', default=[classical_name, *family_names], help='estimators to compare')
    p.add_argument('--h', type=_bandwidth_value, default='optimal', help="bandwidth, or 'optimal'")
    p.add_argument('--region', type=_region, action='append', help='integration region lo:hi (repeatable)')
    p.add_argument('--threads', type=_positive_int, default=1, help='worker threads')
    p.add_argument('--summary', type=str, default=None, help='write the summary table to this file')
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser('check-kernels', parents=[common], help='moment conditions of the boundary kernels')
    p.add_argument('--family', nargs='+', default=['all'], help="boundary families, or 'all'")
    p.add_argument('--tol', type=float, default=condition_tol, help='tolerance on the residuals')
    p.set_defaults(func=cmd_check_kernels)

    p = sub.add_parser('kernel-shape', parents=[common], help='boundary kernels and their antiderivatives')
    p.add_argument('--family', nargs='+', default=['all'], help="boundary families, or 'all'")
    p.add_argument('--alpha', type=float, default=0.5, help='boundary parameter in (0, 1)')
    p.add_argument('--grid', type=_positive_int, default=201, help='number of u values on [-1, 1]')
    p.set_defaults(func=cmd_kernel_shape)

    p = sub.add_parser('mixtures', parents=[common], help='the eight beta-mixture test distributions')
    p.add_argument('--n', type=_positive_int, default=default_n, help='sample size for h0')
    p.set_defaults(func=cmd_mixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2

    logging.basicConfig(level=args.log_level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')
    args.failed = False
    try:
        table = args.func(args)
    except NumericalError as exc:
        print(f'bcdf {args.command}: numerical failure: {exc}', file=sys.stderr)
        return 1
    except (ValueError, ValidationError, OSError) as exc:
        print(f'bcdf {args.command}: {exc}', file=sys.stderr)
        return 2

    if args.out is None:
        table.to_csv(sys.stdout, index=False)
    else:
        table.to_csv(args.out, index=False)
    return 1 if args.failed else 0


if __name__ == '__main__':
    sys.exit(main())
