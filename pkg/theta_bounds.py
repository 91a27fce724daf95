"""Command-line entry point for the theta and Delsarte bound computations.

Examples:
    python theta_bounds.py theta --n 24 --t 0.9999
    python theta_bounds.py table --n 10..24 --format csv
    python theta_bounds.py delsarte --n 8 --t 0.5 --degree 6
"""
import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli.commands import (
    cmd_bessel,
    cmd_convergence,
    cmd_delsarte,
    cmd_dual_lp,
    cmd_table,
    cmd_theta,
    cmd_zeros,
    parse_dimension_range,
    parse_inner_products,
    parse_integer_list,
)
from src.cli.formatter import OutputFormatter
from src.utils.config import BUILTIN_DEFAULTS, ENV_PREFIX
from src.utils.console import log_status, set_verbose

ENV_HELP = "environment overrides (flags win over both .env and the environment):\n" + "\n".join(
    f"  {ENV_PREFIX}{key.upper():<28} default {value}" for key, value in BUILTIN_DEFAULTS.items()
)


def run_command(args) -> dict:
    """Dispatch parsed arguments to the matching command."""
    deterministic = args.deterministic
    if args.command == 'theta':
        return cmd_theta(args.n, _single(args.t), backend=args.backend,
                         max_degree=args.max_degree, deterministic=deterministic)
    if args.command == 'table':
        return cmd_table(parse_dimension_range(args.n), annotate_shift=args.annotate_shift,
                         deterministic=deterministic)
    if args.command == 'delsarte':
        return cmd_delsarte(args.n, float(_single(args.t)), args.degree, grid=args.grid,
                            deterministic=deterministic)
    if args.command == 'dual-lp':
        return cmd_dual_lp(args.n, parse_inner_products(args.t), args.degree,
                           deterministic=deterministic)
    if args.command == 'zeros':
        return cmd_zeros(args.alpha, args.beta, args.k, backend=args.backend,
                         deterministic=deterministic)
    if args.command == 'bessel-zero':
        return cmd_bessel(args.nu, deterministic=deterministic)
    if args.command == 'convergence':
        return cmd_convergence(args.n, parse_integer_list(args.k), deterministic=deterministic)
    raise ValueError(f"Unknown command '{args.command}'")


def _single(values):
    """The one inner product given to a single-distance command."""
    if len(values) != 1 or ',' in values[0]:
        raise ValueError("This command takes exactly one --t value")
    return values[0]


def build_parser():
    import argparse

    parser = argparse.ArgumentParser(
        description="Theta function bounds for chromatic numbers of spheres and Euclidean spaces",
        epilog=ENV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=['json', 'csv'], default='json',
                        help="Output format (default: json)")
    common.add_argument("--allow-uncertified", action="store_true",
                        help="Exit 0 even when the result is not certified")
    common.add_argument("--deterministic", action="store_true",
                        help="Omit wall time so repeated runs are byte-identical")
    common.add_argument("--verbose", action="store_true",
                        help="Print [INFO] progress lines on stderr")

    subparsers = parser.add_subparsers(dest="command", required=True)

    theta = subparsers.add_parser("theta", parents=[common], epilog=ENV_HELP,
                                  formatter_class=argparse.RawDescriptionHelpFormatter,
                                  help="Theta of G(n, t) and the chromatic lower bound")
    theta.add_argument("--n", type=int, required=True, help="Dimension of R^n (sphere S^(n-1))")
    theta.add_argument("--t", action="append", required=True, help="Inner product in (-1, 1)")
    theta.add_argument("--backend", choices=['float', 'rational'], default='float',
                       help="Arithmetic backend; rational needs odd n")
    theta.add_argument("--max-degree", type=int, default=None, help="Degree scan cap")

    table = subparsers.add_parser("table", parents=[common], epilog=ENV_HELP,
                                  formatter_class=argparse.RawDescriptionHelpFormatter,
                                  help="Limit bounds for chi_m(R^n) over a range of n")
    table.add_argument("--n", required=True, help="Dimensions, e.g. 10..24, 9 or 10,12")
    table.add_argument("--annotate-shift", action="store_true",
                       help="Relabel each row as a bound for dimension n - 1")

    delsarte = subparsers.add_parser("delsarte", parents=[common], epilog=ENV_HELP,
                                     formatter_class=argparse.RawDescriptionHelpFormatter,
                                     help="Delsarte upper bound for spherical codes")
    delsarte.add_argument("--n", type=int, required=True, help="Dimension")
    delsarte.add_argument("--t", action="append", required=True, help="Largest inner product")
    delsarte.add_argument("--degree", type=int, required=True, help="Polynomial degree K")
    delsarte.add_argument("--grid", type=int, default=None,
                          help="Discretization points (default: delsarte_grid_factor * (K + 1))")

    dual = subparsers.add_parser("dual-lp", parents=[common], epilog=ENV_HELP,
                                 formatter_class=argparse.RawDescriptionHelpFormatter,
                                 help="Dual LP bound on theta for one or more inner products")
    dual.add_argument("--n", type=int, required=True, help="Dimension")
    dual.add_argument("--t", action="append", required=True,
                      help="Inner product; repeat or comma-separate for several")
    dual.add_argument("--degree", type=int, required=True, help="Truncation degree K")

    zeros = subparsers.add_parser("zeros", parents=[common], epilog=ENV_HELP,
                                  formatter_class=argparse.RawDescriptionHelpFormatter,
                                  help="Zeros of a normalized Jacobi polynomial")
    zeros.add_argument("--alpha", required=True, help="First parameter, > -1")
    zeros.add_argument("--beta", default=None, help="Second parameter (default: alpha)")
    zeros.add_argument("--k", type=int, required=True, help="Degree")
    zeros.add_argument("--backend", choices=['float', 'rational'], default='float',
                       help="Arithmetic backend for the recurrence coefficients")

    bessel = subparsers.add_parser("bessel-zero", parents=[common], epilog=ENV_HELP,
                                   formatter_class=argparse.RawDescriptionHelpFormatter,
                                   help="First positive zero of J_nu")
    bessel.add_argument("--nu", type=float, required=True, help="Order, >= 0")

    convergence = subparsers.add_parser("convergence", parents=[common], epilog=ENV_HELP,
                                        formatter_class=argparse.RawDescriptionHelpFormatter,
                                        help="Approach of m(t_k) to its t -> 1 limit")
    convergence.add_argument("--n", type=int, required=True, help="Dimension, >= 3")
    convergence.add_argument("--k", action="append", required=True,
                             help="Degrees, repeat or comma-separate (e.g. 2,4,8,16)")
    return parser


def main(argv=None) -> int:
    """Parse arguments, run the command, write the record to stdout and return the exit status."""
    args = build_parser().parse_args(argv)
    set_verbose(args.verbose)

    try:
        formatter = OutputFormatter(args.format)
        record = run_command(args)
    except ValueError as e:
        log_status('ERROR', str(e))
        return 2
    except RuntimeError as e:
        log_status('ERROR', str(e))
        return 1

    sys.stdout.write(formatter.format_record(record))
    sys.stdout.flush()

    if record['certified']:
        log_status('OK', f"{record['command']} finished")
        return 0
    if args.allow_uncertified:
        log_status('WARNING', f"{record['command']} result is not certified (allowed)")
        return 0
    log_status('ERROR', f"{record['command']} result is not certified; "
                        f"pass --allow-uncertified to accept it")
    return 1


if __name__ == "__main__":
    if hasattr(sys.stdout, 'reconfigure'):
        sys.stdout.reconfigure(encoding='utf-8', newline='\n')
    sys.exit(main())
