import argparse
import os
import sys

from .config import parse_config, expand_matrix, ConfigError
from .runner import run_case, run_study, bench


def _read_config(arg):
    if os.path.exists(arg):
        with open(arg) as f:
            return f.read()
    if "=" in arg:
        return arg
    raise ConfigError("no such configuration file %r" % arg)


def build_parser():
    parser = argparse.ArgumentParser(prog="libboltz", description="Steady-state kinetic solver")
    sub = parser.add_subparsers(dest="command", metavar="solve|study|bench")
    sub.required = True

    def _common(p):
        p.add_argument('config', metavar='<config>', help='configuration file or inline key=value text')
        p.add_argument('--method', metavar='SI|SGS-FP|SGS-PFP|MG-SGS-PFP', help='outer iteration')
        p.add_argument('--eps', type=float, metavar='<float>', help='Knudsen number')
        p.add_argument('--order', type=int, metavar='1|2', help='order of the spatial scheme')
        p.add_argument('--out', metavar='<dir>', help='output directory')
        p.add_argument('--paper-scale', '--full-scale', dest='full_scale', action='store_true',
                       help='use the full grid sizes of the case')
        p.add_argument('-v', '--verbose', action='store_true', help='print the residual of every iteration')

    _common(sub.add_parser('solve', help='solve one case'))
    study = sub.add_parser('study', help='convergence study over nested grids')
    _common(study)
    study.add_argument('--grids', type=int, nargs='+', required=True, metavar='<int>', help='cells per axis of the study grids')
    study.add_argument('--ref', type=int, required=True, metavar='<int>', help='cells per axis of the reference grid')
    _common(sub.add_parser('bench', help="run a matrix of cases, values may list '|' alternatives"))
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    overrides = {
        "method": args.method,
        "eps": args.eps,
        "order": args.order,
        "out": args.out,
        "full_scale": True if args.full_scale else None,
    }
    silent = not args.verbose
    try:
        text = _read_config(args.config)
        if args.command == "bench":
            cases = expand_matrix(text, overrides)
            table = bench(cases, args.out or cases[0]["out"], silent=silent)
            print(table.to_string(index=False))
            return int(any(table["status"] != "converged"))
        case = parse_config(text, overrides)
        if args.command == "study":
            run_study(case, args.grids, args.ref, silent=silent)
            return 0
        status, _ = run_case(case, silent=silent)
        return status
    except (ConfigError, ValueError) as e:
        print("libboltz: error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
