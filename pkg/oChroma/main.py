"""
Main entry point for the oChroma application.
This module provides the command-line interface for the application.
"""

import sys
import argparse
import logging

from oChroma import config
from oChroma.errors import InputError, NotOColourableError
from oChroma.operations import (
    cmd_analyze, cmd_orbits, cmd_tait, cmd_engine, cmd_snark_scan, cmd_validate, cmd_regenerate,
    load_subject, load_cubic, known_inputs,
)
from oChroma.utils import FORMATS, TEXT


def _input_flags(parser, orientation=True):
    parser.add_argument('--builtin', help=f"Built-in graph ({', '.join(known_inputs())})")
    parser.add_argument('--file', help='VOG file')
    parser.add_argument('--pd', help='PD code, or a file holding one')
    if orientation:
        parser.add_argument('--orientation',
                            help='Named built-in orientation, file of o records, or assignment index')


def build_parser():
    parser = argparse.ArgumentParser(prog='ochroma', description='O-colourings of vertex-oriented 4-regular plane graphs')
    parser.add_argument('--verbose', action='store_true', help='Show detailed debug information')
    parser.add_argument('--format', choices=FORMATS, default=TEXT, help='Report format')
    parser.add_argument('--jobs', type=int, default=None,
                        help='Maximum number of concurrent workers for sweeps (default OCHROMA_MAX_WORKERS)')
    commands = parser.add_subparsers(dest='command')

    analyze = commands.add_parser('analyze', help='List o-cycles, decompositions and chi_o')
    _input_flags(analyze)
    analyze.add_argument('--witness', action='store_true', help='Print an optimal colouring as c records')

    orbits = commands.add_parser('orbits', help='Orbits of orientation assignments under automorphisms')
    _input_flags(orbits, orientation=False)

    tait = commands.add_parser('tait', help='Tait expansion or contraction')
    _input_flags(tait)
    tait.add_argument('--direction', choices=('expand', 'contract'), default='expand')
    tait.add_argument('--matching', type=int, default=0, help='Perfect matching index (contract)')
    tait.add_argument('--output', help='Write the converted VOG document here')

    engine = commands.add_parser('engine', help='Colour with the reduction engine and print its trace')
    _input_flags(engine)
    engine.add_argument('--all', action='store_true', help='Sweep every orientation of the graph')
    engine.add_argument('--output', help='Write the graph with its colouring as a VOG document')

    scan = commands.add_parser('snark-scan', help='O-colourability of every 1-factor contraction of a cubic graph')
    scan.add_argument('--builtin', help='Built-in cubic graph')
    scan.add_argument('--file', help='VOG file of a cubic graph')

    validate = commands.add_parser('validate', help='Check a colouring')
    _input_flags(validate)
    validate.add_argument('--colouring', help='File of c records (defaults to the input file)')

    regenerate = commands.add_parser('regenerate', help='Search orientation bits against the published tables')
    regenerate.add_argument('--builtin', required=True, help='Catalog graph with published tables (star6, star8)')
    return parser


def dispatch(args):
    """
    Run one subcommand.

    Returns:
        str: The report to print
    """
    if args.command == 'analyze':
        subject = load_subject(args.builtin, args.file, args.pd, args.orientation)
        return cmd_analyze(subject, args.format, args.witness)
    if args.command == 'orbits':
        subject = load_subject(args.builtin, args.file, args.pd, need_orientation=False)
        return cmd_orbits(subject, args.format, args.jobs)
    if args.command == 'tait':
        if args.direction == 'contract':
            _, cubic = load_cubic(args.builtin, args.file)
            return cmd_tait('contract', cubic=cubic, matching=args.matching, output=args.output)
        subject = load_subject(args.builtin, args.file, args.pd, args.orientation)
        return cmd_tait('expand', subject=subject, output=args.output)
    if args.command == 'engine':
        subject = load_subject(args.builtin, args.file, args.pd, args.orientation, need_orientation=not args.all)
        return cmd_engine(subject, args.format, args.all, args.jobs, args.output)
    if args.command == 'snark-scan':
        name, cubic = load_cubic(args.builtin, args.file)
        return cmd_snark_scan(name, cubic, args.format, args.jobs)
    if args.command == 'validate':
        subject = load_subject(args.builtin, args.file, args.pd, args.orientation)
        return cmd_validate(subject, args.colouring, args.file)
    if args.command == 'regenerate':
        return cmd_regenerate(args.builtin, args.format, args.jobs)
    raise InputError(f"unknown command {args.command}")


def main(argv=None):
    """
    Main entry point for the oChroma application.
    Parses command-line arguments and dispatches to the appropriate operation.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else config.get_log_level(),
        format='[%(levelname)s] %(name)s: %(message)s',
    )

    logging.getLogger(__name__).debug("settings from %s", config.get_config_file_path())

    if args.jobs is not None and args.jobs < 1:
        print("Error: --jobs must be at least 1", file=sys.stderr)
        sys.exit(2)

    try:
        report = dispatch(args)
    except (InputError, NotOColourableError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        sys.exit(2)
    except Exception as exc:
        logging.getLogger(__name__).debug("internal failure", exc_info=True)
        print(f"Internal error: {exc}", file=sys.stderr)
        sys.exit(1)

    sys.stdout.write(report)


if __name__ == '__main__':
    main()
