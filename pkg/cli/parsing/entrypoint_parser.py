'''Module containing argument parsing logic for the command line entrypoint'''
import argparse
from typing import Final, Optional, Sequence

from cli.export import EXPORT_FORMATS
from cli.parsing.arg_parsers import (parse_expectation, parse_filepath, parse_ids, parse_non_negative_int,
                                     parse_positive_int, parse_protocol)
from cli.parsing.explicit_argument_parser import ExplicitArgumentParser

from protocols.properties import STANDARD_PROPERTY_NAMES

__all__ = ('ENTRYPOINT_PARSER', 'parse_args')

ENTRYPOINT_PARSER: Final[ExplicitArgumentParser] = ExplicitArgumentParser(prog='handshake-checker',
                                                                          description='Explicit-state checker for TCP and SCTP handshake models')
_subcommands = ENTRYPOINT_PARSER.add_subparsers(dest='command', required=True, parser_class=ExplicitArgumentParser)

def _add_scenario_arguments(parser: argparse.ArgumentParser, protocol_required: bool = False) -> None:
    parser.add_argument('--protocol', type=parse_protocol, required=protocol_required, default=None,
                        help='Protocol to model: tcp or sctp')
    parser.add_argument('--legit', dest='n_legit', type=parse_non_negative_int, default=None,
                        help='Number of legitimate clients')
    parser.add_argument('--illegit', dest='n_illegit', type=parse_non_negative_int, default=None,
                        help='Number of illegitimate (flooding) clients')
    parser.add_argument('--resources', type=parse_positive_int, default=None,
                        help='Number of server TCB entries, defaults to one per client')
    parser.add_argument('--T', dest='T', type=parse_positive_int, default=None,
                        help='Client retransmission timeout in time units')
    parser.add_argument('--max-retrans', dest='max_retrans', type=parse_non_negative_int, default=None,
                        help='Retransmissions allowed per handshake message')
    parser.add_argument('--config', type=parse_filepath, default=None,
                        help='Scenario file with keys protocol, n_legit, n_illegit, resources, T, max_retrans; flags override it')

# check
CHECK_PARSER: Final[argparse.ArgumentParser] = _subcommands.add_parser('check', help='Build a scenario and check properties against it')
_add_scenario_arguments(CHECK_PARSER)
CHECK_PARSER.add_argument('--prop', action='append', default=[], choices=STANDARD_PROPERTY_NAMES,
                          help='Standard property to check (repeatable)')
CHECK_PARSER.add_argument('--query-file', type=parse_filepath, default=None,
                          help='File of named properties to check after the --prop ones')
CHECK_PARSER.add_argument('--expect', action='append', default=[], type=parse_expectation,
                          help='Expected verdict, paired in order with the checked properties (repeatable)')
CHECK_PARSER.add_argument('--ids', type=parse_ids, default=False,
                          help='Scope of the ids alias for query-file properties without an ids header: all or legitimate')
CHECK_PARSER.add_argument('--format', choices=('text', 'json'), default='text',
                          help='Report format written to stdout')
CHECK_PARSER.add_argument('--report', default=None,
                          help='Also write the JSON report to this path')
CHECK_PARSER.add_argument('--max-states', type=parse_positive_int, default=None,
                          help='Stop and report inconclusive after this many distinct states')
CHECK_PARSER.add_argument('--max-depth', type=parse_positive_int, default=None,
                          help='Stop and report inconclusive below this BFS depth')
CHECK_PARSER.add_argument('--time-budget', type=float, default=None,
                          help='Wall-clock budget per property in seconds')
CHECK_PARSER.add_argument('--parallel', action='store_true', default=False,
                          help='Generate successors of each BFS level in worker threads')
CHECK_PARSER.add_argument('--workers', type=parse_positive_int, default=None,
                          help='Worker threads for --parallel, defaults to the engine configuration')
CHECK_PARSER.add_argument('--engine-config', type=parse_filepath, default=None,
                          help='Engine configuration TOML replacing the bundled checker_config.toml')

# trace
TRACE_PARSER: Final[argparse.ArgumentParser] = _subcommands.add_parser('trace', help='Print the trace of one property from a JSON report')
TRACE_PARSER.add_argument('report', help='Report written by check --report or --format json')
TRACE_PARSER.add_argument('--prop', required=True, help='Property name as it appears in the report')

# export
EXPORT_PARSER: Final[argparse.ArgumentParser] = _subcommands.add_parser('export', help='Render the process templates of a scenario')
_add_scenario_arguments(EXPORT_PARSER, protocol_required=True)
EXPORT_PARSER.add_argument('--format', choices=EXPORT_FORMATS, default='dot', help='Diagram format')
EXPORT_PARSER.add_argument('--output-dir', default=None, help='Write one file per template here instead of stdout')

def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    '''Raises UsageError on malformed command lines'''
    args: argparse.Namespace = ENTRYPOINT_PARSER.parse_args_strict(argv)

    if args.command == 'check' and not (args.prop or args.query_file):
        ENTRYPOINT_PARSER.error('check needs at least one --prop or a --query-file')
    if args.command == 'check' and args.protocol is None and args.config is None:
        ENTRYPOINT_PARSER.error('check needs --protocol or a --config scenario file')

    return args
