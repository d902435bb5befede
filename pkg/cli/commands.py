'''Sub-command handlers: each returns an exit status and writes its output to the given stream'''
import argparse
import asyncio
import sys
from pathlib import Path
from typing import Any, NamedTuple, Optional, TextIO

from models.errors import ElaborationError, UsageError

from checker.bootup import create_checker_config, create_logger
from checker.compiled import CompiledSystem, compile_system
from checker.config.checker_config import CheckerConfig
from checker.exploration import Limits, Verdict, VerdictKind, check, check_parallel
from checker.log_models import LogAuthor, LogType, Severity
from checker.logging import Logger

from protocols.dispatch import build_system
from protocols.properties import standard_property
from protocols.scenario import SCENARIO_FIELDS, ScenarioConfig

from query.ast import PropertyAst
from query.elaboration import ElaboratedProperty, elaborate
from query.grammar import parse_property
from query.query_file import load_query_file

from cli.exit_codes import ExitCode, combine, expectation_status
from cli.export import system_dot
from cli.report import PropertyReport, RunReport, property_report
from cli.trace_format import format_report, format_trace

__all__ = ('SelectedProperty', 'scenario_from_args', 'select_properties', 'cmd_check', 'cmd_trace', 'cmd_export')

class SelectedProperty(NamedTuple):
    name: str
    text: str
    ast: PropertyAst
    legitimate_ids_only: bool
    expected: Optional[VerdictKind]

def scenario_from_args(args: argparse.Namespace) -> ScenarioConfig:
    '''Scenario file values (if any) overridden by the flags that were given'''
    overrides: dict[str, Any] = {field : getattr(args, field, None) for field in SCENARIO_FIELDS}
    if args.config is not None:
        return ScenarioConfig.from_file(args.config, **overrides)
    return ScenarioConfig.create(**overrides)

def select_properties(args: argparse.Namespace, scenario: ScenarioConfig) -> list[SelectedProperty]:
    '''Standard properties in --prop order, then query-file entries, paired with --expect in that order.

    Raises:
        UsageError: more expectations than properties, or a repeated property name
        PropertySyntaxError: a property does not parse
    '''
    selected: list[tuple[str, str, PropertyAst, bool]] = []
    for name in args.prop:
        standard = standard_property(name, scenario)
        selected.append((standard.name, standard.text, parse_property(standard.text), standard.legitimate_ids_only))
    if args.query_file is not None:
        for entry in load_query_file(args.query_file):
            legitimate_only: bool = args.ids if entry.legitimate_ids_only is None else entry.legitimate_ids_only
            selected.append((entry.name, entry.text, entry.ast, legitimate_only))

    names: list[str] = [name for name, *_ in selected]
    if len(set(names)) != len(names):
        raise UsageError(f'Property names must be unique within a run, got {", ".join(names)}')
    if len(args.expect) > len(selected):
        raise UsageError(f'{len(args.expect)} expectations given for {len(selected)} properties')

    expectations: list[Optional[VerdictKind]] = [*args.expect, *([None] * (len(selected) - len(args.expect)))]
    return [SelectedProperty(name, text, ast, legitimate_only, expected)
            for (name, text, ast, legitimate_only), expected in zip(selected, expectations)]

def _run_check(compiled: CompiledSystem, prop: ElaboratedProperty, limits: Limits, config: CheckerConfig,
               logger: Logger, scenario: str, parallel: bool, workers: Optional[int]) -> Verdict:
    if parallel:
        return asyncio.run(check_parallel(compiled, prop, limits, config, logger, scenario, workers))
    return check(compiled, prop, limits, config, logger, scenario)

def cmd_check(args: argparse.Namespace, out: TextIO = sys.stdout, logger: Optional[Logger] = None) -> int:
    '''Build the scenario, elaborate every selected property, check them in order and emit the report.

    Raises:
        ConfigurationError, UsageError, PropertySyntaxError, ElaborationError: input problems, mapped to exit 2 by the caller
    '''
    config: CheckerConfig = create_checker_config(args.engine_config, max_states=args.max_states,
                                                  max_depth=args.max_depth, time_budget=args.time_budget)
    owns_logger: bool = logger is None
    logger = logger or create_logger(config)
    try:
        scenario: ScenarioConfig = scenario_from_args(args)
        logger.log(Severity.INFO, f'Checking {scenario.label}', category=LogType.CONFIGURATION,
                   author=LogAuthor.COMMAND_HANDLER, scenario=scenario.label)
        compiled: CompiledSystem = compile_system(build_system(scenario))
        selected: list[SelectedProperty] = select_properties(args, scenario)

        elaborated: list[ElaboratedProperty] = []
        for prop in selected:
            try:
                elaborated.append(elaborate(prop.ast, compiled, prop.legitimate_ids_only))
            except ElaborationError as elaboration_error:
                logger.log(Severity.ERROR, f'{prop.name}: {elaboration_error.description}', category=LogType.QUERY,
                           author=LogAuthor.ELABORATOR, scenario=scenario.label)
                raise ElaborationError(f'Property {prop.name}: {elaboration_error.description}')

        limits: Limits = Limits.from_config(config)
        reports: list[PropertyReport] = []
        for prop, ground in zip(selected, elaborated):
            verdict: Verdict = _run_check(compiled, ground, limits, config, logger, scenario.label, args.parallel, args.workers)
            reports.append(property_report(compiled, prop.name, prop.text, verdict, prop.legitimate_ids_only, prop.expected))

        run: RunReport = RunReport(scenario=scenario, limits=limits, properties=tuple(reports))
        if args.report:
            run.write(args.report)
        out.write(run.to_json().decode('utf-8') if args.format == 'json' else format_report(run))
        out.write('\n')
        return combine(expectation_status(report.verdict, report.expected) for report in reports)
    finally:
        if owns_logger:
            logger.close()
        else:
            logger.flush()

def cmd_trace(args: argparse.Namespace, out: TextIO = sys.stdout) -> int:
    '''Raises ReportError for unreadable reports, unknown properties and properties without a trace'''
    report: PropertyReport = RunReport.load(args.report).for_property(args.prop)
    out.write(format_trace(report))
    out.write('\n')
    return ExitCode.OK

def cmd_export(args: argparse.Namespace, out: TextIO = sys.stdout) -> int:
    '''One DOT digraph per template, to stdout or as `<template>.dot` files under --output-dir'''
    graphs: dict[str, str] = system_dot(build_system(scenario_from_args(args)))
    if args.output_dir is None:
        out.write('\n'.join(graphs.values()))
        return ExitCode.OK

    output_dir: Path = Path(args.output_dir)
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        for name, graph in graphs.items():
            output_dir.joinpath(f'{name}.{args.format}').write_text(graph, encoding='utf-8')
    except OSError as write_error:
        raise UsageError(f'Unable to write diagrams to {output_dir}: {write_error.strerror}')
    out.write(f'{len(graphs)} template(s) written to {output_dir}\n')
    return ExitCode.OK
