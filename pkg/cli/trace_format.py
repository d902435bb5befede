'''Text rendering of reports and step-by-step trace listings with state deltas'''
from typing import Any, Mapping

from models.errors import ReportError

from cli.report import PropertyReport, RunReport, StateSnapshot

__all__ = ('EMPTY_TRACE_NOTICE', 'state_delta', 'format_trace', 'format_report')

EMPTY_TRACE_NOTICE: str = 'initial state satisfies predicate'

def _changes(before: Mapping[str, Any], after: Mapping[str, Any]) -> list[str]:
    return [f'{name}: {before.get(name)} -> {value}' for name, value in after.items() if before.get(name) != value]

def state_delta(before: StateSnapshot, after: StateSnapshot) -> list[str]:
    '''Changed locations, then variables, then clocks'''
    return [*_changes(before.locations, after.locations),
            *_changes(before.variables, after.variables),
            *_changes(before.clocks, after.clocks)]

def _format_state(state: StateSnapshot) -> list[str]:
    return ['    locations: ' + ', '.join(f'{process}={location}' for process, location in state.locations.items()),
            '    variables: ' + ', '.join(f'{name}={value}' for name, value in state.variables.items()),
            '    clocks: ' + (', '.join(f'{name}={value}' for name, value in state.clocks.items()) or '-')]

def format_trace(report: PropertyReport) -> str:
    '''Listing of a property's trace: the initial state in full, then one entry per step with its label and deltas.

    Raises:
        ReportError: if the property has no trace
    '''
    if report.trace is None:
        raise ReportError(f'Property {report.name} has no trace (verdict {report.verdict.value})')
    steps = report.trace
    lines: list[str] = [f'{report.name}: {report.verdict.value}, {len(steps) - 1} step(s)',
                        '  step 0: initial state', *_format_state(steps[0].state)]
    if len(steps) == 1:
        lines.append(f'  {EMPTY_TRACE_NOTICE}')
        return '\n'.join(lines)
    for previous, step in zip(steps, steps[1:]):
        lines.append(f'  step {step.step}: {step.label}')
        lines.extend(f'    {change}' for change in state_delta(previous.state, step.state) or ['(no change)'])
    return '\n'.join(lines)

def _expectation(report: PropertyReport) -> str:
    if report.expected is None:
        return ''
    return f' expected {report.expected.value}: ' + ('ok' if report.expectation_met else 'MISMATCH')

def format_report(run: RunReport, include_traces: bool = True) -> str:
    scenario = run.scenario
    lines: list[str] = [f'engine {run.engine_version}',
                        f'scenario: {scenario.label}',
                        f'limits: max_states={run.limits.max_states} max_depth={run.limits.max_depth} time_budget={run.limits.time_budget}']
    for report in run.properties:
        lines.append(f'{report.name}: {report.verdict.value} ({report.states_explored} states, {report.transitions} transitions, '
                     f'depth {report.max_depth}, {report.elapsed:.3f}s'
                     + (f', stopped by {report.limit}' if report.limit else '') + ')' + _expectation(report))
        lines.append(f'  {report.text}')
    if include_traces:
        for report in run.properties:
            if report.trace is not None:
                lines.extend(('', format_trace(report)))
    return '\n'.join(lines)
