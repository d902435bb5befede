'''Run reports: per-property verdicts, statistics and traces, serialisable to JSON and text'''
from pathlib import Path
from typing import Any, Literal, Optional, Union

from models.constants import ENGINE_CONSTANTS
from models.errors import ReportError

from checker.compiled import CompiledSystem
from checker.exploration import Limits, Trace, Verdict, VerdictKind
from checker.semantics import BroadcastLabel, InternalLabel, Move, TransitionLabel

from protocols.scenario import ScenarioConfig

import orjson
from pydantic import BaseModel, ConfigDict, Field, ValidationError

__all__ = ('MoveReport', 'LabelReport', 'StateSnapshot', 'TraceStep', 'PropertyReport', 'RunReport',
           'label_report', 'trace_steps', 'property_report')

_frozen: ConfigDict = ConfigDict(frozen=True)

class MoveReport(BaseModel):
    model_config = _frozen

    process: str
    edge: int
    binding: Optional[int] = None
    label: Optional[str] = None

    def __str__(self) -> str:
        text: str = f'{self.process}:{self.label or f"edge {self.edge}"}'
        return text + (f'[{self.binding}]' if self.binding is not None else '')

class LabelReport(BaseModel):
    model_config = _frozen

    kind: Literal['delay', 'internal', 'broadcast']
    channel: Optional[str] = None
    initiator: Optional[MoveReport] = None
    receivers: tuple[MoveReport, ...] = ()

    def __str__(self) -> str:
        if self.kind == 'delay':
            return 'delay'
        if self.kind == 'internal':
            return f'internal {self.initiator}'
        receivers: str = ', '.join(str(receiver) for receiver in self.receivers) or 'no receivers'
        return f'{self.initiator} -> {receivers} on {self.channel}'

class StateSnapshot(BaseModel):
    model_config = _frozen

    locations: dict[str, str]
    variables: dict[str, int]
    clocks: dict[str, int]

class TraceStep(BaseModel):
    model_config = _frozen

    step: int
    label: Optional[LabelReport] = None
    state: StateSnapshot

class PropertyReport(BaseModel):
    model_config = _frozen

    name: str
    text: str
    ids: Literal['all', 'legitimate'] = 'all'
    verdict: VerdictKind
    expected: Optional[VerdictKind] = None
    states_explored: int
    transitions: int
    max_depth: int
    peak_frontier: int
    partial: bool = False
    limit: Optional[str] = None
    elapsed: float = Field(default=0.0, ge=0)
    trace: Optional[tuple[TraceStep, ...]] = None

    @property
    def expectation_met(self) -> Optional[bool]:
        return None if self.expected is None else self.verdict is self.expected

class RunReport(BaseModel):
    '''Everything one `check` run produced; field order is the serialisation order'''
    model_config = _frozen

    engine_version: str = Field(default_factory=lambda : ENGINE_CONSTANTS.version if ENGINE_CONSTANTS else '0.0.0')
    scenario: ScenarioConfig
    limits: Limits
    properties: tuple[PropertyReport, ...] = ()

    def for_property(self, name: str) -> PropertyReport:
        for report in self.properties:
            if report.name == name:
                return report
        raise ReportError(f'Report has no property named {name}; available: {", ".join(report.name for report in self.properties) or "none"}')

    def to_json(self, include_elapsed: bool = True) -> bytes:
        document: dict[str, Any] = self.model_dump(mode='json')
        if not include_elapsed:
            for entry in document['properties']:
                entry.pop('elapsed', None)
        return orjson.dumps(document, option=orjson.OPT_INDENT_2)

    @classmethod
    def from_json(cls, data: Union[str, bytes]) -> 'RunReport':
        try:
            return cls.model_validate(orjson.loads(data))
        except (orjson.JSONDecodeError, ValidationError) as decode_error:
            raise ReportError(f'Malformed report: {decode_error}')

    @classmethod
    def load(cls, filepath: Union[str, Path]) -> 'RunReport':
        try:
            return cls.from_json(Path(filepath).read_bytes())
        except OSError as read_error:
            raise ReportError(f'Unable to read report {filepath}: {read_error.strerror}')

    def write(self, filepath: Union[str, Path]) -> None:
        try:
            Path(filepath).write_bytes(self.to_json())
        except OSError as write_error:
            raise ReportError(f'Unable to write report {filepath}: {write_error.strerror}')


def _move(compiled: CompiledSystem, move: Union[Move, InternalLabel]) -> MoveReport:
    return MoveReport(process=compiled.processes[move.process].name,
                      edge=move.edge,
                      binding=move.binding,
                      label=compiled.template_edge(move.process, move.edge).label)

def label_report(compiled: CompiledSystem, label: TransitionLabel) -> LabelReport:
    if isinstance(label, InternalLabel):
        return LabelReport(kind='internal', initiator=_move(compiled, label))
    if isinstance(label, BroadcastLabel):
        return LabelReport(kind='broadcast', channel=label.channel, initiator=_move(compiled, label.sender),
                           receivers=tuple(_move(compiled, receiver) for receiver in label.receivers))
    return LabelReport(kind='delay')

def trace_steps(compiled: CompiledSystem, trace: Trace) -> tuple[TraceStep, ...]:
    labels: tuple[Optional[TransitionLabel], ...] = (None, *trace.labels)
    return tuple(TraceStep(step=step,
                           label=None if label is None else label_report(compiled, label),
                           state=StateSnapshot.model_validate(compiled.describe(state.locations, state.values)))
                 for step, (label, state) in enumerate(zip(labels, trace.states)))

def property_report(compiled: CompiledSystem,
                    name: str,
                    text: str,
                    verdict: Verdict,
                    legitimate_ids_only: bool = False,
                    expected: Optional[VerdictKind] = None) -> PropertyReport:
    stats = verdict.stats
    return PropertyReport(name=name,
                          text=text,
                          ids='legitimate' if legitimate_ids_only else 'all',
                          verdict=verdict.kind,
                          expected=expected,
                          states_explored=stats.states,
                          transitions=stats.transitions,
                          max_depth=stats.max_depth,
                          peak_frontier=stats.peak_frontier,
                          partial=stats.partial,
                          limit=stats.limit.value if stats.limit else None,
                          elapsed=round(stats.elapsed, 6),
                          trace=None if verdict.trace is None else trace_steps(compiled, verdict.trace))
