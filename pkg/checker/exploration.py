'''Breadth-first exploration, verdicts, counterexample/witness traces and trace replay'''
import asyncio
import time
from enum import Enum
from typing import Annotated, Callable, Final, Iterable, Optional, Protocol, Sequence, Union

from models.automata import SystemDef
from models.constants import ENGINE_CONSTANTS
from models.errors import CheckerException, InternalCheckerError
from models.flags import PathQuantifier

from checker.codec import StateCodec
from checker.compiled import CompiledSystem
from checker.config.checker_config import CheckerConfig
from checker.log_models import LogType, Severity
from checker.logging import Logger
from checker.semantics import SystemState, TransitionLabel, as_compiled, initial_state, successors

import pydantic
from pydantic import BaseModel, ConfigDict, Field, SkipValidation

__all__ = ('LimitKind',
           'VerdictKind',
           'Limits',
           'Trace',
           'StateSpaceStats',
           'Verdict',
           'CheckableProperty',
           'check',
           'check_parallel',
           'explore',
           'explore_parallel',
           'replay')

Predicate = Callable[[Sequence[int]], bool]
Expansion = list[tuple[TransitionLabel, SystemState, bytes]]

class LimitKind(Enum):
    MAX_STATES  = 'max_states'
    MAX_DEPTH   = 'max_depth'
    TIME_BUDGET = 'time_budget'

class VerdictKind(Enum):
    HOLDS           = 'holds'
    VIOLATED        = 'violated'
    REACHABLE       = 'reachable'
    NOT_REACHABLE   = 'unreachable'
    INCONCLUSIVE    = 'inconclusive'

class Limits(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_states: Annotated[int, Field(ge=1)] = ENGINE_CONSTANTS.limits.max_states if ENGINE_CONSTANTS else 5_000_000
    max_depth: Annotated[Optional[int], Field(default=None, ge=1)]
    time_budget: Annotated[Optional[float], Field(default=None, gt=0)]

    @classmethod
    def from_config(cls, config: CheckerConfig) -> 'Limits':
        return cls(max_states=config.max_states, max_depth=config.max_depth, time_budget=config.time_budget)

_result_config: ConfigDict = ConfigDict(arbitrary_types_allowed=True)

@pydantic.dataclasses.dataclass(frozen=True, slots=True, config=_result_config)
class Trace:
    '''state_0, label_1, state_1, ..., label_n, state_n with state_0 the initial state'''
    states: SkipValidation[tuple[SystemState, ...]]
    labels: SkipValidation[tuple[TransitionLabel, ...]]

    @property
    def length(self) -> int:
        return len(self.labels)

    @property
    def final_state(self) -> SystemState:
        return self.states[-1]

@pydantic.dataclasses.dataclass(frozen=True, slots=True, config=_result_config)
class StateSpaceStats:
    states: Annotated[int, Field(ge=0)]
    transitions: Annotated[int, Field(ge=0)]
    max_depth: Annotated[int, Field(ge=0)]
    peak_frontier: Annotated[int, Field(ge=0)]
    elapsed: Annotated[float, Field(ge=0)]
    partial: bool = False
    limit: Optional[LimitKind] = None

@pydantic.dataclasses.dataclass(frozen=True, slots=True, config=_result_config)
class Verdict:
    kind: VerdictKind
    stats: StateSpaceStats
    trace: Optional[Trace] = None

    @property
    def limit(self) -> Optional[LimitKind]:
        return self.stats.limit

    @property
    def states_explored(self) -> int:
        return self.stats.states

class CheckableProperty(Protocol):
    '''What the checker needs from an elaborated property'''
    @property
    def quantifier(self) -> PathQuantifier: ...

    def evaluate(self, values: Sequence[int]) -> bool: ...


def _expand(compiled: CompiledSystem, codec: StateCodec, state: SystemState) -> Expansion:
    return [(label, successor, codec.encode(successor)) for label, successor in successors(compiled, state)]

def _expand_chunk(compiled: CompiledSystem, codec: StateCodec, chunk: Sequence[SystemState]) -> list[Expansion]:
    return [_expand(compiled, codec, state) for state in chunk]

class _Search:
    '''Visited set keyed by encoded state plus a parent/label edge log for trace reconstruction'''
    __slots__ = ('compiled', 'codec', 'limits', 'target', 'logger', 'scenario', 'progress_interval',
                 'keys', 'index', 'parents', 'labels',
                 'transitions', 'depth', 'peak_frontier', 'started', 'deadline', 'limit', 'hit')

    def __init__(self, compiled: CompiledSystem, limits: Limits, target: Optional[Predicate],
                 logger: Optional[Logger], scenario: Optional[str], progress_interval: int):
        self.compiled: Final[CompiledSystem] = compiled
        self.codec: Final[StateCodec] = StateCodec(compiled)
        self.limits: Final[Limits] = limits
        self.target: Final[Optional[Predicate]] = target
        self.logger: Final[Optional[Logger]] = logger
        self.scenario: Final[Optional[str]] = scenario
        self.progress_interval: Final[int] = progress_interval

        self.keys: list[bytes] = []
        self.index: dict[bytes, int] = {}
        self.parents: list[int] = []
        self.labels: list[Optional[TransitionLabel]] = []

        self.transitions: int = 0
        self.depth: int = 0
        self.peak_frontier: int = 1
        self.started: Final[float] = time.perf_counter()
        self.deadline: Final[Optional[float]] = None if limits.time_budget is None else self.started + limits.time_budget
        self.limit: Optional[LimitKind] = None
        self.hit: Optional[int] = None

    def _add(self, key: bytes, parent: int, label: Optional[TransitionLabel]) -> int:
        position: int = len(self.keys)
        self.keys.append(key)
        self.index[key] = position
        self.parents.append(parent)
        self.labels.append(label)
        if self.logger is not None and position and position % self.progress_interval == 0:
            self.logger.log(Severity.TRACE,
                            f'explored {position} states, depth {self.depth + 1}, {self.transitions} transitions',
                            category=LogType.EXPLORATION, scenario=self.scenario)
        return position

    def start(self) -> list[tuple[int, SystemState]]:
        state: SystemState = initial_state(self.compiled)
        self._add(self.codec.encode(state), -1, None)
        if self.target is not None and self.target(state.values):
            self.hit = 0
        return [(0, state)]

    def run_level(self, frontier: Sequence[tuple[int, SystemState]], expansions: Iterable[Expansion]) -> list[tuple[int, SystemState]]:
        '''Absorb one BFS level in frontier order; stops early on a hit or an exhausted limit'''
        next_frontier: list[tuple[int, SystemState]] = []
        for (parent, _), expansion in zip(frontier, expansions):
            if self.deadline is not None and time.perf_counter() > self.deadline:
                self.limit = LimitKind.TIME_BUDGET
                break
            self.transitions += len(expansion)
            for label, successor, key in expansion:
                if key in self.index:
                    continue
                if len(self.keys) >= self.limits.max_states:
                    self.limit = LimitKind.MAX_STATES
                    break
                position: int = self._add(key, parent, label)
                next_frontier.append((position, successor))
                # Predicate runs on generation so the first hit is depth-minimal
                if self.target is not None and self.target(successor.values):
                    self.hit = position
                    break
            if self.limit is not None or self.hit is not None:
                break
        if next_frontier:
            self.depth += 1
            self.peak_frontier = max(self.peak_frontier, len(next_frontier))
        return next_frontier

    def depth_exhausted(self, frontier: Sequence[tuple[int, SystemState]]) -> bool:
        if frontier and self.limits.max_depth is not None and self.depth >= self.limits.max_depth:
            self.limit = LimitKind.MAX_DEPTH
            return True
        return False

    def finished(self, frontier: Sequence[tuple[int, SystemState]]) -> bool:
        return not frontier or self.hit is not None or self.limit is not None or self.depth_exhausted(frontier)

    def stats(self) -> StateSpaceStats:
        return StateSpaceStats(states=len(self.keys),
                               transitions=self.transitions,
                               max_depth=self.depth,
                               peak_frontier=self.peak_frontier,
                               elapsed=time.perf_counter() - self.started,
                               partial=self.limit is not None,
                               limit=self.limit)

    def trace(self, position: int) -> Trace:
        chain: list[int] = []
        while position != -1:
            chain.append(position)
            position = self.parents[position]
        chain.reverse()
        return Trace(states=tuple(self.codec.decode(self.keys[step]) for step in chain),
                     labels=tuple(self.labels[step] for step in chain[1:]))      # type: ignore[misc]


def _sequential(search: _Search) -> None:
    frontier = search.start()
    while not search.finished(frontier):
        frontier = search.run_level(frontier, (_expand(search.compiled, search.codec, state) for _, state in frontier))

async def _parallel(search: _Search, workers: int, chunk_size: int) -> None:
    frontier = search.start()
    while not search.finished(frontier):
        states: list[SystemState] = [state for _, state in frontier]
        size: int = max(1, min(chunk_size, -(-len(states) // workers)))
        chunks: list[list[SystemState]] = [states[offset:offset + size] for offset in range(0, len(states), size)]
        results: list[list[Expansion]] = await asyncio.gather(*(asyncio.to_thread(_expand_chunk, search.compiled, search.codec, chunk)
                                                               for chunk in chunks))
        # Merge in frontier order, identical to the sequential run
        frontier = search.run_level(frontier, (expansion for result in results for expansion in result))

def _target_of(prop: CheckableProperty) -> Predicate:
    if prop.quantifier is PathQuantifier.INVARIANT:
        return lambda values : not prop.evaluate(values)
    return prop.evaluate

def _verdict(search: _Search, prop: CheckableProperty) -> Verdict:
    stats: StateSpaceStats = search.stats()
    invariant: bool = prop.quantifier is PathQuantifier.INVARIANT
    if search.hit is not None:
        trace: Trace = search.trace(search.hit)
        if not replay(search.compiled, trace, search.target):
            raise InternalCheckerError('Emitted trace failed replay')
        verdict = Verdict(kind=VerdictKind.VIOLATED if invariant else VerdictKind.REACHABLE, stats=stats, trace=trace)
    elif search.limit is not None:
        verdict = Verdict(kind=VerdictKind.INCONCLUSIVE, stats=stats)
    else:
        verdict = Verdict(kind=VerdictKind.HOLDS if invariant else VerdictKind.NOT_REACHABLE, stats=stats)

    if search.logger is not None:
        search.logger.log(Severity.INFO,
                          f'{prop.quantifier.value} verdict {verdict.kind.value}: {stats.states} states, {stats.transitions} transitions, '
                          f'depth {stats.max_depth}' + (f', limit {stats.limit.value}' if stats.limit else '')
                          + (f', trace length {verdict.trace.length}' if verdict.trace else ''),
                          category=LogType.EXPLORATION, scenario=search.scenario)
    return verdict

def _search(system: Union[SystemDef, CompiledSystem], limits: Optional[Limits], target: Optional[Predicate],
            config: Optional[CheckerConfig], logger: Optional[Logger], scenario: Optional[str]) -> _Search:
    if limits is None:
        limits = Limits.from_config(config) if config else Limits()
    return _Search(as_compiled(system), limits, target, logger, scenario, config.progress_interval if config else 100_000)

def check(system: Union[SystemDef, CompiledSystem],
          prop: CheckableProperty,
          limits: Optional[Limits] = None,
          config: Optional[CheckerConfig] = None,
          logger: Optional[Logger] = None,
          scenario: Optional[str] = None) -> Verdict:
    '''Decide an elaborated property by breadth-first search from the initial state.

    `A[] p` searches for a state falsifying p, `E<> p` for one satisfying it. Traces are shortest by
    BFS depth and are replayed before being returned. Limits fall back to `config`, then to engine defaults.

    Raises:
        CheckerException: evaluation or range errors raised by the model abort the check
    '''
    search: _Search = _search(system, limits, _target_of(prop), config, logger, scenario)
    _sequential(search)
    return _verdict(search, prop)

async def check_parallel(system: Union[SystemDef, CompiledSystem],
                         prop: CheckableProperty,
                         limits: Optional[Limits] = None,
                         config: Optional[CheckerConfig] = None,
                         logger: Optional[Logger] = None,
                         scenario: Optional[str] = None,
                         workers: Optional[int] = None) -> Verdict:
    '''Level-synchronous variant of `check`: successor generation of each BFS level runs in worker threads'''
    search: _Search = _search(system, limits, _target_of(prop), config, logger, scenario)
    await _parallel(search, workers or (config.workers if config else 4), config.chunk_size if config else 2048)
    return _verdict(search, prop)

def explore(system: Union[SystemDef, CompiledSystem],
            limits: Optional[Limits] = None,
            config: Optional[CheckerConfig] = None,
            logger: Optional[Logger] = None,
            scenario: Optional[str] = None) -> StateSpaceStats:
    '''Enumerate the reachable state space; stats are flagged partial when a limit stopped the search'''
    search: _Search = _search(system, limits, None, config, logger, scenario)
    _sequential(search)
    return search.stats()

async def explore_parallel(system: Union[SystemDef, CompiledSystem],
                           limits: Optional[Limits] = None,
                           config: Optional[CheckerConfig] = None,
                           logger: Optional[Logger] = None,
                           scenario: Optional[str] = None,
                           workers: Optional[int] = None) -> StateSpaceStats:
    search: _Search = _search(system, limits, None, config, logger, scenario)
    await _parallel(search, workers or (config.workers if config else 4), config.chunk_size if config else 2048)
    return search.stats()

def replay(system: Union[SystemDef, CompiledSystem], trace: Trace, condition: Optional[Predicate] = None) -> bool:
    '''True iff the trace starts at the initial state and successors reproduces every step.

    When `condition` is given it must also hold on the final state.
    '''
    compiled: CompiledSystem = as_compiled(system)
    if len(trace.states) != len(trace.labels) + 1:
        return False
    if trace.states[0] != initial_state(compiled):
        return False
    try:
        for state, label, successor in zip(trace.states, trace.labels, trace.states[1:]):
            if (label, successor) not in successors(compiled, state):
                return False
        return condition is None or bool(condition(trace.states[-1].values))
    except (CheckerException, IndexError):
        return False
