'''Discrete-time successor semantics: unit delays, internal moves and broadcast synchronisation with drop'''
from itertools import product
from typing import Iterator, NamedTuple, Optional, Sequence, TypeAlias, Union

from models.automata import SystemDef
from models.errors import InternalCheckerError
from models.flags import SyncKind

from checker.compiled import CompiledEdge, CompiledSystem, compile_system

__all__ = ('SystemState',
           'Move',
           'DelayLabel',
           'InternalLabel',
           'BroadcastLabel',
           'TransitionLabel',
           'DELAY',
           'Successor',
           'as_compiled',
           'initial_state',
           'is_committed_active',
           'apply_delay',
           'fire_internal',
           'fire_broadcast',
           'successors')

class SystemState(NamedTuple):
    '''Per-process location indices and the flat value vector (variables and clocks)'''
    locations: tuple[int, ...]
    values: tuple[int, ...]

class Move(NamedTuple):
    process: int
    edge: int
    binding: Optional[int] = None

class DelayLabel(NamedTuple):
    kind: str = 'delay'

class InternalLabel(NamedTuple):
    process: int
    edge: int
    binding: Optional[int] = None
    kind: str = 'internal'

class BroadcastLabel(NamedTuple):
    channel: str
    sender: Move
    receivers: tuple[Move, ...]
    kind: str = 'broadcast'

TransitionLabel: TypeAlias = Union[DelayLabel, InternalLabel, BroadcastLabel]
Successor: TypeAlias = tuple[TransitionLabel, SystemState]

DELAY: DelayLabel = DelayLabel()

def as_compiled(system: Union[SystemDef, CompiledSystem]) -> CompiledSystem:
    '''Accept either form; hot callers should compile once and pass the CompiledSystem'''
    return system if isinstance(system, CompiledSystem) else compile_system(system)

def initial_state(system: Union[SystemDef, CompiledSystem]) -> SystemState:
    compiled: CompiledSystem = as_compiled(system)
    return SystemState(compiled.initial_locations, compiled.initial_values)

def is_committed_active(system: Union[SystemDef, CompiledSystem], state: SystemState) -> bool:
    return as_compiled(system).is_committed(state.locations)

def apply_delay(system: Union[SystemDef, CompiledSystem], state: SystemState) -> Optional[SystemState]:
    '''Advance every clock by one unit, saturating at its ceiling.

    Returns None while a committed location is active or when the advanced clocks break a location invariant.
    '''
    compiled: CompiledSystem = as_compiled(system)
    if compiled.is_committed(state.locations):
        return None
    values: list[int] = list(state.values)
    for slot, ceiling in compiled.clock_ceilings:
        if values[slot] < ceiling:
            values[slot] += 1
    if not compiled.invariants_hold(state.locations, values):
        return None
    return SystemState(state.locations, tuple(values))

def _fire_internal(compiled: CompiledSystem, state: SystemState, edge: CompiledEdge) -> Optional[Successor]:
    values: list[int] = list(state.values)
    compiled.run_updates(edge.updates, values)
    locations: list[int] = list(state.locations)
    locations[edge.pid] = edge.target
    if not compiled.invariants_hold(locations, values):
        return None
    return InternalLabel(edge.pid, edge.edge, edge.binding), SystemState(tuple(locations), tuple(values))

def _fire_broadcast(compiled: CompiledSystem, state: SystemState, edge: CompiledEdge) -> Iterator[Successor]:
    sender_values: list[int] = list(state.values)
    compiled.run_updates(edge.updates, sender_values)
    sender_locations: list[int] = list(state.locations)
    sender_locations[edge.pid] = edge.target

    # Receiver guards see the sender's updates
    snapshot: tuple[int, ...] = tuple(sender_values)
    choices: list[tuple[CompiledEdge, ...]] = []
    for pid, location in enumerate(state.locations):
        if pid == edge.pid:
            continue
        enabled: tuple[CompiledEdge, ...] = tuple(receiver for receiver in compiled.receivers[pid][location].get(edge.channel, ())     # type: ignore[arg-type]
                                                  if receiver.guard is None or receiver.guard(snapshot))
        if enabled:
            choices.append(enabled)

    sender: Move = Move(edge.pid, edge.edge, edge.binding)
    for combination in product(*choices):
        values: list[int] = list(sender_values)
        locations: list[int] = list(sender_locations)
        for receiver in combination:
            compiled.run_updates(receiver.updates, values)
            locations[receiver.pid] = receiver.target
        if not compiled.invariants_hold(locations, values):
            continue
        yield (BroadcastLabel(edge.channel, sender, tuple(Move(receiver.pid, receiver.edge, receiver.binding) for receiver in combination)),   # type: ignore[arg-type]
               SystemState(tuple(locations), tuple(values)))

def _checked_edge(compiled: CompiledSystem, state: SystemState, pid: int, edge_id: int, binding: Optional[int], sync: SyncKind) -> CompiledEdge:
    try:
        edge: CompiledEdge = compiled.edge(pid, edge_id, binding)
    except Exception as lookup_error:
        raise InternalCheckerError(str(lookup_error))
    if edge.sync is not sync:
        raise InternalCheckerError(f'Edge {edge_id} of process {pid} is not a {sync.value} edge')
    if state.locations[pid] != edge.source:
        raise InternalCheckerError(f'Process {pid} is not at the source of edge {edge_id}')
    if edge.guard is not None and not edge.guard(state.values):
        raise InternalCheckerError(f'Guard of edge {edge_id} of process {pid} does not hold')
    return edge

def fire_internal(system: Union[SystemDef, CompiledSystem], state: SystemState,
                  process: int, edge: int, binding: Optional[int] = None) -> Optional[Successor]:
    '''Take an internal edge; None when the target breaks a location invariant'''
    compiled: CompiledSystem = as_compiled(system)
    return _fire_internal(compiled, state, _checked_edge(compiled, state, process, edge, binding, SyncKind.NONE))

def fire_broadcast(system: Union[SystemDef, CompiledSystem], state: SystemState,
                   sender: int, edge: int, binding: Optional[int] = None) -> list[Successor]:
    '''Fire a send edge: the sender updates first, then every other process with an enabled receive
    edge on the channel takes one, in ascending pid order.

    Each combination of enabled receive edges yields one outcome; outcomes breaking a location invariant are dropped.

    Raises:
        InternalCheckerError: if the edge is not an enabled send edge of `sender`
    '''
    compiled: CompiledSystem = as_compiled(system)
    return list(_fire_broadcast(compiled, state, _checked_edge(compiled, state, sender, edge, binding, SyncKind.SEND)))

def successors(system: Union[SystemDef, CompiledSystem], state: SystemState) -> list[Successor]:
    '''Every enabled move of `state` ordered by initiating pid, then edge, then receiver choices, delay last'''
    compiled: CompiledSystem = as_compiled(system)
    values: Sequence[int] = state.values
    committed_active: bool = compiled.is_committed(state.locations)

    result: list[Successor] = []
    for pid, location in enumerate(state.locations):
        if committed_active and not compiled.committed[pid][location]:
            continue
        for edge in compiled.initiators[pid][location]:
            if edge.guard is not None and not edge.guard(values):
                continue
            if edge.sync is SyncKind.NONE:
                successor: Optional[Successor] = _fire_internal(compiled, state, edge)
                if successor is not None:
                    result.append(successor)
            else:
                result.extend(_fire_broadcast(compiled, state, edge))

    if not committed_active:
        delayed: Optional[SystemState] = apply_delay(compiled, state)
        if delayed is not None:
            result.append((DELAY, delayed))
    return result
