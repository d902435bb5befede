'''Flattened, closure-compiled form of a SystemDef used by the successor semantics'''
from operator import itemgetter
from typing import Any, Callable, Final, Mapping, NamedTuple, Optional, Sequence, TypeAlias

from models.automata import (Assign, ClockReset, Declaration, Edge, ProcessInstance, ProcessTemplate,
                             RecordArrayDecl, SystemDef, UpdateAction)
from models.errors import EvaluationError, RangeViolation
from models.evaluation import ARITHMETIC_OPERATORS, COMPARISON_OPERATORS
from models.expressions import (Arith, BoolLit, BoolOp, ClockRef, Compare, ConstRef, Expr, IntLit, Not,
                                ParamRef, VarRef)
from models.flags import BooleanOperator, SyncKind
from models.typing import Value
from models.validation import ensure_valid

__all__ = ('SlotKey', 'Slot', 'UpdateOp', 'CompiledEdge', 'Valuation', 'CompiledSystem', 'compile_system')

Evaluator: TypeAlias = Callable[[Sequence[int]], Value]
SlotKey: TypeAlias = tuple[str, Optional[int], Optional[str]]

class Slot(NamedTuple):
    '''One integer cell of the flat state vector'''
    name: str
    lo: int
    hi: int
    initial: int
    owner: Optional[int]    # pid for locals and clocks, None for globals
    clock: bool = False

class UpdateOp(NamedTuple):
    slot: int
    value: Evaluator
    lo: int
    hi: int
    target: str

class CompiledEdge(NamedTuple):
    '''A template edge instantiated for one process and, when it has a select binder, one binder value'''
    pid: int
    edge: int
    binding: Optional[int]
    source: int
    target: int
    guard: Optional[Evaluator]
    sync: SyncKind
    channel: Optional[str]
    updates: tuple[UpdateOp, ...]

class Valuation(NamedTuple):
    '''Named view of a state: variables use the nested shapes the reference interpreter expects'''
    locations: tuple[str, ...]
    globals: dict[str, Any]
    locals: tuple[dict[str, Any], ...]
    clocks: tuple[dict[str, int], ...]


def _render(name: str, index: Optional[int], field: Optional[str]) -> str:
    return name + (f'[{index}]' if index is not None else '') + (f'.{field}' if field is not None else '')

def _const(value: Value) -> Evaluator:
    return lambda values : value


class CompiledSystem:
    '''Slot layout, per-location edge tables and compiled guards, invariants and updates of one system.

    Every variable cell, array element, record field and clock owns one slot of the state vector:
    globals first in declaration order, then each process' locals followed by its clocks.
    '''
    __slots__ = ('definition', 'processes', 'templates', 'slots', 'global_slots', 'local_slots', 'clock_slots',
                 'clock_ceilings', 'location_names', 'committed', 'invariants', 'initiators', 'receivers',
                 'initial_locations', 'initial_values', '_edges')

    def __init__(self, definition: SystemDef):
        self.definition: Final[SystemDef] = definition
        self.processes: Final[tuple[ProcessInstance, ...]] = definition.processes
        self.templates: Final[tuple[ProcessTemplate, ...]] = tuple(definition.template(process.template) for process in definition.processes)

        slots: list[Slot] = []
        self.global_slots: dict[SlotKey, int] = {}
        for decl in definition.variables:
            self._declare(decl, None, '', slots, self.global_slots)

        local_slots: list[dict[SlotKey, int]] = []
        clock_slots: list[dict[str, int]] = []
        clock_ceilings: list[tuple[int, int]] = []
        for pid, (process, template) in enumerate(zip(self.processes, self.templates)):
            locals_of: dict[SlotKey, int] = {}
            for decl in template.variables:
                self._declare(decl, pid, f'{process.name}.', slots, locals_of)
            clocks_of: dict[str, int] = {}
            for clock_decl in template.clocks:
                clocks_of[clock_decl.name] = len(slots)
                clock_ceilings.append((len(slots), clock_decl.ceiling))
                slots.append(Slot(f'{process.name}.{clock_decl.name}', 0, clock_decl.ceiling, 0, pid, True))
            local_slots.append(locals_of)
            clock_slots.append(clocks_of)

        self.slots: Final[tuple[Slot, ...]] = tuple(slots)
        self.local_slots: Final[tuple[dict[SlotKey, int], ...]] = tuple(local_slots)
        self.clock_slots: Final[tuple[dict[str, int], ...]] = tuple(clock_slots)
        self.clock_ceilings: Final[tuple[tuple[int, int], ...]] = tuple(clock_ceilings)

        self.location_names: Final[tuple[tuple[str, ...], ...]] = tuple(tuple(location.name for location in template.locations)
                                                                       for template in self.templates)
        self.committed: Final[tuple[tuple[bool, ...], ...]] = tuple(tuple(location.committed for location in template.locations)
                                                                   for template in self.templates)
        self.initial_locations: Final[tuple[int, ...]] = tuple(next(index for index, location in enumerate(template.locations) if location.initial)
                                                               for template in self.templates)
        self.initial_values: Final[tuple[int, ...]] = tuple(slot.initial for slot in self.slots)

        self.invariants: Final[tuple[tuple[Optional[Evaluator], ...], ...]] = tuple(
            tuple(None if isinstance(location.invariant, BoolLit) and location.invariant.value
                  else self.compile_expr(location.invariant, pid, self.processes[pid].arguments)
                  for location in template.locations)
            for pid, template in enumerate(self.templates))

        self._edges: dict[tuple[int, int, Optional[int]], CompiledEdge] = {}
        initiators: list[tuple[tuple[CompiledEdge, ...], ...]] = []
        receivers: list[tuple[dict[str, tuple[CompiledEdge, ...]], ...]] = []
        for pid, template in enumerate(self.templates):
            outgoing: list[list[CompiledEdge]] = [[] for _ in template.locations]
            incoming: list[dict[str, list[CompiledEdge]]] = [{} for _ in template.locations]
            for edge_id, edge in enumerate(template.edges):
                for compiled_edge in self._instantiate(pid, edge_id, edge, template):
                    self._edges[(pid, edge_id, compiled_edge.binding)] = compiled_edge
                    if edge.sync is SyncKind.RECEIVE:
                        incoming[compiled_edge.source].setdefault(edge.channel, []).append(compiled_edge)   # type: ignore[arg-type]
                    else:
                        outgoing[compiled_edge.source].append(compiled_edge)
            initiators.append(tuple(tuple(edges) for edges in outgoing))
            receivers.append(tuple({channel : tuple(edges) for channel, edges in table.items()} for table in incoming))
        self.initiators: Final[tuple[tuple[tuple[CompiledEdge, ...], ...], ...]] = tuple(initiators)
        self.receivers: Final[tuple[tuple[dict[str, tuple[CompiledEdge, ...]], ...], ...]] = tuple(receivers)

    @staticmethod
    def _declare(decl: Declaration, owner: Optional[int], prefix: str, slots: list[Slot], table: dict[SlotKey, int]) -> None:
        if isinstance(decl, RecordArrayDecl):
            for index in range(decl.size):
                for field in decl.fields:
                    table[(decl.name, index, field.name)] = len(slots)
                    slots.append(Slot(prefix + _render(decl.name, index, field.name), field.lo, field.hi, field.initial, owner))
            return
        if decl.size is None:
            table[(decl.name, None, None)] = len(slots)
            slots.append(Slot(prefix + decl.name, decl.lo, decl.hi, decl.initial, owner))
            return
        for index in range(decl.size):
            table[(decl.name, index, None)] = len(slots)
            slots.append(Slot(prefix + _render(decl.name, index, None), decl.lo, decl.hi, decl.initial, owner))

    # Slot resolution
    def slot_of(self, pid: Optional[int], name: str, index: Optional[int] = None, field: Optional[str] = None) -> int:
        '''Slot of a variable cell as seen from process `pid` (locals shadow globals), or of a global when pid is None'''
        key: SlotKey = (name, index, field)
        if pid is not None and key in self.local_slots[pid]:
            return self.local_slots[pid][key]
        if key in self.global_slots:
            return self.global_slots[key]
        raise EvaluationError(f'No variable cell {_render(name, index, field)}' + (f' visible to {self.processes[pid].name}' if pid is not None else ''))

    def clock_slot(self, pid: int, name: str) -> int:
        try:
            return self.clock_slots[pid][name]
        except KeyError:
            raise EvaluationError(f'No clock {name} in {self.processes[pid].name}')

    def _index_value(self, index: Optional[Expr], bindings: Mapping[str, int]) -> Optional[int]:
        if index is None:
            return None
        if isinstance(index, IntLit):
            return index.value
        if isinstance(index, ConstRef) and index.name in self.definition.constants:
            return self.definition.constants[index.name]
        if isinstance(index, ParamRef) and index.name in bindings:
            return bindings[index.name]
        raise EvaluationError(f'Index {index} is not a constant or bound parameter')

    def var_slot(self, ref: VarRef, pid: int, bindings: Mapping[str, int]) -> int:
        return self.slot_of(pid, ref.name, self._index_value(ref.index, bindings), ref.field)

    # Compilation
    def compile_expr(self, expr: Expr, pid: int, bindings: Mapping[str, int]) -> Evaluator:
        '''Compile an expression into a closure over the flat value vector of a state'''
        if isinstance(expr, (IntLit, BoolLit)):
            return _const(expr.value)
        if isinstance(expr, ConstRef):
            if expr.name not in self.definition.constants:
                raise EvaluationError(f'Unbound constant {expr.name}')
            return _const(self.definition.constants[expr.name])
        if isinstance(expr, ParamRef):
            if expr.name not in bindings:
                raise EvaluationError(f'Unbound parameter {expr.name}')
            return _const(bindings[expr.name])
        if isinstance(expr, ClockRef):
            return itemgetter(self.clock_slot(pid, expr.name))
        if isinstance(expr, VarRef):
            return itemgetter(self.var_slot(expr, pid, bindings))

        if isinstance(expr, Arith):
            arith = ARITHMETIC_OPERATORS[expr.op]
            left, right = self.compile_expr(expr.left, pid, bindings), self.compile_expr(expr.right, pid, bindings)
            return lambda values : arith(left(values), right(values))      # type: ignore[arg-type]
        if isinstance(expr, Compare):
            compare = COMPARISON_OPERATORS[expr.op]
            left, right = self.compile_expr(expr.left, pid, bindings), self.compile_expr(expr.right, pid, bindings)
            return lambda values : compare(left(values), right(values))    # type: ignore[arg-type]
        if isinstance(expr, Not):
            operand = self.compile_expr(expr.operand, pid, bindings)
            return lambda values : not operand(values)
        if isinstance(expr, BoolOp):
            left, right = self.compile_expr(expr.left, pid, bindings), self.compile_expr(expr.right, pid, bindings)
            if expr.op is BooleanOperator.AND:
                return lambda values : bool(left(values)) and bool(right(values))
            if expr.op is BooleanOperator.OR:
                return lambda values : bool(left(values)) or bool(right(values))
            return lambda values : (not left(values)) or bool(right(values))

        raise EvaluationError(f'Unknown expression node {type(expr).__name__}')

    def _compile_update(self, action: UpdateAction, pid: int, bindings: Mapping[str, int]) -> UpdateOp:
        if isinstance(action, ClockReset):
            slot: int = self.clock_slot(pid, action.clock)
            return UpdateOp(slot, _const(0), 0, self.slots[slot].hi, self.slots[slot].name)
        assert isinstance(action, Assign)
        slot = self.var_slot(action.target, pid, bindings)
        return UpdateOp(slot, self.compile_expr(action.value, pid, bindings), self.slots[slot].lo, self.slots[slot].hi, self.slots[slot].name)

    def _instantiate(self, pid: int, edge_id: int, edge: Edge, template: ProcessTemplate) -> list[CompiledEdge]:
        arguments: dict[str, int] = self.processes[pid].arguments
        binder_values: Sequence[Optional[int]] = (None,) if edge.select is None else range(edge.select.lo, edge.select.hi + 1)
        instances: list[CompiledEdge] = []
        for binding in binder_values:
            bindings: dict[str, int] = dict(arguments)
            if edge.select is not None and binding is not None:
                bindings[edge.select.name] = binding
            guard: Optional[Evaluator] = (None if isinstance(edge.guard, BoolLit) and edge.guard.value
                                          else self.compile_expr(edge.guard, pid, bindings))
            instances.append(CompiledEdge(pid=pid,
                                          edge=edge_id,
                                          binding=binding,
                                          source=template.location_index(edge.source),
                                          target=template.location_index(edge.target),
                                          guard=guard,
                                          sync=edge.sync,
                                          channel=edge.channel,
                                          updates=tuple(self._compile_update(action, pid, bindings) for action in edge.update)))
        return instances

    # Execution helpers
    def edge(self, pid: int, edge_id: int, binding: Optional[int] = None) -> CompiledEdge:
        try:
            return self._edges[(pid, edge_id, binding)]
        except KeyError:
            raise EvaluationError(f'Process {pid} has no edge {edge_id}' + (f' bound to {binding}' if binding is not None else ''))

    def template_edge(self, pid: int, edge_id: int) -> Edge:
        return self.templates[pid].edges[edge_id]

    @staticmethod
    def run_updates(updates: Sequence[UpdateOp], values: list[int]) -> None:
        '''Apply updates in order to a mutable value vector, each seeing the effects of the previous ones'''
        for update in updates:
            value = update.value(values)
            if not (update.lo <= value <= update.hi):
                raise RangeViolation(update.target, value, update.lo, update.hi)
            values[update.slot] = value

    def invariants_hold(self, locations: Sequence[int], values: Sequence[int]) -> bool:
        for pid, location in enumerate(locations):
            invariant = self.invariants[pid][location]
            if invariant is not None and not invariant(values):
                return False
        return True

    def is_committed(self, locations: Sequence[int]) -> bool:
        return any(self.committed[pid][location] for pid, location in enumerate(locations))

    # Named views
    def valuation(self, locations: Sequence[int], values: Sequence[int]) -> Valuation:
        def nest(table: Mapping[SlotKey, int], decls: Sequence[Declaration]) -> dict[str, Any]:
            nested: dict[str, Any] = {}
            for decl in decls:
                if isinstance(decl, RecordArrayDecl):
                    nested[decl.name] = [{field.name : values[table[(decl.name, index, field.name)]] for field in decl.fields}
                                         for index in range(decl.size)]
                elif decl.size is None:
                    nested[decl.name] = values[table[(decl.name, None, None)]]
                else:
                    nested[decl.name] = [values[table[(decl.name, index, None)]] for index in range(decl.size)]
            return nested

        return Valuation(locations=tuple(self.location_names[pid][location] for pid, location in enumerate(locations)),
                         globals=nest(self.global_slots, self.definition.variables),
                         locals=tuple(nest(self.local_slots[pid], template.variables) for pid, template in enumerate(self.templates)),
                         clocks=tuple({name : values[slot] for name, slot in self.clock_slots[pid].items()} for pid in range(len(self.processes))))

    def from_valuation(self, valuation: Valuation) -> tuple[tuple[int, ...], tuple[int, ...]]:
        '''Inverse of `valuation`, returning (locations, values)'''
        values: list[int] = list(self.initial_values)

        def flatten(table: Mapping[SlotKey, int], nested: Mapping[str, Any]) -> None:
            for (name, index, field), slot in table.items():
                cell: Any = nested[name]
                if index is not None:
                    cell = cell[index]
                if field is not None:
                    cell = cell[field]
                values[slot] = int(cell)

        flatten(self.global_slots, valuation.globals)
        for pid in range(len(self.processes)):
            flatten(self.local_slots[pid], valuation.locals[pid])
            for name, slot in self.clock_slots[pid].items():
                values[slot] = valuation.clocks[pid][name]
        locations: tuple[int, ...] = tuple(self.templates[pid].location_index(name) for pid, name in enumerate(valuation.locations))
        return locations, tuple(values)

    def describe(self, locations: Sequence[int], values: Sequence[int]) -> dict[str, dict[str, Any]]:
        '''Flat display mapping used by reports: process locations, variable cells and clocks, in slot order'''
        return {'locations' : {process.name : self.location_names[pid][location]
                               for pid, (process, location) in enumerate(zip(self.processes, locations))},
                'variables' : {slot.name : value for slot, value in zip(self.slots, values) if not slot.clock},
                'clocks' : {slot.name : value for slot, value in zip(self.slots, values) if slot.clock}}


def compile_system(system: SystemDef, validate: bool = True) -> CompiledSystem:
    '''Validate (unless told otherwise) and compile a system definition'''
    if validate:
        ensure_valid(system)
    return CompiledSystem(system)
