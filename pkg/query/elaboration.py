'''Elaboration: expand quantifiers over a concrete system and resolve accesses to state-vector slots'''
from typing import Annotated, Callable, Final, Literal, Mapping, Optional, Sequence, TypeAlias, Union

from checker.compiled import CompiledSystem, compile_system
from models.automata import SystemDef
from models.errors import ElaborationError, EvaluationError
from models.evaluation import ARITHMETIC_OPERATORS, COMPARISON_OPERATORS
from models.flags import ArithmeticOperator, BooleanOperator, ComparisonOperator, PathQuantifier

from query.ast import (AccessTerm, ArithTerm, BinaryPred, BoolConst, Comparison, Domain, IdsDomain, IntTerm, NameTerm,
                       NotPred, Predicate, PropertyAst, Quantified, QuantifierKind, Term)
from query.grammar import parse_property

from pydantic import BaseModel, ConfigDict, Field

__all__ = ('SlotRead', 'IntConst', 'GroundArith', 'GroundTerm',
           'GroundConst', 'GroundCompare', 'GroundNot', 'GroundAnd', 'GroundOr', 'GroundImply', 'GroundPredicate',
           'ElaboratedProperty', 'elaborate', 'elaborate_text', 'compile_ground')

Check: TypeAlias = Callable[[Sequence[int]], bool]
Read: TypeAlias = Callable[[Sequence[int]], int]

class _Ground(BaseModel):
    model_config = ConfigDict(frozen=True)

class SlotRead(_Ground):
    kind: Literal['slot'] = 'slot'
    slot: int
    name: str

class IntConst(_Ground):
    kind: Literal['int'] = 'int'
    value: int

class GroundArith(_Ground):
    kind: Literal['arith'] = 'arith'
    op: ArithmeticOperator
    left: 'GroundTerm'
    right: 'GroundTerm'

GroundTerm = Annotated[Union[SlotRead, IntConst, GroundArith], Field(discriminator='kind')]

class GroundConst(_Ground):
    kind: Literal['const'] = 'const'
    value: bool

class GroundCompare(_Ground):
    kind: Literal['compare'] = 'compare'
    op: ComparisonOperator
    left: GroundTerm
    right: GroundTerm

class GroundNot(_Ground):
    kind: Literal['not'] = 'not'
    operand: 'GroundPredicate'

class GroundAnd(_Ground):
    '''Conjunction; a forall over an empty domain is an empty conjunction'''
    kind: Literal['and'] = 'and'
    operands: tuple['GroundPredicate', ...]

class GroundOr(_Ground):
    kind: Literal['or'] = 'or'
    operands: tuple['GroundPredicate', ...]

class GroundImply(_Ground):
    kind: Literal['imply'] = 'imply'
    left: 'GroundPredicate'
    right: 'GroundPredicate'

GroundPredicate = Annotated[Union[GroundConst, GroundCompare, GroundNot, GroundAnd, GroundOr, GroundImply],
                            Field(discriminator='kind')]

for _node in (GroundArith, GroundCompare, GroundNot, GroundAnd, GroundOr, GroundImply):
    _node.model_rebuild()


def _compile_term(term: GroundTerm) -> Read:
    if isinstance(term, IntConst):
        value: int = term.value
        return lambda values : value
    if isinstance(term, SlotRead):
        slot: int = term.slot
        return lambda values : values[slot]
    function = ARITHMETIC_OPERATORS[term.op]
    left, right = _compile_term(term.left), _compile_term(term.right)
    return lambda values : function(left(values), right(values))

def compile_ground(predicate: GroundPredicate) -> Check:
    '''Closure evaluating a ground predicate over a state vector'''
    if isinstance(predicate, GroundConst):
        constant: bool = predicate.value
        return lambda values : constant
    if isinstance(predicate, GroundCompare):
        function = COMPARISON_OPERATORS[predicate.op]
        left_term, right_term = _compile_term(predicate.left), _compile_term(predicate.right)
        return lambda values : function(left_term(values), right_term(values))
    if isinstance(predicate, GroundNot):
        operand = compile_ground(predicate.operand)
        return lambda values : not operand(values)
    if isinstance(predicate, GroundAnd):
        conjuncts = tuple(compile_ground(operand) for operand in predicate.operands)
        return lambda values : all(check(values) for check in conjuncts)
    if isinstance(predicate, GroundOr):
        disjuncts = tuple(compile_ground(operand) for operand in predicate.operands)
        return lambda values : any(check(values) for check in disjuncts)
    premise, conclusion = compile_ground(predicate.left), compile_ground(predicate.right)
    return lambda values : (not premise(values)) or conclusion(values)


class ElaboratedProperty:
    '''Ground, quantifier-free property ready for exploration'''
    __slots__ = ('quantifier', 'predicate', 'source', '_check')

    def __init__(self, quantifier: PathQuantifier, predicate: GroundPredicate, source: Optional[PropertyAst] = None):
        self.quantifier: Final[PathQuantifier] = quantifier
        self.predicate: Final[GroundPredicate] = predicate
        self.source: Final[Optional[PropertyAst]] = source
        self._check: Check = compile_ground(predicate)

    def evaluate(self, values: Sequence[int]) -> bool:
        return self._check(values)

    def __repr__(self) -> str:
        return f'<ElaboratedProperty {self.quantifier.value}>'


class _Elaborator:
    __slots__ = ('compiled', 'domain_ids')

    def __init__(self, compiled: CompiledSystem, legitimate_ids_only: bool):
        self.compiled: Final[CompiledSystem] = compiled
        definition: SystemDef = compiled.definition
        self.domain_ids: Final[tuple[int, ...]] = definition.legitimate_ids if legitimate_ids_only else definition.client_ids

    def static_value(self, term: Term, bindings: Mapping[str, int], context: str) -> int:
        '''Evaluate a term that must be known before exploration (indices, process arguments, range bounds)'''
        ground: GroundTerm = self.term(term, bindings)
        if not isinstance(ground, IntConst):
            raise ElaborationError(f'{context} must not depend on the state')
        return ground.value

    def term(self, term: Term, bindings: Mapping[str, int]) -> GroundTerm:
        if isinstance(term, IntTerm):
            return IntConst(value=term.value)
        if isinstance(term, NameTerm):
            if term.name in bindings:
                return IntConst(value=bindings[term.name])
            if term.name in self.compiled.definition.constants:
                return IntConst(value=self.compiled.definition.constants[term.name])
            try:
                slot: int = self.compiled.slot_of(None, term.name)
            except EvaluationError:
                raise ElaborationError(f'Unknown name {term.name}: not a bound variable, constant or global scalar')
            return SlotRead(slot=slot, name=self.compiled.slots[slot].name)
        if isinstance(term, ArithTerm):
            left, right = self.term(term.left, bindings), self.term(term.right, bindings)
            if isinstance(left, IntConst) and isinstance(right, IntConst):
                return IntConst(value=ARITHMETIC_OPERATORS[term.op](left.value, right.value))
            return GroundArith(op=term.op, left=left, right=right)
        return self.access(term, bindings)

    def process(self, term: AccessTerm, bindings: Mapping[str, int]) -> int:
        processes = self.compiled.processes
        if term.argument is not None:
            argument: int = self.static_value(term.argument, bindings, f'Argument of {term.process}')
            for pid, process in enumerate(processes):
                if process.template == term.process and process.arguments.get('id') == argument:
                    return pid
            raise ElaborationError(f'No process {term.process}({argument}) is instantiated')

        for pid, process in enumerate(processes):
            if process.name == term.process:
                return pid
        candidates: list[int] = [pid for pid, process in enumerate(processes) if process.template == term.process]
        if len(candidates) == 1:
            return candidates[0]
        raise ElaborationError(f'Process reference {term.process} is unknown' if not candidates
                               else f'Process reference {term.process} is ambiguous, pass an argument')

    def access(self, term: AccessTerm, bindings: Mapping[str, int]) -> SlotRead:
        pid: Optional[int] = None if term.process is None else self.process(term, bindings)
        index: Optional[int] = None if term.index is None else self.static_value(term.index, bindings, f'Index of {term.variable}')
        try:
            slot: int = self.compiled.slot_of(pid, term.variable, index, term.field)
        except EvaluationError:
            owner: str = '' if pid is None else f' of {self.compiled.processes[pid].name}'
            raise ElaborationError(f'No variable cell {term.variable}'
                                   + (f'[{index}]' if index is not None else '')
                                   + (f'.{term.field}' if term.field else '') + owner)
        return SlotRead(slot=slot, name=self.compiled.slots[slot].name)

    def domain(self, domain: Domain, bindings: Mapping[str, int]) -> tuple[int, ...]:
        if isinstance(domain, IdsDomain):
            return self.domain_ids
        lo: int = self.static_value(domain.lo, bindings, 'Range bound')
        hi: int = self.static_value(domain.hi, bindings, 'Range bound')
        return tuple(range(lo, hi + 1))

    def predicate(self, predicate: Predicate, bindings: Mapping[str, int]) -> GroundPredicate:
        if isinstance(predicate, BoolConst):
            return GroundConst(value=predicate.value)
        if isinstance(predicate, Comparison):
            left, right = self.term(predicate.left, bindings), self.term(predicate.right, bindings)
            if isinstance(left, IntConst) and isinstance(right, IntConst):
                return GroundConst(value=COMPARISON_OPERATORS[predicate.op](left.value, right.value))
            return GroundCompare(op=predicate.op, left=left, right=right)
        if isinstance(predicate, NotPred):
            return GroundNot(operand=self.predicate(predicate.operand, bindings))
        if isinstance(predicate, BinaryPred):
            left_pred, right_pred = self.predicate(predicate.left, bindings), self.predicate(predicate.right, bindings)
            if predicate.op is BooleanOperator.AND:
                return GroundAnd(operands=(left_pred, right_pred))
            if predicate.op is BooleanOperator.OR:
                return GroundOr(operands=(left_pred, right_pred))
            return GroundImply(left=left_pred, right=right_pred)
        return self.quantified(predicate, bindings)

    def quantified(self, predicate: Quantified, bindings: Mapping[str, int]) -> GroundPredicate:
        if predicate.binder in bindings:
            raise ElaborationError(f'Quantified variable {predicate.binder} shadows an enclosing binder')
        if predicate.binder in self.compiled.definition.constants:
            raise ElaborationError(f'Quantified variable {predicate.binder} shadows a constant')
        bodies: tuple[GroundPredicate, ...] = tuple(self.predicate(predicate.body, {**bindings, predicate.binder : value})
                                                    for value in self.domain(predicate.domain, bindings))
        if predicate.quantifier is QuantifierKind.FORALL:
            return GroundAnd(operands=bodies)
        return GroundOr(operands=bodies)


def elaborate(prop: PropertyAst,
              system: Union[SystemDef, CompiledSystem],
              legitimate_ids_only: bool = False) -> ElaboratedProperty:
    '''Expand every quantifier of `prop` over the concrete system and resolve accesses to slots.

    `ids` ranges over all client identities, or only the legitimate ones when `legitimate_ids_only` is set.
    A forall over an empty domain elaborates to true and an exists to false.

    Raises:
        ElaborationError: unknown process, variable, field or constant, out of range index, or a state-dependent
        index, argument or range bound
    '''
    compiled: CompiledSystem = system if isinstance(system, CompiledSystem) else compile_system(system)
    ground: GroundPredicate = _Elaborator(compiled, legitimate_ids_only).predicate(prop.predicate, {})
    return ElaboratedProperty(prop.quantifier, ground, prop)

def elaborate_text(text: str,
                   system: Union[SystemDef, CompiledSystem],
                   legitimate_ids_only: bool = False) -> ElaboratedProperty:
    '''Parse then elaborate; raises PropertySyntaxError or ElaborationError'''
    return elaborate(parse_property(text), system, legitimate_ids_only)
