'''Static well-formedness checks for templates and systems'''
from collections import Counter
from typing import Iterable, Optional, Union

from models.automata import (Assign, ClockDecl, ClockReset, Declaration, Edge, ProcessTemplate,
                             RecordArrayDecl, SystemDef, VariableDecl)
from models.errors import ModelValidationError
from models.expressions import (Arith, BoolLit, BoolOp, ClockRef, Compare, ConstRef, Expr, IntLit,
                                Not, ParamRef, VarRef)
from models.flags import BooleanOperator, SyncKind, ValueType, VariableScope

from pydantic import BaseModel, ConfigDict

__all__ = ('ModelError', 'validate_template', 'validate_system', 'ensure_valid')

class ModelError(BaseModel):
    '''A single well-formedness violation: the offending element and the broken rule'''
    model_config = ConfigDict(frozen=True)

    element: str
    rule: str
    message: str

    def __str__(self) -> str:
        return f'[{self.rule}] {self.element}: {self.message}'


class _Scope:
    '''Names visible to the expressions of one template edge or location'''
    __slots__ = ('template', 'variables', 'clocks', 'parameters', 'constants', 'errors')

    def __init__(self, template: ProcessTemplate, context: SystemDef, extra_parameters: Iterable[tuple[str, int, int]] = ()):
        self.template: ProcessTemplate = template
        self.variables: dict[str, Declaration] = {decl.name : decl for decl in context.variables}
        self.variables.update({decl.name : decl for decl in template.variables})
        self.clocks: dict[str, ClockDecl] = {decl.name : decl for decl in template.clocks}
        self.parameters: dict[str, tuple[int, int]] = {decl.name : (decl.lo, decl.hi) for decl in template.parameters}
        self.parameters.update({name : (lo, hi) for name, lo, hi in extra_parameters})
        self.constants: dict[str, int] = dict(context.constants)
        self.errors: list[ModelError] = []

    def report(self, element: str, rule: str, message: str) -> None:
        self.errors.append(ModelError(element=f'{self.template.name}.{element}', rule=rule, message=message))

    def constant_value(self, expr: Expr) -> Optional[int]:
        if isinstance(expr, IntLit):
            return expr.value
        if isinstance(expr, ConstRef):
            return self.constants.get(expr.name)
        return None


def _check_index(expr: VarRef, decl_size: int, scope: _Scope, element: str) -> None:
    index: Expr = expr.index    # type: ignore[assignment]
    if not isinstance(index, (IntLit, ConstRef, ParamRef)):
        scope.report(element, 'computed-index', f'index of {expr.name} must be a constant or parameter, got {index}')
        return
    if isinstance(index, ParamRef):
        if index.name not in scope.parameters:
            scope.report(element, 'undeclared-name', f'parameter {index.name} is not declared')
            return
        lo, hi = scope.parameters[index.name]
    else:
        value: Optional[int] = scope.constant_value(index)
        if value is None:
            scope.report(element, 'undeclared-name', f'constant {index} is not declared')
            return
        lo = hi = value
    if lo < 0 or hi >= decl_size:
        scope.report(element, 'index-range', f'index {index} of {expr.name} may leave [0, {decl_size - 1}]')

def _check_var(expr: VarRef, scope: _Scope, element: str) -> Optional[tuple[int, int]]:
    '''Validate a variable access and return the declared range of the accessed slot'''
    decl: Optional[Declaration] = scope.variables.get(expr.name)
    if decl is None:
        scope.report(element, 'undeclared-name', f'variable {expr.name} is not declared')
        return None

    if isinstance(decl, RecordArrayDecl):
        if expr.index is None or expr.field is None:
            scope.report(element, 'field-access', f'record array {expr.name} requires an index and a field')
            return None
        _check_index(expr, decl.size, scope, element)
        field = decl.field_decl(expr.field)
        if field is None:
            scope.report(element, 'field-access', f'record array {expr.name} has no field {expr.field}')
            return None
        return field.lo, field.hi

    if expr.field is not None:
        scope.report(element, 'field-access', f'variable {expr.name} has no fields')
        return None
    if decl.size is None and expr.index is not None:
        scope.report(element, 'field-access', f'scalar {expr.name} cannot be indexed')
        return None
    if decl.size is not None:
        if expr.index is None:
            scope.report(element, 'field-access', f'array {expr.name} requires an index')
            return None
        _check_index(expr, decl.size, scope, element)
    return decl.lo, decl.hi

def _infer(expr: Expr, scope: _Scope, element: str) -> Optional[ValueType]:
    '''Infer the static type of an expression, reporting every rule violation found on the way'''
    if isinstance(expr, IntLit):
        return ValueType.INT
    if isinstance(expr, BoolLit):
        return ValueType.BOOL
    if isinstance(expr, ConstRef):
        if expr.name not in scope.constants:
            scope.report(element, 'undeclared-name', f'constant {expr.name} is not declared')
            return None
        return ValueType.INT
    if isinstance(expr, ParamRef):
        if expr.name not in scope.parameters:
            scope.report(element, 'undeclared-name', f'parameter {expr.name} is not declared')
            return None
        return ValueType.INT
    if isinstance(expr, ClockRef):
        if expr.name not in scope.clocks:
            scope.report(element, 'undeclared-name', f'clock {expr.name} is not declared')
            return None
        return ValueType.CLOCK
    if isinstance(expr, VarRef):
        return ValueType.INT if _check_var(expr, scope, element) is not None else None

    if isinstance(expr, Arith):
        for operand in (expr.left, expr.right):
            operand_type = _infer(operand, scope, element)
            if operand_type is ValueType.CLOCK:
                scope.report(element, 'clock-comparison', f'clock used in arithmetic in {expr}')
            elif operand_type is ValueType.BOOL:
                scope.report(element, 'type-mismatch', f'integer operand expected in {expr}')
        return ValueType.INT

    if isinstance(expr, Compare):
        left_type, right_type = _infer(expr.left, scope, element), _infer(expr.right, scope, element)
        for operand, operand_type, other in ((expr.left, left_type, expr.right), (expr.right, right_type, expr.left)):
            if operand_type is ValueType.BOOL:
                scope.report(element, 'type-mismatch', f'integer operand expected in {expr}')
            elif operand_type is ValueType.CLOCK:
                bound: Optional[int] = scope.constant_value(other)
                if not isinstance(other, (IntLit, ConstRef)) or bound is None:
                    scope.report(element, 'clock-comparison', f'clock compared to non-constant in {expr}')
                    continue
                assert isinstance(operand, ClockRef)
                ceiling: int = scope.clocks[operand.name].ceiling
                if ceiling < bound:
                    scope.report(element, 'clock-ceiling', f'clock {operand.name} ceiling {ceiling} below compared constant {bound}')
        return ValueType.BOOL

    if isinstance(expr, Not):
        if _infer(expr.operand, scope, element) not in (ValueType.BOOL, None):
            scope.report(element, 'type-mismatch', f'boolean operand expected in {expr}')
        return ValueType.BOOL

    if isinstance(expr, BoolOp):
        for operand in (expr.left, expr.right):
            if _infer(operand, scope, element) not in (ValueType.BOOL, None):
                scope.report(element, 'type-mismatch', f'boolean operand expected in {expr}')
        return ValueType.BOOL

    scope.report(element, 'type-mismatch', f'unknown expression node {type(expr).__name__}')
    return None

def _check_boolean(expr: Expr, scope: _Scope, element: str) -> None:
    inferred: Optional[ValueType] = _infer(expr, scope, element)
    if inferred not in (ValueType.BOOL, None):
        scope.report(element, 'type-mismatch', f'boolean expected, got {inferred.value} expression {expr}')

def _check_invariant(expr: Expr, scope: _Scope, element: str) -> None:
    '''Invariants are conjunctions of clock-against-constant comparisons'''
    if isinstance(expr, BoolLit):
        return
    if isinstance(expr, BoolOp) and expr.op is BooleanOperator.AND:
        _check_invariant(expr.left, scope, element)
        _check_invariant(expr.right, scope, element)
        return
    if isinstance(expr, Compare) and (isinstance(expr.left, ClockRef) or isinstance(expr.right, ClockRef)):
        _check_boolean(expr, scope, element)
        return
    scope.report(element, 'invariant-form', f'location invariants may only conjoin clock comparisons, got {expr}')

def _check_update(edge: Edge, scope: _Scope, element: str) -> None:
    for action in edge.update:
        if isinstance(action, ClockReset):
            if action.clock not in scope.clocks:
                scope.report(element, 'undeclared-name', f'clock {action.clock} is not declared')
            continue

        assert isinstance(action, Assign)
        _check_var(action.target, scope, element)
        value_type: Optional[ValueType] = _infer(action.value, scope, element)
        if value_type is ValueType.CLOCK:
            scope.report(element, 'clock-comparison', f'clock value assigned to {action.target}')
        elif value_type is ValueType.BOOL:
            scope.report(element, 'type-mismatch', f'integer value expected for {action.target}')

def _duplicates(names: Iterable[str]) -> list[str]:
    return [name for name, count in Counter(names).items() if count > 1]

def validate_template(template: ProcessTemplate, context: SystemDef) -> list[ModelError]:
    '''Check a template against the rules of the modelling vocabulary.

    Args:
        template (ProcessTemplate): template to check
        context (SystemDef): system supplying global variables, channels and constants

    Returns:
        list[ModelError]: empty iff the template is well-formed
    '''
    scope: _Scope = _Scope(template, context)

    for name in _duplicates(location.name for location in template.locations):
        scope.report(name, 'duplicate-name', f'location {name} declared more than once')
    for name in _duplicates([decl.name for decl in template.variables] + [decl.name for decl in template.clocks]
                            + [decl.name for decl in template.parameters]):
        scope.report(name, 'duplicate-name', f'name {name} declared more than once')
    for decl in template.variables:
        if decl.scope is not VariableScope.PROCESS:
            scope.report(decl.name, 'scope-mismatch', f'template variable {decl.name} must be per-process')

    initial_count: int = sum(location.initial for location in template.locations)
    if initial_count != 1:
        scope.report('locations', 'initial-location', f'exactly one initial location required, found {initial_count}')

    location_names: set[str] = {location.name for location in template.locations}
    for location in template.locations:
        _check_invariant(location.invariant, scope, location.name)

    channels: set[str] = set(context.channel_names())
    for index, edge in enumerate(template.edges):
        element: str = f'edge[{index}]({edge.source}->{edge.target})'
        for endpoint in (edge.source, edge.target):
            if endpoint not in location_names:
                scope.report(element, 'dangling-location', f'location {endpoint} is not declared')
        if edge.sync is not SyncKind.NONE and edge.channel not in channels:
            scope.report(element, 'undeclared-channel', f'channel {edge.channel} is not declared')

        edge_scope: _Scope = scope
        if edge.select is not None:
            if edge.select.lo > edge.select.hi:
                scope.report(element, 'select-range', f'select binder {edge.select.name} has empty range')
            if edge.select.name in scope.parameters or edge.select.name in scope.variables:
                scope.report(element, 'duplicate-name', f'select binder {edge.select.name} shadows a declaration')
            edge_scope = _Scope(template, context, ((edge.select.name, edge.select.lo, edge.select.hi),))

        _check_boolean(edge.guard, edge_scope, element)
        _check_update(edge, edge_scope, element)
        if edge_scope is not scope:
            scope.errors.extend(edge_scope.errors)

    return scope.errors

def validate_system(system: SystemDef) -> list[ModelError]:
    '''Validate global declarations, every template and every process instantiation'''
    errors: list[ModelError] = []

    for name in _duplicates(decl.name for decl in system.variables):
        errors.append(ModelError(element=name, rule='duplicate-name', message=f'global variable {name} declared more than once'))
    for name in _duplicates(system.channel_names()):
        errors.append(ModelError(element=name, rule='duplicate-name', message=f'channel {name} declared more than once'))
    for name in _duplicates(template.name for template in system.templates):
        errors.append(ModelError(element=name, rule='duplicate-name', message=f'template {name} declared more than once'))
    for name in _duplicates(process.name for process in system.processes):
        errors.append(ModelError(element=name, rule='duplicate-name', message=f'process {name} declared more than once'))
    for decl in system.variables:
        if decl.scope is not VariableScope.GLOBAL:
            errors.append(ModelError(element=decl.name, rule='scope-mismatch', message=f'system variable {decl.name} must be global'))

    for template in system.templates:
        errors.extend(validate_template(template, system))

    templates: dict[str, ProcessTemplate] = {template.name : template for template in system.templates}
    for process in system.processes:
        template: Optional[ProcessTemplate] = templates.get(process.template)
        if template is None:
            errors.append(ModelError(element=process.name, rule='undeclared-name', message=f'template {process.template} is not declared'))
            continue
        declared: dict[str, tuple[int, int]] = {decl.name : (decl.lo, decl.hi) for decl in template.parameters}
        if set(declared) != set(process.arguments):
            errors.append(ModelError(element=process.name, rule='parameter-binding',
                                     message=f'arguments {sorted(process.arguments)} do not bind parameters {sorted(declared)}'))
            continue
        for name, value in process.arguments.items():
            lo, hi = declared[name]
            if not (lo <= value <= hi):
                errors.append(ModelError(element=process.name, rule='parameter-binding',
                                         message=f'argument {name}={value} outside [{lo}, {hi}]'))
    return errors

def ensure_valid(system: SystemDef) -> SystemDef:
    '''Raise ModelValidationError unless the system validates cleanly'''
    errors: list[ModelError] = validate_system(system)
    if errors:
        raise ModelValidationError(errors)
    return system
