'''Reference interpreter for expressions and updates over named valuations'''
import operator
from types import MappingProxyType
from typing import Any, Callable, Final, Mapping, MutableMapping, Optional, Sequence

from models.automata import Assign, ClockReset, UpdateAction
from models.errors import EvaluationError, RangeViolation
from models.expressions import Arith, BoolLit, BoolOp, ClockRef, Compare, ConstRef, Expr, IntLit, Not, ParamRef, VarRef
from models.flags import ArithmeticOperator, BooleanOperator, ComparisonOperator
from models.typing import Value

__all__ = ('Environment', 'eval_expr', 'execute_update')

ARITHMETIC_OPERATORS: Final[MappingProxyType[ArithmeticOperator, Callable[[int, int], int]]] = MappingProxyType({
    ArithmeticOperator.ADD : operator.add,
    ArithmeticOperator.SUB : operator.sub
})

COMPARISON_OPERATORS: Final[MappingProxyType[ComparisonOperator, Callable[[int, int], bool]]] = MappingProxyType({
    ComparisonOperator.EQ : operator.eq,
    ComparisonOperator.NE : operator.ne,
    ComparisonOperator.LT : operator.lt,
    ComparisonOperator.LE : operator.le,
    ComparisonOperator.GT : operator.gt,
    ComparisonOperator.GE : operator.ge
})

class Environment:
    '''Named valuation of variables, clocks, parameters and constants.

    Scalars map to ints, arrays to lists of ints and record arrays to lists of dicts.
    `ranges` maps (variable, field) to the declared inclusive interval and enables range checks on writes,
    `ceilings` maps clocks to their saturation ceiling.
    '''
    __slots__ = ('variables', 'clocks', 'parameters', 'constants', 'ranges')

    def __init__(self,
                 variables: Optional[MutableMapping[str, Any]] = None,
                 clocks: Optional[MutableMapping[str, int]] = None,
                 parameters: Optional[Mapping[str, int]] = None,
                 constants: Optional[Mapping[str, int]] = None,
                 ranges: Optional[Mapping[tuple[str, Optional[str]], tuple[int, int]]] = None):
        self.variables: MutableMapping[str, Any] = variables if variables is not None else {}
        self.clocks: MutableMapping[str, int] = clocks if clocks is not None else {}
        self.parameters: Mapping[str, int] = parameters or {}
        self.constants: Mapping[str, int] = constants or {}
        self.ranges: Optional[Mapping[tuple[str, Optional[str]], tuple[int, int]]] = ranges

    def read_variable(self, name: str, index: Optional[int], field: Optional[str]) -> int:
        if name not in self.variables:
            raise EvaluationError(f'Unbound variable {name}')
        value: Any = self.variables[name]
        try:
            if index is not None:
                if index < 0:
                    raise IndexError(index)
                value = value[index]
            if field is not None:
                value = value[field]
        except (IndexError, KeyError, TypeError):
            raise EvaluationError(f'Invalid access {name}[{index}].{field}')
        if not isinstance(value, int):
            raise EvaluationError(f'Variable {name} accessed without index or field')
        return value

    def write_variable(self, name: str, index: Optional[int], field: Optional[str], value: int) -> None:
        rendered: str = name + (f'[{index}]' if index is not None else '') + (f'.{field}' if field is not None else '')
        if self.ranges is not None:
            lo, hi = self.ranges[(name, field)]
            if not (lo <= value <= hi):
                raise RangeViolation(rendered, value, lo, hi)
        if name not in self.variables:
            raise EvaluationError(f'Unbound variable {name}')
        try:
            if index is None and field is None:
                self.variables[name] = value
            elif field is None:
                self.variables[name][index] = value
            elif index is None:
                self.variables[name][field] = value
            else:
                self.variables[name][index][field] = value
        except (IndexError, KeyError, TypeError):
            raise EvaluationError(f'Invalid write target {rendered}')

    def read_clock(self, name: str) -> int:
        if name not in self.clocks:
            raise EvaluationError(f'Unbound clock {name}')
        return self.clocks[name]

    def read_parameter(self, name: str) -> int:
        if name not in self.parameters:
            raise EvaluationError(f'Unbound parameter {name}')
        return self.parameters[name]

    def read_constant(self, name: str) -> int:
        if name not in self.constants:
            raise EvaluationError(f'Unbound constant {name}')
        return self.constants[name]


def _expect_int(value: Value, context: Expr) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise EvaluationError(f'Integer expected in {context}')
    return value

def _expect_bool(value: Value, context: Expr) -> bool:
    if not isinstance(value, bool):
        raise EvaluationError(f'Boolean expected in {context}')
    return value

def _eval_var(expr: VarRef, env: Environment) -> int:
    index: Optional[int] = None if expr.index is None else _expect_int(eval_expr(expr.index, env), expr)
    return env.read_variable(expr.name, index, expr.field)

def _eval_arith(expr: Arith, env: Environment) -> int:
    return ARITHMETIC_OPERATORS[expr.op](_expect_int(eval_expr(expr.left, env), expr),
                                         _expect_int(eval_expr(expr.right, env), expr))

def _eval_compare(expr: Compare, env: Environment) -> bool:
    return COMPARISON_OPERATORS[expr.op](_expect_int(eval_expr(expr.left, env), expr),
                                         _expect_int(eval_expr(expr.right, env), expr))

def _eval_boolop(expr: BoolOp, env: Environment) -> bool:
    left: bool = _expect_bool(eval_expr(expr.left, env), expr)
    if expr.op is BooleanOperator.AND and not left:
        return False
    if expr.op is BooleanOperator.OR and left:
        return True
    if expr.op is BooleanOperator.IMPLY and not left:
        return True
    return _expect_bool(eval_expr(expr.right, env), expr)

EVALUATORS: Final[MappingProxyType[type, Callable[[Any, Environment], Value]]] = MappingProxyType({
    IntLit : lambda expr, env : expr.value,
    BoolLit : lambda expr, env : expr.value,
    ConstRef : lambda expr, env : env.read_constant(expr.name),
    ParamRef : lambda expr, env : env.read_parameter(expr.name),
    ClockRef : lambda expr, env : env.read_clock(expr.name),
    VarRef : _eval_var,
    Arith : _eval_arith,
    Compare : _eval_compare,
    Not : lambda expr, env : not _expect_bool(eval_expr(expr.operand, env), expr),
    BoolOp : _eval_boolop
})

def eval_expr(expr: Expr, env: Environment) -> Value:
    '''Evaluate an expression against a named environment.

    Raises:
        EvaluationError: on unbound names or ill-typed operands
    '''
    evaluator = EVALUATORS.get(type(expr))
    if evaluator is None:
        raise EvaluationError(f'Unknown expression node {type(expr).__name__}')
    return evaluator(expr, env)

def execute_update(actions: Sequence[UpdateAction], env: Environment) -> None:
    '''Run an update list left to right, each action seeing the effects of the previous ones'''
    for action in actions:
        if isinstance(action, ClockReset):
            if action.clock not in env.clocks:
                raise EvaluationError(f'Unbound clock {action.clock}')
            env.clocks[action.clock] = 0
            continue

        assert isinstance(action, Assign)
        target: VarRef = action.target
        index: Optional[int] = None if target.index is None else _expect_int(eval_expr(target.index, env), target)
        env.write_variable(target.name, index, target.field, _expect_int(eval_expr(action.value, env), action.value))
