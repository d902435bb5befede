'''Expression trees used by guards, location invariants and updates'''
from typing import Annotated, ClassVar, Literal, Optional, Union

from models.flags import ArithmeticOperator, BooleanOperator, ComparisonOperator
from models.typing import Ident

from pydantic import BaseModel, ConfigDict, Field

__all__ = ('IntLit', 'BoolLit', 'ConstRef', 'ParamRef', 'ClockRef', 'VarRef',
           'Arith', 'Compare', 'Not', 'BoolOp', 'Expr',
           'TRUE', 'FALSE',
           'lit', 'const', 'param', 'clock', 'var',
           'add', 'sub', 'eq', 'ne', 'lt', 'le', 'gt', 'ge',
           'neg', 'conj', 'disj', 'imply', 'walk')

# Binding strength, loosest first: imply < or < and < not < comparison < arithmetic < atoms
_PRECEDENCE: dict[BooleanOperator, int] = {BooleanOperator.IMPLY : 1,
                                           BooleanOperator.OR : 2,
                                           BooleanOperator.AND : 3}

class _ExprNode(BaseModel):
    model_config = ConfigDict(frozen=True)
    precedence: ClassVar[int] = 7

    def children(self) -> tuple['Expr', ...]:
        return ()

    def _wrap(self, child: 'Expr', strict: bool = False) -> str:
        if child.precedence < self.precedence or (strict and child.precedence == self.precedence):
            return f'({child})'
        return str(child)

class IntLit(_ExprNode):
    kind: Literal['int'] = 'int'
    value: int

    def __str__(self) -> str:
        return str(self.value)

class BoolLit(_ExprNode):
    kind: Literal['bool'] = 'bool'
    value: bool

    def __str__(self) -> str:
        return 'true' if self.value else 'false'

class ConstRef(_ExprNode):
    kind: Literal['const'] = 'const'
    name: Ident

    def __str__(self) -> str:
        return self.name

class ParamRef(_ExprNode):
    kind: Literal['param'] = 'param'
    name: Ident

    def __str__(self) -> str:
        return self.name

class ClockRef(_ExprNode):
    kind: Literal['clock'] = 'clock'
    name: Ident

    def __str__(self) -> str:
        return self.name

class VarRef(_ExprNode):
    '''Reference to a scalar, an array element or a record-array field'''
    kind: Literal['var'] = 'var'
    name: Ident
    index: Optional['Expr'] = None
    field: Optional[Ident] = None

    def children(self) -> tuple['Expr', ...]:
        return (self.index,) if self.index is not None else ()

    def __str__(self) -> str:
        rendered: str = self.name
        if self.index is not None:
            rendered += f'[{self.index}]'
        if self.field is not None:
            rendered += f'.{self.field}'
        return rendered

class Arith(_ExprNode):
    kind: Literal['arith'] = 'arith'
    precedence: ClassVar[int] = 6
    op: ArithmeticOperator
    left: 'Expr'
    right: 'Expr'

    def children(self) -> tuple['Expr', ...]:
        return self.left, self.right

    def __str__(self) -> str:
        return f'{self._wrap(self.left)} {self.op.value} {self._wrap(self.right, strict=True)}'

class Compare(_ExprNode):
    kind: Literal['compare'] = 'compare'
    precedence: ClassVar[int] = 5
    op: ComparisonOperator
    left: 'Expr'
    right: 'Expr'

    def children(self) -> tuple['Expr', ...]:
        return self.left, self.right

    def __str__(self) -> str:
        return f'{self._wrap(self.left, strict=True)} {self.op.value} {self._wrap(self.right, strict=True)}'

class Not(_ExprNode):
    kind: Literal['not'] = 'not'
    precedence: ClassVar[int] = 4
    operand: 'Expr'

    def children(self) -> tuple['Expr', ...]:
        return (self.operand,)

    def __str__(self) -> str:
        return f'not {self._wrap(self.operand)}'

class BoolOp(_ExprNode):
    kind: Literal['boolop'] = 'boolop'
    op: BooleanOperator
    left: 'Expr'
    right: 'Expr'

    @property
    def precedence(self) -> int:     # type: ignore[override]
        return _PRECEDENCE[self.op]

    def children(self) -> tuple['Expr', ...]:
        return self.left, self.right

    def __str__(self) -> str:
        # imply is right-associative, and/or are left-associative
        if self.op is BooleanOperator.IMPLY:
            return f'{self._wrap(self.left, strict=True)} {self.op.value} {self._wrap(self.right)}'
        return f'{self._wrap(self.left)} {self.op.value} {self._wrap(self.right, strict=True)}'

Expr = Annotated[Union[IntLit, BoolLit, ConstRef, ParamRef, ClockRef, VarRef, Arith, Compare, Not, BoolOp],
                 Field(discriminator='kind')]

for _node in (VarRef, Arith, Compare, Not, BoolOp):
    _node.model_rebuild()

TRUE: BoolLit = BoolLit(value=True)
FALSE: BoolLit = BoolLit(value=False)


def lit(value: int) -> IntLit:
    return IntLit(value=value)

def const(name: str) -> ConstRef:
    return ConstRef(name=name)

def param(name: str) -> ParamRef:
    return ParamRef(name=name)

def clock(name: str) -> ClockRef:
    return ClockRef(name=name)

def var(name: str, index: Union['Expr', int, None] = None, field: Optional[str] = None) -> VarRef:
    return VarRef(name=name, index=lit(index) if isinstance(index, int) else index, field=field)

def _operand(value: Union['Expr', int]) -> 'Expr':
    return lit(value) if isinstance(value, int) and not isinstance(value, bool) else value

def add(left: Union['Expr', int], right: Union['Expr', int]) -> Arith:
    return Arith(op=ArithmeticOperator.ADD, left=_operand(left), right=_operand(right))

def sub(left: Union['Expr', int], right: Union['Expr', int]) -> Arith:
    return Arith(op=ArithmeticOperator.SUB, left=_operand(left), right=_operand(right))

def _compare(op: ComparisonOperator, left: Union['Expr', int], right: Union['Expr', int]) -> Compare:
    return Compare(op=op, left=_operand(left), right=_operand(right))

def eq(left: Union['Expr', int], right: Union['Expr', int]) -> Compare:
    return _compare(ComparisonOperator.EQ, left, right)

def ne(left: Union['Expr', int], right: Union['Expr', int]) -> Compare:
    return _compare(ComparisonOperator.NE, left, right)

def lt(left: Union['Expr', int], right: Union['Expr', int]) -> Compare:
    return _compare(ComparisonOperator.LT, left, right)

def le(left: Union['Expr', int], right: Union['Expr', int]) -> Compare:
    return _compare(ComparisonOperator.LE, left, right)

def gt(left: Union['Expr', int], right: Union['Expr', int]) -> Compare:
    return _compare(ComparisonOperator.GT, left, right)

def ge(left: Union['Expr', int], right: Union['Expr', int]) -> Compare:
    return _compare(ComparisonOperator.GE, left, right)

def neg(operand: 'Expr') -> Not:
    return Not(operand=operand)

def conj(*operands: 'Expr') -> 'Expr':
    '''Left-nested conjunction; the empty conjunction is true'''
    if not operands:
        return TRUE
    result: 'Expr' = operands[0]
    for operand in operands[1:]:
        result = BoolOp(op=BooleanOperator.AND, left=result, right=operand)
    return result

def disj(*operands: 'Expr') -> 'Expr':
    '''Left-nested disjunction; the empty disjunction is false'''
    if not operands:
        return FALSE
    result: 'Expr' = operands[0]
    for operand in operands[1:]:
        result = BoolOp(op=BooleanOperator.OR, left=result, right=operand)
    return result

def imply(left: 'Expr', right: 'Expr') -> BoolOp:
    return BoolOp(op=BooleanOperator.IMPLY, left=left, right=right)

def walk(expr: 'Expr'):
    '''Yield every node of an expression tree, parents before children'''
    pending: list['Expr'] = [expr]
    while pending:
        node = pending.pop()
        yield node
        pending.extend(reversed(node.children()))
