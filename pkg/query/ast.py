'''Syntax tree of the property language: one path quantifier over a quantified state predicate'''
from enum import Enum
from typing import Annotated, ClassVar, Literal, Optional, Union
from typing_extensions import Self

from models.flags import ArithmeticOperator, BooleanOperator, ComparisonOperator, PathQuantifier
from models.typing import Ident

from pydantic import BaseModel, ConfigDict, Field, model_validator

__all__ = ('QuantifierKind',
           'IntTerm', 'NameTerm', 'AccessTerm', 'ArithTerm', 'Term',
           'IdsDomain', 'IntRange', 'Domain',
           'BoolConst', 'Comparison', 'NotPred', 'BinaryPred', 'Quantified', 'Predicate',
           'PropertyAst')

class QuantifierKind(Enum):
    FORALL  = 'forall'
    EXISTS  = 'exists'

class _Node(BaseModel):
    model_config = ConfigDict(frozen=True)
    precedence: ClassVar[int] = 9


# Terms
class IntTerm(_Node):
    kind: Literal['int'] = 'int'
    value: int

class NameTerm(_Node):
    '''Bound variable, symbolic constant or global scalar, resolved during elaboration'''
    kind: Literal['name'] = 'name'
    name: Ident

class AccessTerm(_Node):
    '''`Proc(arg).var[index].field`, `Proc.var[index].field` or a global `var[index].field`'''
    kind: Literal['access'] = 'access'
    process: Optional[Ident] = None
    argument: Optional['Term'] = None
    variable: Ident
    index: Optional['Term'] = None
    field: Optional[Ident] = None

    @model_validator(mode='after')
    def validate_shape(self) -> Self:
        if self.argument is not None and self.process is None:
            raise ValueError('A process argument requires a process name')
        if self.process is None and self.index is None:
            raise ValueError('Global accesses without a process must be indexed; use a name term for scalars')
        return self

class ArithTerm(_Node):
    kind: Literal['arith'] = 'arith'
    precedence: ClassVar[int] = 8
    op: ArithmeticOperator
    left: 'Term'
    right: 'Term'

Term = Annotated[Union[IntTerm, NameTerm, AccessTerm, ArithTerm], Field(discriminator='kind')]


# Quantifier domains
class IdsDomain(_Node):
    '''Client identities of the system; restricted to legitimate clients by an elaboration flag'''
    kind: Literal['ids'] = 'ids'

class IntRange(_Node):
    kind: Literal['range'] = 'range'
    lo: Term
    hi: Term

Domain = Annotated[Union[IdsDomain, IntRange], Field(discriminator='kind')]


# Predicates
class BoolConst(_Node):
    kind: Literal['bool'] = 'bool'
    value: bool

class Comparison(_Node):
    kind: Literal['compare'] = 'compare'
    op: ComparisonOperator
    left: Term
    right: Term

class Quantified(_Node):
    kind: Literal['quantified'] = 'quantified'
    quantifier: QuantifierKind
    binder: Ident
    domain: Domain
    body: 'Predicate'

class NotPred(_Node):
    kind: Literal['not'] = 'not'
    precedence: ClassVar[int] = 4
    operand: 'Predicate'

class BinaryPred(_Node):
    kind: Literal['binary'] = 'binary'
    op: BooleanOperator
    left: 'Predicate'
    right: 'Predicate'

    @property
    def precedence(self) -> int:    # type: ignore[override]
        return {BooleanOperator.IMPLY : 1, BooleanOperator.OR : 2, BooleanOperator.AND : 3}[self.op]

Predicate = Annotated[Union[BoolConst, Comparison, Quantified, NotPred, BinaryPred], Field(discriminator='kind')]

for _node in (AccessTerm, ArithTerm, IntRange, Comparison, Quantified, NotPred, BinaryPred):
    _node.model_rebuild()


class PropertyAst(_Node):
    '''`A[] p` (Invariant) or `E<> p` (Reach)'''
    quantifier: PathQuantifier
    predicate: Predicate

    @property
    def is_invariant(self) -> bool:
        return self.quantifier is PathQuantifier.INVARIANT
