'''Module containing enumerations shared across the modelling vocabulary'''
from enum import Enum

__all__ = ('LocationKind', 'SyncKind', 'VariableScope', 'ArithmeticOperator', 'ComparisonOperator', 'BooleanOperator', 'ValueType', 'PathQuantifier')

class LocationKind(Enum):
    '''Kinds of locations a template may declare'''
    NORMAL      = 'normal'
    COMMITTED   = 'committed'

class SyncKind(Enum):
    '''Channel synchronisation carried by an edge'''
    NONE    = 'none'
    SEND    = 'send'
    RECEIVE = 'receive'

class VariableScope(Enum):
    '''Where a declared variable lives'''
    GLOBAL  = 'global'
    PROCESS = 'process'

class ArithmeticOperator(Enum):
    ADD = '+'
    SUB = '-'

class ComparisonOperator(Enum):
    EQ = '=='
    NE = '!='
    LT = '<'
    LE = '<='
    GT = '>'
    GE = '>='

class BooleanOperator(Enum):
    '''Binary boolean connectives, listed loosest-binding last'''
    AND     = 'and'
    OR      = 'or'
    IMPLY   = 'imply'

class ValueType(Enum):
    '''Static types inferred during validation'''
    INT     = 'int'
    BOOL    = 'bool'
    CLOCK   = 'clock'

class PathQuantifier(Enum):
    '''Top-level path quantifier of a property'''
    INVARIANT   = 'A[]'
    REACH       = 'E<>'
