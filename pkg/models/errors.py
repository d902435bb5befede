from abc import ABC
from datetime import datetime
from typing import Optional, Sequence, TYPE_CHECKING

from models.error_codes import ModelErrorCodes, QueryErrorCodes, UsageErrorCodes, InternalErrorCodes

if TYPE_CHECKING:
    from models.validation import ModelError

__all__ = ('CheckerException',
           'ModelValidationError',
           'EvaluationError',
           'RangeViolation',
           'StateDecodeError',
           'PropertySyntaxError',
           'ElaborationError',
           'ConfigurationError',
           'UsageError',
           'ReportError',
           'InternalCheckerError')

class CheckerException(ABC, Exception):
    '''Abstract base exception class for all checker specific exceptions. Contains the bare minimum data required to report a failure to the caller'''
    code: str
    description: str
    exception_iso_timestamp: str

    def __init__(self, description: Optional[str] = None):
        self.description = description or self.__class__.description
        self.exception_iso_timestamp = datetime.now().isoformat()
        super().__init__(self.description)


# Model errors
class ModelValidationError(CheckerException):
    code: str = ModelErrorCodes.INVALID_MODEL.value
    description: str = 'Model failed validation'

    def __init__(self, errors: Sequence['ModelError'], description: Optional[str] = None):
        self.errors: tuple['ModelError', ...] = tuple(errors)
        super().__init__(description or '\n'.join((ModelValidationError.description, *(str(error) for error in self.errors))))

class EvaluationError(CheckerException):
    code: str = ModelErrorCodes.EVALUATION_FAILURE.value
    description: str = 'Expression evaluation failed'

class RangeViolation(CheckerException):
    code: str = ModelErrorCodes.RANGE_VIOLATION.value
    description: str = 'Value {value} assigned to {target} outside declared range [{lo}, {hi}]'

    def __init__(self, target: str, value: int, lo: int, hi: int, description: Optional[str] = None):
        self.target, self.value, self.lo, self.hi = target, value, lo, hi
        super().__init__(description or RangeViolation.description.format(target=target, value=value, lo=lo, hi=hi))

class StateDecodeError(CheckerException):
    code: str = ModelErrorCodes.MALFORMED_STATE_KEY.value
    description: str = 'Malformed state key'


# Query errors
class PropertySyntaxError(CheckerException):
    code: str = QueryErrorCodes.SYNTAX_ERROR.value
    description: str = 'Syntax error at line {line}, column {column}: expected {expected}'

    def __init__(self, line: int, column: int, expected: Sequence[str], description: Optional[str] = None):
        self.line, self.column = line, column
        self.expected: tuple[str, ...] = tuple(expected)
        super().__init__(description or PropertySyntaxError.description.format(line=line, column=column,
                                                                              expected=' | '.join(self.expected) or 'end of input'))

class ElaborationError(CheckerException):
    code: str = QueryErrorCodes.ELABORATION_FAILURE.value
    description: str = 'Property could not be elaborated against the system'


# Usage errors
class ConfigurationError(CheckerException):
    code: str = UsageErrorCodes.INVALID_CONFIGURATION.value
    description: str = 'Invalid configuration'

class UsageError(CheckerException):
    code: str = UsageErrorCodes.INVALID_ARGUMENTS.value
    description: str = 'Invalid command line usage'

class ReportError(CheckerException):
    code: str = UsageErrorCodes.UNREADABLE_REPORT.value
    description: str = 'Report unreadable or missing requested data'


# Internal errors
class InternalCheckerError(CheckerException):
    code: str = InternalErrorCodes.INTERNAL_CHECKER_ERROR.value
    description: str = 'Internal checker error'
