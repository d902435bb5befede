from enum import Enum

__all__ = ('ModelErrorCodes', 'QueryErrorCodes', 'UsageErrorCodes', 'InternalErrorCodes')

class ModelErrorCodes(Enum):
    # Static well-formedness
    INVALID_MODEL = "model:invalid"

    # Run-time evaluation
    EVALUATION_FAILURE = "model:eval"
    RANGE_VIOLATION = "model:range"
    MALFORMED_STATE_KEY = "model:key"

class QueryErrorCodes(Enum):
    SYNTAX_ERROR = "query:syntax"
    ELABORATION_FAILURE = "query:elab"

class UsageErrorCodes(Enum):
    INVALID_CONFIGURATION = "usage:config"
    INVALID_ARGUMENTS = "usage:args"
    UNREADABLE_REPORT = "usage:report"

class InternalErrorCodes(Enum):
    INTERNAL_CHECKER_ERROR = "internal:*"
    UNKNOWN_EXCEPTION = "internal:?"

