'''Structured activity records emitted by the checker'''

from datetime import datetime
from enum import Enum
from types import MappingProxyType
from typing import Final, Optional

from pydantic import BaseModel, Field

__all__ = ('SEVERITY_RANKS', 'Severity', 'LogType', 'LogAuthor', 'ActivityLog')

class Severity(Enum):
    '''Severity of a checker event'''
    TRACE                   = 'trace'
    INFO                    = 'info'
    ERROR                   = 'error'
    NON_CRITICAL_FAILURE    = 'non_critical_failure'
    CRITICAL_FAILURE        = 'critical_failure'

SEVERITY_RANKS: Final[MappingProxyType[Severity, int]] = MappingProxyType({severity : rank for rank, severity in enumerate(Severity)})

class LogType(Enum):
    EXPLORATION         = 'exploration'
    VALIDATION          = 'validation'
    QUERY               = 'query'
    CONFIGURATION       = 'configuration'
    REPORT              = 'report'
    INTERNAL            = 'internal'
    UNKNOWN             = 'unknown'

class LogAuthor(Enum):
    CHECKER             = 'checker'
    VALIDATOR           = 'validator'
    ELABORATOR          = 'elaborator'
    BOOTUP_HANDLER      = 'bootup_handler'
    COMMAND_HANDLER     = 'command_handler'
    EXCEPTION_FALLBACK  = 'exception_fallback'


class ActivityLog(BaseModel):
    '''One line of the checker's activity log'''
    occurrence_time: datetime = Field(default_factory=datetime.now, frozen=True)
    reported_severity: Severity
    logged_by: LogAuthor = Field(default=LogAuthor.CHECKER)
    log_category: LogType = Field(default=LogType.UNKNOWN)
    log_details: Optional[str] = Field(default=None, max_length=2048)
    scenario_concerned: Optional[str] = Field(default=None, max_length=256)

    model_config = {
        'use_enum_values' : True
    }
