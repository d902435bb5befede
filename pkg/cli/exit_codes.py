'''Process exit statuses of the command line front end'''
from enum import IntEnum
from typing import Final, Iterable, Optional

from checker.exploration import VerdictKind

__all__ = ('ExitCode', 'PRECEDENCE', 'expectation_status', 'combine')

class ExitCode(IntEnum):
    OK              = 0
    MISMATCH        = 1
    USAGE           = 2
    INCONCLUSIVE    = 3

PRECEDENCE: Final[tuple[ExitCode, ...]] = (ExitCode.USAGE, ExitCode.MISMATCH, ExitCode.INCONCLUSIVE, ExitCode.OK)

def expectation_status(verdict: VerdictKind, expected: Optional[VerdictKind]) -> ExitCode:
    if expected is None:
        return ExitCode.OK
    if verdict is VerdictKind.INCONCLUSIVE:
        return ExitCode.INCONCLUSIVE
    return ExitCode.OK if verdict is expected else ExitCode.MISMATCH

def combine(codes: Iterable[ExitCode]) -> ExitCode:
    '''Worst status by precedence usage > mismatch > inconclusive > ok'''
    seen: set[ExitCode] = set(codes)
    return next((code for code in PRECEDENCE if code in seen), ExitCode.OK)
