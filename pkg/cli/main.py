'''Entrypoint logic: parse the command line, dispatch to a sub-command and map failures to exit statuses'''
import argparse
import sys
from types import MappingProxyType
from typing import Callable, Final, Optional, Sequence, TextIO

from models.error_codes import InternalErrorCodes, ModelErrorCodes
from models.errors import CheckerException, ConfigurationError, ModelValidationError

from checker.bootup import create_checker_config, create_logger
from checker.log_models import LogAuthor, LogType, Severity
from checker.logging import Logger

from cli.commands import cmd_check, cmd_export, cmd_trace
from cli.exit_codes import ExitCode
from cli.parsing.entrypoint_parser import parse_args

__all__ = ('COMMANDS', 'main')

COMMANDS: Final[MappingProxyType[str, Callable[..., int]]] = MappingProxyType({
    'check' : lambda args, out, logger : cmd_check(args, out, logger),
    'trace' : lambda args, out, logger : cmd_trace(args, out),
    'export' : lambda args, out, logger : cmd_export(args, out)
})

# Failures of the model or the engine rather than of the user's input
_RUNTIME_CODES: Final[frozenset[str]] = frozenset({ModelErrorCodes.EVALUATION_FAILURE.value,
                                                   ModelErrorCodes.RANGE_VIOLATION.value,
                                                   ModelErrorCodes.MALFORMED_STATE_KEY.value,
                                                   InternalErrorCodes.INTERNAL_CHECKER_ERROR.value})

def _bootup_logger() -> Optional[Logger]:
    try:
        return create_logger(create_checker_config())
    except ConfigurationError:
        return None

def _report_failure(logger: Optional[Logger], err: TextIO, severity: Severity, category: LogType,
                    author: LogAuthor, message: str) -> int:
    if logger is not None:
        logger.log(severity, message, category=category, author=author)
    err.write(f'error: {message}\n')
    return ExitCode.USAGE

def main(argv: Optional[Sequence[str]] = None, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    '''Run one sub-command and return its exit status.

    0: every expectation met, 1: an expectation was not met, 2: usage, input or engine failure,
    3: a property with an expectation was inconclusive.
    '''
    logger: Optional[Logger] = _bootup_logger()
    try:
        args: argparse.Namespace = parse_args(argv)
        return int(COMMANDS[args.command](args, out, logger))
    except ModelValidationError as validation_error:
        return _report_failure(logger, err, Severity.ERROR, LogType.VALIDATION, LogAuthor.VALIDATOR, validation_error.description)
    except CheckerException as checker_error:
        if checker_error.code in _RUNTIME_CODES:
            return _report_failure(logger, err, Severity.CRITICAL_FAILURE, LogType.INTERNAL, LogAuthor.EXCEPTION_FALLBACK,
                                   f'{checker_error.code}: {checker_error.description}')
        return _report_failure(logger, err, Severity.ERROR, LogType.CONFIGURATION, LogAuthor.COMMAND_HANDLER,
                               checker_error.description)
    except OSError as os_error:
        return _report_failure(logger, err, Severity.ERROR, LogType.CONFIGURATION, LogAuthor.COMMAND_HANDLER, str(os_error))
    except SystemExit as exit_request:
        return int(exit_request.code or 0)
    except Exception as unexpected_error:
        return _report_failure(logger, err, Severity.CRITICAL_FAILURE, LogType.INTERNAL, LogAuthor.EXCEPTION_FALLBACK,
                               f'{InternalErrorCodes.UNKNOWN_EXCEPTION.value}: unexpected {unexpected_error.__class__.__name__}: {unexpected_error}')
    finally:
        if logger is not None:
            logger.close()
