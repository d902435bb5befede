'''Wrapper over argparse.ArgumentParser so that parsing errors raise instead of exiting'''
import argparse
import sys
from typing import NoReturn, Optional, Sequence

from models.errors import UsageError

__all__ = ('ExplicitArgumentParser',)

class ExplicitArgumentParser(argparse.ArgumentParser):
    '''argparse.ArgumentParser raising UsageError on bad input, leaving the exit status to the caller'''

    def parse_args_strict(self, args: Optional[Sequence[str]] = None, namespace: Optional[argparse.Namespace] = None) -> argparse.Namespace:
        '''Parse args, rejecting unknown ones.

        Raises:
            UsageError: on unknown or malformed arguments
        '''
        parsed, leftover = self.parse_known_args(args, namespace)
        if leftover:
            raise UsageError(f'unrecognized arguments: {" ".join(leftover)}')
        return parsed

    def error(self, message: str) -> NoReturn:     # type: ignore[override]
        self.print_usage(sys.stderr)
        raise UsageError(f'{self.prog}: {message}')

    def exit(self, status: int = 0, message: Optional[str] = None) -> NoReturn:    # type: ignore[override]
        if message:
            self._print_message(message, sys.stderr)
        # --help and --version land here with status 0
        raise SystemExit(status)
