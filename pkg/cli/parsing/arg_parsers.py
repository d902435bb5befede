'''Parsers for individual arguments'''
from pathlib import Path

from checker.exploration import VerdictKind
from protocols.states import Protocol

__all__ = (
    "parse_protocol",
    "parse_non_negative_int",
    "parse_positive_int",
    "parse_expectation",
    "parse_filepath",
    "parse_ids",
)

def parse_protocol(arg: str) -> Protocol:
    try:
        return Protocol(arg.strip().lower())
    except ValueError:
        raise ValueError(f'Unknown protocol {arg}, expected one of {", ".join(member.value for member in Protocol)}')

def parse_non_negative_int(arg: str) -> int:
    if not (arg:=arg.strip()).isnumeric():
        raise ValueError(f'Non-numeric argument ({arg}) given')
    return int(arg)

def parse_positive_int(arg: str) -> int:
    num: int = parse_non_negative_int(arg)
    if num == 0:
        raise ValueError('Positive integer expected, got 0')
    return num

def parse_expectation(arg: str) -> VerdictKind:
    try:
        expectation: VerdictKind = VerdictKind(arg.strip().lower())
    except ValueError:
        expectation = VerdictKind.INCONCLUSIVE
    if expectation is VerdictKind.INCONCLUSIVE:
        raise ValueError(f'Invalid expectation {arg}, expected one of holds, violated, reachable, unreachable')
    return expectation

def parse_filepath(fpath_arg: str) -> Path:
    fpath: Path = Path(fpath_arg)
    if not fpath.is_file():
        raise FileNotFoundError(f'{fpath_arg} not found in local file system')
    return fpath

def parse_ids(arg: str) -> bool:
    '''`legitimate` restricts the ids alias to legitimate clients, `all` keeps every client'''
    arg = arg.strip().lower()
    if arg not in ('all', 'legitimate'):
        raise ValueError(f'Invalid ids scope {arg}, expected all or legitimate')
    return arg == 'legitimate'
