'''Query files: named property blocks with `--` comments.

    -- legitimate clients only
    name: half_open_custom
    ids: legitimate
    A[] forall (i: ids) (Legit_Client(i).cur_state == ESTABLISHED imply
        exists (j: int[0,(RESOURCES-1)]) (Server.tcb[j].peer == i))

A block starts at a `name:` header and runs until the next header or blank line. A comment starts with `--` at the
beginning of a line or after whitespace.
'''
import os
import re
from typing import Final, Optional

from models.errors import ConfigurationError, PropertySyntaxError

from query.ast import PropertyAst
from query.grammar import parse_property

from pydantic import BaseModel, ConfigDict

__all__ = ('QueryEntry', 'parse_query_text', 'load_query_file')

_HEADER: Final[re.Pattern[str]] = re.compile(r'^\s*(name|ids)\s*:\s*(\S.*?)\s*$')
_COMMENT: Final[re.Pattern[str]] = re.compile(r'(?:^|(?<=\s))--')
_IDS_VALUES: Final[dict[str, bool]] = {'all' : False, 'legitimate' : True}

class QueryEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    text: str
    line: int
    legitimate_ids_only: Optional[bool] = None
    ast: PropertyAst

def _strip_comment(line: str) -> str:
    comment = _COMMENT.search(line)
    return line if comment is None else line[:comment.start()]

def parse_query_text(text: str) -> list[QueryEntry]:
    '''Split query text into named blocks and parse each body.

    Raises:
        PropertySyntaxError: on a malformed header, a body without a name, a duplicate name or a body that fails to
        parse; line numbers refer to the whole text
    '''
    entries: list[QueryEntry] = []
    seen: set[str] = set()
    name: Optional[str] = None
    ids: Optional[bool] = None
    body: list[str] = []
    body_start: int = 0
    name_line: int = 0

    def close_block() -> None:
        nonlocal name, ids, body
        if name is None:
            return
        if not body:
            raise PropertySyntaxError(name_line, 1, ('property body',), description=f'Query {name} has no property body')
        source: str = '\n'.join(body)
        entries.append(QueryEntry(name=name, text=' '.join(line.strip() for line in body), line=body_start,
                                  legitimate_ids_only=ids, ast=parse_property(source, line_offset=body_start - 1)))
        name, ids, body = None, None, []

    for number, raw in enumerate(text.splitlines(), start=1):
        line: str = _strip_comment(raw)
        if not line.strip():
            close_block()
            continue
        header = _HEADER.match(line)
        if header and not body:
            key, value = header.groups()
            if key == 'name':
                close_block()
                if value in seen:
                    raise PropertySyntaxError(number, 1, ('unique name',), description=f'Duplicate query name {value} at line {number}')
                seen.add(value)
                name = value
                name_line = number
            elif name is None:
                raise PropertySyntaxError(number, 1, ('name:',))
            elif value not in _IDS_VALUES:
                raise PropertySyntaxError(number, line.index(value) + 1, tuple(_IDS_VALUES))
            else:
                ids = _IDS_VALUES[value]
            continue
        if header and header.group(1) == 'name':
            close_block()
            name = header.group(2)
            if name in seen:
                raise PropertySyntaxError(number, 1, ('unique name',), description=f'Duplicate query name {name} at line {number}')
            seen.add(name)
            name_line = number
            continue
        if name is None:
            raise PropertySyntaxError(number, 1, ('name:',))
        if not body:
            body_start = number
        body.append(line)
    close_block()
    return entries

def load_query_file(path: str) -> list[QueryEntry]:
    '''Raises ConfigurationError if the file cannot be read, PropertySyntaxError if it cannot be parsed'''
    try:
        with open(os.path.expandvars(path), 'r', encoding='utf-8') as query_file:
            return parse_query_text(query_file.read())
    except OSError as exc:
        raise ConfigurationError(f'Unable to read query file {path}: {exc.strerror}')
