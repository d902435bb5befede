'''pyparsing grammar for `A[] p` / `E<> p` properties with forall/exists quantifiers over ids or integer ranges'''
from functools import wraps
from typing import Any, Callable, Final

from models.errors import PropertySyntaxError
from models.flags import ArithmeticOperator, BooleanOperator, ComparisonOperator, PathQuantifier

from query.ast import (AccessTerm, ArithTerm, BinaryPred, BoolConst, Comparison, IdsDomain, IntRange, IntTerm,
                       NameTerm, NotPred, PropertyAst, Quantified, QuantifierKind)

from pydantic import ValidationError
from pyparsing import (Forward, Keyword, Literal, MatchFirst, OpAssoc, Opt, ParseBaseException, ParseFatalException,
                       ParserElement, ParseResults, Regex, StringEnd, Suppress, infix_notation, one_of)

__all__ = ('RESERVED_WORDS', 'PROPERTY', 'parse_property')

ParserElement.enable_packrat()

RESERVED_WORDS: Final[tuple[str, ...]] = ('forall', 'exists', 'ids', 'int', 'not', 'and', 'or', 'imply', 'true', 'false')

def _action(builder: Callable[[ParseResults], Any]) -> Callable[[str, int, ParseResults], Any]:
    '''Wrap a node builder so that model validation failures surface as positioned parse errors'''
    @wraps(builder)
    def decorated(instring: str, loc: int, tokens: ParseResults) -> Any:
        try:
            return builder(tokens)
        except ValidationError as exc:
            raise ParseFatalException(instring, loc, exc.errors()[0]['msg'])
    return decorated

# Markers for optional access components
def _marker(tag: str) -> Callable[[ParseResults], tuple[str, Any]]:
    return lambda tokens : (tag, tokens[0])

@_action
def _access(tokens: ParseResults) -> AccessTerm:
    names: list[str] = []
    parts: dict[str, Any] = {}
    for token in tokens:
        if isinstance(token, tuple):
            parts[token[0]] = token[1]
        else:
            names.append(token)
    if len(names) == 2:
        return AccessTerm(process=names[0], variable=names[1], **parts)
    return AccessTerm(variable=names[0], **parts)

@_action
def _fold_arith(tokens: ParseResults) -> ArithTerm:
    items: list[Any] = list(tokens[0])
    result = items[0]
    for index in range(1, len(items), 2):
        result = ArithTerm(op=ArithmeticOperator(items[index]), left=result, right=items[index + 1])
    return result

@_action
def _fold_left(tokens: ParseResults) -> BinaryPred:
    items: list[Any] = list(tokens[0])
    result = items[0]
    for index in range(1, len(items), 2):
        result = BinaryPred(op=items[index], left=result, right=items[index + 1])
    return result

@_action
def _fold_right(tokens: ParseResults) -> BinaryPred:
    items: list[Any] = list(tokens[0])
    result = items[-1]
    for index in range(len(items) - 2, 0, -2):
        result = BinaryPred(op=items[index], left=items[index - 1], right=result)
    return result

@_action
def _negate(tokens: ParseResults) -> NotPred:
    items: list[Any] = list(tokens[0])
    result = items[-1]
    for _ in items[:-1]:
        result = NotPred(operand=result)
    return result

def _build_grammar() -> ParserElement:
    identifier: ParserElement = ~MatchFirst([Keyword(word) for word in RESERVED_WORDS]) + Regex(r'[A-Za-z_][A-Za-z0-9_]*')
    integer: ParserElement = Regex(r'-?\d+').set_parse_action(_action(lambda tokens : IntTerm(value=int(tokens[0]))))

    # Terms
    arith: Forward = Forward()
    argument = (Suppress('(') + arith + Suppress(')')).set_parse_action(_marker('argument'))
    index = (Suppress('[') + arith + Suppress(']')).set_parse_action(_marker('index'))
    field = (Suppress('.') + identifier).set_parse_action(_marker('field'))
    process_access = identifier + Opt(argument) + Suppress('.') + identifier + Opt(index) + Opt(field)
    global_access = identifier + index + Opt(field)
    access = (process_access | global_access).set_parse_action(_access)
    name = identifier.copy().set_parse_action(_action(lambda tokens : NameTerm(name=tokens[0])))
    arith <<= infix_notation(access | integer | name, [(one_of('+ -'), 2, OpAssoc.LEFT, _fold_arith)])

    # Predicates
    predicate: Forward = Forward()
    comparison_op = one_of('== != <= >= < >').set_parse_action(lambda tokens : ComparisonOperator(tokens[0]))
    comparison = (arith + comparison_op + arith).set_parse_action(
        _action(lambda tokens : Comparison(left=tokens[0], op=tokens[1], right=tokens[2])))
    boolean = (Keyword('true') | Keyword('false')).set_parse_action(_action(lambda tokens : BoolConst(value=tokens[0] == 'true')))

    ids_domain = Keyword('ids').set_parse_action(_action(lambda _ : IdsDomain()))
    int_range = (Suppress(Keyword('int')) + Suppress('[') + arith + Suppress(',') + arith + Suppress(']')).set_parse_action(
        _action(lambda tokens : IntRange(lo=tokens[0], hi=tokens[1])))
    quantifier = (Keyword('forall') | Keyword('exists')).set_parse_action(lambda tokens : QuantifierKind(tokens[0]))
    quantified = (quantifier + Suppress('(') + identifier + Suppress(':') + (ids_domain | int_range) + Suppress(')')
                  + Suppress('(') + predicate + Suppress(')')).set_parse_action(
        _action(lambda tokens : Quantified(quantifier=tokens[0], binder=tokens[1], domain=tokens[2], body=tokens[3])))

    not_op = (Keyword('not') | Literal('!')).set_parse_action(lambda _ : 'not')
    and_op = (Keyword('and') | Literal('&&')).set_parse_action(lambda _ : BooleanOperator.AND)
    or_op = (Keyword('or') | Literal('||')).set_parse_action(lambda _ : BooleanOperator.OR)
    imply_op = Keyword('imply').set_parse_action(lambda _ : BooleanOperator.IMPLY)
    predicate <<= infix_notation(quantified | comparison | boolean,
                                 [(not_op, 1, OpAssoc.RIGHT, _negate),
                                  (and_op, 2, OpAssoc.LEFT, _fold_left),
                                  (or_op, 2, OpAssoc.LEFT, _fold_left),
                                  (imply_op, 2, OpAssoc.RIGHT, _fold_right)])

    path = (Literal('A[]') | Literal('E<>')).set_parse_action(lambda tokens : PathQuantifier(tokens[0]))
    return (path + predicate + StringEnd()).set_parse_action(
        _action(lambda tokens : PropertyAst(quantifier=tokens[0], predicate=tokens[1])))

PROPERTY: Final[ParserElement] = _build_grammar()

def parse_property(text: str, line_offset: int = 0) -> PropertyAst:
    '''Parse one property.

    Args:
        text: property source, possibly spanning several lines
        line_offset: added to reported line numbers when the text is a block of a larger file

    Raises:
        PropertySyntaxError: with the 1-based line and column of the failure and the expected token(s)
    '''
    try:
        return PROPERTY.parse_string(text, parse_all=True)[0]
    except ParseBaseException as exc:
        expected: str = exc.msg.removeprefix('Expected ').strip()
        raise PropertySyntaxError(exc.lineno + line_offset, exc.col, (expected,) if expected else ())
